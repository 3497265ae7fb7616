// Copyright (c) 2026 DSF contributors. MIT License.

#pragma once

#include <Eigen/Core>
#include <stdexcept>

namespace dsf {

using Point3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

/// se(3) tangent vector, ordered [rotation | translation].
using Twist = Eigen::Matrix<double, 6, 1>;

/// Thrown by logVee/so3Log when the rotation angle is within 1e-6 of pi,
/// where the logarithm is numerically ill defined.
class NearSingularRotationError : public std::domain_error {
 public:
  explicit NearSingularRotationError(double angle);
  double angle() const { return angle_; }

 private:
  double angle_;
};

/// Rigid transform in SE(3). Camera poses, object poses, relative camera
/// transforms and object motions are all values of this type; rotations are
/// kept as matrices, quaternions appear only at the dataset I/O boundary.
class Pose {
 public:
  Pose() : rotation_(Matrix3::Identity()), translation_(Point3::Zero()) {}
  Pose(const Matrix3& rotation, const Point3& translation)
      : rotation_(rotation), translation_(translation) {}

  static Pose Identity() { return Pose(); }
  static Pose Translation(double x, double y, double z) {
    return Pose(Matrix3::Identity(), Point3(x, y, z));
  }
  static Pose Translation(const Point3& t) { return Pose(Matrix3::Identity(), t); }
  /// Rotation by angle (radians) about the world z axis.
  static Pose RotZ(double angle);

  const Matrix3& rotation() const { return rotation_; }
  const Point3& translation() const { return translation_; }

  Pose inverse() const {
    Matrix3 rt = rotation_.transpose();
    return Pose(rt, -(rt * translation_));
  }

  /// Composition of homogeneous transforms.
  Pose operator*(const Pose& other) const {
    return Pose(rotation_ * other.rotation_,
                rotation_ * other.translation_ + translation_);
  }

  /// Affine action on a point.
  Point3 operator*(const Point3& p) const { return rotation_ * p + translation_; }

  Eigen::Matrix4d matrix() const;

  bool isApprox(const Pose& other, double tol = 1e-9) const {
    return (rotation_ - other.rotation_).cwiseAbs().maxCoeff() <= tol &&
           (translation_ - other.translation_).cwiseAbs().maxCoeff() <= tol;
  }

 private:
  Matrix3 rotation_;
  Point3 translation_;
};

/// Skew-symmetric matrix, skew(v) * u = v x u.
Matrix3 skew(const Point3& v);

/// SO(3) exponential (Rodrigues).
Matrix3 so3Exp(const Point3& omega);

/// SO(3) logarithm. Throws NearSingularRotationError for angles >= pi - 1e-6.
Point3 so3Log(const Matrix3& rotation);

/// Rotation angle in [0, pi].
double rotationAngle(const Matrix3& rotation);

/// Left Jacobian of SO(3) (the V matrix of the SE(3) exponential).
Matrix3 so3LeftJacobian(const Point3& omega);
Matrix3 so3LeftJacobianInverse(const Point3& omega);

/// Closed-form SE(3) exponential; translation coupled through the V matrix.
Pose expHat(const Twist& xi);

/// SE(3) logarithm as an R^6 vector [rotation | translation].
/// Throws NearSingularRotationError for rotation angles >= pi - 1e-6.
Twist logVee(const Pose& pose);

/// Frame change of a pose transformation: returns ref * body_motion * ref^-1,
/// the motion of a body expressed in the frame that ref maps into.
Pose frameChangeMotion(const Pose& body_motion, const Pose& ref_pose);

/// Rigid point update m_k = H * m_{k-1} for a world-frame motion H.
Point3 transformPoint(const Pose& motion, const Point3& p);

/// Adjoint of SE(3) in [rotation | translation] ordering:
/// [ R      0 ]
/// [ [t]x R R ]
Matrix6 adjoint(const Pose& pose);

/// SE(3) left Jacobian and its inverse, [rotation | translation] ordering.
Matrix6 se3LeftJacobian(const Twist& xi);
Matrix6 se3LeftJacobianInverse(const Twist& xi);
Matrix6 se3RightJacobianInverse(const Twist& xi);

}  // namespace dsf
