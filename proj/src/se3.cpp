// Copyright (c) 2026 DSF contributors. MIT License.

#include "dsf/se3.hpp"

#include <cmath>
#include <string>

namespace dsf {

namespace {

constexpr double kLogSingularMargin = 1e-6;
constexpr double kSmallAngle = 1e-4;

// (1 - cos t) / t^2
double coefA(double t) {
  if (t < kSmallAngle) {
    const double t2 = t * t;
    return 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  }
  return (1.0 - std::cos(t)) / (t * t);
}

// (t - sin t) / t^3
double coefB(double t) {
  if (t < kSmallAngle) {
    const double t2 = t * t;
    return 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0;
  }
  return (t - std::sin(t)) / (t * t * t);
}

// (1 - t^2/2 - cos t) / t^4
double coefC(double t) {
  if (t < kSmallAngle) {
    const double t2 = t * t;
    return -1.0 / 24.0 + t2 / 720.0 - t2 * t2 / 40320.0;
  }
  return (1.0 - 0.5 * t * t - std::cos(t)) / (t * t * t * t);
}

// (t - sin t - t^3/6) / t^5
double coefD(double t) {
  if (t < kSmallAngle) {
    const double t2 = t * t;
    return -1.0 / 120.0 + t2 / 5040.0 - t2 * t2 / 362880.0;
  }
  const double t2 = t * t;
  return (t - std::sin(t) - t * t2 / 6.0) / (t2 * t2 * t);
}

// Coupling block of the SE(3) left Jacobian (Barfoot's Q matrix).
Matrix3 se3JacobianQ(const Point3& omega, const Point3& rho) {
  const double theta = omega.norm();
  const Matrix3 wx = skew(omega);
  const Matrix3 rx = skew(rho);
  const Matrix3 wr = wx * rx;
  const Matrix3 rw = rx * wx;
  const Matrix3 wrw = wr * wx;

  const double b = coefB(theta);
  const double c = coefC(theta);
  const double e = c - 3.0 * coefD(theta);

  Matrix3 q = 0.5 * rx;
  q += b * (wr + rw + wrw);
  q -= c * (wx * wr + rw * wx - 3.0 * wrw);
  q -= 0.5 * e * (wrw * wx + wx * wrw);
  return q;
}

}  // namespace

NearSingularRotationError::NearSingularRotationError(double angle)
    : std::domain_error("rotation angle " + std::to_string(angle) +
                        " rad is within 1e-6 of pi; SE(3) log is singular"),
      angle_(angle) {}

Pose Pose::RotZ(double angle) {
  return Pose(so3Exp(Point3(0.0, 0.0, angle)), Point3::Zero());
}

Eigen::Matrix4d Pose::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rotation_;
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

Matrix3 skew(const Point3& v) {
  Matrix3 s;
  s << 0.0, -v.z(), v.y(),  //
      v.z(), 0.0, -v.x(),   //
      -v.y(), v.x(), 0.0;
  return s;
}

Matrix3 so3Exp(const Point3& omega) {
  const double theta = omega.norm();
  const Matrix3 wx = skew(omega);
  double sin_coef;
  if (theta < kSmallAngle) {
    const double t2 = theta * theta;
    sin_coef = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  } else {
    sin_coef = std::sin(theta) / theta;
  }
  return Matrix3::Identity() + sin_coef * wx + coefA(theta) * wx * wx;
}

double rotationAngle(const Matrix3& rotation) {
  const double c = std::clamp((rotation.trace() - 1.0) * 0.5, -1.0, 1.0);
  return std::acos(c);
}

Point3 so3Log(const Matrix3& rotation) {
  const double theta = rotationAngle(rotation);
  if (theta >= M_PI - kLogSingularMargin) {
    throw NearSingularRotationError(theta);
  }
  Point3 axis_vec(rotation(2, 1) - rotation(1, 2),  //
                  rotation(0, 2) - rotation(2, 0),  //
                  rotation(1, 0) - rotation(0, 1));
  double scale;
  if (theta < kSmallAngle) {
    const double t2 = theta * theta;
    scale = 0.5 + t2 / 12.0 + t2 * t2 * 7.0 / 720.0;
  } else {
    scale = theta / (2.0 * std::sin(theta));
  }
  return scale * axis_vec;
}

Matrix3 so3LeftJacobian(const Point3& omega) {
  const double theta = omega.norm();
  const Matrix3 wx = skew(omega);
  return Matrix3::Identity() + coefA(theta) * wx + coefB(theta) * wx * wx;
}

Matrix3 so3LeftJacobianInverse(const Point3& omega) {
  const double theta = omega.norm();
  const Matrix3 wx = skew(omega);
  double coef;
  if (theta < kSmallAngle) {
    const double t2 = theta * theta;
    coef = 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0;
  } else {
    coef = 1.0 / (theta * theta) -
           (1.0 + std::cos(theta)) / (2.0 * theta * std::sin(theta));
  }
  return Matrix3::Identity() - 0.5 * wx + coef * wx * wx;
}

Pose expHat(const Twist& xi) {
  const Point3 omega = xi.head<3>();
  const Point3 v = xi.tail<3>();
  return Pose(so3Exp(omega), so3LeftJacobian(omega) * v);
}

Twist logVee(const Pose& pose) {
  const Point3 omega = so3Log(pose.rotation());
  Twist xi;
  xi.head<3>() = omega;
  xi.tail<3>() = so3LeftJacobianInverse(omega) * pose.translation();
  return xi;
}

Pose frameChangeMotion(const Pose& body_motion, const Pose& ref_pose) {
  return ref_pose * body_motion * ref_pose.inverse();
}

Point3 transformPoint(const Pose& motion, const Point3& p) { return motion * p; }

Matrix6 adjoint(const Pose& pose) {
  Matrix6 ad = Matrix6::Zero();
  ad.topLeftCorner<3, 3>() = pose.rotation();
  ad.bottomRightCorner<3, 3>() = pose.rotation();
  ad.bottomLeftCorner<3, 3>() = skew(pose.translation()) * pose.rotation();
  return ad;
}

Matrix6 se3LeftJacobian(const Twist& xi) {
  const Matrix3 j = so3LeftJacobian(xi.head<3>());
  Matrix6 out = Matrix6::Zero();
  out.topLeftCorner<3, 3>() = j;
  out.bottomRightCorner<3, 3>() = j;
  out.bottomLeftCorner<3, 3>() = se3JacobianQ(xi.head<3>(), xi.tail<3>());
  return out;
}

Matrix6 se3LeftJacobianInverse(const Twist& xi) {
  const Matrix3 jinv = so3LeftJacobianInverse(xi.head<3>());
  const Matrix3 q = se3JacobianQ(xi.head<3>(), xi.tail<3>());
  Matrix6 out = Matrix6::Zero();
  out.topLeftCorner<3, 3>() = jinv;
  out.bottomRightCorner<3, 3>() = jinv;
  out.bottomLeftCorner<3, 3>() = -jinv * q * jinv;
  return out;
}

Matrix6 se3RightJacobianInverse(const Twist& xi) {
  return se3LeftJacobianInverse(-xi);
}

}  // namespace dsf
