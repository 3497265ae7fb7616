// Copyright (c) 2026 DSF contributors. MIT License.

#include "dsf/factors.hpp"

namespace dsf {

namespace {

// Twist residuals below are all of the form r = logVee(A * P * B) in each pose
// argument P (A, B constant with respect to P). Under the right perturbation
// P * expHat(delta):
//   d logVee(A * P * expHat(delta) * B) / d delta = Jr^-1(r) * Ad(B^-1)
// and for an inverted argument, A * (P * expHat(delta))^-1 * B with A' = A:
//   d logVee(A * expHat(-delta) * P^-1 * B) / d delta = -Jl^-1(r) * Ad(A^-1)^-1
// which for A = I reduces to -Jl^-1(r).

Eigen::MatrixXd rightArgJacobian(const Twist& r, const Pose& b) {
  return se3RightJacobianInverse(r) * adjoint(b.inverse());
}

}  // namespace

PriorPoseFactor::PriorPoseFactor(VariableKey key, Pose prior, NoiseModel noise)
    : Factor(FactorKind::PriorPose, {key}, std::move(noise)), prior_(prior) {}

Eigen::VectorXd PriorPoseFactor::error(const Values& values) const {
  return logVee(values.atPose(keys_[0]).inverse() * prior_);
}

Eigen::VectorXd PriorPoseFactor::errorWithJacobians(
    const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const {
  const Twist r = logVee(values.atPose(keys_[0]).inverse() * prior_);
  jacobians.assign(1, -se3LeftJacobianInverse(r));
  return r;
}

PriorPointFactor::PriorPointFactor(VariableKey key, Point3 prior, NoiseModel noise)
    : Factor(FactorKind::PriorPoint, {key}, std::move(noise)), prior_(prior) {}

Eigen::VectorXd PriorPointFactor::error(const Values& values) const {
  return prior_ - values.atPoint(keys_[0]);
}

Eigen::VectorXd PriorPointFactor::errorWithJacobians(
    const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const {
  jacobians.assign(1, -Eigen::Matrix3d::Identity());
  return error(values);
}

PointMeasurementFactor::PointMeasurementFactor(VariableKey camera,
                                               VariableKey point, Point3 measured,
                                               NoiseModel noise)
    : Factor(FactorKind::PointMeasurementWorld, {camera, point}, std::move(noise)),
      measured_(measured) {}

Eigen::VectorXd PointMeasurementFactor::error(const Values& values) const {
  const Pose& camera = values.atPose(keys_[0]);
  return measured_ - camera.inverse() * values.atPoint(keys_[1]);
}

Eigen::VectorXd PointMeasurementFactor::errorWithJacobians(
    const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const {
  const Pose& camera = values.atPose(keys_[0]);
  const Point3 local = camera.inverse() * values.atPoint(keys_[1]);

  Eigen::MatrixXd j_camera(3, 6);
  j_camera.leftCols<3>() = -skew(local);
  j_camera.rightCols<3>() = Eigen::Matrix3d::Identity();

  jacobians.clear();
  jacobians.push_back(std::move(j_camera));
  jacobians.push_back(-camera.rotation().transpose());
  return measured_ - local;
}

OdometryFactor::OdometryFactor(VariableKey previous_camera,
                               VariableKey current_camera, Pose measured,
                               NoiseModel noise)
    : Factor(FactorKind::CameraOdometry, {previous_camera, current_camera},
             std::move(noise)),
      measured_(measured) {}

Eigen::VectorXd OdometryFactor::error(const Values& values) const {
  const Pose& previous = values.atPose(keys_[0]);
  const Pose& current = values.atPose(keys_[1]);
  return logVee(current.inverse() * previous * measured_);
}

Eigen::VectorXd OdometryFactor::errorWithJacobians(
    const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const {
  const Twist r = error(values);
  jacobians.clear();
  jacobians.push_back(rightArgJacobian(r, measured_));
  jacobians.push_back(-se3LeftJacobianInverse(r));
  return r;
}

WorldMotionTernaryFactor::WorldMotionTernaryFactor(VariableKey current_point,
                                                   VariableKey previous_point,
                                                   VariableKey motion,
                                                   NoiseModel noise)
    : Factor(FactorKind::WorldMotionTernary, {current_point, previous_point, motion},
             std::move(noise)) {}

Eigen::VectorXd WorldMotionTernaryFactor::error(const Values& values) const {
  const Pose& motion = values.atPose(keys_[2]);
  return values.atPoint(keys_[0]) - motion * values.atPoint(keys_[1]);
}

Eigen::VectorXd WorldMotionTernaryFactor::errorWithJacobians(
    const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const {
  const Point3& previous = values.atPoint(keys_[1]);
  const Pose& motion = values.atPose(keys_[2]);
  const Matrix3& rot = motion.rotation();

  Eigen::MatrixXd j_motion(3, 6);
  j_motion.leftCols<3>() = rot * skew(previous);
  j_motion.rightCols<3>() = -rot;

  jacobians.clear();
  jacobians.push_back(Eigen::Matrix3d::Identity());
  jacobians.push_back(-rot);
  jacobians.push_back(std::move(j_motion));
  return values.atPoint(keys_[0]) - motion * previous;
}

MotionSmoothingFactor::MotionSmoothingFactor(VariableKey previous_motion,
                                             VariableKey current_motion,
                                             NoiseModel noise)
    : Factor(FactorKind::MotionSmoothing, {previous_motion, current_motion},
             std::move(noise)) {}

Eigen::VectorXd MotionSmoothingFactor::error(const Values& values) const {
  return logVee(values.atPose(keys_[0]).inverse() * values.atPose(keys_[1]));
}

Eigen::VectorXd MotionSmoothingFactor::errorWithJacobians(
    const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const {
  const Twist r = error(values);
  jacobians.clear();
  jacobians.push_back(-se3LeftJacobianInverse(r));
  jacobians.push_back(se3RightJacobianInverse(r));
  return r;
}

ObjectCentricPointFactor::ObjectCentricPointFactor(VariableKey camera,
                                                   VariableKey object_pose,
                                                   VariableKey local_point,
                                                   Point3 measured, NoiseModel noise)
    : Factor(FactorKind::PointMeasurementObjectCentric,
             {camera, object_pose, local_point}, std::move(noise)),
      measured_(measured) {}

Eigen::VectorXd ObjectCentricPointFactor::error(const Values& values) const {
  const Pose& camera = values.atPose(keys_[0]);
  const Pose& object = values.atPose(keys_[1]);
  return measured_ - camera.inverse() * (object * values.atPoint(keys_[2]));
}

Eigen::VectorXd ObjectCentricPointFactor::errorWithJacobians(
    const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const {
  const Pose& camera = values.atPose(keys_[0]);
  const Pose& object = values.atPose(keys_[1]);
  const Point3& local = values.atPoint(keys_[2]);
  const Point3 in_camera = camera.inverse() * (object * local);
  const Matrix3 rot_cam_obj = camera.rotation().transpose() * object.rotation();

  Eigen::MatrixXd j_camera(3, 6);
  j_camera.leftCols<3>() = -skew(in_camera);
  j_camera.rightCols<3>() = Eigen::Matrix3d::Identity();

  Eigen::MatrixXd j_object(3, 6);
  j_object.leftCols<3>() = rot_cam_obj * skew(local);
  j_object.rightCols<3>() = -rot_cam_obj;

  jacobians.clear();
  jacobians.push_back(std::move(j_camera));
  jacobians.push_back(std::move(j_object));
  jacobians.push_back(-rot_cam_obj);
  return measured_ - in_camera;
}

ObjectCentricMotionFactor::ObjectCentricMotionFactor(VariableKey current_pose,
                                                     VariableKey previous_pose,
                                                     VariableKey motion,
                                                     VariableKey local_point,
                                                     NoiseModel noise)
    : Factor(FactorKind::ObjectCentricMotion,
             {current_pose, previous_pose, motion, local_point}, std::move(noise)) {}

Eigen::VectorXd ObjectCentricMotionFactor::error(const Values& values) const {
  const Pose& current = values.atPose(keys_[0]);
  const Pose& previous = values.atPose(keys_[1]);
  const Pose& motion = values.atPose(keys_[2]);
  const Point3& local = values.atPoint(keys_[3]);
  return current * local - motion * (previous * local);
}

Eigen::VectorXd ObjectCentricMotionFactor::errorWithJacobians(
    const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const {
  const Pose& current = values.atPose(keys_[0]);
  const Pose& previous = values.atPose(keys_[1]);
  const Pose& motion = values.atPose(keys_[2]);
  const Point3& local = values.atPoint(keys_[3]);
  const Point3 previous_world = previous * local;
  const Matrix3& rot_cur = current.rotation();
  const Matrix3& rot_mot = motion.rotation();
  const Matrix3 rot_chain = rot_mot * previous.rotation();

  Eigen::MatrixXd j_current(3, 6);
  j_current.leftCols<3>() = -rot_cur * skew(local);
  j_current.rightCols<3>() = rot_cur;

  Eigen::MatrixXd j_previous(3, 6);
  j_previous.leftCols<3>() = rot_chain * skew(local);
  j_previous.rightCols<3>() = -rot_chain;

  Eigen::MatrixXd j_motion(3, 6);
  j_motion.leftCols<3>() = rot_mot * skew(previous_world);
  j_motion.rightCols<3>() = -rot_mot;

  jacobians.clear();
  jacobians.push_back(std::move(j_current));
  jacobians.push_back(std::move(j_previous));
  jacobians.push_back(std::move(j_motion));
  jacobians.push_back(rot_cur - rot_chain);
  return current * local - motion * previous_world;
}

ObjectKinematicFactor::ObjectKinematicFactor(VariableKey current_pose,
                                             VariableKey previous_pose,
                                             VariableKey motion, NoiseModel noise)
    : Factor(FactorKind::ObjectKinematic, {current_pose, previous_pose, motion},
             std::move(noise)) {}

Eigen::VectorXd ObjectKinematicFactor::error(const Values& values) const {
  const Pose& current = values.atPose(keys_[0]);
  const Pose& previous = values.atPose(keys_[1]);
  const Pose& motion = values.atPose(keys_[2]);
  return logVee(current.inverse() * motion * previous);
}

Eigen::VectorXd ObjectKinematicFactor::errorWithJacobians(
    const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const {
  const Pose& previous = values.atPose(keys_[1]);
  const Twist r = error(values);
  jacobians.clear();
  jacobians.push_back(-se3LeftJacobianInverse(r));
  jacobians.push_back(se3RightJacobianInverse(r));
  jacobians.push_back(rightArgJacobian(r, previous));
  return r;
}

}  // namespace dsf
