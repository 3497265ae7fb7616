// Copyright (c) 2026 DSF contributors. MIT License.
//
// Residual functions for the world-centric and object-centric dynamic SLAM
// formulations. Point-valued residuals are the first three components of the
// homogeneous expression (the fourth is identically zero); twist-valued
// residuals use logVee and inherit its near-pi singularity error.

#pragma once

#include "dsf/factor_graph.hpp"
#include "dsf/se3.hpp"

namespace dsf {

/// r = logVee(estimate^-1 * prior); zero iff estimate equals the prior mean.
class PriorPoseFactor : public Factor {
 public:
  PriorPoseFactor(VariableKey key, Pose prior, NoiseModel noise);
  Eigen::VectorXd error(const Values& values) const override;
  Eigen::VectorXd errorWithJacobians(
      const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const override;

 private:
  Pose prior_;
};

/// r = prior - point.
class PriorPointFactor : public Factor {
 public:
  PriorPointFactor(VariableKey key, Point3 prior, NoiseModel noise);
  Eigen::VectorXd error(const Values& values) const override;
  Eigen::VectorXd errorWithJacobians(
      const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const override;

 private:
  Point3 prior_;
};

/// r = z - X_k^-1 * m_world. Used for static points and, in the world-centric
/// formulation, per-step dynamic points.
class PointMeasurementFactor : public Factor {
 public:
  PointMeasurementFactor(VariableKey camera, VariableKey point, Point3 measured,
                         NoiseModel noise);
  Eigen::VectorXd error(const Values& values) const override;
  Eigen::VectorXd errorWithJacobians(
      const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const override;

 private:
  Point3 measured_;
};

/// r = logVee(X_k^-1 * X_{k-1} * T) for a measured relative transform T.
class OdometryFactor : public Factor {
 public:
  OdometryFactor(VariableKey previous_camera, VariableKey current_camera,
                 Pose measured, NoiseModel noise);
  Eigen::VectorXd error(const Values& values) const override;
  Eigen::VectorXd errorWithJacobians(
      const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const override;

 private:
  Pose measured_;
};

/// Ternary rigid-motion factor r = m_k - H * m_{k-1} on a tracked point pair.
class WorldMotionTernaryFactor : public Factor {
 public:
  WorldMotionTernaryFactor(VariableKey current_point, VariableKey previous_point,
                           VariableKey motion, NoiseModel noise);
  Eigen::VectorXd error(const Values& values) const override;
  Eigen::VectorXd errorWithJacobians(
      const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const override;
};

/// r = logVee(H_a^-1 * H_b) between consecutive motions of one object.
class MotionSmoothingFactor : public Factor {
 public:
  MotionSmoothingFactor(VariableKey previous_motion, VariableKey current_motion,
                        NoiseModel noise);
  Eigen::VectorXd error(const Values& values) const override;
  Eigen::VectorXd errorWithJacobians(
      const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const override;
};

/// r = z - X_k^-1 * L_k * m_L for a dynamic point kept in the object frame.
class ObjectCentricPointFactor : public Factor {
 public:
  ObjectCentricPointFactor(VariableKey camera, VariableKey object_pose,
                           VariableKey local_point, Point3 measured,
                           NoiseModel noise);
  Eigen::VectorXd error(const Values& values) const override;
  Eigen::VectorXd errorWithJacobians(
      const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const override;

 private:
  Point3 measured_;
};

/// r = first three components of (L_k - H * L_{k-1}) * [m_L, 1].
///
/// The matrix difference L_k - H * L_{k-1} is not an SE(3) element, so this
/// residual does not encode the kinematic relation between consecutive object
/// poses; it is kept in exactly this form because measuring the effect of
/// that defect is what the formulation comparison is about.
class ObjectCentricMotionFactor : public Factor {
 public:
  ObjectCentricMotionFactor(VariableKey current_pose, VariableKey previous_pose,
                            VariableKey motion, VariableKey local_point,
                            NoiseModel noise);
  Eigen::VectorXd error(const Values& values) const override;
  Eigen::VectorXd errorWithJacobians(
      const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const override;
};

/// r = logVee(L_k^-1 * H * L_{k-1}); enforces L_k = H * L_{k-1} directly.
class ObjectKinematicFactor : public Factor {
 public:
  ObjectKinematicFactor(VariableKey current_pose, VariableKey previous_pose,
                        VariableKey motion, NoiseModel noise);
  Eigen::VectorXd error(const Values& values) const override;
  Eigen::VectorXd errorWithJacobians(
      const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const override;
};

}  // namespace dsf
