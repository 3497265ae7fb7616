// Copyright (c) 2026 DSF contributors. MIT License.

#include "dsf/factor_graph.hpp"

#include <algorithm>

namespace dsf {

const char* factorKindName(FactorKind kind) {
  switch (kind) {
    case FactorKind::PointMeasurementWorld:
      return "point_measurement_world";
    case FactorKind::CameraOdometry:
      return "camera_odometry";
    case FactorKind::WorldMotionTernary:
      return "world_motion_ternary";
    case FactorKind::MotionSmoothing:
      return "motion_smoothing";
    case FactorKind::PointMeasurementObjectCentric:
      return "point_measurement_object_centric";
    case FactorKind::ObjectCentricMotion:
      return "object_centric_motion";
    case FactorKind::ObjectKinematic:
      return "object_kinematic";
    case FactorKind::PriorPose:
      return "prior_pose";
    case FactorKind::PriorPoint:
      return "prior_point";
  }
  return "unknown";
}

NoiseModel::NoiseModel(const Eigen::VectorXd& sigmas) : sigmas_(sigmas) {
  if (sigmas_.size() == 0 || (sigmas_.array() <= 0.0).any()) {
    throw StructuralError("noise model sigmas must be strictly positive");
  }
}

NoiseModel NoiseModel::Isotropic(int dim, double sigma) {
  return NoiseModel(Eigen::VectorXd::Constant(dim, sigma));
}

NoiseModel NoiseModel::Diagonal(const Eigen::VectorXd& sigmas) {
  return NoiseModel(sigmas);
}

Factor::Factor(FactorKind kind, std::vector<VariableKey> keys, NoiseModel noise)
    : kind_(kind), keys_(std::move(keys)), noise_(std::move(noise)) {}

Ordering::Ordering(const std::vector<VariableKey>& keys) : keys_(keys) {
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  for (const VariableKey& key : keys_) {
    offsets_.emplace(key, total_dim_);
    total_dim_ += key.tangentDim();
  }
}

int Ordering::offsetOf(const VariableKey& key) const {
  auto it = offsets_.find(key);
  if (it == offsets_.end()) {
    throw StructuralError("key " + key.name() + " not in ordering");
  }
  return it->second;
}

const VariableKey& Ordering::keyAtOffset(int column) const {
  for (const VariableKey& key : keys_) {
    const int offset = offsets_.at(key);
    if (column >= offset && column < offset + key.tangentDim()) return key;
  }
  throw StructuralError("column " + std::to_string(column) + " out of range");
}

Eigen::SparseMatrix<double> SparseSystem::jacobian() const {
  std::vector<Eigen::Triplet<double>> triplets;
  int row = 0;
  for (const LinearizedFactor& factor : factors) {
    for (std::size_t b = 0; b < factor.keys.size(); ++b) {
      const int col0 = ordering.offsetOf(factor.keys[b]);
      const Eigen::MatrixXd& block = factor.jacobians[b];
      for (int r = 0; r < block.rows(); ++r) {
        for (int c = 0; c < block.cols(); ++c) {
          if (block(r, c) != 0.0) {
            triplets.emplace_back(row + r, col0 + c, block(r, c));
          }
        }
      }
    }
    row += static_cast<int>(factor.residual.size());
  }
  Eigen::SparseMatrix<double> j(totalRows, ordering.totalDim());
  j.setFromTriplets(triplets.begin(), triplets.end());
  return j;
}

Eigen::VectorXd SparseSystem::residualVector() const {
  Eigen::VectorXd r(totalRows);
  int row = 0;
  for (const LinearizedFactor& factor : factors) {
    r.segment(row, factor.residual.size()) = factor.residual;
    row += static_cast<int>(factor.residual.size());
  }
  return r;
}

void SparseSystem::normalEquations(Eigen::SparseMatrix<double>& a,
                                   Eigen::VectorXd& b) const {
  const Eigen::SparseMatrix<double> j = jacobian();
  const Eigen::VectorXd r = residualVector();
  a = (j.transpose() * j).pruned();
  b = -(j.transpose() * r);
}

void FactorGraph::add(Factor::Ptr factor) {
  if (!factor) throw StructuralError("null factor");
  factors_.push_back(std::move(factor));
}

double FactorGraph::chiSquared(const Values& values) const {
  double chi2 = 0.0;
  for (const Factor::Ptr& factor : factors_) chi2 += factor->chiSquared(values);
  return chi2;
}

SparseSystem FactorGraph::linearize(const Values& values) const {
  for (const Factor::Ptr& factor : factors_) {
    for (const VariableKey& key : factor->keys()) {
      if (!values.exists(key)) {
        throw StructuralError("factor references missing key " + key.name());
      }
    }
  }

  SparseSystem system;
  system.ordering = Ordering(values.keys());
  system.factors.reserve(factors_.size());

  for (const Factor::Ptr& factor : factors_) {
    LinearizedFactor lin;
    lin.keys = factor->keys();
    Eigen::VectorXd residual = factor->errorWithJacobians(values, lin.jacobians);
    if (static_cast<int>(lin.jacobians.size()) !=
        static_cast<int>(lin.keys.size())) {
      throw StructuralError("factor produced wrong number of Jacobian blocks");
    }
    for (std::size_t b = 0; b < lin.keys.size(); ++b) {
      if (lin.jacobians[b].rows() != factor->dim() ||
          lin.jacobians[b].cols() != lin.keys[b].tangentDim()) {
        throw StructuralError("Jacobian block shape mismatch for key " +
                              lin.keys[b].name());
      }
      lin.jacobians[b] = factor->noiseModel().whiten(lin.jacobians[b]);
    }
    lin.residual = factor->noiseModel().whiten(residual);
    system.chiSquared += lin.residual.squaredNorm();
    system.totalRows += factor->dim();
    system.factors.push_back(std::move(lin));
  }
  return system;
}

std::map<FactorKind, int> FactorGraph::countsByKind() const {
  std::map<FactorKind, int> counts;
  for (const Factor::Ptr& factor : factors_) counts[factor->kind()]++;
  return counts;
}

std::vector<Eigen::MatrixXd> numericalJacobians(const Factor& factor,
                                                const Values& values,
                                                double step) {
  std::vector<Eigen::MatrixXd> jacobians;
  jacobians.reserve(factor.keys().size());

  for (const VariableKey& key : factor.keys()) {
    const int dim = key.tangentDim();
    Eigen::MatrixXd block(factor.dim(), dim);
    for (int c = 0; c < dim; ++c) {
      Values plus = values;
      Values minus = values;
      if (key.isPose()) {
        Twist xi = Twist::Zero();
        xi[c] = step;
        plus.update(key, values.atPose(key) * expHat(xi));
        xi[c] = -step;
        minus.update(key, values.atPose(key) * expHat(xi));
      } else {
        Point3 offset = Point3::Zero();
        offset[c] = step;
        plus.update(key, Point3(values.atPoint(key) + offset));
        minus.update(key, Point3(values.atPoint(key) - offset));
      }
      block.col(c) = (factor.error(plus) - factor.error(minus)) / (2.0 * step);
    }
    jacobians.push_back(std::move(block));
  }
  return jacobians;
}

}  // namespace dsf
