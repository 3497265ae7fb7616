// Copyright (c) 2026 DSF contributors. MIT License.

#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <map>
#include <memory>
#include <vector>

#include "dsf/keys.hpp"
#include "dsf/values.hpp"

namespace dsf {

enum class FactorKind : std::uint8_t {
  PointMeasurementWorld,          // Eq-6 style, camera + world point
  CameraOdometry,                 // between consecutive camera poses
  WorldMotionTernary,             // point pair + world motion
  MotionSmoothing,                // consecutive motions of one object
  PointMeasurementObjectCentric,  // camera + object pose + local point
  ObjectCentricMotion,            // matrix-difference motion residual
  ObjectKinematic,                // twist residual L_k = H * L_{k-1}
  PriorPose,
  PriorPoint,
};

const char* factorKindName(FactorKind kind);

/// Diagonal Gaussian noise model; whitening divides each residual component
/// by its sigma.
class NoiseModel {
 public:
  static NoiseModel Isotropic(int dim, double sigma);
  static NoiseModel Diagonal(const Eigen::VectorXd& sigmas);

  int dim() const { return static_cast<int>(sigmas_.size()); }
  const Eigen::VectorXd& sigmas() const { return sigmas_; }

  Eigen::VectorXd whiten(const Eigen::VectorXd& residual) const {
    return residual.cwiseQuotient(sigmas_);
  }
  Eigen::MatrixXd whiten(const Eigen::MatrixXd& jacobian) const {
    return sigmas_.cwiseInverse().asDiagonal() * jacobian;
  }

 private:
  explicit NoiseModel(const Eigen::VectorXd& sigmas);
  Eigen::VectorXd sigmas_;
};

/// A residual function over an ordered tuple of variables with a noise model.
class Factor {
 public:
  using Ptr = std::shared_ptr<const Factor>;

  Factor(FactorKind kind, std::vector<VariableKey> keys, NoiseModel noise);
  virtual ~Factor() = default;

  FactorKind kind() const { return kind_; }
  const std::vector<VariableKey>& keys() const { return keys_; }
  const NoiseModel& noiseModel() const { return noise_; }
  int dim() const { return noise_.dim(); }

  /// Unwhitened residual at the given values.
  virtual Eigen::VectorXd error(const Values& values) const = 0;

  /// Unwhitened residual plus analytic Jacobian blocks, one per key, in the
  /// right-perturbation convention (column c differentiates along the c-th
  /// tangent direction of the retraction).
  virtual Eigen::VectorXd errorWithJacobians(
      const Values& values, std::vector<Eigen::MatrixXd>& jacobians) const = 0;

  double chiSquared(const Values& values) const {
    return noise_.whiten(error(values)).squaredNorm();
  }

 protected:
  FactorKind kind_;
  std::vector<VariableKey> keys_;
  NoiseModel noise_;
};

/// Column layout of a linear system: each key owns a contiguous block of
/// tangent-space columns, in canonical key order.
class Ordering {
 public:
  Ordering() = default;
  explicit Ordering(const std::vector<VariableKey>& keys);

  int totalDim() const { return total_dim_; }
  int offsetOf(const VariableKey& key) const;
  const std::vector<VariableKey>& keys() const { return keys_; }
  const VariableKey& keyAtOffset(int column) const;

 private:
  std::vector<VariableKey> keys_;
  std::map<VariableKey, int> offsets_;
  int total_dim_ = 0;
};

/// One factor after linearization: whitened Jacobian blocks and residual.
struct LinearizedFactor {
  std::vector<VariableKey> keys;
  std::vector<Eigen::MatrixXd> jacobians;  // whitened, one block per key
  Eigen::VectorXd residual;                // whitened
};

/// Whitened sparse least-squares system J * delta = -r assembled from a graph.
struct SparseSystem {
  Ordering ordering;
  std::vector<LinearizedFactor> factors;
  int totalRows = 0;
  double chiSquared = 0.0;

  Eigen::SparseMatrix<double> jacobian() const;
  Eigen::VectorXd residualVector() const;
  /// Normal equations A = J^T J, b = -J^T r.
  void normalEquations(Eigen::SparseMatrix<double>& a, Eigen::VectorXd& b) const;
};

class FactorGraph {
 public:
  void add(Factor::Ptr factor);

  template <typename FactorType, typename... Args>
  void emplace(Args&&... args) {
    add(std::make_shared<FactorType>(std::forward<Args>(args)...));
  }

  std::size_t size() const { return factors_.size(); }
  const Factor::Ptr& at(std::size_t index) const { return factors_.at(index); }
  auto begin() const { return factors_.begin(); }
  auto end() const { return factors_.end(); }

  double chiSquared(const Values& values) const;

  /// Linearizes every factor at the given values. Throws StructuralError if a
  /// factor references a key absent from values.
  SparseSystem linearize(const Values& values) const;

  std::map<FactorKind, int> countsByKind() const;

 private:
  std::vector<Factor::Ptr> factors_;
};

/// Central finite differences of the unwhitened residual on the retraction,
/// step 1e-6. Verification oracle for analytic Jacobians; test use only.
std::vector<Eigen::MatrixXd> numericalJacobians(const Factor& factor,
                                                const Values& values,
                                                double step = 1e-6);

}  // namespace dsf
