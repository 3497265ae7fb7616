// Copyright (c) 2026 DSF contributors. MIT License.

#pragma once

#include <Eigen/Core>
#include <map>
#include <stdexcept>
#include <variant>
#include <vector>

#include "dsf/keys.hpp"
#include "dsf/se3.hpp"

namespace dsf {

/// Structural misuse of the graph machinery (missing keys, dimension
/// mismatches). Distinct from data errors so callers can tell bugs apart
/// from bad input files.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Assignment of a Pose or Point3 to every state variable. Pose-like keys
/// have tangent dimension 6, points 3.
class Values {
 public:
  using Variant = std::variant<Pose, Point3>;

  void insert(const VariableKey& key, const Pose& pose);
  void insert(const VariableKey& key, const Point3& point);
  bool exists(const VariableKey& key) const { return data_.count(key) > 0; }

  const Pose& atPose(const VariableKey& key) const;
  const Point3& atPoint(const VariableKey& key) const;

  void update(const VariableKey& key, const Pose& pose);
  void update(const VariableKey& key, const Point3& point);

  std::size_t size() const { return data_.size(); }
  int totalTangentDim() const;

  /// Keys in canonical (sorted) order; this is the ordering retract and the
  /// linearizer agree on.
  std::vector<VariableKey> keys() const;

  /// Manifold update: poses move by a right perturbation P * expHat(delta),
  /// points by addition. delta is laid out in canonical key order.
  Values retract(const Eigen::VectorXd& delta) const;

  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

 private:
  std::map<VariableKey, Variant> data_;
};

}  // namespace dsf
