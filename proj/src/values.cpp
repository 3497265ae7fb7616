// Copyright (c) 2026 DSF contributors. MIT License.

#include "dsf/values.hpp"

#include <sstream>

namespace dsf {

std::string VariableKey::name() const {
  std::ostringstream out;
  switch (kind) {
    case KeyKind::CameraPose:
      out << "x" << k;
      break;
    case KeyKind::ObjectMotion:
      out << "h" << j << ":" << k;
      break;
    case KeyKind::ObjectPose:
      out << "l" << j << ":" << k;
      break;
    case KeyKind::StaticPoint:
      out << "s" << i;
      break;
    case KeyKind::DynamicPointWorld:
      out << "w" << i << ":" << k;
      break;
    case KeyKind::DynamicPointLocal:
      out << "m" << i << ":" << j;
      break;
  }
  return out.str();
}

namespace {

[[noreturn]] void throwMissing(const VariableKey& key) {
  throw StructuralError("missing variable " + key.name());
}

}  // namespace

void Values::insert(const VariableKey& key, const Pose& pose) {
  if (!key.isPose()) {
    throw StructuralError("pose value for point key " + key.name());
  }
  if (!data_.emplace(key, pose).second) {
    throw StructuralError("duplicate insert of " + key.name());
  }
}

void Values::insert(const VariableKey& key, const Point3& point) {
  if (key.isPose()) {
    throw StructuralError("point value for pose key " + key.name());
  }
  if (!data_.emplace(key, point).second) {
    throw StructuralError("duplicate insert of " + key.name());
  }
}

const Pose& Values::atPose(const VariableKey& key) const {
  auto it = data_.find(key);
  if (it == data_.end()) throwMissing(key);
  return std::get<Pose>(it->second);
}

const Point3& Values::atPoint(const VariableKey& key) const {
  auto it = data_.find(key);
  if (it == data_.end()) throwMissing(key);
  return std::get<Point3>(it->second);
}

void Values::update(const VariableKey& key, const Pose& pose) {
  auto it = data_.find(key);
  if (it == data_.end()) throwMissing(key);
  it->second = pose;
}

void Values::update(const VariableKey& key, const Point3& point) {
  auto it = data_.find(key);
  if (it == data_.end()) throwMissing(key);
  it->second = point;
}

int Values::totalTangentDim() const {
  int dim = 0;
  for (const auto& [key, value] : data_) dim += key.tangentDim();
  return dim;
}

std::vector<VariableKey> Values::keys() const {
  std::vector<VariableKey> out;
  out.reserve(data_.size());
  for (const auto& [key, value] : data_) out.push_back(key);
  return out;
}

Values Values::retract(const Eigen::VectorXd& delta) const {
  if (delta.size() != totalTangentDim()) {
    throw StructuralError("retract delta has dimension " +
                          std::to_string(delta.size()) + ", expected " +
                          std::to_string(totalTangentDim()));
  }
  Values out;
  int offset = 0;
  for (const auto& [key, value] : data_) {
    if (key.isPose()) {
      const Twist xi = delta.segment<6>(offset);
      out.data_.emplace(key, std::get<Pose>(value) * expHat(xi));
      offset += 6;
    } else {
      out.data_.emplace(key,
                        Point3(std::get<Point3>(value) + delta.segment<3>(offset)));
      offset += 3;
    }
  }
  return out;
}

}  // namespace dsf
