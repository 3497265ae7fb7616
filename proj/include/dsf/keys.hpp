// Copyright (c) 2026 DSF contributors. MIT License.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace dsf {

/// State-variable roles. Index conventions: k is a time-step, j an object id,
/// i a tracklet id. ObjectMotion(j, k) is the world-frame motion of object j
/// over the transition k-1 -> k.
enum class KeyKind : std::uint8_t {
  CameraPose,         // X_k
  ObjectMotion,       // H_{k-1,k} of object j
  ObjectPose,         // L_k of object j
  StaticPoint,        // world point, time independent
  DynamicPointWorld,  // world point of tracklet i at step k
  DynamicPointLocal,  // object-frame point of tracklet i on object j
};

struct VariableKey {
  KeyKind kind;
  std::int32_t i = -1;  // tracklet
  std::int32_t j = -1;  // object
  std::int32_t k = -1;  // time-step

  static VariableKey cameraPose(int k) {
    return {KeyKind::CameraPose, -1, -1, k};
  }
  static VariableKey objectMotion(int j, int k) {
    return {KeyKind::ObjectMotion, -1, j, k};
  }
  static VariableKey objectPose(int j, int k) {
    return {KeyKind::ObjectPose, -1, j, k};
  }
  static VariableKey staticPoint(int i) {
    return {KeyKind::StaticPoint, i, -1, -1};
  }
  static VariableKey dynamicPointWorld(int i, int k) {
    return {KeyKind::DynamicPointWorld, i, -1, k};
  }
  static VariableKey dynamicPointLocal(int i, int j) {
    return {KeyKind::DynamicPointLocal, i, j, -1};
  }

  bool isPose() const {
    return kind == KeyKind::CameraPose || kind == KeyKind::ObjectMotion ||
           kind == KeyKind::ObjectPose;
  }
  int tangentDim() const { return isPose() ? 6 : 3; }

  auto operator<=>(const VariableKey&) const = default;

  /// Short display form, e.g. "x3", "h1:4", "l1:4", "s12", "w12:4", "m12:1".
  std::string name() const;
};

struct VariableKeyHash {
  std::size_t operator()(const VariableKey& key) const {
    std::size_t h = static_cast<std::size_t>(key.kind);
    h = h * 1000003u + static_cast<std::size_t>(key.i + 1);
    h = h * 1000003u + static_cast<std::size_t>(key.j + 1);
    h = h * 1000003u + static_cast<std::size_t>(key.k + 1);
    return h;
  }
};

}  // namespace dsf
