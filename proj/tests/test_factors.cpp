// Copyright (c) 2026 DSF contributors. MIT License.

#include <doctest.h>

#include <memory>

#include "dsf/factors.hpp"
#include "test_utils.hpp"

using namespace dsf;
using namespace dsf::testing;

namespace {

const double kPi = 3.14159265358979323846;
const NoiseModel kNoise3 = NoiseModel::Isotropic(3, 1.0);
const NoiseModel kNoise6 = NoiseModel::Isotropic(6, 1.0);

void checkJacobians(const Factor& factor, const Values& values, double tol = 1e-5) {
  std::vector<Eigen::MatrixXd> analytic;
  factor.errorWithJacobians(values, analytic);
  const std::vector<Eigen::MatrixXd> numeric = numericalJacobians(factor, values);
  REQUIRE(analytic.size() == numeric.size());
  for (std::size_t b = 0; b < analytic.size(); ++b) {
    CAPTURE(b);
    CHECK(maxRelativeError(analytic[b], numeric[b]) < tol);
  }
}

Values randomValuesFor(const Factor& factor, std::mt19937_64& rng) {
  Values values;
  for (const VariableKey& key : factor.keys()) {
    if (key.isPose()) {
      values.insert(key, randomPose(rng, 2.0, 2.0));
    } else {
      values.insert(key, randomPoint(rng));
    }
  }
  return values;
}

}  // namespace

TEST_CASE("point measurement residual examples") {
  const VariableKey cam = VariableKey::cameraPose(0);
  const VariableKey pt = VariableKey::staticPoint(0);

  Values values;
  values.insert(cam, Pose::Identity());
  values.insert(pt, Point3(1, 2, 3));
  CHECK(PointMeasurementFactor(cam, pt, Point3(1, 2, 3), kNoise3).error(values).norm() ==
        0.0);
  CHECK((PointMeasurementFactor(cam, pt, Point3(1, 2, 4), kNoise3).error(values) -
         Eigen::Vector3d(0, 0, 1))
            .norm() == 0.0);

  Values shifted;
  shifted.insert(cam, Pose::Translation(1, 0, 0));
  shifted.insert(pt, Point3(1, 2, 3));
  CHECK(PointMeasurementFactor(cam, pt, Point3(0, 2, 3), kNoise3).error(shifted).norm() <
        1e-15);
}

TEST_CASE("odometry residual examples") {
  const VariableKey x0 = VariableKey::cameraPose(0);
  const VariableKey x1 = VariableKey::cameraPose(1);

  Values both_identity;
  both_identity.insert(x0, Pose::Identity());
  both_identity.insert(x1, Pose::Identity());
  CHECK(OdometryFactor(x0, x1, Pose::Identity(), kNoise6).error(both_identity).norm() ==
        0.0);

  Values moved;
  moved.insert(x0, Pose::Identity());
  moved.insert(x1, Pose::Translation(1, 0, 0));
  CHECK(OdometryFactor(x0, x1, Pose::Translation(1, 0, 0), kNoise6)
            .error(moved)
            .norm() < 1e-15);

  Eigen::VectorXd expected(6);
  expected << 0, 0, 0, 1, 0, 0;
  CHECK((OdometryFactor(x0, x1, Pose::Translation(1, 0, 0), kNoise6)
             .error(both_identity) -
         expected)
            .norm() < 1e-15);
}

TEST_CASE("world motion ternary residual examples") {
  const VariableKey cur = VariableKey::dynamicPointWorld(0, 1);
  const VariableKey prev = VariableKey::dynamicPointWorld(0, 0);
  const VariableKey motion = VariableKey::objectMotion(0, 1);
  const WorldMotionTernaryFactor factor(cur, prev, motion, kNoise3);

  Values at_rest;
  at_rest.insert(cur, Point3(1, 1, 1));
  at_rest.insert(prev, Point3(1, 1, 1));
  at_rest.insert(motion, Pose::Identity());
  CHECK(factor.error(at_rest).norm() == 0.0);

  // Matches the transform-point example: Rz(90deg) about (1,0,0).
  Values rotating;
  rotating.insert(cur, Point3(1, 1, 0));
  rotating.insert(prev, Point3(2, 0, 0));
  rotating.insert(motion, frameChangeMotion(Pose::RotZ(kPi / 2.0),
                                            Pose::Translation(1, 0, 0)));
  CHECK(factor.error(rotating).norm() < 1e-12);

  Values off;
  off.insert(cur, Point3(0, 0, 0));
  off.insert(prev, Point3(0, 0, 0));
  off.insert(motion, Pose::Translation(0, 1, 0));
  CHECK((factor.error(off) - Eigen::Vector3d(0, -1, 0)).norm() == 0.0);
}

TEST_CASE("motion smoothing residual examples") {
  const VariableKey ha = VariableKey::objectMotion(0, 1);
  const VariableKey hb = VariableKey::objectMotion(0, 2);
  const MotionSmoothingFactor factor(ha, hb, kNoise6);

  auto rng = makeRng(53);
  Values constant;
  const Pose h = randomPose(rng);
  constant.insert(ha, h);
  constant.insert(hb, h);
  CHECK(factor.error(constant).norm() < 1e-12);

  Values translating;
  translating.insert(ha, Pose::Identity());
  translating.insert(hb, Pose::Translation(0.1, 0, 0));
  Eigen::VectorXd expected(6);
  expected << 0, 0, 0, 0.1, 0, 0;
  CHECK((factor.error(translating) - expected).norm() < 1e-15);

  Values turning;
  turning.insert(ha, Pose::RotZ(10.0 * kPi / 180.0));
  turning.insert(hb, Pose::RotZ(12.0 * kPi / 180.0));
  expected << 0, 0, 2.0 * kPi / 180.0, 0, 0, 0;
  CHECK((factor.error(turning) - expected).norm() < 1e-12);
}

TEST_CASE("object-centric point residual examples") {
  const VariableKey cam = VariableKey::cameraPose(0);
  const VariableKey obj = VariableKey::objectPose(0, 0);
  const VariableKey pt = VariableKey::dynamicPointLocal(0, 0);

  Values values;
  values.insert(cam, Pose::Identity());
  values.insert(obj, Pose::Identity());
  values.insert(pt, Point3(1, 0, 0));
  CHECK(ObjectCentricPointFactor(cam, obj, pt, Point3(1, 0, 0), kNoise3)
            .error(values)
            .norm() == 0.0);

  Values offset_object;
  offset_object.insert(cam, Pose::Identity());
  offset_object.insert(obj, Pose::Translation(0, 5, 0));
  offset_object.insert(pt, Point3(1, 0, 0));
  CHECK(ObjectCentricPointFactor(cam, obj, pt, Point3(1, 5, 0), kNoise3)
            .error(offset_object)
            .norm() < 1e-15);

  Values chained;
  chained.insert(cam, Pose::Translation(0, 0, 1));
  chained.insert(obj, Pose::Translation(0, 5, 0));
  chained.insert(pt, Point3(1, 0, 0));
  CHECK(ObjectCentricPointFactor(cam, obj, pt, Point3(1, 5, -1), kNoise3)
            .error(chained)
            .norm() < 1e-15);
}

TEST_CASE("object-centric motion residual examples") {
  const VariableKey cur = VariableKey::objectPose(0, 1);
  const VariableKey prev = VariableKey::objectPose(0, 0);
  const VariableKey motion = VariableKey::objectMotion(0, 1);
  const VariableKey pt = VariableKey::dynamicPointLocal(0, 0);
  const ObjectCentricMotionFactor factor(cur, prev, motion, pt, kNoise3);

  auto rng = makeRng(59);
  Values all_identity;
  all_identity.insert(cur, Pose::Identity());
  all_identity.insert(prev, Pose::Identity());
  all_identity.insert(motion, Pose::Identity());
  all_identity.insert(pt, randomPoint(rng));
  CHECK(factor.error(all_identity).norm() == 0.0);

  Values origin_point;
  origin_point.insert(cur, Pose::Translation(1, 0, 0));
  origin_point.insert(prev, Pose::Identity());
  origin_point.insert(motion, Pose::Identity());
  origin_point.insert(pt, Point3(0, 0, 0));
  CHECK((factor.error(origin_point) - Eigen::Vector3d(1, 0, 0)).norm() == 0.0);

  // Vanishes whenever L_k = H * L_{k-1}, for any point.
  for (int n = 0; n < 50; ++n) {
    const Pose previous = randomPose(rng);
    const Pose h = randomPose(rng);
    Values consistent;
    consistent.insert(cur, h * previous);
    consistent.insert(prev, previous);
    consistent.insert(motion, h);
    consistent.insert(pt, randomPoint(rng));
    CHECK(factor.error(consistent).norm() < 1e-9);
  }
}

TEST_CASE("object kinematic residual examples") {
  const VariableKey cur = VariableKey::objectPose(0, 1);
  const VariableKey prev = VariableKey::objectPose(0, 0);
  const VariableKey motion = VariableKey::objectMotion(0, 1);
  const ObjectKinematicFactor factor(cur, prev, motion, kNoise6);

  auto rng = makeRng(61);
  for (int n = 0; n < 50; ++n) {
    const Pose previous = randomPose(rng);
    const Pose h = randomPose(rng);
    Values consistent;
    consistent.insert(cur, h * previous);
    consistent.insert(prev, previous);
    consistent.insert(motion, h);
    CHECK(factor.error(consistent).norm() < 1e-9);
  }

  Values translated;
  translated.insert(cur, Pose::Identity());
  translated.insert(prev, Pose::Identity());
  translated.insert(motion, Pose::Translation(1, 0, 0));
  Eigen::VectorXd expected(6);
  expected << 0, 0, 0, 1, 0, 0;
  CHECK((factor.error(translated) - expected).norm() < 1e-15);

  Values rotated;
  rotated.insert(cur, Pose::RotZ(kPi / 2.0));
  rotated.insert(prev, Pose::Identity());
  rotated.insert(motion, Pose::RotZ(kPi / 2.0));
  CHECK(factor.error(rotated).norm() < 1e-12);
}

TEST_CASE("kinematic zero implies object-centric motion zero") {
  auto rng = makeRng(67);
  const VariableKey cur = VariableKey::objectPose(0, 1);
  const VariableKey prev = VariableKey::objectPose(0, 0);
  const VariableKey motion = VariableKey::objectMotion(0, 1);
  const VariableKey pt = VariableKey::dynamicPointLocal(0, 0);

  for (int n = 0; n < 100; ++n) {
    const Pose previous = randomPose(rng);
    const Pose h = randomPose(rng);
    Values values;
    values.insert(cur, h * previous);
    values.insert(prev, previous);
    values.insert(motion, h);
    values.insert(pt, randomPoint(rng));
    CHECK(ObjectKinematicFactor(cur, prev, motion, kNoise6).error(values).norm() <
          1e-9);
    CHECK(ObjectCentricMotionFactor(cur, prev, motion, pt, kNoise3)
              .error(values)
              .norm() < 1e-9);
  }
}

TEST_CASE("ternary factor agrees with the frame-change identities") {
  auto rng = makeRng(71);
  for (int n = 0; n < 100; ++n) {
    const Pose previous_pose = randomPose(rng);
    const Pose current_pose = randomPose(rng);
    const Point3 local = randomPoint(rng);
    const Pose body_motion = previous_pose.inverse() * current_pose;
    const Pose world_motion = frameChangeMotion(body_motion, previous_pose);

    Values values;
    values.insert(VariableKey::dynamicPointWorld(0, 1), current_pose * local);
    values.insert(VariableKey::dynamicPointWorld(0, 0), previous_pose * local);
    values.insert(VariableKey::objectMotion(0, 1), world_motion);
    const WorldMotionTernaryFactor factor(VariableKey::dynamicPointWorld(0, 1),
                                          VariableKey::dynamicPointWorld(0, 0),
                                          VariableKey::objectMotion(0, 1), kNoise3);
    CHECK(factor.error(values).norm() < 1e-9);
  }
}

TEST_CASE("prior factor jacobians at the mean") {
  Values values;
  values.insert(VariableKey::cameraPose(0), Pose::Identity());
  const PriorPoseFactor prior(VariableKey::cameraPose(0), Pose::Identity(), kNoise6);
  std::vector<Eigen::MatrixXd> jacobians;
  prior.errorWithJacobians(values, jacobians);
  CHECK(maxAbsDiff(jacobians[0], -Matrix6::Identity()) < 1e-12);
  const auto numeric = numericalJacobians(prior, values);
  CHECK(maxAbsDiff(numeric[0], -Matrix6::Identity()) < 1e-5);

  Values point_values;
  point_values.insert(VariableKey::staticPoint(0), Point3(1, 2, 3));
  const PriorPointFactor point_prior(VariableKey::staticPoint(0), Point3(1, 2, 3),
                                     kNoise3);
  const auto point_numeric = numericalJacobians(point_prior, point_values);
  CHECK(maxAbsDiff(point_numeric[0], -Matrix3::Identity()) < 1e-5);
}

TEST_CASE("point measurement jacobian wrt point at identity camera is -I") {
  Values values;
  values.insert(VariableKey::cameraPose(0), Pose::Identity());
  values.insert(VariableKey::staticPoint(0), Point3(1, 2, 3));
  const PointMeasurementFactor factor(VariableKey::cameraPose(0),
                                      VariableKey::staticPoint(0), Point3(1, 2, 3),
                                      kNoise3);
  const auto numeric = numericalJacobians(factor, values);
  CHECK(maxAbsDiff(numeric[1], -Matrix3::Identity()) < 1e-5);
}

TEST_CASE("analytic jacobians match finite differences at 100 random points") {
  auto rng = makeRng(73);

  std::vector<std::shared_ptr<Factor>> factors;
  factors.push_back(std::make_shared<PriorPoseFactor>(VariableKey::cameraPose(0),
                                                      randomPose(rng), kNoise6));
  factors.push_back(std::make_shared<PriorPointFactor>(VariableKey::staticPoint(0),
                                                       randomPoint(rng), kNoise3));
  factors.push_back(std::make_shared<PointMeasurementFactor>(
      VariableKey::cameraPose(0), VariableKey::staticPoint(0), randomPoint(rng),
      kNoise3));
  factors.push_back(std::make_shared<OdometryFactor>(VariableKey::cameraPose(0),
                                                     VariableKey::cameraPose(1),
                                                     randomPose(rng), kNoise6));
  factors.push_back(std::make_shared<WorldMotionTernaryFactor>(
      VariableKey::dynamicPointWorld(0, 1), VariableKey::dynamicPointWorld(0, 0),
      VariableKey::objectMotion(0, 1), kNoise3));
  factors.push_back(std::make_shared<MotionSmoothingFactor>(
      VariableKey::objectMotion(0, 1), VariableKey::objectMotion(0, 2), kNoise6));
  factors.push_back(std::make_shared<ObjectCentricPointFactor>(
      VariableKey::cameraPose(0), VariableKey::objectPose(0, 0),
      VariableKey::dynamicPointLocal(0, 0), randomPoint(rng), kNoise3));
  factors.push_back(std::make_shared<ObjectCentricMotionFactor>(
      VariableKey::objectPose(0, 1), VariableKey::objectPose(0, 0),
      VariableKey::objectMotion(0, 1), VariableKey::dynamicPointLocal(0, 0),
      kNoise3));
  factors.push_back(std::make_shared<ObjectKinematicFactor>(
      VariableKey::objectPose(0, 1), VariableKey::objectPose(0, 0),
      VariableKey::objectMotion(0, 1), kNoise6));

  for (const auto& factor : factors) {
    CAPTURE(factorKindName(factor->kind()));
    for (int n = 0; n < 100; ++n) {
      checkJacobians(*factor, randomValuesFor(*factor, rng));
    }
  }
}
