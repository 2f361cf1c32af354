#include <doctest.h>

#include <cmath>

#include "etkin/errors.hpp"
#include "etkin/ets.hpp"
#include "etkin/parser.hpp"

#include "support.hpp"

using namespace etkin;

namespace {

JointConfig config(std::initializer_list<double> values) {
  JointConfig q(static_cast<Eigen::Index>(values.size()));
  int i = 0;
  for (double v : values) q[i++] = v;
  return q;
}

}  // namespace

TEST_CASE("elementary transforms evaluate to the expected matrices") {
  const JointConfig q = config({M_PI / 2.0});

  const auto rz = ElementaryTransform::joint(Motion::Rotation, Axis::Z, 0);
  const Mat4 m = rz.matrix(q);
  CHECK(std::abs(m(0, 0)) < 1e-15);
  CHECK(m(1, 0) == 1.0);
  CHECK(m(0, 1) == -1.0);
  CHECK(m(2, 2) == 1.0);

  const auto tx = ElementaryTransform::constant(Motion::Translation, Axis::X, 0.25);
  CHECK(tx.matrix(q)(0, 3) == 0.25);
  CHECK(tx.matrix(q).topLeftCorner<3, 3>() == Mat3::Identity());

  // A flipped rotation inverts the sign of its joint variable.
  const auto ry_flip = ElementaryTransform::joint(Motion::Rotation, Axis::Y, 0, true);
  const auto ry = ElementaryTransform::joint(Motion::Rotation, Axis::Y, 0);
  CHECK(ry_flip.matrix(config({0.7})) == ry.matrix(config({-0.7})));
}

TEST_CASE("eval_et validates the joint index") {
  const auto rx = ElementaryTransform::joint(Motion::Rotation, Axis::X, 2);
  CHECK_THROWS_AS(eval_et(rx, config({0.0, 0.0})), JointIndexOutOfRange);
  CHECK_NOTHROW(eval_et(rx, config({0.0, 0.0, 0.3})));
}

TEST_CASE("constant and joint accessors police their kind") {
  const auto c = ElementaryTransform::constant(Motion::Rotation, Axis::X, 0.5);
  const auto j = ElementaryTransform::joint(Motion::Rotation, Axis::X, 1);
  CHECK(c.constant_value() == 0.5);
  CHECK_THROWS_AS(c.joint_index(), NotAJoint);
  CHECK(j.joint_index() == 1);
  CHECK_THROWS_AS(j.constant_value(), NotAJoint);
  CHECK_THROWS_AS(
      ElementaryTransform::joint(Motion::Translation, Axis::X, 0, true),
      std::invalid_argument);
}

TEST_CASE("two-link planar arm forward kinematics") {
  const Ets planar2 = load_model("planar2");
  CHECK(planar2.joint_count() == 2);
  CHECK(planar2.size() == 4);

  const Pose reach = planar2.fkine(config({0.0, 0.0}));
  CHECK((reach.translation() - Vec3{2.0, 0.0, 0.0}).norm() < 1e-15);

  const Pose up = planar2.fkine(config({M_PI / 2.0, 0.0}));
  CHECK((up.translation() - Vec3{0.0, 2.0, 0.0}).norm() < 1e-15);
  CHECK((up.rotation().col(0) - Vec3{0.0, 1.0, 0.0}).norm() < 1e-15);

  const Pose bent = planar2.fkine(config({0.0, M_PI / 2.0}));
  CHECK((bent.translation() - Vec3{1.0, 1.0, 0.0}).norm() < 1e-15);

  CHECK_THROWS_AS(planar2.fkine(config({0.0, 0.0, 0.0})), DimensionMismatch);
}

TEST_CASE("mu maps joints to their sequence indices") {
  const Ets planar2 = load_model("planar2");
  CHECK(planar2.mu(0) == 0);
  CHECK(planar2.mu(1) == 2);
  CHECK_THROWS_AS(planar2.mu(2), JointIndexOutOfRange);
  CHECK_THROWS_AS(planar2.mu(-1), JointIndexOutOfRange);

  // Seven-joint arm: the fifth joint variable sits at sequence index 9.
  const Ets panda = load_model("panda");
  CHECK(panda.mu(4) == 9);
}

TEST_CASE("subsequence_pose walks between link frames") {
  const Ets planar2 = load_model("planar2");
  const JointConfig qz = config({0.0, 0.0});

  // a == b gives the identity.
  CHECK(planar2.subsequence_pose(1, 1, qz).matrix() == Mat4::Identity());

  // Base to the last joint frame: the trailing constant link lies beyond.
  const Pose p02 = planar2.subsequence_pose(0, 2, qz);
  CHECK((p02.translation() - Vec3{1.0, 0.0, 0.0}).norm() < 1e-15);

  // Full-range call equals the chain up to the last joint term.
  const JointConfig q = config({0.4, -0.8});
  const Pose full = planar2.subsequence_pose(0, 2, q);
  const Pose manual = Pose(Mat4(planar2.term(0).matrix(q) *
                                planar2.term(1).matrix(q) *
                                planar2.term(2).matrix(q)));
  CHECK((full.matrix() - manual.matrix()).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(planar2.subsequence_pose(2, 1, qz), InvalidLinkRange);
  CHECK_THROWS_AS(planar2.subsequence_pose(0, 3, qz), InvalidLinkRange);
  CHECK_THROWS_AS(planar2.subsequence_pose(-1, 1, qz), InvalidLinkRange);
}

TEST_CASE("programmatic construction rejects bad joint numbering") {
  using ET = ElementaryTransform;
  CHECK_THROWS_AS(Ets({ET::joint(Motion::Rotation, Axis::Z, 0),
                       ET::joint(Motion::Rotation, Axis::X, 0)}),
                  DuplicateJoint);
  CHECK_THROWS_AS(Ets({ET::joint(Motion::Rotation, Axis::Z, 1)}),
                  NonMonotonicJoint);
  CHECK_THROWS_AS(Ets({ET::joint(Motion::Rotation, Axis::Z, 0),
                       ET::joint(Motion::Rotation, Axis::X, 2)}),
                  NonMonotonicJoint);
}

TEST_CASE("six-joint arm zero configuration matches the published frame") {
  const Ets ur5 = load_model("ur5");
  CHECK(ur5.joint_count() == 6);

  const Pose t = ur5.fkine(JointConfig::Zero(6));
  CHECK((t.translation() - Vec3{-0.81725, -0.19145, -0.005491}).norm() < 1e-12);

  Mat3 expected;  // quarter turn about x
  // clang-format off
  expected << 1.0, 0.0,  0.0,
              0.0, 0.0, -1.0,
              0.0, 1.0,  0.0;
  // clang-format on
  CHECK((t.rotation() - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("seven-joint arm structure and zero configuration") {
  const Ets panda = load_model("panda");
  CHECK(panda.joint_count() == 7);
  CHECK(panda.size() == 15);

  // Exactly two flipped rotations, at sequence indices 6 and 10.
  for (int i = 0; i < panda.size(); ++i) {
    const bool should_flip = (i == 6 || i == 10);
    CHECK(panda.term(i).flip() == should_flip);
  }

  // The end-effector height is the signed sum of the constant z offsets:
  // 0.333 + 0.316 + 0.384 - 0.107 (the last one follows a half-turn about x).
  const Pose t = panda.fkine(JointConfig::Zero(7));
  CHECK((t.translation() - Vec3{0.088, 0.0, 0.926}).norm() < 1e-12);
  CHECK(t.translation().z() > 0.0);
  const Mat3 expected = Vec3{1.0, -1.0, -1.0}.asDiagonal();
  CHECK((t.rotation() - expected).cwiseAbs().maxCoeff() < 1e-12);

  // Joint limits ship with the model.
  CHECK(panda.qlim()(3, 0) == -3.0718);
  CHECK(panda.qlim()(3, 1) == -0.0698);
}

TEST_CASE("builtins stay valid across random configurations") {
  for (const auto& name : builtin_model_names()) {
    const Ets model = load_model(name);
    testing::SplitMix64 rng(23);
    for (int k = 0; k < 1000; ++k) {
      const JointConfig q = model.random_config(rng);
      for (int j = 0; j < model.joint_count(); ++j) {
        CHECK(q[j] >= model.qlim()(j, 0));
        CHECK(q[j] <= model.qlim()(j, 1));
      }
      CHECK_NOTHROW(model.fkine(q));  // Pose construction validates
    }
  }
}

TEST_CASE("qlim replacement validates its shape") {
  Ets planar2 = load_model("planar2");
  Eigen::Matrix<double, Eigen::Dynamic, 2> bad(1, 2);
  bad << -1.0, 1.0;
  CHECK_THROWS_AS(planar2.set_qlim(bad), DimensionMismatch);

  Eigen::Matrix<double, Eigen::Dynamic, 2> inverted(2, 2);
  inverted << 1.0, -1.0, -1.0, 1.0;
  CHECK_THROWS_AS(planar2.set_qlim(inverted), DimensionMismatch);
}
