#include <doctest.h>

#include <cmath>
#include <limits>

#include "etkin/metrics.hpp"
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

TEST_CASE("manipulability and conditioning on a hand-checked matrix") {
  // Rows scale the axes by 1, 2 and 3: det(J J^T) = (1*2*3)^2 = 36,
  // manipulability 6, condition number 3.
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(3, 4);
  j(0, 0) = 1.0;
  j(1, 1) = 2.0;
  j(2, 2) = 3.0;
  CHECK(manipulability(j) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(condition_number(j) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("singular configurations report exactly zero volume") {
  const Ets ur5 = load_model("ur5");
  const Jacobian j = jacobian_fast(ur5, JointConfig::Zero(6));
  CHECK(manipulability_full(j) == 0.0);
  // Fully stretched, the arm has lost a direction: the conditioning is
  // astronomically bad even before the rank floor kicks in.
  CHECK(condition_number(j.matrix) >= 1e12);
}

TEST_CASE("a rank-deficient row slice degrades both metrics") {
  // Two joints that move the tool along the same line.
  const Ets slider = parse_ets("tx(q0) tx(q1)");
  const Jacobian j = jacobian_fast(slider, config({0.1, 0.2}));
  CHECK(manipulability(j, TaskDof::Translational) == 0.0);
  CHECK(condition_number(sub_jacobian(j, TaskDof::Translational)) >= 1e12);
}

TEST_CASE("a zero matrix is flagged as rank-deficient, not NaN") {
  CHECK(condition_number(Eigen::MatrixXd::Zero(3, 4)) ==
        std::numeric_limits<double>::infinity());
  CHECK(manipulability(Eigen::MatrixXd::Zero(3, 4)) == 0.0);
}

TEST_CASE("condition numbers never fall below one") {
  const Ets panda = load_model("panda");
  testing::SplitMix64 rng(71);
  for (int k = 0; k < 200; ++k) {
    const JointConfig q = panda.random_config(rng);
    const Jacobian j = jacobian_fast(panda, q);
    for (TaskDof dof : {TaskDof::Translational, TaskDof::Rotational}) {
      const double kappa = condition_number(j, dof);
      CHECK(kappa >= 1.0);
      const double m = manipulability(j, dof);
      CHECK(m >= 0.0);
      CHECK(std::isfinite(m));
    }
  }
}

TEST_CASE("metrics are invariant to reorienting the world frame") {
  // Mounting the same arm on a rotated base changes the Jacobian entries
  // but neither singular values nor swept volume.
  const std::string arm =
      "tz(0.2) Rz(q0) Ry(q1) tz(0.3) Rz(q2) Ry(q3) tx(0.25) Rz(q4) tz(0.1) "
      "Rx(q5)";
  const Ets plain = parse_ets(arm);
  const Ets tilted = parse_ets("Rx(50deg) Rz(-35deg) " + arm);

  testing::SplitMix64 rng(73);
  for (int k = 0; k < 50; ++k) {
    const JointConfig q = testing::random_config(plain, rng);
    const Jacobian ja = jacobian_fast(plain, q);
    const Jacobian jb = jacobian_fast(tilted, q);
    CHECK(std::abs(manipulability_full(ja) - manipulability_full(jb)) <
          1e-10);
    for (TaskDof dof : {TaskDof::Translational, TaskDof::Rotational}) {
      CHECK(std::abs(manipulability(ja, dof) - manipulability(jb, dof)) <
            1e-10);
      const double ka = condition_number(ja, dof);
      const double kb = condition_number(jb, dof);
      // Near singularities kappa itself is ill-conditioned; compare only
      // where the quotient is numerically trustworthy.
      if (std::max(ka, kb) < 1e6)
        CHECK(std::abs(ka - kb) < 1e-10 * std::max(ka, kb));
    }
  }
}

TEST_CASE("the two metrics can disagree about which pose is better") {
  // Manipulability measures volume, conditioning measures isotropy; a
  // seeded search finds a pose pair the two metrics rank oppositely.
  const Ets panda = load_model("panda");
  testing::SplitMix64 rng(79);
  bool found = false;
  JointConfig prev = panda.random_config(rng);
  for (int k = 0; k < 500 && !found; ++k) {
    const JointConfig next = panda.random_config(rng);
    const Jacobian ja = jacobian_fast(panda, prev);
    const Jacobian jb = jacobian_fast(panda, next);
    const double ma = manipulability(ja, TaskDof::Translational);
    const double mb = manipulability(jb, TaskDof::Translational);
    const double ka = condition_number(ja, TaskDof::Translational);
    const double kb = condition_number(jb, TaskDof::Translational);
    // Higher volume but worse conditioning (or vice versa).
    if ((ma > mb && ka > kb) || (ma < mb && ka < kb)) found = true;
    prev = next;
  }
  CHECK(found);
}

TEST_CASE("row slices pick the expected half of the Jacobian") {
  const Ets planar2 = load_model("planar2");
  const Jacobian j = jacobian_fast(planar2, config({0.2, -0.4}));
  CHECK(sub_jacobian(j, TaskDof::Translational) == j.matrix.topRows<3>());
  CHECK(sub_jacobian(j, TaskDof::Rotational) == j.matrix.bottomRows<3>());
}
