#pragma once

#include <cstdint>
#include <optional>

#include "etkin/jacobian.hpp"
#include "etkin/rng.hpp"

namespace etkin {

enum class IkMethod { NR, NRPinv, GN, GNPinv, LMWampler, LMChan, LMSugihara };

struct IkOptions {
  IkMethod method = IkMethod::LMChan;
  Vec6 we = Vec6::Ones();     // diagonal of the task-error weight W_e
  double lambda = 1.0;        // Wampler / Chan damping parameter, > 0
  // Sugihara per-joint damping floor; empty broadcasts wn_floor_default.
  Eigen::VectorXd wn_floor;
  double wn_floor_default = 1e-4;
  double e_min = 1e-10;       // convergence threshold on E = 1/2 e^T W_e e
  int max_iterations = 30;    // per search, >= 1
  int max_searches = 100;     // >= 1
  std::uint64_t seed = 0;
  std::optional<JointConfig> q0;  // start of the first search
};

enum class IkStatus { Converged, BudgetExhausted, Singular };

struct IkResult {
  JointConfig q;          // converged configuration, or the last iterate
  bool success = false;
  int iterations = 0;     // Jacobian evaluations, failed searches included
  int searches = 0;
  double e_final = 0.0;   // E at the returned q
  IkStatus status = IkStatus::BudgetExhausted;
};

// Scalar objective E = 1/2 e^T W_e e.
double ik_error(const TaskError& e, const Vec6& we);

// One Newton-Raphson update q + J^-1 e. strict form requires a 6-joint chain
// and throws SingularJacobian above condition number 1e12; the pinv form uses
// the SVD pseudoinverse and accepts any joint count.
JointConfig step_nr(const Ets& ets, const JointConfig& q, const Pose& desired,
                    bool pinv);

// One Gauss-Newton update through the normal equations
// (J^T W_e J) dq = J^T W_e e. strict form throws SingularNormalMatrix when
// the normal matrix is near-singular; the pinv form pseudo-inverts it.
JointConfig step_gn(const Ets& ets, const JointConfig& q, const Pose& desired,
                    const Vec6& we, bool pinv);

// Diagonal of the damping matrix W_n for one Levenberg-Marquardt iteration:
// Wampler holds it constant at lambda, Chan scales lambda by the current
// error E_k, Sugihara adds E_k on top of the per-joint floor.
Eigen::VectorXd lm_damping(const IkOptions& opts, double e_k, int n);

// One Levenberg-Marquardt update solving
// (J^T W_e J + W_n) dq = J^T W_e e via Cholesky. Throws NumericalFailure when
// the damped normal matrix is not positive definite.
JointConfig step_lm(const Ets& ets, const JointConfig& q, const Pose& desired,
                    const IkOptions& opts);

// Random-restart numerical inverse kinematics. Each search starts from the
// provided q0 (first search only) or a uniform random draw within the joint
// limits, redrawing starts whose smallest singular value is below 1e-10
// (redraws are not counted as searches). A search iterates its step rule
// until E <= e_min, its iteration budget runs out, or a singular failure
// abandons it; iterations accumulate across searches. Deterministic for a
// fixed (seed, options, desired) triple.
IkResult solve_ik(const Ets& ets, const Pose& desired, const IkOptions& opts);

}  // namespace etkin
