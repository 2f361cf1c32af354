#pragma once

#include <string>
#include <vector>

#include "etkin/jacobian.hpp"

namespace etkin {

// Joint rates realising a task-space velocity. A well-conditioned 6x6
// Jacobian is solved with the exact inverse; otherwise (redundant,
// under-actuated or ill-conditioned) the SVD pseudoinverse gives the
// minimum-norm least-squares solution, truncating singular values below
// 1e-8 * sigma_max. With strict = true the Jacobian must be 6x6 and a
// condition number above 1e12 throws SingularJacobian instead of falling
// back.
Eigen::VectorXd rrmc_qd(const Jacobian& j, const SpatialVelocity& nu,
                        bool strict = false);

struct ServoConfig {
  double kt = 2.0;        // translational gain, 1/s
  double kr = 2.0;        // rotational gain, 1/s
  double nu_max = 0.2;    // task-velocity norm cap
  double e_min = 1e-4;    // arrival threshold on ||e||
  double dt = 0.02;       // integration step, s
  int max_steps = 5000;
  bool strict_inverse = false;  // 6-joint chains only: fail on singularity
};

struct PbsCommand {
  SpatialVelocity nu;
  TaskError e;
  bool arrived;
};

// Proportional task velocity toward the goal with a norm cap: the gained
// error is rescaled to nu_max when it exceeds the cap, passed through while
// above the arrival threshold, and zero otherwise. The gained norm is
// compared against the unscaled threshold e_min, mirroring the published
// control law; `arrived` itself tests ||e|| <= e_min and forces nu to zero.
PbsCommand pbs_velocity(const Pose& current, const Pose& desired,
                        const ServoConfig& cfg);

enum class ServoStatus { Arrived, MaxSteps, Singular };

struct ServoRecord {
  int step;
  double t;
  double norm_e;
  double norm_nu;
  TaskError e;
  JointConfig q;
};

struct ServoLog {
  std::vector<ServoRecord> records;
  ServoStatus status = ServoStatus::MaxSteps;
  JointConfig q_final;
};

// Closed-loop position-based servo: at each step evaluate the pose, form the
// capped proportional velocity, resolve joint rates, and integrate
// q <- q + qd * dt (explicit Euler). One record is logged per step, the
// arrival step included. Joint limits are not enforced.
ServoLog simulate_pbs(const Ets& ets, const JointConfig& q0,
                      const Pose& desired, const ServoConfig& cfg);

// CSV serialisation: header step,t,normE,normNu,e1..e6,q1..qn; floats carry
// 17 significant digits.
std::string to_csv(const ServoLog& log);

}  // namespace etkin
