#include "etkin/servo.hpp"

#include <Eigen/SVD>

#include "etkin/errors.hpp"
#include "etkin/format.hpp"

namespace etkin {

namespace {

constexpr double kCondLimit = 1e12;    // exact-inverse conditioning gate
constexpr double kPinvRelTol = 1e-8;   // singular-value truncation, relative

Eigen::VectorXd pinv_solve(const Eigen::JacobiSVD<Eigen::MatrixXd>& svd,
                           const Vec6& nu) {
  const auto& sigma = svd.singularValues();
  const double cutoff = kPinvRelTol * sigma(0);
  Eigen::VectorXd inv_sigma = Eigen::VectorXd::Zero(sigma.size());
  for (int i = 0; i < sigma.size(); ++i)
    if (sigma(i) > cutoff) inv_sigma(i) = 1.0 / sigma(i);
  return svd.matrixV() * inv_sigma.asDiagonal() *
         (svd.matrixU().transpose() * nu);
}

}  // namespace

Eigen::VectorXd rrmc_qd(const Jacobian& j, const SpatialVelocity& nu,
                        bool strict) {
  const Eigen::MatrixXd m = j.matrix;
  if (strict && m.cols() != 6)
    throw DimensionMismatch("strict inverse needs a 6-joint chain");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double smax = sigma(0);
  const double smin = sigma(sigma.size() - 1);
  const bool conditioned = smin > 0.0 && smax / smin <= kCondLimit;

  if (strict && !conditioned)
    throw SingularJacobian("Jacobian condition number exceeds 1e12");
  if (m.cols() == 6 && conditioned)
    return Eigen::Matrix<double, 6, 6>(m).partialPivLu().solve(nu);
  return pinv_solve(svd, nu);
}

PbsCommand pbs_velocity(const Pose& current, const Pose& desired,
                        const ServoConfig& cfg) {
  PbsCommand cmd;
  cmd.e = pose_error(current, desired);
  cmd.arrived = cmd.e.norm() <= cfg.e_min;

  Vec6 ke = cmd.e;
  ke.head<3>() *= cfg.kt;
  ke.tail<3>() *= cfg.kr;
  const double norm_ke = ke.norm();

  if (cmd.arrived || norm_ke <= cfg.e_min)
    cmd.nu = Vec6::Zero();
  else if (norm_ke > cfg.nu_max)
    cmd.nu = ke * (cfg.nu_max / norm_ke);
  else
    cmd.nu = ke;
  return cmd;
}

ServoLog simulate_pbs(const Ets& ets, const JointConfig& q0,
                      const Pose& desired, const ServoConfig& cfg) {
  ServoLog log;
  JointConfig q = q0;
  for (int step = 0; step < cfg.max_steps; ++step) {
    const Pose t = ets.fkine(q);
    const PbsCommand cmd = pbs_velocity(t, desired, cfg);
    log.records.push_back(
        {step, step * cfg.dt, cmd.e.norm(), cmd.nu.norm(), cmd.e, q});
    if (cmd.arrived) {
      log.status = ServoStatus::Arrived;
      break;
    }
    try {
      const Eigen::VectorXd qd =
          rrmc_qd(jacobian_fast(ets, q), cmd.nu, cfg.strict_inverse);
      q += qd * cfg.dt;
    } catch (const SingularJacobian&) {
      log.status = ServoStatus::Singular;
      break;
    }
  }
  log.q_final = q;
  return log;
}

std::string to_csv(const ServoLog& log) {
  std::string out = "step,t,normE,normNu";
  for (int k = 1; k <= 6; ++k) out += ",e" + std::to_string(k);
  const auto n = log.records.empty() ? 0 : log.records.front().q.size();
  for (int k = 1; k <= n; ++k) out += ",q" + std::to_string(k);
  out += '\n';
  for (const auto& rec : log.records) {
    out += std::to_string(rec.step);
    out += ',' + format_sig17(rec.t);
    out += ',' + format_sig17(rec.norm_e);
    out += ',' + format_sig17(rec.norm_nu);
    for (int k = 0; k < 6; ++k) out += ',' + format_sig17(rec.e(k));
    for (int k = 0; k < rec.q.size(); ++k) out += ',' + format_sig17(rec.q(k));
    out += '\n';
  }
  return out;
}

}  // namespace etkin
