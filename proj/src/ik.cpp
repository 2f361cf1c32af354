#include "etkin/ik.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "etkin/errors.hpp"

namespace etkin {

namespace {

constexpr double kCondLimit = 1e12;     // strict-solve conditioning gate
constexpr double kPinvRelTol = 1e-8;    // singular-value truncation, relative
constexpr double kStartSigmaMin = 1e-10;  // random-start singularity gate
constexpr int kMaxRedraws = 1000;

Eigen::VectorXd pinv_apply(const Eigen::MatrixXd& m, const Eigen::VectorXd& b) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double cutoff = kPinvRelTol * sigma(0);
  Eigen::VectorXd inv_sigma = Eigen::VectorXd::Zero(sigma.size());
  for (int i = 0; i < sigma.size(); ++i)
    if (sigma(i) > cutoff) inv_sigma(i) = 1.0 / sigma(i);
  return svd.matrixV() * inv_sigma.asDiagonal() *
         (svd.matrixU().transpose() * b);
}

TaskError error_at(const Ets& ets, const JointConfig& q, const Pose& desired) {
  return pose_error(ets.fkine(q), desired);
}

void validate_options(const Ets& ets, const IkOptions& opts) {
  if (opts.lambda <= 0.0) throw std::invalid_argument("lambda must be > 0");
  if ((opts.we.array() < 0.0).any())
    throw std::invalid_argument("task-error weights must be >= 0");
  if (opts.e_min <= 0.0) throw std::invalid_argument("e_min must be > 0");
  if (opts.max_iterations < 1)
    throw std::invalid_argument("max_iterations must be >= 1");
  if (opts.max_searches < 1)
    throw std::invalid_argument("max_searches must be >= 1");
  if (opts.wn_floor_default <= 0.0)
    throw std::invalid_argument("Sugihara floor must be > 0");
  if (opts.wn_floor.size() != 0) {
    if (opts.wn_floor.size() != ets.joint_count())
      throw DimensionMismatch("Sugihara floor needs one entry per joint");
    if ((opts.wn_floor.array() <= 0.0).any())
      throw std::invalid_argument("Sugihara floor must be > 0");
  }
  if (opts.q0 && opts.q0->size() != ets.joint_count())
    throw DimensionMismatch("q0 has " + std::to_string(opts.q0->size()) +
                            " joints, model has " +
                            std::to_string(ets.joint_count()));
}

JointConfig step_for(const Ets& ets, const JointConfig& q, const Pose& desired,
                     const IkOptions& opts) {
  switch (opts.method) {
    case IkMethod::NR:
      return step_nr(ets, q, desired, false);
    case IkMethod::NRPinv:
      return step_nr(ets, q, desired, true);
    case IkMethod::GN:
      return step_gn(ets, q, desired, opts.we, false);
    case IkMethod::GNPinv:
      return step_gn(ets, q, desired, opts.we, true);
    default:
      return step_lm(ets, q, desired, opts);
  }
}

}  // namespace

double ik_error(const TaskError& e, const Vec6& we) {
  return 0.5 * e.dot(we.asDiagonal() * e);
}

JointConfig step_nr(const Ets& ets, const JointConfig& q, const Pose& desired,
                    bool pinv) {
  const Jacobian jac = jacobian_fast(ets, q);
  const TaskError e = error_at(ets, q, desired);
  if (pinv) return q + pinv_apply(jac.matrix, e);

  if (ets.joint_count() != 6)
    throw DimensionMismatch("exact Newton-Raphson needs a 6-joint chain");
  const Eigen::Matrix<double, 6, 6> m = jac.matrix;
  const auto sigma = m.jacobiSvd().singularValues();
  if (!(sigma(5) > 0.0) || sigma(0) / sigma(5) > kCondLimit)
    throw SingularJacobian("Jacobian condition number exceeds 1e12");
  return q + m.partialPivLu().solve(e);
}

JointConfig step_gn(const Ets& ets, const JointConfig& q, const Pose& desired,
                    const Vec6& we, bool pinv) {
  const Jacobian jac = jacobian_fast(ets, q);
  const TaskError e = error_at(ets, q, desired);
  const Eigen::MatrixXd jt_we = jac.matrix.transpose() * we.asDiagonal();
  const Eigen::MatrixXd normal = jt_we * jac.matrix;
  const Eigen::VectorXd g = jt_we * e;
  if (pinv) return q + pinv_apply(normal, g);

  const auto sigma = normal.jacobiSvd().singularValues();
  const double smin = sigma(sigma.size() - 1);
  if (!(smin > 0.0) || sigma(0) / smin > kCondLimit)
    throw SingularNormalMatrix("normal matrix condition number exceeds 1e12");
  return q + normal.partialPivLu().solve(g);
}

Eigen::VectorXd lm_damping(const IkOptions& opts, double e_k, int n) {
  switch (opts.method) {
    case IkMethod::LMWampler:
      return Eigen::VectorXd::Constant(n, opts.lambda);
    case IkMethod::LMChan:
      return Eigen::VectorXd::Constant(n, opts.lambda * e_k);
    case IkMethod::LMSugihara: {
      Eigen::VectorXd floor =
          opts.wn_floor.size() != 0
              ? opts.wn_floor
              : Eigen::VectorXd::Constant(n, opts.wn_floor_default);
      return floor.array() + e_k;
    }
    default:
      throw std::invalid_argument("not a Levenberg-Marquardt method");
  }
}

JointConfig step_lm(const Ets& ets, const JointConfig& q, const Pose& desired,
                    const IkOptions& opts) {
  const Jacobian jac = jacobian_fast(ets, q);
  const TaskError e = error_at(ets, q, desired);
  const double e_k = ik_error(e, opts.we);
  const Eigen::MatrixXd jt_we = jac.matrix.transpose() * opts.we.asDiagonal();
  Eigen::MatrixXd a = jt_we * jac.matrix;
  a.diagonal() += lm_damping(opts, e_k, ets.joint_count());
  const Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success)
    throw NumericalFailure("damped normal matrix is not positive definite");
  return q + llt.solve(jt_we * e);
}

IkResult solve_ik(const Ets& ets, const Pose& desired, const IkOptions& opts) {
  validate_options(ets, opts);
  SplitMix64 rng(opts.seed);

  const auto random_start = [&] {
    for (int k = 0; k < kMaxRedraws; ++k) {
      JointConfig q = ets.random_config(rng);
      const auto sigma = jacobian_fast(ets, q).matrix.jacobiSvd().singularValues();
      if (sigma(sigma.size() - 1) >= kStartSigmaMin) return q;
    }
    throw NumericalFailure("could not draw a non-singular start");
  };

  IkResult result;
  for (int search = 0; search < opts.max_searches; ++search) {
    JointConfig q = (search == 0 && opts.q0) ? *opts.q0 : random_start();
    ++result.searches;

    double e_val = ik_error(error_at(ets, q, desired), opts.we);
    bool singular_failure = false;
    if (e_val > opts.e_min) {
      for (int iter = 0; iter < opts.max_iterations; ++iter) {
        try {
          q = step_for(ets, q, desired, opts);
        } catch (const SingularJacobian&) {
          singular_failure = true;
          break;
        } catch (const SingularNormalMatrix&) {
          singular_failure = true;
          break;
        } catch (const NumericalFailure&) {
          singular_failure = true;
          break;
        }
        ++result.iterations;
        e_val = ik_error(error_at(ets, q, desired), opts.we);
        if (e_val <= opts.e_min) break;
      }
    }

    result.q = q;
    result.e_final = e_val;
    if (e_val <= opts.e_min) {
      result.success = true;
      result.status = IkStatus::Converged;
      return result;
    }
    result.status =
        singular_failure ? IkStatus::Singular : IkStatus::BudgetExhausted;
  }
  return result;
}

}  // namespace etkin
