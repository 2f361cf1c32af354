#include "etkin/metrics.hpp"

#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace etkin {

namespace {

constexpr double kDetClamp = 1e-15;    // treat as singular below this
constexpr double kRankRelTol = 1e-300; // sigma_min / sigma_max rank floor

}  // namespace

Eigen::Matrix<double, 3, Eigen::Dynamic> sub_jacobian(const Jacobian& j,
                                                      TaskDof dof) {
  return dof == TaskDof::Translational ? j.matrix.topRows<3>()
                                       : j.matrix.bottomRows<3>();
}

double manipulability(const Eigen::MatrixXd& j) {
  const double det = (j * j.transpose()).determinant();
  if (std::abs(det) < kDetClamp) return 0.0;
  return std::sqrt(det);
}

double manipulability(const Jacobian& j, TaskDof dof) {
  return manipulability(Eigen::MatrixXd(sub_jacobian(j, dof)));
}

double manipulability_full(const Jacobian& j) {
  return manipulability(Eigen::MatrixXd(j.matrix));
}

double condition_number(const Eigen::MatrixXd& j) {
  const auto sigma = j.jacobiSvd().singularValues();
  const double smax = sigma(0);
  const double smin = sigma(sigma.size() - 1);
  if (smin < kRankRelTol * smax || smax == 0.0)
    return std::numeric_limits<double>::infinity();
  return smax / smin;
}

double condition_number(const Jacobian& j, TaskDof dof) {
  return condition_number(Eigen::MatrixXd(sub_jacobian(j, dof)));
}

}  // namespace etkin
