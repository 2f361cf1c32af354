#pragma once

#include "etkin/jacobian.hpp"

namespace etkin {

enum class TaskDof { Translational, Rotational };

// 3xN block of the Jacobian for the chosen task degrees of freedom.
Eigen::Matrix<double, 3, Eigen::Dynamic> sub_jacobian(const Jacobian& j,
                                                      TaskDof dof);

// Yoshikawa manipulability sqrt(det(J J^T)) of an arbitrary row-slice.
// Determinants with |det| < 1e-15 clamp to zero, so singular configurations
// report exactly 0.
double manipulability(const Eigen::MatrixXd& j);
double manipulability(const Jacobian& j, TaskDof dof);

// Manipulability of the full 6xN Jacobian. Mixes metres and radians in one
// volume; kept only for side-by-side comparison with the 3xN forms.
double manipulability_full(const Jacobian& j);

// sigma_max / sigma_min in [1, +inf]; +inf when rank-deficient
// (sigma_min < 1e-300 * sigma_max).
double condition_number(const Eigen::MatrixXd& j);
double condition_number(const Jacobian& j, TaskDof dof);

}  // namespace etkin
