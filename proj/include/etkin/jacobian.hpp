#pragma once

#include "etkin/ets.hpp"

namespace etkin {

enum class Frame { World, EndEffector };

// Manipulator Jacobian tagged with the frame it is expressed in. Rows 1-3 map
// joint rates to translational velocity, rows 4-6 to angular velocity.
struct Jacobian {
  Eigen::Matrix<double, 6, Eigen::Dynamic> matrix;
  Frame frame = Frame::World;
};

// The six tangent-space generator matrices: the derivative of each pure
// elementary transform with respect to its parameter, at identity.
Mat4 generator(Motion motion, Axis axis);

// Derivative of one joint term's pose with respect to its joint variable,
// evaluated at q. A plain 4x4 value, not a pose (zero bottom row). A flipped
// rotation negates the generator. Throws NotAJoint for constant terms.
Mat4 et_derivative(const ElementaryTransform& et, const JointConfig& q);

// Derivative of the whole-chain pose with respect to joint j, by the chain
// rule: prefix * d(E_mu(j))/dq_j * suffix.
Mat4 pose_partial(const Ets& ets, const JointConfig& q, int j);

// Reference Jacobian assembled column-by-column from pose partials. Runs in
// O(n^2); kept as the slow trusted baseline.
Jacobian jacobian_naive(const Ets& ets, const JointConfig& q);

// O(n) Jacobian: a forward cumulative pass records each joint frame's
// rotation, a reverse cumulative pass records each remaining chain's
// translation; columns then come from a per-axis case table.
Jacobian jacobian_fast(const Ets& ets, const JointConfig& q);

// Re-express a world-frame Jacobian in the end-effector frame given the
// end-effector pose. Throws FrameMismatch when already end-effector.
Jacobian to_ee_frame(const Jacobian& j, const Pose& t);

}  // namespace etkin
