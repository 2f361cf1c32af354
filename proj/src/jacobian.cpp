#include "etkin/jacobian.hpp"

#include "etkin/errors.hpp"

namespace etkin {

Mat4 generator(Motion motion, Axis axis) {
  Mat4 g = Mat4::Zero();
  const int a = static_cast<int>(axis);
  if (motion == Motion::Translation) {
    g(a, 3) = 1.0;
  } else {
    // skew3 of the unit axis in the rotation block.
    const int r = (a + 1) % 3, c = (a + 2) % 3;
    g(c, r) = 1.0;
    g(r, c) = -1.0;
  }
  return g;
}

Mat4 et_derivative(const ElementaryTransform& et, const JointConfig& q) {
  if (!et.is_joint())
    throw NotAJoint("constant transforms have no joint derivative");
  Mat4 g = generator(et.motion(), et.axis());
  if (et.flip()) g = -g;  // angle runs as -q_j, so the tangent negates
  if (et.motion() == Motion::Translation) return g;
  return g * et.matrix(q);
}

Mat4 pose_partial(const Ets& ets, const JointConfig& q, int j) {
  const int m = ets.mu(j);  // validates j
  if (q.size() != ets.joint_count())
    throw DimensionMismatch("configuration has " + std::to_string(q.size()) +
                            " joints, model has " +
                            std::to_string(ets.joint_count()));
  Mat4 t = Mat4::Identity();
  for (int i = 0; i < m; ++i) t *= ets.term(i).matrix(q);
  t *= et_derivative(ets.term(m), q);
  for (int i = m + 1; i < ets.size(); ++i) t *= ets.term(i).matrix(q);
  return t;
}

Jacobian jacobian_naive(const Ets& ets, const JointConfig& q) {
  const int n = ets.joint_count();
  Jacobian jac;
  jac.matrix.resize(6, n);
  const Mat3 r_end_t = ets.fkine(q).rotation().transpose();
  for (int j = 0; j < n; ++j) {
    const Mat4 d = pose_partial(ets, q, j);
    jac.matrix.col(j).head<3>() = trans_block(d);
    jac.matrix.col(j).tail<3>() = vex3(rot_block(d) * r_end_t);
  }
  return jac;
}

Jacobian jacobian_fast(const Ets& ets, const JointConfig& q) {
  const int n = ets.joint_count();
  const int m = ets.size();
  if (q.size() != n)
    throw DimensionMismatch("configuration has " + std::to_string(q.size()) +
                            " joints, model has " + std::to_string(n));

  // Forward pass: rotation of each joint frame (the prefix product up to and
  // including the joint's own term; rotating about its own axis does not
  // change the conjugated generator, so including the term is free).
  std::vector<Mat3> joint_rot(n);
  {
    Mat4 prefix = Mat4::Identity();
    int j = 0;
    for (int i = 0; i < m; ++i) {
      prefix *= ets.term(i).matrix(q);
      if (ets.term(i).is_joint()) joint_rot[j++] = rot_block(prefix);
    }
  }

  // Reverse pass: translation of the remaining chain past each joint term.
  std::vector<Vec3> tail_trans(n);
  {
    Mat4 suffix = Mat4::Identity();
    int j = n - 1;
    for (int i = m - 1; i >= 0; --i) {
      if (ets.term(i).is_joint()) tail_trans[j--] = trans_block(suffix);
      suffix = ets.term(i).matrix(q) * suffix;
    }
  }

  Jacobian jac;
  jac.matrix.resize(6, n);
  for (int j = 0; j < n; ++j) {
    const auto& et = ets.term(ets.mu(j));
    const Mat3& r = joint_rot[j];
    const double sign = et.flip() ? -1.0 : 1.0;
    auto col = jac.matrix.col(j);
    if (et.motion() == Motion::Translation) {
      col.head<3>() = r.col(static_cast<int>(et.axis()));
      col.tail<3>().setZero();
      continue;
    }
    const Vec3& te = tail_trans[j];
    switch (et.axis()) {
      case Axis::X:
        col.head<3>() = sign * (r.col(2) * te.y() - r.col(1) * te.z());
        break;
      case Axis::Y:
        col.head<3>() = sign * (r.col(0) * te.z() - r.col(2) * te.x());
        break;
      case Axis::Z:
        col.head<3>() = sign * (r.col(1) * te.x() - r.col(0) * te.y());
        break;
    }
    col.tail<3>() = sign * r.col(static_cast<int>(et.axis()));
  }
  return jac;
}

Jacobian to_ee_frame(const Jacobian& j, const Pose& t) {
  if (j.frame == Frame::EndEffector)
    throw FrameMismatch("Jacobian is already in the end-effector frame");
  const Mat3 rt = t.rotation().transpose();
  Jacobian out;
  out.frame = Frame::EndEffector;
  out.matrix.resize(6, j.matrix.cols());
  out.matrix.topRows<3>() = rt * j.matrix.topRows<3>();
  out.matrix.bottomRows<3>() = rt * j.matrix.bottomRows<3>();
  return out;
}

}  // namespace etkin
