#include "etkin/ets.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "etkin/errors.hpp"

namespace etkin {

namespace {

Mat4 rotation_matrix(Axis axis, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat4 m = Mat4::Identity();
  switch (axis) {
    case Axis::X:
      m(1, 1) = c; m(1, 2) = -s;
      m(2, 1) = s; m(2, 2) = c;
      break;
    case Axis::Y:
      m(0, 0) = c; m(0, 2) = s;
      m(2, 0) = -s; m(2, 2) = c;
      break;
    case Axis::Z:
      m(0, 0) = c; m(0, 1) = -s;
      m(1, 0) = s; m(1, 1) = c;
      break;
  }
  return m;
}

Mat4 translation_matrix(Axis axis, double offset) {
  Mat4 m = Mat4::Identity();
  m(static_cast<int>(axis), 3) = offset;
  return m;
}

}  // namespace

ElementaryTransform ElementaryTransform::constant(Motion motion, Axis axis,
                                                  double value) {
  ElementaryTransform et;
  et.motion_ = motion;
  et.axis_ = axis;
  et.value_ = value;
  return et;
}

ElementaryTransform ElementaryTransform::joint(Motion motion, Axis axis,
                                               int index, bool flip) {
  if (index < 0) throw JointIndexOutOfRange("joint index must be >= 0");
  if (flip && motion == Motion::Translation)
    throw std::invalid_argument("translations cannot be flipped");
  ElementaryTransform et;
  et.motion_ = motion;
  et.axis_ = axis;
  et.joint_ = index;
  et.flip_ = flip;
  return et;
}

int ElementaryTransform::joint_index() const {
  if (!is_joint()) throw NotAJoint("constant transform has no joint index");
  return joint_;
}

double ElementaryTransform::constant_value() const {
  if (is_joint()) throw NotAJoint("joint transform has no constant value");
  return value_;
}

double ElementaryTransform::resolve(const JointConfig& q) const {
  if (!is_joint()) return value_;
  if (joint_ >= q.size())
    throw JointIndexOutOfRange("joint index " + std::to_string(joint_) +
                               " exceeds configuration of length " +
                               std::to_string(q.size()));
  return flip_ ? -q[joint_] : q[joint_];
}

Mat4 ElementaryTransform::matrix_at(double value) const {
  return motion_ == Motion::Rotation ? rotation_matrix(axis_, value)
                                     : translation_matrix(axis_, value);
}

Mat4 ElementaryTransform::matrix(const JointConfig& q) const {
  return matrix_at(resolve(q));
}

Pose eval_et(const ElementaryTransform& et, const JointConfig& q) {
  return Pose(et.matrix(q));
}

Ets::Ets(std::vector<ElementaryTransform> terms) : terms_(std::move(terms)) {
  int next = 0;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& et = terms_[i];
    if (!et.is_joint()) continue;
    const int j = et.joint_index();
    if (j < next)
      throw DuplicateJoint("joint q" + std::to_string(j) + " appears twice", i);
    if (j > next)
      throw NonMonotonicJoint(
          "joint indices must be consecutive from q0; expected q" +
              std::to_string(next) + ", found q" + std::to_string(j),
          i);
    mu_.push_back(static_cast<int>(i));
    ++next;
  }
  qlim_.resize(next, 2);
  qlim_.col(0).setConstant(-M_PI);
  qlim_.col(1).setConstant(M_PI);
}

const ElementaryTransform& Ets::term(int i) const {
  if (i < 0 || i >= size())
    throw std::out_of_range("term index " + std::to_string(i));
  return terms_[i];
}

int Ets::mu(int j) const {
  if (j < 0 || j >= joint_count())
    throw JointIndexOutOfRange("joint index " + std::to_string(j) +
                               " out of range for " +
                               std::to_string(joint_count()) + " joints");
  return mu_[j];
}

void Ets::set_qlim(const Eigen::Matrix<double, Eigen::Dynamic, 2>& qlim) {
  if (qlim.rows() != joint_count())
    throw DimensionMismatch("qlim needs one row per joint");
  for (int j = 0; j < qlim.rows(); ++j)
    if (!(qlim(j, 0) <= qlim(j, 1)))
      throw DimensionMismatch("qlim row " + std::to_string(j) +
                              " has lo > hi");
  qlim_ = qlim;
}

Pose Ets::fkine(const JointConfig& q) const {
  if (q.size() != joint_count())
    throw DimensionMismatch("configuration has " + std::to_string(q.size()) +
                            " joints, model has " +
                            std::to_string(joint_count()));
  Mat4 t = Mat4::Identity();
  for (const auto& et : terms_) t *= et.matrix(q);
  return Pose(t);
}

Pose Ets::subsequence_pose(int a, int b, const JointConfig& q) const {
  const int n = joint_count();
  if (a < 0 || b < a || b > n)
    throw InvalidLinkRange("link range [" + std::to_string(a) + ", " +
                           std::to_string(b) + "] invalid for " +
                           std::to_string(n) + " joints");
  if (q.size() != n)
    throw DimensionMismatch("configuration has " + std::to_string(q.size()) +
                            " joints, model has " + std::to_string(n));
  const int start = a == 0 ? 0 : mu_[a - 1] + 1;
  const int stop = b == 0 ? 0 : mu_[b - 1] + 1;  // exclusive
  Mat4 t = Mat4::Identity();
  for (int i = start; i < stop; ++i) t *= terms_[i].matrix(q);
  return Pose(t);
}

JointConfig Ets::random_config(SplitMix64& rng) const {
  JointConfig q(joint_count());
  for (int j = 0; j < joint_count(); ++j)
    q[j] = rng.uniform(qlim_(j, 0), qlim_(j, 1));
  return q;
}

}  // namespace etkin
