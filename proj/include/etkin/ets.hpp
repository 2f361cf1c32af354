#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "etkin/geometry.hpp"
#include "etkin/rng.hpp"

namespace etkin {

enum class Axis { X, Y, Z };
enum class Motion { Rotation, Translation };

using JointConfig = Eigen::VectorXd;

// One elementary transform: a pure rotation about or translation along a
// principal axis, parameterised by a constant or by one joint variable.
// A flipped rotation runs negative about its axis (angle -q_j); translations
// cannot flip.
class ElementaryTransform {
 public:
  static ElementaryTransform constant(Motion motion, Axis axis, double value);
  static ElementaryTransform joint(Motion motion, Axis axis, int index,
                                   bool flip = false);

  Motion motion() const { return motion_; }
  Axis axis() const { return axis_; }
  bool is_joint() const { return joint_ >= 0; }
  bool flip() const { return flip_; }
  int joint_index() const;     // throws NotAJoint on constants
  double constant_value() const;  // throws NotAJoint on joints

  // Pose of this transform at the given joint vector; constants ignore q.
  // Throws JointIndexOutOfRange when the joint index does not fit q.
  Mat4 matrix(const JointConfig& q) const;

  // Pose at an explicitly resolved parameter value (flip already applied).
  Mat4 matrix_at(double value) const;

  // Resolved parameter value at q: the constant, q_j, or -q_j when flipped.
  double resolve(const JointConfig& q) const;

  bool operator==(const ElementaryTransform& rhs) const = default;

 private:
  ElementaryTransform() = default;
  Motion motion_ = Motion::Rotation;
  Axis axis_ = Axis::X;
  int joint_ = -1;      // < 0 for constants
  double value_ = 0.0;  // constant parameter; unused for joints
  bool flip_ = false;
};

// Evaluate one elementary transform as a validated pose.
Pose eval_et(const ElementaryTransform& et, const JointConfig& q);

// Ordered sequence of elementary transforms with joint bookkeeping. Joint
// indices must appear in increasing consecutive order starting at q0.
class Ets {
 public:
  Ets() = default;
  explicit Ets(std::vector<ElementaryTransform> terms);

  int size() const { return static_cast<int>(terms_.size()); }  // M
  int joint_count() const { return static_cast<int>(mu_.size()); }  // n
  const std::vector<ElementaryTransform>& terms() const { return terms_; }
  const ElementaryTransform& term(int i) const;

  // Sequence index of the term driven by joint j.
  int mu(int j) const;  // throws JointIndexOutOfRange

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  // Joint limits, one (lo, hi) row per joint; defaults to [-pi, pi].
  const Eigen::Matrix<double, Eigen::Dynamic, 2>& qlim() const { return qlim_; }
  void set_qlim(const Eigen::Matrix<double, Eigen::Dynamic, 2>& qlim);

  // Forward kinematics: the product of all terms at q.
  Pose fkine(const JointConfig& q) const;  // throws DimensionMismatch

  // Pose of link frame b relative to link frame a. Frame 0 is the base;
  // frame j sits immediately after the term of joint j-1. Requires
  // 0 <= a <= b <= joint_count().
  Pose subsequence_pose(int a, int b, const JointConfig& q) const;

  // Uniform draw within the joint limits.
  JointConfig random_config(SplitMix64& rng) const;

  bool operator==(const Ets& rhs) const { return terms_ == rhs.terms_; }

 private:
  std::vector<ElementaryTransform> terms_;
  std::vector<int> mu_;
  Eigen::Matrix<double, Eigen::Dynamic, 2> qlim_;
  std::string name_;
};

}  // namespace etkin
