#pragma once

#include <Eigen/Dense>

namespace etkin {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

// Task-space 6-vectors, translational part first: (v; omega), (e_t; e_r).
using SpatialVelocity = Vec6;
using TaskError = Vec6;

// Rotation block (top-left 3x3) of an arbitrary 4x4 matrix. Total function:
// the argument need not be a valid pose (derivative matrices are not).
Mat3 rot_block(const Mat4& m);

// Translation block (top-right 3x1) of an arbitrary 4x4 matrix.
Vec3 trans_block(const Mat4& m);

// Orthonormal right-handed 3x3 matrix. The constructor validates, so a
// Rotation value is always within 1e-10 of SO(3).
class Rotation {
 public:
  Rotation();                        // identity
  explicit Rotation(const Mat3& m);  // throws InvalidRotation

  const Mat3& matrix() const { return m_; }

 private:
  Mat3 m_;
};

// Rigid transform. The constructor validates: rotation block within 1e-10 of
// SO(3), bottom row exactly (0, 0, 0, 1), finite translation.
class Pose {
 public:
  Pose();                            // identity
  explicit Pose(const Mat4& m);      // throws InvalidPose
  Pose(const Rotation& r, const Vec3& t);

  const Mat4& matrix() const { return m_; }
  Mat3 rotation() const { return rot_block(m_); }
  Vec3 translation() const { return trans_block(m_); }

  Pose operator*(const Pose& rhs) const;

 private:
  Mat4 m_;
};

// 3-vector -> skew-symmetric 3x3, so that skew3(a) * b == a x b.
Mat3 skew3(const Vec3& v);

// Inverse of skew3; throws NotSkewSymmetric when the asymmetry exceeds 1e-10.
Vec3 vex3(const Mat3& m);

// 6-vector (v; omega) -> augmented 4x4 with skew3(omega) in the rotation
// block, v in the translation column and a zero bottom row.
Mat4 skew6(const Vec6& v);

// Inverse of skew6; throws NotAugmentedSkew when the rotation block is not
// skew-symmetric or the bottom row is not zero (tolerance 1e-10).
Vec6 vex6(const Mat4& m);

// Euler vector (rotation-axis direction scaled by the rotation angle) of a
// rotation matrix. Identity maps to zero; non-identity diagonal matrices and
// the half-turn limit are handled explicitly, every other input goes through
// the atan2 form.
Vec3 angle_axis(const Rotation& r);

// Task-space error taking `current` toward `desired`: translational
// difference on top, Euler vector of the relative rotation below.
TaskError pose_error(const Pose& current, const Pose& desired);

}  // namespace etkin
