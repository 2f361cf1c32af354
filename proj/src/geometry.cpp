#include "etkin/geometry.hpp"

#include <cmath>

#include "etkin/errors.hpp"

namespace etkin {

namespace {

constexpr double kOrthoTol = 1e-10;   // SO(3) membership tolerance
constexpr double kSkewTol = 1e-10;    // skew-symmetry tolerance
constexpr double kDiagTol = 1e-6;     // off-diagonal magnitude gate
constexpr double kAxisNormTol = 1e-12;  // half-turn axis-vector degeneracy

bool is_orthonormal(const Mat3& m) {
  if (!m.allFinite()) return false;
  const Mat3 delta = m.transpose() * m - Mat3::Identity();
  return delta.cwiseAbs().maxCoeff() <= kOrthoTol &&
         std::abs(m.determinant() - 1.0) <= kOrthoTol;
}

}  // namespace

Mat3 rot_block(const Mat4& m) { return m.topLeftCorner<3, 3>(); }

Vec3 trans_block(const Mat4& m) { return m.topRightCorner<3, 1>(); }

Rotation::Rotation() : m_(Mat3::Identity()) {}

Rotation::Rotation(const Mat3& m) : m_(m) {
  if (!is_orthonormal(m_))
    throw InvalidRotation("matrix is not orthonormal right-handed");
}

Pose::Pose() : m_(Mat4::Identity()) {}

Pose::Pose(const Mat4& m) : m_(m) {
  if (m_(3, 0) != 0.0 || m_(3, 1) != 0.0 || m_(3, 2) != 0.0 || m_(3, 3) != 1.0)
    throw InvalidPose("bottom row must be exactly (0, 0, 0, 1)");
  if (!trans_block(m_).allFinite())
    throw InvalidPose("translation must be finite");
  if (!is_orthonormal(rot_block(m_)))
    throw InvalidPose("rotation block is not orthonormal right-handed");
}

Pose::Pose(const Rotation& r, const Vec3& t) : m_(Mat4::Identity()) {
  if (!t.allFinite()) throw InvalidPose("translation must be finite");
  m_.topLeftCorner<3, 3>() = r.matrix();
  m_.topRightCorner<3, 1>() = t;
}

Pose Pose::operator*(const Pose& rhs) const { return Pose(m_ * rhs.m_); }

Mat3 skew3(const Vec3& v) {
  Mat3 m;
  // clang-format off
  m <<   0.0, -v.z(),  v.y(),
       v.z(),    0.0, -v.x(),
      -v.y(),  v.x(),    0.0;
  // clang-format on
  return m;
}

Vec3 vex3(const Mat3& m) {
  if ((m + m.transpose()).cwiseAbs().maxCoeff() > kSkewTol)
    throw NotSkewSymmetric("matrix is not skew-symmetric");
  return {m(2, 1), m(0, 2), m(1, 0)};
}

Mat4 skew6(const Vec6& v) {
  Mat4 m = Mat4::Zero();
  m.topLeftCorner<3, 3>() = skew3(v.tail<3>());
  m.topRightCorner<3, 1>() = v.head<3>();
  return m;
}

Vec6 vex6(const Mat4& m) {
  if (m.row(3).cwiseAbs().maxCoeff() > kSkewTol)
    throw NotAugmentedSkew("bottom row must be zero");
  const Mat3 r = rot_block(m);
  if ((r + r.transpose()).cwiseAbs().maxCoeff() > kSkewTol)
    throw NotAugmentedSkew("rotation block is not skew-symmetric");
  Vec6 v;
  v.head<3>() = trans_block(m);
  v.tail<3>() = Vec3{r(2, 1), r(0, 2), r(1, 0)};
  return v;
}

Vec3 angle_axis(const Rotation& rot) {
  const Mat3& r = rot.matrix();

  double max_off_diag = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) max_off_diag = std::max(max_off_diag, std::abs(r(i, j)));

  if (max_off_diag < kDiagTol) {
    // Diagonal: either the identity or a half-turn about a principal axis.
    if (r(0, 0) > 0.0 && r(1, 1) > 0.0 && r(2, 2) > 0.0) return Vec3::Zero();
    return (M_PI / 2.0) * Vec3{r(0, 0) + 1.0, r(1, 1) + 1.0, r(2, 2) + 1.0};
  }

  const Vec3 l{r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1)};
  const double ln = l.norm();
  if (ln < kAxisNormTol) {
    // Symmetric but not diagonal: a half-turn about a non-principal axis.
    // The two-sided formulas above degenerate (l vanishes), so extract the
    // axis from (R + I) / 2 = u u^T directly.
    const Mat3 uut = (r + Mat3::Identity()) / 2.0;
    int k;
    uut.diagonal().maxCoeff(&k);
    const Vec3 u = uut.col(k) / std::sqrt(uut(k, k));
    return M_PI * u;
  }
  const double theta = std::atan2(ln, r(0, 0) + r(1, 1) + r(2, 2) - 1.0);
  return (theta / ln) * l;
}

TaskError pose_error(const Pose& current, const Pose& desired) {
  TaskError e;
  e.head<3>() = desired.translation() - current.translation();
  e.tail<3>() =
      angle_axis(Rotation(desired.rotation() * current.rotation().transpose()));
  return e;
}

}  // namespace etkin
