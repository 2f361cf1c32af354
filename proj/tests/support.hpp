#pragma once

// Test-side oracles and helpers. Everything here takes an independent route
// from the library under test: the rotation exponential is Rodrigues' series,
// derivatives come from central differences of forward kinematics, and CLI
// runs go through a child process.

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "etkin/ets.hpp"
#include "etkin/geometry.hpp"
#include "etkin/rng.hpp"

namespace testing {

using etkin::Axis;
using etkin::ElementaryTransform;
using etkin::Ets;
using etkin::JointConfig;
using etkin::Mat3;
using etkin::Mat4;
using etkin::Motion;
using etkin::SplitMix64;
using etkin::Vec3;

// Rotation exponential by Rodrigues' formula (test-only oracle).
inline Mat3 rodrigues(const Vec3& w) {
  const double theta = w.norm();
  if (theta < 1e-12) return Mat3::Identity() + etkin::skew3(w);
  const Mat3 k = etkin::skew3(w / theta);
  return Mat3::Identity() + std::sin(theta) * k +
         (1.0 - std::cos(theta)) * (k * k);
}

inline Mat3 random_rotation(SplitMix64& rng) {
  Vec3 axis{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
            rng.uniform(-1.0, 1.0)};
  while (axis.norm() < 1e-3)
    axis = Vec3{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                rng.uniform(-1.0, 1.0)};
  axis.normalize();
  return rodrigues(axis * rng.uniform(0.05, M_PI - 0.05));
}

// Central-difference derivative of the chain pose with respect to joint j.
inline Mat4 fd_pose_partial(const Ets& ets, const JointConfig& q, int j,
                            double h = 1e-6) {
  JointConfig qp = q, qm = q;
  qp[j] += h;
  qm[j] -= h;
  return (ets.fkine(qp).matrix() - ets.fkine(qm).matrix()) / (2.0 * h);
}

// Central-difference Jacobian: translational rows directly from the pose
// derivative, rotational rows through the symmetrised vee of dR R^T.
inline Eigen::Matrix<double, 6, Eigen::Dynamic> fd_jacobian(
    const Ets& ets, const JointConfig& q, double h = 1e-6) {
  const int n = ets.joint_count();
  Eigen::Matrix<double, 6, Eigen::Dynamic> jac(6, n);
  const Mat3 rt = ets.fkine(q).rotation().transpose();
  for (int j = 0; j < n; ++j) {
    const Mat4 d = fd_pose_partial(ets, q, j, h);
    Mat3 s = etkin::rot_block(d) * rt;
    s = 0.5 * (s - s.transpose().eval());  // strip finite-difference residue
    jac.col(j).head<3>() = etkin::trans_block(d);
    jac.col(j).tail<3>() = Vec3{s(2, 1), s(0, 2), s(1, 0)};
  }
  return jac;
}

inline JointConfig random_config(const Ets& ets, SplitMix64& rng) {
  JointConfig q(ets.joint_count());
  for (int j = 0; j < ets.joint_count(); ++j)
    q[j] = rng.uniform(ets.qlim()(j, 0), ets.qlim()(j, 1));
  return q;
}

// Random chain with n joints: each joint term is padded with a few random
// constant terms; roughly a quarter of the rotation joints are flipped and
// a fifth of all joints are prismatic.
inline Ets random_ets(SplitMix64& rng, int n) {
  std::vector<ElementaryTransform> terms;
  const auto random_axis = [&] {
    return static_cast<Axis>(rng.next() % 3);
  };
  const auto push_constants = [&](int count) {
    for (int k = 0; k < count; ++k) {
      if (rng.uniform() < 0.5)
        terms.push_back(ElementaryTransform::constant(
            Motion::Rotation, random_axis(), rng.uniform(-M_PI, M_PI)));
      else
        terms.push_back(ElementaryTransform::constant(
            Motion::Translation, random_axis(), rng.uniform(-0.5, 0.5)));
    }
  };
  for (int j = 0; j < n; ++j) {
    push_constants(static_cast<int>(rng.next() % 3));
    if (rng.uniform() < 0.2) {
      terms.push_back(
          ElementaryTransform::joint(Motion::Translation, random_axis(), j));
    } else {
      terms.push_back(ElementaryTransform::joint(
          Motion::Rotation, random_axis(), j, rng.uniform() < 0.25));
    }
  }
  push_constants(static_cast<int>(rng.next() % 3));
  return Ets(std::move(terms));
}

struct CliResult {
  std::string out;
  int exit_code;
};

inline std::string cli_path() {
  const char* p = std::getenv("ETKIN_CLI");
  return p ? p : "";
}

// Run the CLI binary with the given argument string; captures stdout.
inline CliResult run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  CliResult result{{}, -1};
  if (!pipe) return result;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe.get())) > 0)
    result.out.append(buf.data(), got);
  const int status = pclose(pipe.release());
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace testing
