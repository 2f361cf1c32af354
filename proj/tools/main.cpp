// Command-line front door: model inspection, forward-kinematics and Jacobian
// queries, servo simulation, single IK solves, and the benchmark campaign.
//
// Exit codes: 0 success, 2 usage or input error, 3 servo did not arrive,
// 4 IK did not converge.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "etkin/bench.hpp"
#include "etkin/errors.hpp"
#include "etkin/format.hpp"
#include "etkin/ik.hpp"
#include "etkin/jacobian.hpp"
#include "etkin/metrics.hpp"
#include "etkin/parser.hpp"
#include "etkin/servo.hpp"

namespace {

etkin::JointConfig to_config(const std::vector<double>& values) {
  return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                           static_cast<Eigen::Index>(values.size()));
}

etkin::Pose to_pose(const std::vector<double>& row_major) {
  if (row_major.size() != 16)
    throw std::invalid_argument("a pose needs 16 row-major numbers, got " +
                                std::to_string(row_major.size()));
  etkin::Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = row_major[4 * r + c];
  return etkin::Pose(m);
}

void print_rows(const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) std::cout << ' ';
      std::cout << etkin::format_sig17(m(r, c));
    }
    std::cout << '\n';
  }
}

const char* to_text(etkin::ServoStatus s) {
  switch (s) {
    case etkin::ServoStatus::Arrived: return "arrived";
    case etkin::ServoStatus::MaxSteps: return "max_steps";
    default: return "singular";
  }
}

const char* to_text(etkin::IkStatus s) {
  switch (s) {
    case etkin::IkStatus::Converged: return "converged";
    case etkin::IkStatus::BudgetExhausted: return "budget_exhausted";
    default: return "singular";
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content) || !out.flush())
    throw etkin::IoError("cannot write '" + path + "'");
}

etkin::Ets require_model(const std::string& source) {
  if (source.empty())
    throw std::invalid_argument("--model is required (builtin name or path)");
  return etkin::load_model(source);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elementary-transform kinematics toolkit"};
  app.require_subcommand(1);

  std::string model_src;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "csv";
  app.add_option("-m,--model", model_src, "builtin model name or model file path");
  app.add_option("--seed", seed, "master random seed (ik, bench)");
  app.add_option("-o,--out", out_path,
                 "output file (servo) or output stem (bench)");
  app.add_option("--format", format, "stdout format for bench reports")
      ->check(CLI::IsMember({"csv", "json"}));

  // fk ----------------------------------------------------------------
  auto* fk = app.add_subcommand("fk", "forward kinematics of a configuration");
  fk->fallthrough();
  std::vector<double> fk_q;
  fk->add_option("--q", fk_q, "joint values, comma-separated (use --q=... for negatives)")
      ->required()
      ->delimiter(',');

  // jacobian ------------------------------------------------------------
  auto* jac = app.add_subcommand("jacobian", "manipulator Jacobian at a configuration");
  jac->fallthrough();
  std::vector<double> jac_q;
  std::string jac_frame = "world";
  std::string jac_algorithm = "fast";
  jac->add_option("--q", jac_q, "joint values, comma-separated")
      ->required()
      ->delimiter(',');
  jac->add_option("--frame", jac_frame, "reference frame")
      ->check(CLI::IsMember({"world", "ee"}));
  jac->add_option("--algorithm", jac_algorithm, "construction algorithm")
      ->check(CLI::IsMember({"fast", "naive"}));

  // servo ---------------------------------------------------------------
  auto* servo = app.add_subcommand("servo", "position-based servo simulation");
  servo->fallthrough();
  std::vector<double> servo_q0, servo_goal_q, servo_goal_pose;
  etkin::ServoConfig servo_cfg;
  servo->add_option("--q0", servo_q0, "start configuration, comma-separated")
      ->required()
      ->delimiter(',');
  auto* servo_goal = servo->add_option_group("goal", "goal specification");
  servo_goal->add_option("--goal-q", servo_goal_q,
                         "goal configuration (pose taken from forward kinematics)")
      ->delimiter(',');
  servo_goal->add_option("--goal-pose", servo_goal_pose,
                         "goal pose, 16 row-major numbers")
      ->delimiter(',');
  servo_goal->require_option(1);
  servo->add_option("--kt", servo_cfg.kt, "translational gain");
  servo->add_option("--kr", servo_cfg.kr, "rotational gain");
  servo->add_option("--nu-max", servo_cfg.nu_max, "task-velocity norm cap");
  servo->add_option("--e-min", servo_cfg.e_min, "arrival threshold");
  servo->add_option("--dt", servo_cfg.dt, "integration step");
  servo->add_option("--max-steps", servo_cfg.max_steps, "step budget");
  servo->add_flag("--strict", servo_cfg.strict_inverse,
                  "fail on singularity instead of using the pseudoinverse");

  // ik ------------------------------------------------------------------
  auto* ik = app.add_subcommand("ik", "numerical inverse kinematics solve");
  ik->fallthrough();
  std::string ik_method = "LM-Chan:0.1";
  std::vector<double> ik_goal_q, ik_goal_pose, ik_q0, ik_we;
  int ik_searches = 100;
  int ik_iters = 30;
  double ik_e_min = 1e-10;
  ik->add_option("--method", ik_method,
                 "NR[-pinv] | GN[-pinv] | LM-Wampler[:l] | LM-Chan[:l] | "
                 "LM-Sugihara[:wn]");
  auto* ik_goal = ik->add_option_group("goal", "goal specification");
  ik_goal->add_option("--goal-q", ik_goal_q,
                      "goal configuration (pose taken from forward kinematics)")
      ->delimiter(',');
  ik_goal->add_option("--goal-pose", ik_goal_pose, "goal pose, 16 row-major numbers")
      ->delimiter(',');
  ik_goal->require_option(1);
  ik->add_option("--q0", ik_q0, "start of the first search")->delimiter(',');
  ik->add_option("--searches", ik_searches, "restart budget");
  ik->add_option("--iters", ik_iters, "iteration budget per search");
  ik->add_option("--e-min", ik_e_min, "convergence threshold on E");
  ik->add_option("--we", ik_we, "six task-error weights")->delimiter(',');

  // bench -----------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "numerical IK benchmark campaign");
  bench->fallthrough();
  std::vector<std::string> bench_methods = {"NR", "GN", "LM-Chan:1",
                                            "LM-Chan:0.1", "LM-Sugihara:0.0001"};
  etkin::BenchConfig bench_cfg;
  bench->add_option("--methods", bench_methods, "method specs, comma-separated")
      ->delimiter(',');
  bench->add_option("--problems", bench_cfg.problems, "problem count");
  bench->add_option("--searches", bench_cfg.max_searches, "restart budget");
  bench->add_option("--iters", bench_cfg.max_iterations,
                    "iteration budget per search");
  bench->add_option("--workers", bench_cfg.workers, "worker thread count");
  bench->add_option("--e-min", bench_cfg.e_min, "convergence threshold on E");

  // models ----------------------------------------------------------------
  auto* models = app.add_subcommand("models", "list builtin models");
  models->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fk->parsed()) {
      const etkin::Ets model = require_model(model_src);
      print_rows(model.fkine(to_config(fk_q)).matrix());
      return 0;
    }

    if (jac->parsed()) {
      const etkin::Ets model = require_model(model_src);
      const etkin::JointConfig q = to_config(jac_q);
      etkin::Jacobian j = jac_algorithm == "naive" ? etkin::jacobian_naive(model, q)
                                                   : etkin::jacobian_fast(model, q);
      if (jac_frame == "ee") j = etkin::to_ee_frame(j, model.fkine(q));
      print_rows(j.matrix);
      return 0;
    }

    if (servo->parsed()) {
      const etkin::Ets model = require_model(model_src);
      const etkin::Pose goal = servo_goal_q.empty()
                                   ? to_pose(servo_goal_pose)
                                   : model.fkine(to_config(servo_goal_q));
      const etkin::ServoLog log =
          etkin::simulate_pbs(model, to_config(servo_q0), goal, servo_cfg);
      const std::string csv = etkin::to_csv(log);
      std::ostream& info = out_path.empty() ? std::cerr : std::cout;
      if (out_path.empty())
        std::cout << csv;
      else
        write_file(out_path, csv);
      info << "status: " << to_text(log.status) << '\n'
           << "steps: " << log.records.size() << '\n';
      return log.status == etkin::ServoStatus::Arrived ? 0 : 3;
    }

    if (ik->parsed()) {
      const etkin::Ets model = require_model(model_src);
      const etkin::Pose goal = ik_goal_q.empty() ? to_pose(ik_goal_pose)
                                                 : model.fkine(to_config(ik_goal_q));
      etkin::IkOptions opts = etkin::parse_method_spec(ik_method).options;
      opts.max_searches = ik_searches;
      opts.max_iterations = ik_iters;
      opts.e_min = ik_e_min;
      opts.seed = seed;
      if (!ik_q0.empty()) opts.q0 = to_config(ik_q0);
      if (!ik_we.empty()) {
        if (ik_we.size() != 6)
          throw std::invalid_argument("--we needs exactly six values");
        opts.we = Eigen::Map<const etkin::Vec6>(ik_we.data());
      }

      const etkin::IkResult res = etkin::solve_ik(model, goal, opts);
      nlohmann::json doc;
      doc["q"] = std::vector<double>(res.q.data(), res.q.data() + res.q.size());
      doc["success"] = res.success;
      doc["iterations"] = res.iterations;
      doc["searches"] = res.searches;
      doc["E_final"] = res.e_final;
      doc["status"] = to_text(res.status);
      std::cout << doc.dump(2) << '\n';
      return res.success ? 0 : 4;
    }

    if (bench->parsed()) {
      const etkin::Ets model = require_model(model_src);
      bench_cfg.seed = seed;
      std::vector<etkin::BenchMethod> methods;
      methods.reserve(bench_methods.size());
      for (const auto& spec : bench_methods)
        methods.push_back(etkin::parse_method_spec(spec));
      const etkin::BenchReport report =
          etkin::run_campaign(model, methods, bench_cfg);
      const std::string csv = etkin::to_csv(report);
      const std::string json = etkin::to_json(report);
      if (out_path.empty()) {
        std::cout << (format == "json" ? json : csv);
      } else {
        write_file(out_path + ".csv", csv);
        write_file(out_path + ".json", json);
        std::cout << "wrote " << out_path << ".csv and " << out_path
                  << ".json\n";
      }
      return 0;
    }

    if (models->parsed()) {
      for (const auto& name : etkin::builtin_model_names())
        std::cout << name << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
