#include "etkin/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "etkin/format.hpp"
#include "etkin/parser.hpp"

namespace etkin {

namespace {

double parse_param(const std::string& text) {
  std::size_t used = 0;
  const double value = std::stod(text, &used);
  if (used != text.size())
    throw std::invalid_argument("malformed method parameter '" + text + "'");
  return value;
}

}  // namespace

BenchMethod parse_method_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::optional<std::string> param =
      colon == std::string::npos
          ? std::nullopt
          : std::optional<std::string>(spec.substr(colon + 1));

  BenchMethod m;
  m.label = name;
  if (name == "NR") {
    m.options.method = IkMethod::NR;
  } else if (name == "NR-pinv") {
    m.options.method = IkMethod::NRPinv;
  } else if (name == "GN") {
    m.options.method = IkMethod::GN;
  } else if (name == "GN-pinv") {
    m.options.method = IkMethod::GNPinv;
  } else if (name == "LM-Wampler" || name == "LM-Chan") {
    m.options.method =
        name == "LM-Chan" ? IkMethod::LMChan : IkMethod::LMWampler;
    if (param) m.options.lambda = parse_param(*param);
    m.label += ':' + format_shortest(m.options.lambda);
  } else if (name == "LM-Sugihara") {
    m.options.method = IkMethod::LMSugihara;
    if (param) m.options.wn_floor_default = parse_param(*param);
    m.label += ':' + format_shortest(m.options.wn_floor_default);
  } else {
    throw std::invalid_argument("unknown method '" + name + "'");
  }
  if (param && m.options.method != IkMethod::LMWampler &&
      m.options.method != IkMethod::LMChan &&
      m.options.method != IkMethod::LMSugihara)
    throw std::invalid_argument("method '" + name + "' takes no parameter");
  return m;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2.0;
}

BenchReport run_campaign(const Ets& model,
                         const std::vector<BenchMethod>& methods,
                         const BenchConfig& cfg) {
  if (cfg.problems < 1) throw std::invalid_argument("problems must be >= 1");
  if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");

  // Problem i is the pose of a random in-limits configuration, drawn from a
  // per-problem stream so the set does not depend on evaluation order.
  std::vector<Pose> targets;
  targets.reserve(cfg.problems);
  for (int i = 0; i < cfg.problems; ++i) {
    SplitMix64 rng(derive_seed(cfg.seed, i, 0));
    targets.push_back(model.fkine(model.random_config(rng)));
  }

  std::vector<std::vector<IkResult>> results(
      methods.size(), std::vector<IkResult>(cfg.problems));

  const auto worker = [&](int offset) {
    for (std::size_t m = 0; m < methods.size(); ++m) {
      IkOptions opts = methods[m].options;
      opts.max_searches = cfg.max_searches;
      opts.max_iterations = cfg.max_iterations;
      opts.e_min = cfg.e_min;
      for (int i = offset; i < cfg.problems; i += cfg.workers) {
        opts.seed = derive_seed(cfg.seed, i, 1);
        results[m][i] = solve_ik(model, targets[i], opts);
      }
    }
  };

  if (cfg.workers == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(cfg.workers);
    for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }

  BenchReport report;
  report.model = model.name();
  report.problems = cfg.problems;
  report.seed = cfg.seed;
  for (std::size_t m = 0; m < methods.size(); ++m) {
    BenchRow row;
    row.method = methods[m].label;
    row.searches_allowed = cfg.max_searches;
    row.iter_allowed = cfg.max_iterations;
    std::vector<double> iters, searches;
    for (const auto& r : results[m]) {
      if (!r.success) {
        ++row.infeasible_count;
        continue;
      }
      iters.push_back(r.iterations);
      searches.push_back(r.searches);
    }
    const double solved = static_cast<double>(iters.size());
    row.infeasible_pct = 100.0 * row.infeasible_count / cfg.problems;
    if (!iters.empty()) {
      row.mean_iter =
          std::accumulate(iters.begin(), iters.end(), 0.0) / solved;
      row.median_iter = median(iters);
      row.mean_searches =
          std::accumulate(searches.begin(), searches.end(), 0.0) / solved;
      row.max_searches = *std::max_element(searches.begin(), searches.end());
    } else {
      row.mean_iter = row.median_iter = std::nan("");
      row.mean_searches = row.max_searches = std::nan("");
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string to_csv(const BenchReport& report) {
  std::string out =
      "method,searches_allowed,iter_allowed,mean_iter,median_iter,"
      "infeasible_count,infeasible_pct,mean_searches,max_searches\n";
  for (const auto& r : report.rows) {
    out += r.method;
    out += ',' + std::to_string(r.searches_allowed);
    out += ',' + std::to_string(r.iter_allowed);
    out += ',' + format_shortest(r.mean_iter);
    out += ',' + format_shortest(r.median_iter);
    out += ',' + std::to_string(r.infeasible_count);
    out += ',' + format_shortest(r.infeasible_pct);
    out += ',' + format_shortest(r.mean_searches);
    out += ',' + format_shortest(r.max_searches);
    out += '\n';
  }
  return out;
}

std::string to_json(const BenchReport& report) {
  nlohmann::json doc;
  doc["model"] = report.model;
  doc["problems"] = report.problems;
  doc["seed"] = report.seed;
  doc["rows"] = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json row;
    row["method"] = r.method;
    row["searches_allowed"] = r.searches_allowed;
    row["iter_allowed"] = r.iter_allowed;
    row["mean_iter"] = r.mean_iter;
    row["median_iter"] = r.median_iter;
    row["infeasible_count"] = r.infeasible_count;
    row["infeasible_pct"] = r.infeasible_pct;
    row["mean_searches"] = r.mean_searches;
    row["max_searches"] = r.max_searches;
    doc["rows"].push_back(row);
  }
  return doc.dump(2) + "\n";
}

}  // namespace etkin
