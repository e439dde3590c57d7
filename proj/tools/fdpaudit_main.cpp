// Copyright 2026 The fdpaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fdpaudit/fdpaudit.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace fdpaudit;

constexpr int kExitConsistent = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitReject = 3;

json MakeManifest(const std::string& subcommand, const json& flags,
                  std::uint64_t master_seed) {
  json m;
  m["subcommand"] = subcommand;
  m["flags"] = flags;
  m["master_seed"] = master_seed;
  m["version"] = kVersion;
  return m;
}

std::uint64_t ResolveSeed(std::uint64_t flag_seed) {
  if (const char* env = std::getenv("AUDIT_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return flag_seed;
}

struct CurveSpec {
  double gaussian_sigma = 0.0;
  double eps = -1.0;
  double delta = -1.0;
  std::string curve_file;

  TradeoffCurve Build() const {
    int chosen = (gaussian_sigma > 0.0) + (eps >= 0.0) + !curve_file.empty();
    if (chosen != 1) {
      throw std::invalid_argument(
          "exactly one of --gaussian-sigma, --eps/--delta, --curve-file is required");
    }
    if (gaussian_sigma > 0.0) return TradeoffCurve::Gaussian(gaussian_sigma);
    if (!curve_file.empty()) return LoadTabulatedCurveCsv(curve_file);
    if (delta < 0.0) {
      throw std::invalid_argument("--eps requires --delta");
    }
    return TradeoffCurve::ApproxDp(eps, delta);
  }
};

int RunAudit(const Observation& obs, double tau, const CurveSpec& spec) {
  TradeoffCurve curve = spec.Build();
  AuditDecision d = AuditObservation(obs, curve, tau);
  json flags = {{"m", obs.m},   {"c", obs.c},     {"c_prime", obs.c_prime},
                {"k", obs.k},   {"tau", tau}};
  if (spec.gaussian_sigma > 0.0) flags["gaussian_sigma"] = spec.gaussian_sigma;
  if (spec.eps >= 0.0) {
    flags["eps"] = spec.eps;
    flags["delta"] = spec.delta;
  }
  if (!spec.curve_file.empty()) flags["curve_file"] = spec.curve_file;
  json out;
  out["manifest"] = MakeManifest("audit", flags, 0);
  out["verdict"] = VerdictName(d.verdict);
  out["r0"] = d.r0;
  out["h0"] = d.h0;
  out["threshold"] = d.threshold;
  out["tau"] = d.tau;
  std::cout << out.dump(2) << "\n";
  return d.verdict == Verdict::kReject ? kExitReject : kExitConsistent;
}

int RunEmpiricalEps(const Observation& obs, double sigma_start, double sigma_step,
                    std::int64_t sigma_count, double delta, double tau,
                    bool with_baseline, bool csv_mode) {
  HypothesisFamily family = HypothesisFamily::GaussianGrid(sigma_start, sigma_step, sigma_count);
  EmpiricalPrivacyReport report = SweepEmpirical(obs, family, tau, delta);
  BaselineEps baseline;
  if (with_baseline) baseline = BaselineEmpiricalEps(obs, delta, tau);

  if (csv_mode) {
    std::cout << "m,c,c_prime,k,tau,delta,transition_index,sigma_star,ours_eps,baseline_eps\n";
    std::cout << obs.m << "," << obs.c << "," << obs.c_prime << "," << obs.k << ","
              << tau << "," << delta << ",";
    if (report.transition_index) {
      std::cout << *report.transition_index << "," << *report.sigma_star;
    } else {
      std::cout << ",";
    }
    std::cout << "," << report.eps_at_delta << ",";
    if (with_baseline) {
      std::cout << (baseline.saturated ? std::string("inf")
                                       : std::to_string(baseline.eps));
    }
    std::cout << "\n";
    return kExitConsistent;
  }

  json flags = {{"m", obs.m},
                {"c", obs.c},
                {"c_prime", obs.c_prime},
                {"k", obs.k},
                {"sigma_start", sigma_start},
                {"sigma_step", sigma_step},
                {"sigma_count", sigma_count},
                {"delta", delta},
                {"tau", tau},
                {"baseline", with_baseline}};
  json out;
  out["manifest"] = MakeManifest("empirical-eps", flags, 0);
  if (report.transition_index) {
    out["transition_index"] = *report.transition_index;
    out["sigma_star"] = *report.sigma_star;
  } else {
    out["transition_index"] = nullptr;
    out["sigma_star"] = nullptr;
  }
  out["ours_eps"] = report.eps_at_delta;
  out["ours_eps_saturated"] = report.eps_saturated;
  if (with_baseline) {
    out["baseline_eps"] = baseline.eps;
    out["baseline_saturated"] = baseline.saturated;
  }
  std::cout << out.dump(2) << "\n";
  return kExitConsistent;
}

int RunSimulate(double sigma, std::int64_t m, std::int64_t n_guesses, std::int64_t k,
                std::int64_t trials, std::uint64_t seed) {
  SimConfig cfg;
  cfg.target_noise = sigma;
  cfg.n_canaries = m;
  cfg.n_guesses = n_guesses;
  cfg.k = k;
  cfg.trials = trials;
  cfg.master_seed = ResolveSeed(seed);
  SimResult result = (k == 2) ? SimulateBinary(cfg) : SimulateReconstruction(cfg);
  json flags = {{"sigma", sigma}, {"m", m},           {"n_guesses", n_guesses},
                {"k", k},         {"trials", trials}};
  json out;
  out["manifest"] = MakeManifest("simulate", flags, cfg.master_seed);
  out["mean_correct"] = result.mean_correct;
  out["per_trial"] = result.per_trial;
  std::cout << out.dump(2) << "\n";
  return kExitConsistent;
}

struct CompareRow {
  double sigma;
  std::int64_t m;
  double theoretical_eps;
  double ours_eps;
  double baseline_eps;
  bool baseline_saturated;
};

std::vector<std::int64_t> GuessGrid(std::int64_t m) {
  std::set<std::int64_t> grid;
  for (std::int64_t div : {1000, 100, 10, 1}) {
    grid.insert(std::max<std::int64_t>(2, m / div));
  }
  return {grid.begin(), grid.end()};
}

int RunCompare(std::vector<double> sigma_list, std::vector<std::int64_t> m_list,
               double delta, double tau, std::uint64_t seed, const std::string& out_path) {
  seed = ResolveSeed(seed);
  std::sort(sigma_list.begin(), sigma_list.end());
  std::sort(m_list.begin(), m_list.end());
  std::vector<CompareRow> rows;
  std::uint64_t cell = 0;
  for (double sigma : sigma_list) {
    for (std::int64_t m : m_list) {
      CompareRow row{sigma, m, EpsFromDeltaGaussian(sigma, delta), 0.0, 0.0, false};
      for (std::int64_t cp : GuessGrid(m)) {
        SimConfig cfg;
        cfg.target_noise = sigma;
        cfg.n_canaries = m;
        cfg.n_guesses = cp;
        cfg.k = 2;
        cfg.trials = 100;
        cfg.master_seed = DeriveStreamSeed(seed, cell++);
        SimResult sim = SimulateBinary(cfg);
        Observation obs{m, sim.mean_correct, cp, 2};
        HypothesisFamily family = HypothesisFamily::GaussianGrid(sigma, 0.01, 1000);
        EmpiricalPrivacyReport ours = SweepEmpirical(obs, family, tau, delta);
        row.ours_eps = std::max(row.ours_eps, ours.eps_at_delta);
        BaselineEps base = BaselineEmpiricalEps(obs, delta, tau);
        if (base.saturated) row.baseline_saturated = true;
        row.baseline_eps = std::max(row.baseline_eps, base.eps);
      }
      rows.push_back(row);
    }
  }
  std::ostringstream csv;
  csv << "sigma,m,theoretical_eps,ours_eps,baseline_eps\n";
  for (const CompareRow& r : rows) {
    csv << r.sigma << "," << r.m << "," << r.theoretical_eps << "," << r.ours_eps << ",";
    if (r.baseline_saturated) {
      csv << "inf";
    } else {
      csv << r.baseline_eps;
    }
    csv << "\n";
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path);
    if (!out) {
      throw std::invalid_argument("compare: cannot open output file " + out_path);
    }
    out << csv.str();
  }
  return kExitConsistent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-run f-DP privacy auditor"};
  app.require_subcommand(1);

  // audit
  Observation obs;
  double tau = 0.05;
  CurveSpec spec;
  auto* audit_cmd = app.add_subcommand("audit", "Audit one observation against a trade-off curve");
  audit_cmd->add_option("--m", obs.m, "Number of canaries")->required();
  audit_cmd->add_option("--c", obs.c, "Correct guesses")->required();
  audit_cmd->add_option("--c-prime", obs.c_prime, "Total guesses")->required();
  audit_cmd->add_option("--k", obs.k, "Alphabet size")->default_val(2);
  audit_cmd->add_option("--tau", tau, "Rejection threshold")->default_val(0.05);
  auto* curve_group = audit_cmd->add_option_group("curve", "Hypothesized trade-off curve");
  curve_group->add_option("--gaussian-sigma", spec.gaussian_sigma, "Gaussian curve noise");
  auto* eps_opt = curve_group->add_option("--eps", spec.eps, "ApproxDP epsilon");
  curve_group->add_option("--curve-file", spec.curve_file, "Tabulated curve CSV (header x,f)");
  curve_group->require_option(1);
  auto* delta_opt = audit_cmd->add_option("--delta", spec.delta, "ApproxDP delta");
  eps_opt->needs(delta_opt);

  // empirical-eps
  double sigma_start = 1.0, sigma_step = 0.01, ee_delta = 1e-5, ee_tau = 0.05;
  std::int64_t sigma_count = 1000;
  bool with_baseline = false, csv_mode = false;
  Observation ee_obs;
  auto* ee_cmd = app.add_subcommand("empirical-eps", "Sweep a Gaussian family and report empirical epsilon");
  ee_cmd->add_option("--m", ee_obs.m)->required();
  ee_cmd->add_option("--c", ee_obs.c)->required();
  ee_cmd->add_option("--c-prime", ee_obs.c_prime)->required();
  ee_cmd->add_option("--k", ee_obs.k)->default_val(2);
  ee_cmd->add_option("--sigma-start", sigma_start)->default_val(1.0);
  ee_cmd->add_option("--sigma-step", sigma_step)->default_val(0.01);
  ee_cmd->add_option("--sigma-count", sigma_count)->default_val(1000)->check(CLI::PositiveNumber);
  ee_cmd->add_option("--delta", ee_delta)->default_val(1e-5);
  ee_cmd->add_option("--tau", ee_tau)->default_val(0.05);
  ee_cmd->add_flag("--baseline", with_baseline, "Also report the binomial baseline");
  ee_cmd->add_flag("--csv", csv_mode, "Emit one CSV row instead of JSON");

  // simulate
  double sim_sigma = 1.0;
  std::int64_t sim_m = 0, sim_guesses = 0, sim_k = 2, sim_trials = 100;
  std::uint64_t sim_seed = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Idealized guessing-game simulator");
  sim_cmd->add_option("--sigma", sim_sigma)->required();
  sim_cmd->add_option("--m", sim_m)->required();
  sim_cmd->add_option("--n-guesses", sim_guesses)->required();
  sim_cmd->add_option("--k", sim_k)->default_val(2);
  sim_cmd->add_option("--trials", sim_trials)->default_val(100);
  sim_cmd->add_option("--seed", sim_seed)->default_val(0);

  // compare
  std::vector<double> sigma_list;
  std::vector<std::int64_t> m_list;
  double cmp_delta = 1e-5, cmp_tau = 0.05;
  std::uint64_t cmp_seed = 0;
  std::string out_path;
  auto* cmp_cmd = app.add_subcommand("compare", "Simulate and compare against the binomial baseline");
  cmp_cmd->add_option("--sigma-list", sigma_list, "Noise levels")->required()->delimiter(',')
      ->expected(1, -1);
  cmp_cmd->add_option("--m-list", m_list, "Canary counts")->required()->delimiter(',')
      ->expected(1, -1);
  cmp_cmd->add_option("--delta", cmp_delta)->default_val(1e-5);
  cmp_cmd->add_option("--tau", cmp_tau)->default_val(0.05);
  cmp_cmd->add_option("--seed", cmp_seed)->default_val(0);
  cmp_cmd->add_option("--out", out_path, "CSV output path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (audit_cmd->parsed()) return RunAudit(obs, tau, spec);
    if (ee_cmd->parsed()) {
      return RunEmpiricalEps(ee_obs, sigma_start, sigma_step, sigma_count, ee_delta,
                             ee_tau, with_baseline, csv_mode);
    }
    if (sim_cmd->parsed()) {
      return RunSimulate(sim_sigma, sim_m, sim_guesses, sim_k, sim_trials, sim_seed);
    }
    if (cmp_cmd->parsed()) {
      return RunCompare(sigma_list, m_list, cmp_delta, cmp_tau, cmp_seed, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
