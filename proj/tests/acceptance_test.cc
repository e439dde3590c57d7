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
//
// End-to-end acceptance suite. Each test covers one release criterion and
// prints a single [ACCEPTANCE] line; all tolerances are pinned inline.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "fdpaudit/fdpaudit.hpp"
#include "gtest/gtest.h"

namespace fdpaudit {
namespace {

class Acceptance : public ::testing::Test {
 protected:
  void SetCriterion(int n) { criterion_ = n; }
  void TearDown() override {
    std::cout << "[ACCEPTANCE] criterion " << criterion_ << ": "
              << (HasFailure() ? "FAIL" : "PASS") << std::endl;
  }
  int criterion_ = 0;
};

// Criterion 1: soundness. Over 2000 independent idealized games at the true
// noise, the audit rejects the true hypothesis in at most 5% + 2% of games.
TEST_F(Acceptance, Criterion1Soundness) {
  SetCriterion(1);
  SimConfig cfg;
  cfg.target_noise = 1.0;
  cfg.n_canaries = 1000;
  cfg.n_guesses = 100;
  cfg.k = 2;
  cfg.trials = 2000;
  cfg.master_seed = 1001;
  SimResult games = SimulateBinary(cfg);
  auto truth = TradeoffCurve::Gaussian(1.0);
  std::int64_t rejects = 0;
  for (std::int64_t c : games.per_trial) {
    if (AuditRejects({1000, c, 100, 2}, truth, 0.05)) ++rejects;
  }
  double freq = static_cast<double>(rejects) / 2000.0;
  EXPECT_LE(freq, 0.07) << "reject frequency " << freq;
}

struct CompareRow {
  double ours_eps = 0.0;
  double baseline_eps = 0.0;
  bool baseline_saturated = false;
};

CompareRow CompareCell(double sigma, std::int64_t m, std::uint64_t seed) {
  CompareRow row;
  std::set<std::int64_t> grid;
  for (std::int64_t div : {1000, 100, 10, 1}) {
    grid.insert(std::max<std::int64_t>(2, m / div));
  }
  std::uint64_t cell = 0;
  for (std::int64_t cp : grid) {
    SimConfig cfg;
    cfg.target_noise = sigma;
    cfg.n_canaries = m;
    cfg.n_guesses = cp;
    cfg.k = 2;
    cfg.trials = 100;
    cfg.master_seed = DeriveStreamSeed(seed, cell++);
    SimResult sim = SimulateBinary(cfg);
    Observation obs{m, sim.mean_correct, cp, 2};
    auto family = HypothesisFamily::GaussianGrid(sigma, 0.01, 1000);
    row.ours_eps = std::max(row.ours_eps, SweepEmpirical(obs, family, 0.05, 1e-5).eps_at_delta);
    BaselineEps base = BaselineEmpiricalEps(obs, 1e-5, 0.05);
    row.baseline_saturated = row.baseline_saturated || base.saturated;
    row.baseline_eps = std::max(row.baseline_eps, base.eps);
  }
  return row;
}

// Criterion 2: dominance over the binomial baseline at sigma = 1 across the
// compare guess grid, and improvement with more canaries.
TEST_F(Acceptance, Criterion2BaselineDominance) {
  SetCriterion(2);
  CompareRow small = CompareCell(1.0, 10000, 2002);
  CompareRow large = CompareCell(1.0, 100000, 2002);
  EXPECT_FALSE(small.baseline_saturated);
  EXPECT_FALSE(large.baseline_saturated);
  EXPECT_GE(small.ours_eps, small.baseline_eps);
  EXPECT_GE(large.ours_eps, large.baseline_eps);
  EXPECT_GE(large.ours_eps, small.ours_eps);
}

// Criterion 3: the delta/confidence sweep anchored at the high-accuracy run
// always finds a transition in (1, 4], and across delta the reported epsilon
// tracks the true-noise conversion more tightly than the baseline does.
TEST_F(Acceptance, Criterion3DeltaConfidenceSweep) {
  SetCriterion(3);
  Observation obs{100000, 1429, 1500, 2};
  auto family = HypothesisFamily::GaussianGrid(1.0, 0.01, 1000);
  for (double tau : {0.01, 0.05, 0.1}) {
    for (double delta : {1e-9, 1e-7, 1e-5, 1e-3}) {
      auto report = SweepEmpirical(obs, family, tau, delta);
      ASSERT_TRUE(report.transition_index.has_value()) << "tau=" << tau;
      EXPECT_GT(*report.sigma_star, 1.0) << "tau=" << tau << " delta=" << delta;
      EXPECT_LE(*report.sigma_star, 4.0) << "tau=" << tau << " delta=" << delta;
    }
  }
  // Spread comparison at tau = 0.05: ratio of reported epsilon to the
  // true-noise epsilon(delta), relative spread (max-min)/mean across delta.
  auto relative_spread = [](const std::vector<double>& v) {
    double lo = *std::min_element(v.begin(), v.end());
    double hi = *std::max_element(v.begin(), v.end());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    return (hi - lo) / mean;
  };
  std::vector<double> ours_ratio, baseline_ratio;
  for (double delta : {1e-9, 1e-7, 1e-5, 1e-3}) {
    double theoretical = EpsFromDeltaGaussian(1.0, delta);
    ours_ratio.push_back(SweepEmpirical(obs, family, 0.05, delta).eps_at_delta / theoretical);
    BaselineEps base = BaselineEmpiricalEps(obs, delta, 0.05);
    ASSERT_FALSE(base.saturated);
    baseline_ratio.push_back(base.eps / theoretical);
  }
  EXPECT_LT(relative_spread(ours_ratio), relative_spread(baseline_ratio));
}

// Criterion 4: reconstruction-game ablation over the alphabet size. The
// empirical epsilon is non-decreasing in k, allowing one Monte Carlo
// inversion of at most 5%.
TEST_F(Acceptance, Criterion4AlphabetSizeAblation) {
  SetCriterion(4);
  std::vector<double> eps;
  for (std::int64_t k : {3L, 10L, 25L, 50L}) {
    SimConfig cfg;
    cfg.target_noise = 0.6;
    cfg.n_canaries = 100;
    cfg.n_guesses = 100;
    cfg.k = k;
    cfg.trials = 100;
    cfg.master_seed = 4004;
    SimResult sim = SimulateReconstruction(cfg);
    Observation obs{100, sim.mean_correct, 100, k};
    auto family = HypothesisFamily::GaussianGrid(0.6, 0.01, 1000);
    eps.push_back(SweepEmpirical(obs, family, 0.05, 1e-5).eps_at_delta);
  }
  int inversions = 0;
  bool inversion_small = true;
  for (size_t i = 0; i + 1 < eps.size(); ++i) {
    if (eps[i + 1] < eps[i] - 1e-12) {
      ++inversions;
      inversion_small = inversion_small && (eps[i + 1] >= 0.95 * eps[i]);
    }
  }
  EXPECT_LE(inversions, 1);
  EXPECT_TRUE(inversion_small) << "inversion larger than 5%";
  EXPECT_GT(eps.back(), eps.front());
}

// Criterion 5: oracle equivalences — independently coded recursion port,
// exact binomial summation, and conversion round trips at lattice resolution.
TEST_F(Acceptance, Criterion5OracleEquivalence) {
  SetCriterion(5);
  // Straight-line recursion port; NaN freeze past the inverse domain.
  auto oracle_terminals = [](const Observation& o, const TradeoffCurve& curve, double tau) {
    std::vector<double> r(o.c + 1), h(o.c + 1);
    double m = static_cast<double>(o.m);
    double km1 = static_cast<double>(o.k - 1);
    r[o.c] = tau * static_cast<double>(o.c) / m;
    h[o.c] = tau * static_cast<double>(o.c_prime - o.c) / m;
    for (std::int64_t i = o.c - 1; i >= 0; --i) {
      double inv = r[i + 1] > 1.0 ? std::numeric_limits<double>::quiet_NaN()
                                  : curve.BlowupInverse(r[i + 1]);
      h[i] = std::max(h[i + 1], km1 * inv);
      r[i] = r[i + 1] + (static_cast<double>(i) / static_cast<double>(o.c_prime - i)) *
                            (h[i] - h[i + 1]);
    }
    return std::pair<double, double>(r[0], h[0]);
  };
  std::mt19937_64 gen(5005);
  for (int trial = 0; trial < 100; ++trial) {
    Observation o;
    o.m = std::uniform_int_distribution<std::int64_t>(1, 10000)(gen);
    o.c_prime = std::uniform_int_distribution<std::int64_t>(1, o.m)(gen);
    o.c = std::uniform_int_distribution<std::int64_t>(0, o.c_prime)(gen);
    o.k = std::uniform_int_distribution<std::int64_t>(2, 8)(gen);
    double sigma = std::uniform_real_distribution<double>(0.3, 4.0)(gen);
    auto curve = TradeoffCurve::Gaussian(sigma);
    auto [r0, h0] = oracle_terminals(o, curve, 0.05);
    auto trace = ComputeRecursionTrace(o, curve, 0.05);
    auto decision = AuditObservation(o, curve, 0.05);
    EXPECT_NEAR(trace.r[0], r0, 1e-12);
    EXPECT_NEAR(trace.h[0], h0, 1e-12);
    EXPECT_NEAR(decision.r0, r0, 1e-12);
    EXPECT_NEAR(decision.h0, h0, 1e-12);
  }
  // Binomial tails against exact extended-precision summation.
  for (std::int64_t n : {10L, 100L, 1000L}) {
    for (double p : {0.2, 0.5, 0.9}) {
      for (std::int64_t v : {std::int64_t{1}, n / 3, n}) {
        long double q = 1.0L - static_cast<long double>(p);
        long double pmf = std::pow(q, static_cast<long double>(n));
        long double tail = v <= 0 ? pmf : 0.0L;
        for (std::int64_t c = 1; c <= n; ++c) {
          pmf *= (static_cast<long double>(n - c + 1) / c) * (p / q);
          if (c >= v) tail += pmf;
        }
        double expected = static_cast<double>(tail);
        if (expected > 0.0) {
          EXPECT_LT(std::abs(BinomialUpperTail(n, p, v) - expected) / expected, 1e-12)
              << "n=" << n << " p=" << p << " v=" << v;
        }
      }
    }
  }
  // Conversion round trips at lattice resolution.
  for (double sigma : {0.5, 1.0, 2.0}) {
    for (double eps : {0.5, 1.0, 3.0}) {
      double back = EpsFromDeltaGaussian(sigma, DeltaFromEpsGaussian(sigma, eps));
      EXPECT_NEAR(back, eps, kEpsSearchWidth) << "sigma=" << sigma;
    }
  }
}

// Criterion 6: cross-module property spot checks (each module's full property
// suite runs in its own test binary; this aggregates one probe per family).
TEST_F(Acceptance, Criterion6PropertySuites) {
  SetCriterion(6);
  // Curve validity and blow-up round trip.
  for (const auto& curve :
       {TradeoffCurve::Gaussian(0.7), TradeoffCurve::ApproxDp(1.0, 1e-6)}) {
    EXPECT_NO_THROW(curve.Validate());
    for (double x : {0.01, 0.37, 0.92}) {
      EXPECT_NEAR(curve.Blowup(curve.BlowupInverse(curve.Blowup(x))), curve.Blowup(x), 1e-9);
    }
  }
  // Guess-transform shape on a coarse grid.
  auto g = TradeoffCurve::Gaussian(1.0);
  std::vector<double> up;
  for (int i = 0; i <= 20; ++i) {
    up.push_back(CorrectGuessUpperBound(g, 2, i / 20.0));
  }
  for (size_t i = 0; i + 1 < up.size(); ++i) EXPECT_GE(up[i + 1], up[i] - 1e-8);
  for (size_t i = 1; i + 1 < up.size(); ++i) {
    EXPECT_LE(up[i + 1] - 2 * up[i] + up[i - 1], 1e-8);
  }
  // Audit monotonicity in evidence and single transition along the noise grid.
  bool seen_reject = false;
  for (std::int64_t c = 0; c <= 100; ++c) {
    bool reject = AuditRejects({400, c, 100, 2}, g, 0.05);
    if (seen_reject) EXPECT_TRUE(reject) << "c=" << c;
    seen_reject = seen_reject || reject;
  }
  Observation anchor{100000, 1429, 1500, 2};
  int transitions = 0;
  bool prev = AuditRejects(anchor, TradeoffCurve::Gaussian(0.5), 0.05);
  for (int i = 1; i <= 200; ++i) {
    bool cur = AuditRejects(anchor, TradeoffCurve::Gaussian(0.5 + 0.02 * i), 0.05);
    if (cur != prev) ++transitions;
    prev = cur;
  }
  EXPECT_LE(transitions, 1);
  // Simulator limits and determinism.
  SimConfig cfg;
  cfg.target_noise = 1e-12;
  cfg.n_canaries = 500;
  cfg.n_guesses = 50;
  cfg.k = 2;
  cfg.trials = 5;
  cfg.master_seed = 6006;
  EXPECT_EQ(SimulateBinary(cfg).mean_correct, 50);
  cfg.target_noise = 1.0;
  EXPECT_EQ(SimulateBinary(cfg).per_trial, SimulateBinary(cfg).per_trial);
}

// Criterion 7: performance. One decision at m = 1e7 in under a second and a
// 1000-hypothesis sweep on the same observation in under a minute.
TEST_F(Acceptance, Criterion7Performance) {
  SetCriterion(7);
  Observation obs{10000000, 900000, 1000000, 2};
  auto t0 = std::chrono::steady_clock::now();
  auto decision = AuditObservation(obs, TradeoffCurve::Gaussian(1.0), 0.05);
  auto t1 = std::chrono::steady_clock::now();
  double decision_s = std::chrono::duration<double>(t1 - t0).count();
  EXPECT_LT(decision_s, 1.0) << "single decision took " << decision_s << " s";
  (void)decision;

  auto family = HypothesisFamily::GaussianGrid(0.5, 0.01, 1000);
  t0 = std::chrono::steady_clock::now();
  auto report = SweepEmpirical(obs, family, 0.05, 1e-5);
  t1 = std::chrono::steady_clock::now();
  double sweep_s = std::chrono::duration<double>(t1 - t0).count();
  EXPECT_LT(sweep_s, 60.0) << "sweep took " << sweep_s << " s";
  EXPECT_TRUE(report.transition_index.has_value());
  std::cout << "  timing: decision " << decision_s << " s, sweep " << sweep_s << " s\n";
}

}  // namespace
}  // namespace fdpaudit
