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

#ifndef FDPAUDIT_BASELINE_BINOMIAL_HPP_
#define FDPAUDIT_BASELINE_BINOMIAL_HPP_

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

#include "fdpaudit/audit.hpp"

namespace fdpaudit {

// Knobs for the prior-work membership-inference baseline, whose tail bound is
// Binomial(c', e^eps / (e^eps + 1)). The delta correction of the original
// analysis is only characterized as O(m * delta); the multiplier is exposed
// here and defaults to 0 (pure-epsilon baseline).
struct BaselineConfig {
  double delta_slack_coefficient = 0.0;
  double eps_search_ceiling = 100.0;
  double eps_tolerance = 1e-3;

  void Validate() const {
    if (delta_slack_coefficient < 0.0 || eps_search_ceiling < 0.0 || eps_tolerance <= 0.0) {
      throw std::invalid_argument("BaselineConfig: parameters must be nonnegative");
    }
  }
};

// Pr[Binomial(n, p) >= v] through the regularized incomplete beta function,
// stable for n up to 1e7.
inline double BinomialUpperTail(std::int64_t n, double p, std::int64_t v) {
  if (n <= 0) throw std::domain_error("BinomialUpperTail: n must be positive");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("BinomialUpperTail: p must be in [0, 1]");
  }
  if (v < 0 || v > n + 1) {
    throw std::domain_error("BinomialUpperTail: need 0 <= v <= n + 1");
  }
  if (v == 0) return 1.0;
  if (v == n + 1) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  return boost::math::ibeta(static_cast<double>(v), static_cast<double>(n - v + 1), p);
}

struct BaselineDecisionResult {
  Verdict verdict = Verdict::kConsistent;
  double tail = 1.0;   // Pr[Binomial(c', p) >= c]
  double slack = 0.0;  // delta_slack_coefficient * m * delta
  double tau = 0.0;
};

// REJECT iff tail + slack <= tau. Membership-inference bound; k must be 2.
inline BaselineDecisionResult BaselineDecision(const Observation& obs, double eps,
                                               double delta, double tau,
                                               const BaselineConfig& cfg = {}) {
  obs.Validate();
  cfg.Validate();
  if (obs.k != 2) {
    throw std::invalid_argument("BaselineDecision: baseline supports k = 2 only");
  }
  if (!(eps >= 0.0)) throw std::invalid_argument("BaselineDecision: eps must be >= 0");
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("BaselineDecision: delta must be in [0, 1]");
  }
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("BaselineDecision: tau must be in (0, 1)");
  }
  double p = 1.0 / (1.0 + std::exp(-eps));
  BaselineDecisionResult res;
  res.tail = BinomialUpperTail(obs.c_prime, p, obs.c);
  res.slack = cfg.delta_slack_coefficient * static_cast<double>(obs.m) * delta;
  res.tau = tau;
  res.verdict =
      (res.tail + res.slack <= tau) ? Verdict::kReject : Verdict::kConsistent;
  return res;
}

struct BaselineEps {
  double eps = 0.0;
  // True when every eps up to the search ceiling is rejected.
  bool saturated = false;
};

// Largest eps on the bisection lattice whose hypothesis is rejected; the
// rejection region is the lower interval [0, bound) because the binomial tail
// increases with eps. Returns 0 when nothing is rejected.
inline BaselineEps BaselineEmpiricalEps(const Observation& obs, double delta, double tau,
                                        const BaselineConfig& cfg = {}) {
  obs.Validate();
  cfg.Validate();
  auto rejected = [&](double eps) {
    return BaselineDecision(obs, eps, delta, tau, cfg).verdict == Verdict::kReject;
  };
  BaselineEps out;
  if (!rejected(0.0)) return out;
  if (rejected(cfg.eps_search_ceiling)) {
    out.eps = cfg.eps_search_ceiling;
    out.saturated = true;
    return out;
  }
  double lo = 0.0, hi = cfg.eps_search_ceiling;
  while (hi - lo > cfg.eps_tolerance) {
    double mid = 0.5 * (lo + hi);
    if (rejected(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.eps = lo;
  return out;
}

}  // namespace fdpaudit

#endif  // FDPAUDIT_BASELINE_BINOMIAL_HPP_
