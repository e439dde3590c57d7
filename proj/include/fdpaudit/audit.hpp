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

#ifndef FDPAUDIT_AUDIT_HPP_
#define FDPAUDIT_AUDIT_HPP_

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fdpaudit/tradeoff_curve.hpp"

namespace fdpaudit {

// One guessing-game outcome: m canaries drawn from a k-letter alphabet, the
// adversary made c_prime guesses of which c were correct.
struct Observation {
  std::int64_t m = 0;
  std::int64_t c = 0;
  std::int64_t c_prime = 0;
  std::int64_t k = 2;

  void Validate() const {
    if (m <= 0) throw std::invalid_argument("Observation: m must be positive");
    if (c < 0 || c > c_prime || c_prime > m) {
      throw std::invalid_argument("Observation: need 0 <= c <= c' <= m");
    }
    if (k < 2) throw std::invalid_argument("Observation: k must be >= 2");
  }
};

enum class Verdict { kConsistent, kReject };

inline const char* VerdictName(Verdict v) {
  return v == Verdict::kReject ? "REJECT" : "CONSISTENT";
}

// Decision plus the recursion terminals, for diagnostics. REJECT certifies
// that under the hypothesized curve the observation has probability <= tau,
// i.e. the observation refutes the hypothesis at confidence 1 - tau.
struct AuditDecision {
  Verdict verdict = Verdict::kConsistent;
  double r0 = 0.0;
  double h0 = 0.0;
  double threshold = 0.0;  // c'/m
  double tau = 0.0;
};

// Full r[] and h[] sequences of the decision recursion, indexed 0..c.
struct RecursionTrace {
  std::vector<double> r;
  std::vector<double> h;
};

namespace internal {

inline void CheckAuditArgs(const Observation& obs, double tau) {
  obs.Validate();
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("audit: tau must be in (0, 1)");
  }
}

}  // namespace internal

// Straight-line evaluation of the decision recursion, seeds
// r[c] = tau*c/m, h[c] = tau*(c'-c)/m and for i = c-1..0
//   h[i] = max(h[i+1], (k-1) * fbar^{-1}(r[i+1]))
//   r[i] = r[i+1] + i/(c'-i) * (h[i] - h[i+1]).
// fbar^{-1} outputs are clamped to [0, 1] so extreme inputs cannot propagate
// NaNs; clamping composes monotone maps and cannot flip a verdict.
inline RecursionTrace ComputeRecursionTrace(const Observation& obs,
                                            const TradeoffCurve& curve, double tau) {
  internal::CheckAuditArgs(obs, tau);
  const double m = static_cast<double>(obs.m);
  const double km1 = static_cast<double>(obs.k - 1);
  const std::int64_t c = obs.c;
  RecursionTrace trace;
  trace.r.assign(c + 1, 0.0);
  trace.h.assign(c + 1, 0.0);
  trace.r[c] = tau * static_cast<double>(c) / m;
  trace.h[c] = tau * static_cast<double>(obs.c_prime - c) / m;
  for (std::int64_t i = c - 1; i >= 0; --i) {
    if (trace.r[i + 1] > 1.0) {
      // fbar^{-1} is undefined past 1; the reference recursion freezes here.
      trace.r[i] = trace.r[i + 1];
      trace.h[i] = trace.h[i + 1];
      continue;
    }
    double inv = std::clamp(curve.BlowupInverse(trace.r[i + 1]), 0.0, 1.0);
    trace.h[i] = std::max(trace.h[i + 1], km1 * inv);
    trace.r[i] = trace.r[i + 1] +
                 (static_cast<double>(i) / static_cast<double>(obs.c_prime - i)) *
                     (trace.h[i] - trace.h[i + 1]);
  }
  return trace;
}

// The audit decision. Both r[i] and h[i] are non-decreasing as i walks
// down to 0, which gives two exact shortcuts used here:
//  - once h and r stop changing the remaining iterations are identical, so
//    the loop can stop with the exact terminals (fixed point);
//  - r0 and h0 are reported exactly in all cases.
// REJECT iff r[0] + h[0] > c'/m, strict, matching the reference code.
inline AuditDecision AuditObservation(const Observation& obs, const TradeoffCurve& curve,
                                      double tau) {
  internal::CheckAuditArgs(obs, tau);
  const double m = static_cast<double>(obs.m);
  const double km1 = static_cast<double>(obs.k - 1);
  double r = tau * static_cast<double>(obs.c) / m;
  double h = tau * static_cast<double>(obs.c_prime - obs.c) / m;
  for (std::int64_t i = obs.c - 1; i >= 0; --i) {
    if (r > 1.0) break;  // recursion frozen past the fbar^{-1} domain
    double inv = std::clamp(curve.BlowupInverse(r), 0.0, 1.0);
    double h_next = std::max(h, km1 * inv);
    if (h_next == h && i > 0) {
      // r would also stay unchanged; every remaining step repeats verbatim.
      break;
    }
    r += (static_cast<double>(i) / static_cast<double>(obs.c_prime - i)) * (h_next - h);
    h = h_next;
  }
  AuditDecision decision;
  decision.r0 = r;
  decision.h0 = h;
  decision.threshold = static_cast<double>(obs.c_prime) / m;
  decision.tau = tau;
  decision.verdict =
      (r + h > decision.threshold) ? Verdict::kReject : Verdict::kConsistent;
  return decision;
}

// Verdict-only variant with an additional early exit: r + h is monotone over
// the recursion, so crossing the threshold mid-loop already decides REJECT.
// Used by hypothesis sweeps where the terminals are not needed.
inline bool AuditRejects(const Observation& obs, const TradeoffCurve& curve, double tau) {
  internal::CheckAuditArgs(obs, tau);
  const double m = static_cast<double>(obs.m);
  const double km1 = static_cast<double>(obs.k - 1);
  const double threshold = static_cast<double>(obs.c_prime) / m;
  double r = tau * static_cast<double>(obs.c) / m;
  double h = tau * static_cast<double>(obs.c_prime - obs.c) / m;
  for (std::int64_t i = obs.c - 1; i >= 0; --i) {
    if (r > 1.0) break;
    double inv = std::clamp(curve.BlowupInverse(r), 0.0, 1.0);
    double h_next = std::max(h, km1 * inv);
    if (h_next == h && i > 0) break;
    r += (static_cast<double>(i) / static_cast<double>(obs.c_prime - i)) * (h_next - h);
    h = h_next;
    if (r + h > threshold) return true;
  }
  return r + h > threshold;
}

}  // namespace fdpaudit

#endif  // FDPAUDIT_AUDIT_HPP_
