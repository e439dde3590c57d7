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

#ifndef FDPAUDIT_GUESS_BOUNDS_HPP_
#define FDPAUDIT_GUESS_BOUNDS_HPP_

#include <stdexcept>

#include "fdpaudit/tradeoff_curve.hpp"

namespace fdpaudit {

namespace internal {

inline void CheckGuessBoundArgs(long alphabet_size, double x, const char* where) {
  if (alphabet_size < 2) {
    throw std::domain_error(std::string(where) + ": alphabet size must be >= 2");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(where) + ": x must be in [0, 1]");
  }
}

}  // namespace internal

// Upper bound on the joint probability of an event and a correct guess on a
// single k-ary canary, as a function of the event probability x:
//   sup { a : a + f((x - a)/(k - 1)) <= 1 }.
// The constraint is monotone in a, so bisection to 1e-10 is exact up to
// tolerance. Increasing and concave in x.
inline double CorrectGuessUpperBound(const TradeoffCurve& curve, long alphabet_size,
                                     double x) {
  internal::CheckGuessBoundArgs(alphabet_size, x, "CorrectGuessUpperBound");
  const double km1 = static_cast<double>(alphabet_size - 1);
  auto feasible = [&](double a) {
    return a + curve.F((x - a) / km1) <= 1.0;
  };
  if (x == 0.0) return 0.0;
  if (feasible(x)) return x;
  double lo = 0.0, hi = x;  // feasible(lo), !feasible(hi)
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// Matching lower bound:
//   inf { a : (k - 1) f(a) + (x - a) <= 1 }, a ranging over [0, 1].
// The constraint is decreasing in a and always holds at a = 1 (there the left
// side is x - 1 <= 0), so the set is never empty. Increasing and convex in x.
inline double CorrectGuessLowerBound(const TradeoffCurve& curve, long alphabet_size,
                                     double x) {
  internal::CheckGuessBoundArgs(alphabet_size, x, "CorrectGuessLowerBound");
  const double km1 = static_cast<double>(alphabet_size - 1);
  auto feasible = [&](double a) {
    return km1 * curve.F(a) + (x - a) <= 1.0;
  };
  if (feasible(0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;  // !feasible(lo), feasible(hi)
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace fdpaudit

#endif  // FDPAUDIT_GUESS_BOUNDS_HPP_
