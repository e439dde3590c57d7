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

#ifndef FDPAUDIT_TRADEOFF_CURVE_HPP_
#define FDPAUDIT_TRADEOFF_CURVE_HPP_

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fdpaudit/normal.hpp"

namespace fdpaudit {

// Blow-up function of the sensitivity-1 Gaussian mechanism with noise
// standard deviation sigma: Phi(Phi^{-1}(x) + 1/sigma). Fixed points at 0
// and 1; monotone increasing and >= x everywhere in between.
inline double GaussianBlowup(double sigma, double x) {
  if (!(sigma > 0.0)) {
    throw std::domain_error("GaussianBlowup: sigma must be positive");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("GaussianBlowup: x must be in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  return NormalCdf(NormalQuantile(x) + 1.0 / sigma);
}

// Inverse blow-up: Phi(Phi^{-1}(y) - 1/sigma).
inline double GaussianBlowupInverse(double sigma, double y) {
  if (!(sigma > 0.0)) {
    throw std::domain_error("GaussianBlowupInverse: sigma must be positive");
  }
  if (!(y >= 0.0 && y <= 1.0)) {
    throw std::domain_error("GaussianBlowupInverse: y must be in [0, 1]");
  }
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 1.0;
  return NormalCdf(NormalQuantile(y) - 1.0 / sigma);
}

// A valid trade-off function: decreasing, convex, f(x) <= 1 - x on [0, 1].
// Exposes f, its complement fbar = 1 - f, and the inverse of fbar.
class TradeoffCurve {
 public:
  enum class Kind { kGaussian, kApproxDp, kTabulated };

  static TradeoffCurve Gaussian(double sigma) {
    if (!(sigma > 0.0)) {
      throw std::invalid_argument("TradeoffCurve::Gaussian: sigma must be positive");
    }
    TradeoffCurve c;
    c.kind_ = Kind::kGaussian;
    c.sigma_ = sigma;
    return c;
  }

  static TradeoffCurve ApproxDp(double epsilon, double delta) {
    if (!(epsilon >= 0.0)) {
      throw std::invalid_argument("TradeoffCurve::ApproxDp: epsilon must be >= 0");
    }
    if (!(delta >= 0.0 && delta <= 1.0)) {
      throw std::invalid_argument("TradeoffCurve::ApproxDp: delta must be in [0, 1]");
    }
    TradeoffCurve c;
    c.kind_ = Kind::kApproxDp;
    c.epsilon_ = epsilon;
    c.delta_ = delta;
    return c;
  }

  // Piecewise-linear curve over (x, f(x)) knots. The knots must have strictly
  // increasing x covering 0 and 1, and the interpolant must be a valid
  // trade-off function.
  static TradeoffCurve Tabulated(std::vector<std::pair<double, double>> knots) {
    TradeoffCurve c;
    c.kind_ = Kind::kTabulated;
    c.knots_ = std::move(knots);
    c.ValidateKnots();
    c.Validate();
    return c;
  }

  Kind kind() const { return kind_; }
  double sigma() const { return sigma_; }
  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }

  // f(x): minimal type-II error at type-I error x.
  double F(double x) const {
    CheckUnit(x, "TradeoffCurve::F");
    switch (kind_) {
      case Kind::kGaussian:
        return 1.0 - GaussianBlowup(sigma_, x);
      case Kind::kApproxDp:
        return std::max(0.0, 1.0 - delta_ - std::exp(epsilon_) * x);
      case Kind::kTabulated:
        return Interpolate(x);
    }
    return 0.0;
  }

  // fbar(x) = 1 - f(x).
  double Blowup(double x) const {
    CheckUnit(x, "TradeoffCurve::Blowup");
    switch (kind_) {
      case Kind::kGaussian:
        return GaussianBlowup(sigma_, x);
      case Kind::kApproxDp:
        return std::min(1.0, std::exp(epsilon_) * x + delta_);
      case Kind::kTabulated:
        return 1.0 - Interpolate(x);
    }
    return 0.0;
  }

  // fbar^{-1}(y), clamped to [0, 1].
  double BlowupInverse(double y) const {
    CheckUnit(y, "TradeoffCurve::BlowupInverse");
    switch (kind_) {
      case Kind::kGaussian:
        return GaussianBlowupInverse(sigma_, y);
      case Kind::kApproxDp: {
        double x = (y - delta_) * std::exp(-epsilon_);
        return std::clamp(x, 0.0, 1.0);
      }
      case Kind::kTabulated: {
        // Blowup is non-decreasing and piecewise linear; bisect for the
        // smallest x with Blowup(x) >= y.
        if (y <= Blowup(0.0)) return 0.0;
        if (y >= 1.0) return 1.0;
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 80; ++i) {
          double mid = 0.5 * (lo + hi);
          if (Blowup(mid) >= y) {
            hi = mid;
          } else {
            lo = mid;
          }
        }
        return hi;
      }
    }
    return 0.0;
  }

  // Checks the validity invariants on a 1001-point uniform grid and throws
  // std::invalid_argument on the first violation.
  void Validate() const {
    constexpr int kPoints = 1001;
    std::vector<double> values(kPoints);
    for (int i = 0; i < kPoints; ++i) {
      double x = static_cast<double>(i) / (kPoints - 1);
      double fx = F(x);
      if (!(fx >= 0.0 && fx <= 1.0)) {
        throw std::invalid_argument("TradeoffCurve: f out of [0, 1]");
      }
      if (fx > 1.0 - x + 1e-12) {
        throw std::invalid_argument("TradeoffCurve: f(x) > 1 - x");
      }
      values[i] = fx;
    }
    for (int i = 0; i + 1 < kPoints; ++i) {
      if (values[i + 1] - values[i] > 1e-12) {
        throw std::invalid_argument("TradeoffCurve: f is not non-increasing");
      }
    }
    for (int i = 1; i + 1 < kPoints; ++i) {
      if (values[i + 1] - 2.0 * values[i] + values[i - 1] < -1e-10) {
        throw std::invalid_argument("TradeoffCurve: f is not convex");
      }
    }
  }

 private:
  TradeoffCurve() = default;

  static void CheckUnit(double v, const char* where) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::domain_error(std::string(where) + ": argument must be in [0, 1]");
    }
  }

  void ValidateKnots() const {
    if (knots_.size() < 2) {
      throw std::invalid_argument("TradeoffCurve: need at least two knots");
    }
    if (knots_.front().first != 0.0 || knots_.back().first != 1.0) {
      throw std::invalid_argument("TradeoffCurve: knots must cover x=0 and x=1");
    }
    for (size_t i = 0; i + 1 < knots_.size(); ++i) {
      if (!(knots_[i].first < knots_[i + 1].first)) {
        throw std::invalid_argument("TradeoffCurve: knot x values must be strictly increasing");
      }
    }
    for (const auto& [x, f] : knots_) {
      if (!std::isfinite(x) || !std::isfinite(f)) {
        throw std::invalid_argument("TradeoffCurve: non-finite knot");
      }
    }
  }

  double Interpolate(double x) const {
    auto it = std::lower_bound(
        knots_.begin(), knots_.end(), x,
        [](const std::pair<double, double>& k, double v) { return k.first < v; });
    if (it == knots_.begin()) return it->second;
    if (it == knots_.end()) return knots_.back().second;
    auto prev = it - 1;
    double t = (x - prev->first) / (it->first - prev->first);
    return prev->second + t * (it->second - prev->second);
  }

  Kind kind_ = Kind::kGaussian;
  double sigma_ = 1.0;
  double epsilon_ = 0.0;
  double delta_ = 0.0;
  std::vector<std::pair<double, double>> knots_;
};

// The trade-off curve induced by an (epsilon, delta)-DP guarantee,
// fbar(x) = min(1, e^eps * x + delta).
inline TradeoffCurve ApproxDpCurve(double epsilon, double delta) {
  return TradeoffCurve::ApproxDp(epsilon, delta);
}

// Loads a tabulated curve from CSV with header "x,f". Rejects files whose
// interpolant violates the trade-off invariants.
inline TradeoffCurve LoadTabulatedCurveCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("LoadTabulatedCurveCsv: cannot open " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("LoadTabulatedCurveCsv: empty file " + path);
  }
  // Tolerate trailing carriage returns from Windows-edited files.
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
  if (line != "x,f") {
    throw std::invalid_argument("LoadTabulatedCurveCsv: expected header 'x,f'");
  }
  std::vector<std::pair<double, double>> knots;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string xs, fs;
    if (!std::getline(ss, xs, ',') || !std::getline(ss, fs)) {
      throw std::invalid_argument("LoadTabulatedCurveCsv: malformed row at line " +
                                  std::to_string(lineno));
    }
    try {
      knots.emplace_back(std::stod(xs), std::stod(fs));
    } catch (const std::exception&) {
      throw std::invalid_argument("LoadTabulatedCurveCsv: non-numeric row at line " +
                                  std::to_string(lineno));
    }
  }
  return TradeoffCurve::Tabulated(std::move(knots));
}

}  // namespace fdpaudit

#endif  // FDPAUDIT_TRADEOFF_CURVE_HPP_
