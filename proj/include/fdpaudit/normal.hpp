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

#ifndef FDPAUDIT_NORMAL_HPP_
#define FDPAUDIT_NORMAL_HPP_

#include <cmath>
#include <stdexcept>

namespace fdpaudit {

// Standard normal CDF, evaluated through the complementary error function so
// the lower tail keeps full relative accuracy.
inline double NormalCdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

// Standard normal density.
inline double NormalPdf(double z) {
  static const double kInvSqrt2Pi = 0.3989422804014326779399461;
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

namespace internal {

// Acklam's rational approximation to the standard normal quantile.
// Absolute error below 1.2e-9 over (0,1); refined by a Halley step below.
inline double NormalQuantileApprox(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  static const double kPLow = 0.02425;

  if (p < kPLow) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - kPLow) {
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
            a[5]) *
           q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  double q = std::sqrt(-2.0 * std::log1p(-p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
           c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace internal

// Standard normal quantile. Rational approximation followed by one Halley
// refinement against NormalCdf; |NormalCdf(NormalQuantile(p)) - p| <= 1e-12
// for p in [1e-15, 1 - 1e-15].
inline double NormalQuantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("NormalQuantile: p must be in (0, 1)");
  }
  double x = internal::NormalQuantileApprox(p);
  double e = NormalCdf(x) - p;
  double u = e / NormalPdf(x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace fdpaudit

#endif  // FDPAUDIT_NORMAL_HPP_
