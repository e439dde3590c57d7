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

#ifndef FDPAUDIT_SIMULATE_HPP_
#define FDPAUDIT_SIMULATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fdpaudit/rng.hpp"

namespace fdpaudit {

// Idealized additive-Gaussian guessing game. The noise scales follow the
// reference procedure verbatim: the binary game perturbs the +-1 signs with
// std 2*sigma while the reconstruction game perturbs one-hot rows with std
// sqrt(2)*sigma. The asymmetry is reference semantics, reproduced on purpose;
// binary_noise_multiplier exposes the binary scale as a knob.
struct SimConfig {
  double target_noise = 1.0;       // sigma
  std::int64_t n_canaries = 0;     // m
  std::int64_t n_guesses = 0;      // c'
  std::int64_t k = 2;
  std::int64_t trials = 100;
  std::uint64_t master_seed = 0;
  double binary_noise_multiplier = 2.0;

  void Validate() const {
    if (!(target_noise > 0.0)) {
      throw std::invalid_argument("SimConfig: target_noise must be positive");
    }
    if (n_canaries <= 0 || n_guesses <= 0 || n_guesses > n_canaries) {
      throw std::invalid_argument("SimConfig: need 0 < n_guesses <= n_canaries");
    }
    if (k < 2) throw std::invalid_argument("SimConfig: k must be >= 2");
    if (trials < 1) throw std::invalid_argument("SimConfig: trials must be >= 1");
  }
};

struct SimResult {
  std::int64_t mean_correct = 0;  // truncated trial mean, matching int(mean)
  std::vector<std::int64_t> per_trial;
  SimConfig config;
};

namespace internal {

inline std::uint64_t TrialSeed(const SimConfig& cfg, std::int64_t trial) {
  return DeriveStreamSeed(cfg.master_seed, static_cast<std::uint64_t>(trial));
}

inline std::int64_t UniformBelow(SplitMix64& rng, std::int64_t k) {
  return static_cast<std::int64_t>(
      (static_cast<unsigned __int128>(rng.Next()) * static_cast<std::uint64_t>(k)) >> 64);
}

// One membership trial: threshold at the reference order statistic, guess the
// strictly-above scores as members, extrapolate their accuracy to n_guesses.
inline std::int64_t BinaryTrial(const SimConfig& cfg, std::uint64_t seed) {
  const std::int64_t m = cfg.n_canaries;
  const std::int64_t n = cfg.n_guesses;
  NormalSampler sampler(seed);
  std::vector<double> noisy(m);
  std::vector<bool> is_member(m);
  const double noise_std = cfg.binary_noise_multiplier * cfg.target_noise;
  for (std::int64_t i = 0; i < m; ++i) {
    bool member = sampler.bits().NextBit();
    is_member[i] = member;
    noisy[i] = (member ? 1.0 : -1.0) + noise_std * sampler.Next();
  }
  // Reference index sorted[-n//2 - 1] with floor division.
  const std::int64_t rank_from_end = n / 2 + 1 + (n % 2);
  std::vector<double> order(noisy);
  std::nth_element(order.begin(), order.begin() + (m - rank_from_end), order.end());
  const double threshold = order[m - rank_from_end];
  std::int64_t selected = 0, correct = 0;
  for (std::int64_t i = 0; i < m; ++i) {
    if (noisy[i] > threshold) {
      ++selected;
      if (is_member[i]) ++correct;
    }
  }
  if (selected == 0) return 0;
  double accuracy = static_cast<double>(correct) / static_cast<double>(selected);
  return static_cast<std::int64_t>(std::ceil(static_cast<double>(n) * accuracy));
}

// One reconstruction trial: per-canary posterior mass of the argmax letter
// under the scaled softmax, guess the top scores above the n-th largest.
inline std::int64_t ReconstructionTrial(const SimConfig& cfg, std::uint64_t seed) {
  const std::int64_t m = cfg.n_canaries;
  const std::int64_t n = cfg.n_guesses;
  const std::int64_t k = cfg.k;
  const double noise_std = std::sqrt(2.0) * cfg.target_noise;
  const double temperature = 2.0 * cfg.target_noise * cfg.target_noise;
  NormalSampler sampler(seed);
  std::vector<double> score(m);
  std::vector<bool> guess_correct(m);
  std::vector<double> row(k);
  for (std::int64_t i = 0; i < m; ++i) {
    std::int64_t truth = UniformBelow(sampler.bits(), k);
    std::int64_t argmax = 0;
    double max_val = -1e300;
    for (std::int64_t j = 0; j < k; ++j) {
      row[j] = (j == truth ? 1.0 : 0.0) + noise_std * sampler.Next();
      if (row[j] > max_val) {
        max_val = row[j];
        argmax = j;
      }
    }
    double denom = 0.0;
    for (std::int64_t j = 0; j < k; ++j) {
      denom += std::exp((row[j] - max_val) / temperature);
    }
    score[i] = 1.0 / denom;
    guess_correct[i] = (argmax == truth);
  }
  std::vector<double> order(score);
  std::nth_element(order.begin(), order.begin() + (m - n), order.end());
  const double threshold = order[m - n];
  std::int64_t selected = 0, correct = 0;
  for (std::int64_t i = 0; i < m; ++i) {
    if (score[i] > threshold) {
      ++selected;
      if (guess_correct[i]) ++correct;
    }
  }
  if (selected == 0) return 0;
  double accuracy = static_cast<double>(correct) / static_cast<double>(selected);
  return static_cast<std::int64_t>(std::ceil(static_cast<double>(n) * accuracy));
}

template <typename TrialFn>
inline SimResult RunTrials(const SimConfig& cfg, TrialFn&& trial_fn) {
  SimResult result;
  result.config = cfg;
  result.per_trial.reserve(cfg.trials);
  double sum = 0.0;
  for (std::int64_t t = 0; t < cfg.trials; ++t) {
    std::int64_t count = trial_fn(cfg, TrialSeed(cfg, t));
    result.per_trial.push_back(count);
    sum += static_cast<double>(count);
  }
  result.mean_correct =
      static_cast<std::int64_t>(sum / static_cast<double>(cfg.trials));
  return result;
}

}  // namespace internal

inline SimResult SimulateBinary(const SimConfig& cfg) {
  cfg.Validate();
  if (cfg.k != 2) throw std::invalid_argument("SimulateBinary: k must be 2");
  if (cfg.n_guesses < 2) {
    throw std::invalid_argument("SimulateBinary: n_guesses must be >= 2");
  }
  return internal::RunTrials(cfg, internal::BinaryTrial);
}

inline SimResult SimulateReconstruction(const SimConfig& cfg) {
  cfg.Validate();
  if (cfg.k < 3) {
    throw std::invalid_argument("SimulateReconstruction: k must be >= 3");
  }
  return internal::RunTrials(cfg, internal::ReconstructionTrial);
}

struct TailEstimate {
  double fraction = 0.0;
  double ci_half_width = 0.0;  // Wilson 95%
  std::int64_t runs = 0;
};

// Monte Carlo estimate of Pr[correct count >= c_threshold] over independent
// single-game runs with fresh derived seeds.
inline TailEstimate McTailEstimate(const SimConfig& cfg, std::int64_t c_threshold,
                                   std::int64_t n_runs) {
  cfg.Validate();
  if (n_runs < 100) throw std::invalid_argument("McTailEstimate: n_runs must be >= 100");
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < n_runs; ++i) {
    SimConfig one = cfg;
    one.trials = 1;
    one.master_seed = DeriveStreamSeed(cfg.master_seed ^ 0x7461696CULL,
                                       static_cast<std::uint64_t>(i));
    SimResult r = (cfg.k == 2) ? SimulateBinary(one) : SimulateReconstruction(one);
    if (r.per_trial[0] >= c_threshold) ++hits;
  }
  const double z = 1.959963984540054;
  const double nr = static_cast<double>(n_runs);
  const double phat = static_cast<double>(hits) / nr;
  const double z2n = z * z / nr;
  TailEstimate est;
  est.runs = n_runs;
  est.fraction = phat;
  est.ci_half_width =
      z * std::sqrt(phat * (1.0 - phat) / nr + z2n / (4.0 * nr)) / (1.0 + z2n);
  return est;
}

}  // namespace fdpaudit

#endif  // FDPAUDIT_SIMULATE_HPP_
