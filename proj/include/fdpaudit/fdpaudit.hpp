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

#ifndef FDPAUDIT_FDPAUDIT_HPP_
#define FDPAUDIT_FDPAUDIT_HPP_

#include "fdpaudit/audit.hpp"
#include "fdpaudit/baseline_binomial.hpp"
#include "fdpaudit/empirical_privacy.hpp"
#include "fdpaudit/gaussian_dp.hpp"
#include "fdpaudit/guess_bounds.hpp"
#include "fdpaudit/normal.hpp"
#include "fdpaudit/rng.hpp"
#include "fdpaudit/simulate.hpp"
#include "fdpaudit/tradeoff_curve.hpp"

namespace fdpaudit {
inline constexpr const char* kVersion = "0.1.0";
}

#endif  // FDPAUDIT_FDPAUDIT_HPP_
