// Copyright 2026 The DCIL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Ablation variants and the statistics used to compare them: the fraction
// of runs that have solved the chain by a given step, and Welch's t-test.

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "dcil/trainer.hpp"

namespace dcil {

enum class Variant { kFull, kNoOvershoot, kNoBonus, kNoBoth };

inline constexpr std::array<Variant, 4> kAllVariants = {Variant::kFull, Variant::kNoOvershoot,
                                                        Variant::kNoBonus, Variant::kNoBoth};

inline std::string variant_name(Variant v) {
  switch (v) {
    case Variant::kFull: return "full";
    case Variant::kNoOvershoot: return "no-overshoot";
    case Variant::kNoBonus: return "no-bonus";
    case Variant::kNoBoth: return "no-both";
  }
  return "full";
}

inline Variant parse_variant(const std::string& s) {
  for (Variant v : kAllVariants)
    if (variant_name(v) == s) return v;
  throw std::invalid_argument("unknown variant '" + s +
                              "' (expected full, no-overshoot, no-bonus or no-both)");
}

inline void apply_variant(TrainConfig& cfg, Variant v) {
  cfg.disable_bonus = v == Variant::kNoBonus || v == Variant::kNoBoth;
  cfg.disable_overshoot = v == Variant::kNoOvershoot || v == Variant::kNoBoth;
}

inline bool solved_by(const std::optional<long>& first_solve, long step) {
  return first_solve && *first_solve <= step;
}

inline double solved_fraction(const std::vector<std::optional<long>>& first_solves, long step) {
  if (first_solves.empty()) return 0.0;
  double n = 0.0;
  for (const auto& f : first_solves) n += solved_by(f, step);
  return n / static_cast<double>(first_solves.size());
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double sample_variance(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;  // two-sided
};

/// Welch's unequal-variance t-test. When both samples are constant the
/// statistic is unbounded: p is 0 if the means differ and 1 otherwise.
inline WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("welch_t_test: need at least two samples per group");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = sample_variance(a) / na;
  const double vb = sample_variance(b) / nb;
  const double diff = mean(a) - mean(b);
  WelchResult r;
  if (va + vb == 0.0) {
    r.t = diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
    r.df = na + nb - 2.0;
    r.p = diff == 0.0 ? 1.0 : 0.0;
    return r;
  }
  r.t = diff / std::sqrt(va + vb);
  r.df = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  const boost::math::students_t dist(r.df);
  r.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  return r;
}

}  // namespace dcil
