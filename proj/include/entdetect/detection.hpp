// Copyright 2026 The entdetect Authors
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

#ifndef ENTDETECT_DETECTION_HPP
#define ENTDETECT_DETECTION_HPP

#include <string_view>
#include <vector>

#include "entdetect/common.hpp"
#include "entdetect/states.hpp"
#include "entdetect/transforms.hpp"
#include "entdetect/witness.hpp"

namespace entdetect {

enum class SelectionMode { SingleChoice, Parallel };
enum class CombinedSelection { Shared, Fresh };

inline std::string_view to_string(SelectionMode m) { return m == SelectionMode::Parallel ? "parallel" : "single"; }
inline std::string_view to_string(CombinedSelection c) { return c == CombinedSelection::Shared ? "shared" : "fresh"; }

struct DetectionConfig {
  std::vector<LutStrategy> strategies = default_strategies();
  SelectionMode mode = SelectionMode::SingleChoice;
  /// Shared: one level selection (or one set of parallel pairs) per trial,
  /// reused by every strategy. Fresh: each strategy draws its own.
  CombinedSelection combined_selection = CombinedSelection::Fresh;

  /// (1) identity, (2) Hadamard on B, (3) Hadamard on both.
  static std::vector<LutStrategy> default_strategies() {
    return {LutStrategy::identity(), LutStrategy::hadamard_b(), LutStrategy::hadamard_both()};
  }

  void validate() const {
    if (strategies.empty()) throw InvalidParams("DetectionConfig: at least one strategy is required");
  }
};

struct TrialResult {
  bool detected = false;
  std::vector<bool> strategy_detected;   ///< one flag per configured strategy
  std::vector<WitnessOutcome> outcomes;  ///< strategy-major, pair-minor
};

namespace detail {

inline int state_dim_a(const DensityMatrix& s) { return s.dim_a(); }
inline int state_dim_a(const NoisyPureState& s) { return s.dim_a; }
inline int state_dim_b(const DensityMatrix& s) { return s.dim_b(); }
inline int state_dim_b(const NoisyPureState& s) { return s.dim_b; }

inline std::vector<LevelSelection> draw_selections(SelectionMode mode, int da, int db, Rng& rng) {
  if (mode == SelectionMode::Parallel) {
    if (da != db) throw InvalidParams("parallel detection requires equal local dimensions");
    return parallel_selections(da, rng);
  }
  return {random_selection(da, db, rng)};
}

template <class State>
TrialResult run_strategies(const State& rho, const DetectionConfig& cfg, Rng& rng,
                           const std::vector<LevelSelection>* fixed) {
  cfg.validate();
  const int da = state_dim_a(rho);
  const int db = state_dim_b(rho);
  std::vector<LevelSelection> shared;
  if (!fixed && cfg.combined_selection == CombinedSelection::Shared) shared = draw_selections(cfg.mode, da, db, rng);

  TrialResult result;
  result.strategy_detected.reserve(cfg.strategies.size());
  for (const LutStrategy& strategy : cfg.strategies) {
    State transformed = apply_lut(rho, strategy, rng);
    std::vector<LevelSelection> fresh;
    const std::vector<LevelSelection>* sels = fixed;
    if (!sels) {
      if (cfg.combined_selection == CombinedSelection::Shared) {
        sels = &shared;
      } else {
        fresh = draw_selections(cfg.mode, da, db, rng);
        sels = &fresh;
      }
    }
    bool hit = false;
    for (const LevelSelection& sel : *sels) {
      WitnessOutcome out = witness_selection(transformed, sel, strategy.tag);
      hit = hit || out.detected;
      result.outcomes.push_back(out);
    }
    result.strategy_detected.push_back(hit);
    result.detected = result.detected || hit;
  }
  return result;
}

}  // namespace detail

/// One random two-qubit choice per strategy.
template <class State>
TrialResult single_trial(const State& rho, DetectionConfig cfg, Rng& rng) {
  cfg.mode = SelectionMode::SingleChoice;
  return detail::run_strategies(rho, cfg, rng, nullptr);
}

/// Every strategy evaluated on a caller-chosen selection.
template <class State>
TrialResult single_trial(const State& rho, const DetectionConfig& cfg, const LevelSelection& sel, Rng& rng) {
  std::vector<LevelSelection> fixed{sel};
  return detail::run_strategies(rho, cfg, rng, &fixed);
}

/// floor(d/2) disjoint two-qubit choices per strategy; one strategy
/// application covers all pairs of a trial.
template <class State>
TrialResult parallel_trial(const State& rho, DetectionConfig cfg, Rng& rng) {
  cfg.mode = SelectionMode::Parallel;
  return detail::run_strategies(rho, cfg, rng, nullptr);
}

template <class State>
TrialResult run_trial(const State& rho, const DetectionConfig& cfg, Rng& rng) {
  return detail::run_strategies(rho, cfg, rng, nullptr);
}

}  // namespace entdetect

#endif  // ENTDETECT_DETECTION_HPP
