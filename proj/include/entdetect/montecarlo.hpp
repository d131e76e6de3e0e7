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

#ifndef ENTDETECT_MONTECARLO_HPP
#define ENTDETECT_MONTECARLO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "entdetect/common.hpp"
#include "entdetect/detection.hpp"
#include "entdetect/oracle.hpp"
#include "entdetect/states.hpp"

namespace entdetect {

/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

/// Half-width of the Wilson score interval for k successes out of n.
inline double wilson_half_width(std::uint64_t k, std::uint64_t n, double z = kZ95) {
  if (n == 0) return 0.0;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  return z / (1.0 + z2 / nn) * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
}

/// detected / entangled with its Wilson 95% half-width.
struct SensitivityEstimate {
  std::uint64_t detected = 0;
  std::uint64_t entangled = 0;
  std::uint64_t sampled = 0;
  double value = 0.0;
  double ci95 = 0.0;
  std::uint64_t seed = 0;

  static SensitivityEstimate from_counts(std::uint64_t detected, std::uint64_t entangled, std::uint64_t sampled,
                                         std::uint64_t seed) {
    SensitivityEstimate e{detected, entangled, sampled, 0.0, 0.0, seed};
    e.value = entangled == 0 ? 0.0 : static_cast<double>(detected) / static_cast<double>(entangled);
    e.ci95 = wilson_half_width(detected, entangled);
    return e;
  }

  /// Binomial standard error of value.
  double sigma() const {
    if (entangled == 0) return 0.0;
    return std::sqrt(value * (1.0 - value) / static_cast<double>(entangled));
  }
};

/// Worker count: ENTDETECT_WORKERS if set, else hardware concurrency.
inline unsigned default_workers() {
  if (const char* env = std::getenv("ENTDETECT_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(i) for i in [0, n) over `workers` threads and returns the
/// results in index order. fn must depend only on i.
template <class Fn>
auto parallel_map(std::uint64_t n, unsigned workers, Fn fn) -> std::vector<decltype(fn(std::uint64_t{}))> {
  using R = decltype(fn(std::uint64_t{}));
  std::vector<R> out(n);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::uint64_t>(n, 1))));
  if (workers == 1) {
    for (std::uint64_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::uint64_t i = w; i < n; i += workers) out[i] = fn(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

/// Sensitivities of one ensemble sweep: one estimate per strategy plus the
/// "any strategy detected" row.
struct SweepResult {
  std::vector<std::string> labels;
  std::vector<SensitivityEstimate> per_strategy;
  SensitivityEstimate combined;
};

/// How the denominator of an ICPS sweep is formed.
enum class Conditioning {
  Entangled,      ///< detected / entangled samples
  Unconditioned,  ///< detected / all samples
};

namespace detail {

struct SampleOutcome {
  bool entangled = false;
  bool counted = false;    // enters the denominator
  std::uint32_t mask = 0;  // bit k set when strategy k detected
};

inline SweepResult aggregate(const std::vector<SampleOutcome>& samples, const DetectionConfig& cfg,
                             std::uint64_t seed) {
  const std::size_t ns = cfg.strategies.size();
  std::vector<std::uint64_t> hits(ns, 0);
  std::uint64_t any = 0, entangled = 0, counted = 0;
  for (const SampleOutcome& s : samples) {
    entangled += s.entangled ? 1 : 0;
    if (!s.counted) continue;
    ++counted;
    for (std::size_t k = 0; k < ns; ++k)
      if (s.mask & (1u << k)) ++hits[k];
    if (s.mask != 0) ++any;
  }
  const std::uint64_t sampled = samples.size();
  SweepResult out;
  for (std::size_t k = 0; k < ns; ++k) {
    out.labels.emplace_back(to_string(cfg.strategies[k].tag));
    SensitivityEstimate e = SensitivityEstimate::from_counts(hits[k], counted, sampled, seed);
    e.entangled = entangled;
    out.per_strategy.push_back(e);
  }
  out.combined = SensitivityEstimate::from_counts(any, counted, sampled, seed);
  out.combined.entangled = entangled;
  return out;
}

template <class State>
std::uint32_t detection_mask(const State& state, const DetectionConfig& cfg, Rng& rng) {
  TrialResult trial = run_trial(state, cfg, rng);
  std::uint32_t mask = 0;
  for (std::size_t k = 0; k < trial.strategy_detected.size(); ++k)
    if (trial.strategy_detected[k]) mask |= 1u << k;
  return mask;
}

}  // namespace detail

/// Draws (alpha, v) uniformly from [0, 1/sqrt(r-1)] x [0, 1].
inline IcpsParams sample_icps_params(int d, int r, Rng& rng) {
  IcpsParams p{d, r, 0.0, 0.0};
  std::uniform_real_distribution<double> alpha(0.0, p.alpha_max());
  std::uniform_real_distribution<double> vis(0.0, 1.0);
  p.alpha = alpha(rng);
  p.v = vis(rng);
  return p;
}

/// Ensemble sensitivity on ICPS states with uniform (alpha, v). Sample i uses
/// substream (seed, i) only, so results do not depend on `workers`.
inline SweepResult estimate_icps_sensitivity(int d, int r, const DetectionConfig& cfg, std::uint64_t n_samples,
                                             std::uint64_t seed, unsigned workers = default_workers(),
                                             Conditioning conditioning = Conditioning::Entangled) {
  if (d < 2 || r < 2 || r > d) throw InvalidParams("estimate_icps_sensitivity: need 2 <= r <= d");
  if (n_samples < 1) throw InvalidParams("estimate_icps_sensitivity: n_samples must be >= 1");
  cfg.validate();
  if (cfg.strategies.size() > 32) throw InvalidParams("estimate_icps_sensitivity: at most 32 strategies");
  auto samples = parallel_map(n_samples, workers, [&](std::uint64_t i) {
    Rng rng = make_stream(seed, i);
    IcpsParams p = sample_icps_params(d, r, rng);
    detail::SampleOutcome out;
    out.entangled = icps_is_entangled(p);
    out.counted = out.entangled || conditioning == Conditioning::Unconditioned;
    if (out.counted) out.mask = detail::detection_mask(make_icps_noisy(p), cfg, rng);
    return out;
  });
  return detail::aggregate(samples, cfg, seed);
}

/// Sensitivity on Haar-random pure states under white noise, conditioned on
/// NPT. Identity strategy only. The pure state of sample i is the first draw
/// from substream (seed, i), so the same seed gives the same states at every
/// noise level and in both modes.
inline SensitivityEstimate estimate_quasi_pure_sensitivity(int d, double noise_level, SelectionMode mode,
                                                           std::uint64_t n_samples, std::uint64_t seed,
                                                           unsigned workers = default_workers()) {
  if (d < 2) throw InvalidParams("estimate_quasi_pure_sensitivity: d must be >= 2");
  if (!(noise_level >= 0.0 && noise_level <= 1.0))
    throw InvalidParams("estimate_quasi_pure_sensitivity: noise level must lie in [0, 1]");
  if (n_samples < 1) throw InvalidParams("estimate_quasi_pure_sensitivity: n_samples must be >= 1");
  DetectionConfig cfg;
  cfg.strategies = {LutStrategy::identity()};
  cfg.mode = mode;
  const double v = 1.0 - noise_level;
  auto samples = parallel_map(n_samples, workers, [&](std::uint64_t i) {
    Rng rng = make_stream(seed, i);
    NoisyPureState state = make_quasi_pure_noisy({d, v, seed}, rng);
    detail::SampleOutcome out;
    out.entangled = is_npt(state);
    out.counted = out.entangled;
    if (out.entangled) out.mask = detail::detection_mask(state, cfg, rng);
    return out;
  });
  return detail::aggregate(samples, cfg, seed).combined;
}

struct GridSpec {
  int alpha_steps = 1;
  int v_steps = 1;
  std::uint64_t trials_per_cell = 1;

  void validate() const {
    if (alpha_steps < 1 || v_steps < 1 || trials_per_cell < 1)
      throw InvalidParams("GridSpec: all step counts must be >= 1");
  }
};

struct GridCell {
  int alpha_index = 0;
  int v_index = 0;
  double alpha = 0.0;
  double v = 0.0;
  bool separable = false;
  SweepResult result;
};

/// Cell-centred (alpha, v) grid. Each entangled cell runs trials_per_cell
/// trials with substreams (seed, cell, trial). Separable cells run no trials
/// and report zero.
inline std::vector<GridCell> sweep_icps_grid(int d, int r, const GridSpec& grid, const DetectionConfig& cfg,
                                             std::uint64_t seed, unsigned workers = default_workers()) {
  grid.validate();
  cfg.validate();
  if (d < 2 || r < 2 || r > d) throw InvalidParams("sweep_icps_grid: need 2 <= r <= d");
  const double amax = 1.0 / std::sqrt(static_cast<double>(r - 1));
  const std::uint64_t cells = static_cast<std::uint64_t>(grid.alpha_steps) * grid.v_steps;
  return parallel_map(cells, workers, [&](std::uint64_t c) {
    GridCell cell;
    cell.alpha_index = static_cast<int>(c / grid.v_steps);
    cell.v_index = static_cast<int>(c % grid.v_steps);
    cell.alpha = (cell.alpha_index + 0.5) / grid.alpha_steps * amax;
    cell.v = (cell.v_index + 0.5) / grid.v_steps;
    IcpsParams p{d, r, cell.alpha, cell.v};
    cell.separable = !icps_is_entangled(p);
    std::vector<detail::SampleOutcome> trials(grid.trials_per_cell);
    if (!cell.separable) {
      NoisyPureState state = make_icps_noisy(p);
      for (std::uint64_t t = 0; t < grid.trials_per_cell; ++t) {
        Rng rng = make_stream(seed, c, t);
        trials[t] = {true, true, detail::detection_mask(state, cfg, rng)};
      }
    }
    cell.result = detail::aggregate(trials, cfg, seed);
    return cell;
  });
}

// ---------------------------------------------------------------------------
// CSV output

inline constexpr const char* kToolVersion = "1.0.0";

/// Comment header: tool version and every parameter of the run.
inline void write_csv_header(std::ostream& os, const std::string& command,
                             const std::vector<std::pair<std::string, std::string>>& params) {
  os << "# entdetect " << kToolVersion << " " << command << "\n";
  for (const auto& [k, v] : params) os << "# " << k << "=" << v << "\n";
}

inline constexpr const char* kSweepColumns = "d,r,alpha,v,strategy,mode,samples,entangled,detected,sensitivity,ci95,seed";

inline std::string format_fixed(double x, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

inline void write_sweep_row(std::ostream& os, const std::string& d, const std::string& r, const std::string& alpha,
                            const std::string& v, const std::string& strategy, const std::string& mode,
                            const SensitivityEstimate& e) {
  os << d << ',' << r << ',' << alpha << ',' << v << ',' << strategy << ',' << mode << ',' << e.sampled << ','
     << e.entangled << ',' << e.detected << ',' << format_fixed(e.value) << ',' << format_fixed(e.ci95) << ','
     << e.seed << '\n';
}

inline void write_sweep_rows(std::ostream& os, int d, int r, const std::string& alpha, const std::string& v,
                             SelectionMode mode, const SweepResult& res) {
  const std::string ds = std::to_string(d), rs = std::to_string(r), ms(to_string(mode));
  for (std::size_t k = 0; k < res.per_strategy.size(); ++k)
    write_sweep_row(os, ds, rs, alpha, v, res.labels[k], ms, res.per_strategy[k]);
  write_sweep_row(os, ds, rs, alpha, v, "combined", ms, res.combined);
}

inline void write_grid_csv(std::ostream& os, int d, int r, SelectionMode mode, const std::vector<GridCell>& cells) {
  os << kSweepColumns << ",separable\n";
  const std::string ds = std::to_string(d), rs = std::to_string(r), ms(to_string(mode));
  for (const GridCell& cell : cells) {
    const std::string a = format_fixed(cell.alpha, 8), v = format_fixed(cell.v, 8);
    const char* sep = cell.separable ? ",true\n" : ",false\n";
    auto row = [&](const std::string& label, const SensitivityEstimate& e) {
      std::ostringstream line;
      write_sweep_row(line, ds, rs, a, v, label, ms, e);
      std::string s = line.str();
      s.pop_back();
      os << s << sep;
    };
    for (std::size_t k = 0; k < cell.result.per_strategy.size(); ++k)
      row(cell.result.labels[k], cell.result.per_strategy[k]);
    row("combined", cell.result.combined);
  }
}

}  // namespace entdetect

#endif  // ENTDETECT_MONTECARLO_HPP
