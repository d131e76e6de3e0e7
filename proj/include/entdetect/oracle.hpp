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

#ifndef ENTDETECT_ORACLE_HPP
#define ENTDETECT_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "entdetect/common.hpp"
#include "entdetect/linalg.hpp"
#include "entdetect/states.hpp"
#include "entdetect/transforms.hpp"
#include "entdetect/witness.hpp"

namespace entdetect {

enum class Subsystem { A, B };

/// Partial transpose over one subsystem:
/// <a b| rho^{T_B} |a' b'> = <a b'| rho |a' b>.
inline ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem cut) {
  const int da = rho.dim_a();
  const int db = rho.dim_b();
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out(m.rows(), m.cols());
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b2 = 0; b2 < db; ++b2) {
          int src_row = cut == Subsystem::B ? a * db + b2 : a2 * db + b;
          int src_col = cut == Subsystem::B ? a2 * db + b : a * db + b2;
          out(a * db + b, a2 * db + b2) = m(src_row, src_col);
        }
  return out;
}

inline double min_partial_transpose_eigenvalue(const DensityMatrix& rho, Subsystem cut = Subsystem::B) {
  return hermitian_eig(partial_transpose(rho, cut)).eigenvalues(0);
}

/// Negative partial transpose: a certificate of entanglement.
inline bool is_npt(const DensityMatrix& rho, Subsystem cut = Subsystem::B) {
  return min_partial_transpose_eigenvalue(rho, cut) < -kNptTol;
}

/// Schmidt coefficients of psi, descending.
inline Eigen::VectorXd schmidt_coefficients(const NoisyPureState& s) {
  Eigen::JacobiSVD<ComplexMatrix> svd(s.coefficients());
  return svd.singularValues();
}

/// The partial transpose of |psi><psi| has spectrum {s_i^2} ∪ {±s_i s_j, i<j},
/// so its minimum is -s_0 s_1 and the white-noise shift is (1-v)/D.
inline double min_partial_transpose_eigenvalue(const NoisyPureState& s) {
  Eigen::VectorXd c = schmidt_coefficients(s);
  double top = c.size() >= 2 ? c(0) * c(1) : 0.0;
  return (1.0 - s.v) / s.dim() - s.v * top;
}

inline bool is_npt(const NoisyPureState& s) { return min_partial_transpose_eigenvalue(s) < -kNptTol; }

/// Minimum visibilities for the two detectable reductions of an ICPS state.
struct IcpsThresholds {
  double v_a = 1.0;  ///< 1/(1 + d^2 alpha^2): a pair of core levels
  double v_b = 1.0;  ///< 1/(1 + d^2 alpha alpha_r): a core level with the edge level
  bool has_core_pairs = false;  ///< r >= 3; otherwise v_a never applies

  /// The state is entangled iff v exceeds this value.
  double entanglement_threshold() const { return has_core_pairs ? std::min(v_a, v_b) : v_b; }
};

inline IcpsThresholds icps_thresholds(const IcpsParams& p) {
  p.validate();
  const double d2 = static_cast<double>(p.d) * p.d;
  IcpsThresholds t;
  t.v_a = 1.0 / (1.0 + d2 * p.alpha * p.alpha);
  t.v_b = 1.0 / (1.0 + d2 * p.alpha * p.alpha_r());
  t.has_core_pairs = p.r >= 3;
  return t;
}

/// Ground truth for ICPS states. Equivalent to is_npt(make_icps(p)) since the
/// negative partial-transpose eigenvalues are -v alpha^2 (r >= 3) and
/// -v alpha alpha_r, each shifted by (1-v)/d^2.
inline bool icps_is_entangled(const IcpsParams& p) { return p.v > icps_thresholds(p).entanglement_threshold(); }

enum class ScenarioClass { BothInCore, CoreAndEdge, ViolatedCore, ViolatedEdge };

inline std::string_view to_string(ScenarioClass c) {
  switch (c) {
    case ScenarioClass::BothInCore: return "both_in_core";
    case ScenarioClass::CoreAndEdge: return "core_and_edge";
    case ScenarioClass::ViolatedCore: return "violated_core";
    case ScenarioClass::ViolatedEdge: return "violated_edge";
  }
  return "?";
}

/// Core levels are 0..r-2 (coefficient alpha), the edge level is r-1.
/// A selection is matched when B picks the same two levels as A, in either
/// order. Unmatched selections are Violated*, split by whether they touch
/// the edge level.
inline ScenarioClass classify_selection(const LevelSelection& sel, int r) {
  const bool matched = (sel.a0 == sel.b0 && sel.a1 == sel.b1) || (sel.a0 == sel.b1 && sel.a1 == sel.b0);
  auto core = [r](int x) { return x >= 0 && x <= r - 2; };
  const int edge = r - 1;
  if (matched) {
    if (core(sel.a0) && core(sel.a1)) return ScenarioClass::BothInCore;
    if ((core(sel.a0) && sel.a1 == edge) || (sel.a0 == edge && core(sel.a1))) return ScenarioClass::CoreAndEdge;
  }
  const bool touches_edge = sel.a0 == edge || sel.a1 == edge || sel.b0 == edge || sel.b1 == edge;
  return touches_edge ? ScenarioClass::ViolatedEdge : ScenarioClass::ViolatedCore;
}

/// Closed-form witness score Tr sqrt(R) - 1 of the reduction in a detectable
/// scenario. This is the score, not FEF_w = max(0, score)/2: the pure
/// maximally entangled pair evaluates to 2.
inline double analytic_fef_score(const IcpsParams& p, ScenarioClass scenario) {
  p.validate();
  const double d2 = static_cast<double>(p.d) * p.d;
  const double a = p.alpha;
  const double ar = p.alpha_r();
  const double v = p.v;
  switch (scenario) {
    case ScenarioClass::BothInCore:
      if (p.r < 3) throw InvalidScenario("analytic_fef_score: no core pair exists for r < 3");
      return 3.0 * d2 * v * a * a / (2.0 + v * (d2 * a * a - 2.0)) - 1.0;
    case ScenarioClass::CoreAndEdge: {
      const double core_weight = (p.r - 2) * a * a;
      return d2 * v * (4.0 * a * ar + 1.0 - core_weight) / (4.0 + v * ((d2 - 4.0) - d2 * core_weight)) - 1.0;
    }
    default:
      throw InvalidScenario("analytic_fef_score: only both_in_core and core_and_edge have closed forms");
  }
}

/// Exact non-negative fraction num/den in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw InvalidParams("Rational: zero denominator");
    std::int64_t g = std::gcd(num, den);
    if (g != 0) {
      num /= g;
      den /= g;
    }
    if (den < 0) {
      num = -num;
      den = -den;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Rational& x, const Rational& y) { return x.num == y.num && x.den == y.den; }
};

/// Result of evaluating every selection class on one state.
struct SelectionCensus {
  std::size_t detected = 0;
  std::size_t total = 0;
  std::vector<LevelSelection> detecting;

  double fraction() const { return total == 0 ? 0.0 : static_cast<double>(detected) / total; }
  Rational rational() const {
    return Rational(static_cast<std::int64_t>(detected), static_cast<std::int64_t>(std::max<std::size_t>(total, 1)));
  }
};

/// Applies the strategy once, then witnesses every ordered selection class.
template <class State>
SelectionCensus brute_force_census(const State& rho, const LutStrategy& lut, Rng& rng) {
  State transformed = apply_lut(rho, lut, rng);
  int da, db;
  if constexpr (std::is_same_v<State, DensityMatrix>) {
    da = rho.dim_a();
    db = rho.dim_b();
  } else {
    da = rho.dim_a;
    db = rho.dim_b;
  }
  SelectionCensus census;
  for (const LevelSelection& sel : enumerate_selections(da, db)) {
    ++census.total;
    if (witness_selection(transformed, sel, lut.tag).detected) {
      ++census.detected;
      census.detecting.push_back(sel);
    }
  }
  return census;
}

template <class State>
SelectionCensus brute_force_census(const State& rho, const LutStrategy& lut) {
  Rng rng(0);
  return brute_force_census(rho, lut, rng);
}

/// Per-state sensitivity: fraction of selection classes that detect.
template <class State>
double brute_force_sensitivity(const State& rho, const LutStrategy& lut) {
  return brute_force_census(rho, lut).fraction();
}

/// Which closed-form reductions are positive for a given ICPS state.
enum class IcpsRegime { None, CoreOnly, EdgeOnly, Both };

inline IcpsRegime icps_regime(const IcpsParams& p) {
  const double core = p.r >= 3 ? analytic_fef_score(p, ScenarioClass::BothInCore) : -1.0;
  const double edge = analytic_fef_score(p, ScenarioClass::CoreAndEdge);
  const bool c = core > kWitnessTol;
  const bool e = edge > kWitnessTol;
  if (c && e) return IcpsRegime::Both;
  if (c) return IcpsRegime::CoreOnly;
  if (e) return IcpsRegime::EdgeOnly;
  return IcpsRegime::None;
}

/// Counting sensitivities over the d^2 (d-1)^2 ordered selection classes.
/// Core pairs contribute 2(r-1)(r-2) classes (ordered pair times two
/// matchings). For the edge scenario two values are kept: the (r-1)
/// printed in the counting table, and 4(r-1) (two orderings times two
/// matchings), which is the only value consistent with the combined total.
struct AnalyticSensitivity {
  Rational scenario_i;
  Rational scenario_ii_printed;
  Rational scenario_ii_consistent;
  Rational combined;

  /// Expected detected fraction when exactly the given scenarios are positive.
  Rational for_regime(IcpsRegime regime) const {
    switch (regime) {
      case IcpsRegime::None: return Rational(0, 1);
      case IcpsRegime::CoreOnly: return scenario_i;
      case IcpsRegime::EdgeOnly: return scenario_ii_consistent;
      case IcpsRegime::Both: return combined;
    }
    return Rational(0, 1);
  }
};

inline std::int64_t selection_class_count(int d) {
  const std::int64_t dd = d;
  return dd * dd * (dd - 1) * (dd - 1);
}

inline AnalyticSensitivity analytic_sensitivity(int d, int r) {
  if (d < 2 || r < 2 || r > d) throw InvalidParams("analytic_sensitivity: need 2 <= r <= d");
  const std::int64_t den = selection_class_count(d);
  const std::int64_t rr = r;
  return {Rational(2 * (rr - 2) * (rr - 1), den), Rational(rr - 1, den), Rational(4 * (rr - 1), den),
          Rational(2 * (rr - 1) * rr, den)};
}

/// Representative ICPS parameters in which only the edge scenario detects:
/// alpha below 1/sqrt(r), v midway between v_b and v_a (or 1 for r = 2).
inline IcpsParams edge_only_representative(int d, int r) {
  IcpsParams p{d, r, 0.5 / std::sqrt(static_cast<double>(r)), 0.0};
  IcpsThresholds t = icps_thresholds(p);
  p.v = r >= 3 ? 0.5 * (t.v_a + t.v_b) : 0.5 * (t.v_b + 1.0);
  return p;
}

/// Representative ICPS parameters in which only the core scenario detects.
/// Requires r >= 3.
inline IcpsParams core_only_representative(int d, int r) {
  if (r < 3) throw InvalidParams("core_only_representative: requires r >= 3");
  const double lo = 1.0 / std::sqrt(static_cast<double>(r));
  const double hi = 1.0 / std::sqrt(static_cast<double>(r - 1));
  IcpsParams p{d, r, 0.5 * (lo + hi), 0.0};
  IcpsThresholds t = icps_thresholds(p);
  p.v = 0.5 * (t.v_a + t.v_b);
  return p;
}

/// Enumerated edge-scenario count compared with both candidate values.
struct EdgeCountReport {
  int d = 0;
  int r = 0;
  std::size_t enumerated = 0;
  std::int64_t printed = 0;
  std::int64_t consistent = 0;
  bool all_core_and_edge = false;

  bool matches_printed() const { return static_cast<std::int64_t>(enumerated) == printed; }
  bool matches_consistent() const { return static_cast<std::int64_t>(enumerated) == consistent; }
};

inline EdgeCountReport edge_count_report(int d, int r) {
  IcpsParams p = edge_only_representative(d, r);
  SelectionCensus census = brute_force_census(make_icps_noisy(p), LutStrategy::identity());
  EdgeCountReport rep;
  rep.d = d;
  rep.r = r;
  rep.enumerated = census.detected;
  rep.printed = r - 1;
  rep.consistent = 4 * static_cast<std::int64_t>(r - 1);
  rep.all_core_and_edge = std::all_of(census.detecting.begin(), census.detecting.end(), [r](const LevelSelection& s) {
    return classify_selection(s, r) == ScenarioClass::CoreAndEdge;
  });
  return rep;
}

}  // namespace entdetect

#endif  // ENTDETECT_ORACLE_HPP
