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

#ifndef ENTDETECT_TRANSFORMS_HPP
#define ENTDETECT_TRANSFORMS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entdetect/common.hpp"
#include "entdetect/linalg.hpp"
#include "entdetect/states.hpp"

namespace entdetect {

/// Two levels per subsystem. Level a0 becomes qubit state |0>_A and a1
/// becomes |1>_A; likewise for B. Only the first two images of the level
/// permutations matter, so this is the whole selection.
struct LevelSelection {
  int a0 = 0;
  int a1 = 1;
  int b0 = 0;
  int b1 = 1;

  bool valid(int dim_a, int dim_b) const noexcept {
    auto in = [](int x, int d) { return x >= 0 && x < d; };
    return a0 != a1 && b0 != b1 && in(a0, dim_a) && in(a1, dim_a) && in(b0, dim_b) && in(b1, dim_b);
  }

  /// Both qubits flipped (a0<->a1, b0<->b1).
  LevelSelection flipped() const noexcept { return {a1, a0, b1, b0}; }

  friend bool operator==(const LevelSelection&, const LevelSelection&) = default;
};

enum class LutTag { Identity, HadamardB, HadamardBoth, RandomBoth };

inline std::string_view to_string(LutTag tag) {
  switch (tag) {
    case LutTag::Identity: return "identity";
    case LutTag::HadamardB: return "hadamard_b";
    case LutTag::HadamardBoth: return "hadamard_both";
    case LutTag::RandomBoth: return "random_both";
  }
  return "?";
}

inline std::optional<LutTag> parse_lut_tag(std::string_view s) {
  if (s == "identity" || s == "1") return LutTag::Identity;
  if (s == "hadamard_b" || s == "2") return LutTag::HadamardB;
  if (s == "hadamard_both" || s == "3") return LutTag::HadamardBoth;
  if (s == "random_both" || s == "random") return LutTag::RandomBoth;
  return std::nullopt;
}

/// Local unitary U_A ⊗ V_B applied before level selection. RandomBoth carries
/// its unitaries when pinned; otherwise fresh Haar unitaries are drawn at
/// every application.
struct LutStrategy {
  LutTag tag = LutTag::Identity;
  std::optional<ComplexMatrix> u_a;
  std::optional<ComplexMatrix> v_b;

  static LutStrategy identity() { return {LutTag::Identity, {}, {}}; }
  static LutStrategy hadamard_b() { return {LutTag::HadamardB, {}, {}}; }
  static LutStrategy hadamard_both() { return {LutTag::HadamardBoth, {}, {}}; }
  static LutStrategy random_both() { return {LutTag::RandomBoth, {}, {}}; }

  static LutStrategy pinned(ComplexMatrix u, ComplexMatrix v) {
    auto unitary = [](const ComplexMatrix& m) {
      return m.rows() == m.cols() &&
             (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <=
                 kHermiticityTol;
    };
    if (!unitary(u) || !unitary(v)) throw InvalidParams("LutStrategy: pinned matrices must be unitary");
    return {LutTag::RandomBoth, std::move(u), std::move(v)};
  }
};

/// H[k,l] = omega^(kl)/sqrt(d), omega = exp(2 pi i/d).
inline ComplexMatrix qudit_hadamard(int d) {
  if (d < 2) throw InvalidParams("qudit_hadamard: d must be >= 2");
  ComplexMatrix h(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      // Reduce the exponent mod d so large k*l keep full phase precision.
      double angle = 2.0 * std::numbers::pi * static_cast<double>((k * l) % d) / d;
      h(k, l) = norm * Complex(std::cos(angle), std::sin(angle));
    }
  }
  return h;
}

/// Per-thread memo of qudit_hadamard(d).
inline const ComplexMatrix& cached_hadamard(int d) {
  thread_local std::vector<std::optional<ComplexMatrix>> cache;
  if (static_cast<std::size_t>(d) >= cache.size()) cache.resize(static_cast<std::size_t>(d) + 1);
  auto& slot = cache[static_cast<std::size_t>(d)];
  if (!slot) slot = qudit_hadamard(d);
  return *slot;
}

/// The local operators (U_A, V_B) of a strategy; nullopt stands for identity.
struct LocalOperators {
  std::optional<ComplexMatrix> u_a;
  std::optional<ComplexMatrix> v_b;
};

inline LocalOperators resolve_lut(const LutStrategy& s, int dim_a, int dim_b, Rng& rng) {
  switch (s.tag) {
    case LutTag::Identity: return {};
    case LutTag::HadamardB: return {std::nullopt, cached_hadamard(dim_b)};
    case LutTag::HadamardBoth: return {cached_hadamard(dim_a), cached_hadamard(dim_b)};
    case LutTag::RandomBoth:
      if (s.u_a && s.v_b) return {*s.u_a, *s.v_b};
      {
        ComplexMatrix u = haar_unitary(dim_a, rng);
        ComplexMatrix v = haar_unitary(dim_b, rng);
        return {std::move(u), std::move(v)};
      }
  }
  return {};
}

inline DensityMatrix apply_local(const DensityMatrix& rho, const LocalOperators& ops) {
  if (!ops.u_a && !ops.v_b) return rho;
  ComplexMatrix u = ops.u_a.value_or(ComplexMatrix::Identity(rho.dim_a(), rho.dim_a()));
  ComplexMatrix v = ops.v_b.value_or(ComplexMatrix::Identity(rho.dim_b(), rho.dim_b()));
  ComplexMatrix w = kron(u, v);
  ComplexMatrix out = w * rho.matrix() * w.adjoint();
  return DensityMatrix::trusted(rho.dim_a(), rho.dim_b(), 0.5 * (out + out.adjoint()));
}

/// (U ⊗ V)|psi> is U C V^T in coefficient form; the white-noise part is
/// invariant under any local unitary.
inline NoisyPureState apply_local(const NoisyPureState& s, const LocalOperators& ops) {
  if (!ops.u_a && !ops.v_b) return s;
  ComplexMatrix c = s.coefficients();
  if (ops.u_a) c = (*ops.u_a) * c;
  if (ops.v_b) c = c * ops.v_b->transpose();
  return NoisyPureState::from_coefficients(c, s.v);
}

template <class State>
State apply_lut(const State& rho, const LutStrategy& s, Rng& rng) {
  return apply_local(rho, resolve_lut(s, rho.dim_a, rho.dim_b, rng));
}

inline DensityMatrix apply_lut(const DensityMatrix& rho, const LutStrategy& s, Rng& rng) {
  return apply_local(rho, resolve_lut(s, rho.dim_a(), rho.dim_b(), rng));
}

inline DensityMatrix apply_lut(const DensityMatrix& rho, const LutStrategy& s) {
  Rng unused(0);
  if (s.tag == LutTag::RandomBoth && !(s.u_a && s.v_b)) {
    throw InvalidParams("apply_lut: unpinned random strategy requires a generator");
  }
  return apply_lut(rho, s, unused);
}

/// Uniform ordered pair of distinct levels in [0, d).
inline std::pair<int, int> random_level_pair(int d, Rng& rng) {
  std::uniform_int_distribution<int> first(0, d - 1);
  std::uniform_int_distribution<int> second(0, d - 2);
  int x = first(rng);
  int y = second(rng);
  if (y >= x) ++y;
  return {x, y};
}

inline LevelSelection random_selection(int dim_a, int dim_b, Rng& rng) {
  if (dim_a < 2 || dim_b < 2) throw InvalidParams("random_selection: dimensions must be >= 2");
  auto [a0, a1] = random_level_pair(dim_a, rng);
  auto [b0, b1] = random_level_pair(dim_b, rng);
  return {a0, a1, b0, b1};
}

inline LevelSelection random_selection(int d, Rng& rng) { return random_selection(d, d, rng); }

/// floor(d/2) disjoint selections from one uniform permutation per side;
/// the i-th consecutive pair of A is coupled with the i-th pair of B. With
/// odd d the last level of each permutation is left out.
inline std::vector<LevelSelection> parallel_selections(int d, Rng& rng) {
  if (d < 2) throw InvalidParams("parallel_selections: d must be >= 2");
  std::vector<int> pa(d), pb(d);
  std::iota(pa.begin(), pa.end(), 0);
  std::iota(pb.begin(), pb.end(), 0);
  std::shuffle(pa.begin(), pa.end(), rng);
  std::shuffle(pb.begin(), pb.end(), rng);
  std::vector<LevelSelection> out;
  out.reserve(d / 2);
  for (int k = 0; k < d / 2; ++k) out.push_back({pa[2 * k], pa[2 * k + 1], pb[2 * k], pb[2 * k + 1]});
  return out;
}

/// Every ordered selection class, lexicographic in (a0, a1, b0, b1). There
/// are dim_a(dim_a-1) dim_b(dim_b-1) of them.
inline std::vector<LevelSelection> enumerate_selections(int dim_a, int dim_b) {
  std::vector<LevelSelection> out;
  out.reserve(static_cast<std::size_t>(dim_a) * (dim_a - 1) * dim_b * (dim_b - 1));
  for (int a0 = 0; a0 < dim_a; ++a0)
    for (int a1 = 0; a1 < dim_a; ++a1)
      for (int b0 = 0; b0 < dim_b; ++b0)
        for (int b1 = 0; b1 < dim_b; ++b1)
          if (a0 != a1 && b0 != b1) out.push_back({a0, a1, b0, b1});
  return out;
}

struct ReducedState {
  DensityMatrix state;
  double success_prob;
};

namespace detail {

inline std::array<int, 4> reduced_indices(const LevelSelection& sel, int dim_b) {
  return {sel.a0 * dim_b + sel.b0, sel.a0 * dim_b + sel.b1, sel.a1 * dim_b + sel.b0,
          sel.a1 * dim_b + sel.b1};
}

inline std::optional<ReducedState> normalize_block(ComplexMatrix block) {
  double p = block.trace().real();
  if (!(p >= kZeroProbabilityTol)) return std::nullopt;
  block /= p;
  return ReducedState{DensityMatrix::trusted(2, 2, 0.5 * (block + block.adjoint())), p};
}

}  // namespace detail

/// M rho M^dagger / Tr[M rho M^dagger] in the basis |00>,|01>,|10>,|11>.
/// Empty when the filter success probability is below kZeroProbabilityTol.
inline std::optional<ReducedState> try_reduce_to_two_qubits(const DensityMatrix& rho,
                                                            const LevelSelection& sel) {
  if (!sel.valid(rho.dim_a(), rho.dim_b())) throw InvalidParams("reduce_to_two_qubits: level out of range");
  auto idx = detail::reduced_indices(sel, rho.dim_b());
  ComplexMatrix block(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) block(i, j) = rho.matrix()(idx[i], idx[j]);
  return detail::normalize_block(std::move(block));
}

inline std::optional<ReducedState> try_reduce_to_two_qubits(const NoisyPureState& s,
                                                            const LevelSelection& sel) {
  if (!sel.valid(s.dim_a, s.dim_b)) throw InvalidParams("reduce_to_two_qubits: level out of range");
  auto idx = detail::reduced_indices(sel, s.dim_b);
  ComplexVector x(4);
  for (int i = 0; i < 4; ++i) x(i) = s.psi(idx[i]);
  ComplexMatrix block = s.v * (x * x.adjoint());
  block.diagonal().array() += (1.0 - s.v) / s.dim();
  return detail::normalize_block(std::move(block));
}

template <class State>
ReducedState reduce_to_two_qubits(const State& rho, const LevelSelection& sel) {
  auto out = try_reduce_to_two_qubits(rho, sel);
  if (!out) throw ZeroProbability("reduce_to_two_qubits: selection carries no weight");
  return std::move(*out);
}

}  // namespace entdetect

#endif  // ENTDETECT_TRANSFORMS_HPP
