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

#ifndef ENTDETECT_COMMON_HPP
#define ENTDETECT_COMMON_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace entdetect {

/// Tolerances shared by every module.
inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kReconstructionTol = 1e-9;
inline constexpr double kWitnessTol = 1e-12;
/// A reduction whose filter success probability falls below this is treated
/// as carrying no information.
inline constexpr double kZeroProbabilityTol = 1e-14;
/// Partial-transpose eigenvalues below -kNptTol certify entanglement.
inline constexpr double kNptTol = 1e-10;

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class InvalidState : public Error {
 public:
  using Error::Error;
};

class ZeroProbability : public Error {
 public:
  using Error::Error;
};

class InvalidScenario : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Deterministic substream keyed by (master seed, index). Results computed
/// from substreams do not depend on how indices are spread over workers.
inline Rng make_stream(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t key = mix64(master_seed) ^ mix64(index + 0x632BE59BD9B4E019ull);
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                    static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(index)};
  return Rng(seq);
}

/// Nested substream for two-level indexing (e.g. grid cell, trial).
inline Rng make_stream(std::uint64_t master_seed, std::uint64_t outer, std::uint64_t inner) {
  return make_stream(mix64(master_seed ^ mix64(outer)), inner);
}

}  // namespace entdetect

#endif  // ENTDETECT_COMMON_HPP
