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

// entdetect: command-line front end for the detection library.
//
//   entdetect fef STATE_FILE [--select a0 a1 b0 b1] [--lut TAG]
//   entdetect icps-sweep --d D --r R [--mode single|parallel|both] ...
//   entdetect random-sweep --d D [--noise 0.2 0.4 0.6] ...
//   entdetect grid --d D --r R --alpha-steps N --v-steps M --trials T ...
//   entdetect analytic --d D --r R [--alpha A --v V]
//   entdetect collective-verify [--n N] [--seed S]
//   entdetect state --family icps|quasi-pure ... [--format json|csv]
//
// Exit codes: 0 success, 2 usage, 3 parse or validation, 4 numeric failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "entdetect.hpp"

namespace {

using namespace entdetect;
using Params = std::vector<std::pair<std::string, std::string>>;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitNumeric = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string join(const std::vector<std::string>& xs, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string fmt(double x, int digits = 6) { return format_fixed(x, digits); }

/// Writes to --out when given, stdout otherwise.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open output file '" + path + "'");
  out << text;
}

// ---------------------------------------------------------------------------
// Option parsing helpers

std::vector<LutStrategy> parse_strategies(const std::string& spec) {
  if (spec == "all") return DetectionConfig::default_strategies();
  std::vector<LutStrategy> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto tag = parse_lut_tag(item);
    if (!tag) throw UsageError("unknown strategy '" + item + "'");
    switch (*tag) {
      case LutTag::Identity: out.push_back(LutStrategy::identity()); break;
      case LutTag::HadamardB: out.push_back(LutStrategy::hadamard_b()); break;
      case LutTag::HadamardBoth: out.push_back(LutStrategy::hadamard_both()); break;
      case LutTag::RandomBoth: out.push_back(LutStrategy::random_both()); break;
    }
  }
  if (out.empty()) throw UsageError("no strategies given");
  return out;
}

std::string strategies_label(const std::vector<LutStrategy>& ss) {
  std::vector<std::string> names;
  for (const auto& s : ss) names.emplace_back(to_string(s.tag));
  return join(names);
}

std::vector<SelectionMode> parse_modes(const std::string& m) {
  if (m == "single") return {SelectionMode::SingleChoice};
  if (m == "parallel") return {SelectionMode::Parallel};
  if (m == "both") return {SelectionMode::SingleChoice, SelectionMode::Parallel};
  throw UsageError("mode must be single, parallel or both");
}

CombinedSelection parse_combined(const std::string& s) {
  if (s == "fresh") return CombinedSelection::Fresh;
  if (s == "shared") return CombinedSelection::Shared;
  throw UsageError("combined selection must be shared or fresh");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

// ---------------------------------------------------------------------------
// Output formats

/// Converts "comment header + CSV table" text into "comment header + JSON".
/// Numeric cells become numbers, true/false become booleans.
std::string csv_to_json(const std::string& text) {
  std::stringstream in(text);
  std::string line, header;
  std::vector<std::string> columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      header += line + "\n";
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (columns.empty()) {
      columns = cells;
      continue;
    }
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < columns.size() && k < cells.size(); ++k) {
      const std::string& c = cells[k];
      char* end = nullptr;
      double x = std::strtod(c.c_str(), &end);
      if (c == "true" || c == "false")
        row[columns[k]] = c == "true";
      else if (!c.empty() && end == c.c_str() + c.size())
        row[columns[k]] = x;
      else
        row[columns[k]] = c;
    }
    rows.push_back(std::move(row));
  }
  return header + rows.dump(2) + "\n";
}

std::string render(const std::string& csv, const std::string& format) {
  return format == "json" ? csv_to_json(csv) : csv;
}

// ---------------------------------------------------------------------------
// Commands

struct FefArgs {
  std::string file;
  std::vector<int> select;
  std::string lut = "identity";
  std::uint64_t seed = 0;
};

int cmd_fef(const FefArgs& a) {
  DensityMatrix rho = read_density_matrix(a.file);
  auto tag = parse_lut_tag(a.lut);
  if (!tag) throw UsageError("unknown lut '" + a.lut + "'");
  LutStrategy lut = parse_strategies(std::string(to_string(*tag))).front();
  LevelSelection sel;
  if (!a.select.empty()) {
    sel = {a.select[0], a.select[1], a.select[2], a.select[3]};
    if (!sel.valid(rho.dim_a(), rho.dim_b())) throw UsageError("--select levels out of range or repeated");
  } else if (rho.dim_a() != 2 || rho.dim_b() != 2) {
    throw InvalidState("expected a two-qubit state (" + std::to_string(rho.dim_a()) + "x" +
                       std::to_string(rho.dim_b()) + " given); use --select for qudit states");
  }
  Rng rng = make_stream(a.seed, 0);
  DensityMatrix transformed = apply_lut(rho, lut, rng);
  WitnessOutcome w = fef_witness(reduce_to_two_qubits(transformed, sel).state);
  std::cout << "score=" << fmt(w.score) << " fef_w=" << fmt(w.fef_w) << " detected=" << (w.detected ? "true" : "false")
            << "\n";
  return kExitOk;
}

struct SweepArgs {
  int d = 0;
  int r = 0;
  std::string mode = "single";
  std::string strategies = "all";
  std::string combined = "fresh";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  bool unconditioned = false;
  std::string out;
  std::string format = "csv";
};

int cmd_icps_sweep(const SweepArgs& a) {
  require(a.d >= 2, "--d must be >= 2");
  require(a.r >= 2 && a.r <= a.d, "--r must satisfy 2 <= r <= d");
  require(a.samples >= 1, "--samples must be >= 1");
  DetectionConfig cfg;
  cfg.strategies = parse_strategies(a.strategies);
  cfg.combined_selection = parse_combined(a.combined);
  auto modes = parse_modes(a.mode);
  std::ostringstream os;
  write_csv_header(os, "icps-sweep",
                   {{"d", std::to_string(a.d)},
                    {"r", std::to_string(a.r)},
                    {"mode", a.mode},
                    {"strategies", strategies_label(cfg.strategies)},
                    {"combined_selection", std::string(to_string(cfg.combined_selection))},
                    {"conditioning", a.unconditioned ? "unconditioned" : "entangled"},
                    {"samples", std::to_string(a.samples)},
                    {"seed", std::to_string(a.seed)}});
  os << kSweepColumns << "\n";
  for (SelectionMode m : modes) {
    cfg.mode = m;
    SweepResult res = estimate_icps_sensitivity(a.d, a.r, cfg, a.samples, a.seed, a.workers,
                                                a.unconditioned ? Conditioning::Unconditioned : Conditioning::Entangled);
    write_sweep_rows(os, a.d, a.r, "uniform", "uniform", m, res);
  }
  emit(a.out, render(os.str(), a.format));
  return kExitOk;
}

struct RandomArgs {
  std::vector<int> d;
  std::vector<double> noise{0.2, 0.4, 0.6};
  std::string mode = "single";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::string out;
  std::string format = "csv";
};

int cmd_random_sweep(const RandomArgs& a) {
  require(!a.d.empty(), "--d is required");
  for (int d : a.d) require(d >= 2, "--d must be >= 2");
  for (double x : a.noise) require(x >= 0.0 && x <= 1.0, "--noise values must lie in [0, 1]");
  require(a.samples >= 1, "--samples must be >= 1");
  auto modes = parse_modes(a.mode);
  std::vector<std::string> ds, ns;
  for (int d : a.d) ds.push_back(std::to_string(d));
  for (double x : a.noise) ns.push_back(fmt(x, 4));
  std::ostringstream os;
  write_csv_header(os, "random-sweep",
                   {{"d", join(ds, " ")},
                    {"noise", join(ns, " ")},
                    {"mode", a.mode},
                    {"strategies", "identity"},
                    {"samples", std::to_string(a.samples)},
                    {"seed", std::to_string(a.seed)}});
  os << "d,noise,mode,samples,entangled,detected,sensitivity,ci95,seed\n";
  for (int d : a.d)
    for (double x : a.noise)
      for (SelectionMode m : modes) {
        SensitivityEstimate e = estimate_quasi_pure_sensitivity(d, x, m, a.samples, a.seed, a.workers);
        os << d << ',' << fmt(x, 4) << ',' << to_string(m) << ',' << e.sampled << ',' << e.entangled << ','
           << e.detected << ',' << fmt(e.value) << ',' << fmt(e.ci95) << ',' << e.seed << '\n';
      }
  emit(a.out, render(os.str(), a.format));
  return kExitOk;
}

struct GridArgs {
  int d = 0;
  int r = 0;
  int alpha_steps = 50;
  int v_steps = 50;
  std::uint64_t trials = 1000;
  std::string strategy = "all";
  std::string mode = "single";
  std::string combined = "fresh";
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::string out;
  std::string format = "csv";
};

int cmd_grid(const GridArgs& a) {
  require(a.d >= 2, "--d must be >= 2");
  require(a.r >= 2 && a.r <= a.d, "--r must satisfy 2 <= r <= d");
  require(a.alpha_steps >= 1 && a.v_steps >= 1, "grid steps must be >= 1");
  require(a.trials >= 1, "--trials must be >= 1");
  auto modes = parse_modes(a.mode);
  require(modes.size() == 1, "grid takes a single --mode");
  DetectionConfig cfg;
  cfg.strategies = parse_strategies(a.strategy);
  cfg.mode = modes.front();
  cfg.combined_selection = parse_combined(a.combined);
  std::ostringstream os;
  write_csv_header(os, "grid",
                   {{"d", std::to_string(a.d)},
                    {"r", std::to_string(a.r)},
                    {"alpha_steps", std::to_string(a.alpha_steps)},
                    {"v_steps", std::to_string(a.v_steps)},
                    {"alpha_max", fmt(1.0 / std::sqrt(a.r - 1.0), 8)},
                    {"trials", std::to_string(a.trials)},
                    {"strategies", strategies_label(cfg.strategies)},
                    {"mode", a.mode},
                    {"combined_selection", std::string(to_string(cfg.combined_selection))},
                    {"seed", std::to_string(a.seed)}});
  auto cells = sweep_icps_grid(a.d, a.r, {a.alpha_steps, a.v_steps, a.trials}, cfg, a.seed, a.workers);
  write_grid_csv(os, a.d, a.r, cfg.mode, cells);
  emit(a.out, render(os.str(), a.format));
  return kExitOk;
}

struct AnalyticArgs {
  int d = 0;
  int r = 0;
  double alpha = -1.0;
  double v = -1.0;
};

int cmd_analytic(const AnalyticArgs& a) {
  require(a.d >= 2, "--d must be >= 2");
  require(a.r >= 2 && a.r <= a.d, "--r must satisfy 2 <= r <= d");
  std::ostringstream os;
  write_csv_header(os, "analytic", {{"d", std::to_string(a.d)}, {"r", std::to_string(a.r)}});
  AnalyticSensitivity s = analytic_sensitivity(a.d, a.r);
  auto line = [&](const char* name, const Rational& q) {
    os << name << "=" << q.str() << " (" << fmt(q.value(), 8) << ")\n";
  };
  os << "selection_classes=" << selection_class_count(a.d) << "\n";
  line("sensitivity_core_pairs", s.scenario_i);
  line("sensitivity_edge_pairs", s.scenario_ii_consistent);
  line("sensitivity_edge_pairs_printed", s.scenario_ii_printed);
  line("sensitivity_combined", s.combined);
  if (a.alpha >= 0.0) {
    IcpsParams p{a.d, a.r, a.alpha, a.v >= 0.0 ? a.v : 1.0};
    p.validate();
    IcpsThresholds t = icps_thresholds(p);
    os << "alpha=" << fmt(p.alpha, 8) << " alpha_r=" << fmt(p.alpha_r(), 8) << "\n";
    if (t.has_core_pairs) os << "v_a=" << fmt(t.v_a, 10) << "\n";
    os << "v_b=" << fmt(t.v_b, 10) << "\n";
    os << "entanglement_threshold=" << fmt(t.entanglement_threshold(), 10) << "\n";
    if (a.v >= 0.0) {
      os << "v=" << fmt(p.v, 8) << " entangled=" << (icps_is_entangled(p) ? "true" : "false") << "\n";
      if (t.has_core_pairs) os << "score_core_pairs=" << fmt(analytic_fef_score(p, ScenarioClass::BothInCore), 10) << "\n";
      os << "score_edge_pairs=" << fmt(analytic_fef_score(p, ScenarioClass::CoreAndEdge), 10) << "\n";
      os << "sensitivity=" << s.for_regime(icps_regime(p)).str() << "\n";
    }
  }
  std::cout << os.str();
  return kExitOk;
}

struct CollectiveArgs {
  std::uint64_t n = 1000;
  std::uint64_t seed = 1;
};

int cmd_collective_verify(const CollectiveArgs& a) {
  require(a.n >= 1, "--n must be >= 1");
  double max_r = 0.0, max_score = 0.0;
  int settings = 0;
  for (std::uint64_t i = 0; i < a.n; ++i) {
    Rng rng = make_stream(a.seed, i);
    // Rank-4 state from a Ginibre matrix: G G^dagger / Tr.
    ComplexMatrix g = detail::ginibre(4, 4, rng);
    ComplexMatrix m = g * g.adjoint();
    m /= m.trace().real();
    m = 0.5 * (m + m.adjoint()).eval();
    DensityMatrix rho(2, 2, m);
    MinimalBasis basis;
    CollectiveData data = measure_minimal(rho, basis);
    settings = data.settings_count;
    RealMatrix3 rm = R_from_minimal(data, basis);
    max_r = std::max(max_r, (rm - collective_R_pauli(rho)).cwiseAbs().maxCoeff());
    double s1 = trace_sqrt_psd(rm) - 1.0;
    max_score = std::max(max_score, std::abs(s1 - fef_witness(rho).score));
  }
  std::ostringstream os;
  write_csv_header(os, "collective-verify", {{"n", std::to_string(a.n)}, {"seed", std::to_string(a.seed)}});
  std::ostringstream dev_r, dev_s;
  dev_r << std::scientific << std::setprecision(3) << max_r;
  dev_s << std::scientific << std::setprecision(3) << max_score;
  os << "states=" << a.n << " settings=" << settings << "\n";
  os << "max_deviation_R=" << dev_r.str() << "\n";
  os << "max_deviation_score=" << dev_s.str() << "\n";
  const bool ok = max_score <= 1e-9;
  os << "verdict=" << (ok ? "pass" : "fail") << "\n";
  std::cout << os.str();
  return ok ? kExitOk : kExitNumeric;
}

struct StateArgs {
  std::string family = "icps";
  int d = 0;
  int r = 0;
  double alpha = 0.0;
  double v = 1.0;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
};

int cmd_state(const StateArgs& a) {
  DensityMatrix rho = [&] {
    if (a.family == "icps") return make_icps({a.d, a.r, a.alpha, a.v});
    if (a.family == "quasi-pure") return make_quasi_pure(QuasiPureParams{a.d, a.v, a.seed});
    throw UsageError("--family must be icps or quasi-pure");
  }();
  std::ostringstream os;
  Params params{{"family", a.family}, {"d", std::to_string(a.d)}};
  if (a.family == "icps") {
    params.emplace_back("r", std::to_string(a.r));
    params.emplace_back("alpha", detail::format_double(a.alpha));
  } else {
    params.emplace_back("seed", std::to_string(a.seed));
  }
  params.emplace_back("v", detail::format_double(a.v));
  write_csv_header(os, "state", params);
  os << (a.format == "csv" ? to_csv(rho) : to_json(rho));
  emit(a.out, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement detection by two-level reduction and the fully entangled fraction witness"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  const unsigned workers_default = default_workers();
  auto add_workers = [&](CLI::App* sub, unsigned& w) {
    w = workers_default;
    sub->add_option("--workers", w, "worker threads (default: ENTDETECT_WORKERS or available cores)")
        ->check(CLI::PositiveNumber);
  };
  const auto formats = CLI::IsMember({"csv", "json"});
  const auto modes = CLI::IsMember({"single", "parallel", "both"});
  const auto combos = CLI::IsMember({"shared", "fresh"});

  FefArgs fef;
  auto* c_fef = app.add_subcommand("fef", "witness score of a state file");
  c_fef->add_option("state_file", fef.file, "JSON or CSV density matrix")->required();
  c_fef->add_option("--select", fef.select, "level selection a0 a1 b0 b1 (required for qudits)")->expected(4);
  c_fef->add_option("--lut", fef.lut, "local unitary: identity, hadamard_b, hadamard_both, random_both");
  c_fef->add_option("--seed", fef.seed, "seed for random_both");

  SweepArgs sw;
  auto* c_sw = app.add_subcommand("icps-sweep", "ensemble sensitivity on ICPS states");
  c_sw->add_option("--d", sw.d, "local dimension")->required();
  c_sw->add_option("--r", sw.r, "Schmidt rank")->required();
  c_sw->add_option("--mode", sw.mode, "single, parallel or both")->check(modes);
  c_sw->add_option("--strategies", sw.strategies, "all or comma list of identity,hadamard_b,hadamard_both,random_both");
  c_sw->add_option("--combined-selection", sw.combined, "shared or fresh level selection across strategies")
      ->check(combos);
  c_sw->add_option("--samples", sw.samples, "number of sampled states");
  c_sw->add_option("--seed", sw.seed, "master seed");
  c_sw->add_flag("--unconditioned", sw.unconditioned, "count separable samples in the denominator");
  c_sw->add_option("--out", sw.out, "output path (default stdout)");
  c_sw->add_option("--format", sw.format, "csv or json")->check(formats);
  add_workers(c_sw, sw.workers);

  RandomArgs rs;
  auto* c_rs = app.add_subcommand("random-sweep", "sensitivity on noisy Haar-random pure states");
  c_rs->add_option("--d", rs.d, "local dimension(s)")->required();
  c_rs->add_option("--noise", rs.noise, "white-noise levels 1-v");
  c_rs->add_option("--mode", rs.mode, "single, parallel or both")->check(modes);
  c_rs->add_option("--samples", rs.samples, "number of sampled states");
  c_rs->add_option("--seed", rs.seed, "master seed");
  c_rs->add_option("--out", rs.out, "output path (default stdout)");
  c_rs->add_option("--format", rs.format, "csv or json")->check(formats);
  add_workers(c_rs, rs.workers);

  GridArgs gr;
  auto* c_gr = app.add_subcommand("grid", "sensitivity over an (alpha, v) grid of ICPS states");
  c_gr->add_option("--d", gr.d, "local dimension")->required();
  c_gr->add_option("--r", gr.r, "Schmidt rank")->required();
  c_gr->add_option("--alpha-steps", gr.alpha_steps, "cells along alpha");
  c_gr->add_option("--v-steps", gr.v_steps, "cells along v");
  c_gr->add_option("--trials", gr.trials, "trials per cell");
  c_gr->add_option("--strategy", gr.strategy, "all or comma list of strategies");
  c_gr->add_option("--mode", gr.mode, "single or parallel")->check(CLI::IsMember({"single", "parallel"}));
  c_gr->add_option("--combined-selection", gr.combined, "shared or fresh")->check(combos);
  c_gr->add_option("--seed", gr.seed, "master seed");
  c_gr->add_option("--out", gr.out, "output path (default stdout)");
  c_gr->add_option("--format", gr.format, "csv or json")->check(formats);
  add_workers(c_gr, gr.workers);

  AnalyticArgs an;
  auto* c_an = app.add_subcommand("analytic", "closed-form thresholds, scores and sensitivities");
  c_an->add_option("--d", an.d, "local dimension")->required();
  c_an->add_option("--r", an.r, "Schmidt rank")->required();
  c_an->add_option("--alpha", an.alpha, "Schmidt coefficient of the core levels");
  c_an->add_option("--v", an.v, "visibility");

  CollectiveArgs co;
  auto* c_co = app.add_subcommand("collective-verify", "check the two-copy measurement against direct evaluation");
  c_co->add_option("--n", co.n, "number of random two-qubit states");
  c_co->add_option("--seed", co.seed, "master seed");

  StateArgs st;
  auto* c_st = app.add_subcommand("state", "write a density matrix file");
  c_st->add_option("--family", st.family, "icps or quasi-pure")->check(CLI::IsMember({"icps", "quasi-pure"}));
  c_st->add_option("--d", st.d, "local dimension")->required();
  c_st->add_option("--r", st.r, "Schmidt rank (icps)");
  c_st->add_option("--alpha", st.alpha, "core Schmidt coefficient (icps)");
  c_st->add_option("--v", st.v, "visibility");
  c_st->add_option("--seed", st.seed, "seed (quasi-pure)");
  c_st->add_option("--format", st.format, "json or csv")->check(formats);
  c_st->add_option("--out", st.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_fef->parsed()) return cmd_fef(fef);
    if (c_sw->parsed()) return cmd_icps_sweep(sw);
    if (c_rs->parsed()) return cmd_random_sweep(rs);
    if (c_gr->parsed()) return cmd_grid(gr);
    if (c_an->parsed()) return cmd_analytic(an);
    if (c_co->parsed()) return cmd_collective_verify(co);
    if (c_st->parsed()) return cmd_state(st);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidParams& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "ParseError: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const InvalidState& e) {
    std::cerr << "InvalidState: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
