// Copyright 2026 The hqcm authors
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

#include "hqcm/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "hqcm/errors.hpp"

namespace hqcm {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Complex complex_from_json(const Json &j) {
  if (j.is_number()) {
    return Complex(j.get<double>(), 0.0);
  }
  if (j.is_array() && j.size() == 2) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  throw ConfigError("expected a complex entry as [re, im] or a real number");
}

Json complex_to_json(const Complex &z) { return Json::array({z.real(), z.imag()}); }

ComplexVector vector_from_json(const Json &j) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError("expected a nonempty array of complex entries");
  }
  ComplexVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  }
  return v;
}

RealVector real_vector_from_json(const Json &j) {
  if (!j.is_array()) {
    throw ConfigError("expected an array of reals");
  }
  RealVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

RealMatrix real_matrix_from_json(const Json &j) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError("expected a nonempty array of rows");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  RealMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols) {
      throw ConfigError("ragged real matrix rows");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          j[r][c].get<double>();
    }
  }
  return m;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

const char *action_name(ScheduleAction::Kind k) {
  switch (k) {
  case ScheduleAction::Kind::Evolve:
    return "evolve";
  case ScheduleAction::Kind::Register:
    return "register";
  case ScheduleAction::Kind::Complete:
    return "complete";
  case ScheduleAction::Kind::Markov:
    return "markov";
  case ScheduleAction::Kind::Query:
    return "query";
  }
  return "?";
}

ScheduleAction action_from_json(const Json &j) {
  ScheduleAction a;
  std::string name = j.value("action", "");
  if (name == "evolve") {
    a.kind = ScheduleAction::Kind::Evolve;
    a.dt = j.value("dt", 0.0);
  } else if (name == "register") {
    a.kind = ScheduleAction::Kind::Register;
  } else if (name == "complete") {
    a.kind = ScheduleAction::Kind::Complete;
    a.basis = j.value("basis", "comp");
  } else if (name == "markov") {
    a.kind = ScheduleAction::Kind::Markov;
    a.dt = j.value("dt", 0.0);
    a.generator = j.value("generator", "");
  } else if (name == "query") {
    a.kind = ScheduleAction::Kind::Query;
  } else {
    throw ConfigError("unknown schedule action '" + name + "'");
  }
  if (a.dt < 0.0) {
    throw ConfigError("schedule action '" + name + "' has negative dt");
  }
  return a;
}

Json action_to_json(const ScheduleAction &a) {
  Json j;
  j["action"] = action_name(a.kind);
  if (a.kind == ScheduleAction::Kind::Evolve ||
      a.kind == ScheduleAction::Kind::Markov) {
    j["dt"] = a.dt;
  }
  if (a.kind == ScheduleAction::Kind::Complete) {
    j["basis"] = a.basis;
  }
  if (a.kind == ScheduleAction::Kind::Markov) {
    j["generator"] = a.generator;
  }
  return j;
}

void apply_overrides(ScenarioConfig &cfg, const Json &j) {
  try {
    if (j.contains("apparatus")) {
      const Json &ap = j["apparatus"];
      if (ap.contains("labels")) {
        cfg.labels = ap["labels"].get<std::vector<std::string>>();
      }
      if (ap.contains("energies")) {
        cfg.energies = real_vector_from_json(ap["energies"]);
      }
      if (ap.contains("weights")) {
        cfg.weights = real_vector_from_json(ap["weights"]);
      }
    }
    if (j.contains("system")) {
      const Json &sys = j["system"];
      if (sys.contains("dim")) {
        cfg.system_dim = sys["dim"].get<int>();
      }
      if (sys.contains("initial")) {
        const Json &init = sys["initial"];
        const int n = static_cast<int>(cfg.weights.size());
        if (init.contains("pure")) {
          ComplexVector psi = vector_from_json(init["pure"]);
          psi /= psi.norm();
          QuantumState shared = QuantumState::pure(psi);
          cfg.initial_blocks.assign(static_cast<std::size_t>(n), shared);
          cfg.system_dim = static_cast<int>(psi.size());
        } else if (init.contains("matrix")) {
          QuantumState shared(matrix_from_json(init["matrix"]));
          cfg.system_dim = shared.dimension();
          cfg.initial_blocks.assign(static_cast<std::size_t>(n), shared);
        } else if (init.contains("blocks")) {
          cfg.initial_blocks.clear();
          for (const Json &b : init["blocks"]) {
            if (b.is_null()) {
              cfg.initial_blocks.emplace_back(std::nullopt);
            } else {
              cfg.initial_blocks.emplace_back(
                  QuantumState(matrix_from_json(b)));
              cfg.system_dim = cfg.initial_blocks.back()->dimension();
            }
          }
        } else {
          throw ConfigError("system.initial needs 'pure', 'matrix' or "
                            "'blocks'");
        }
      }
    }
    if (j.contains("hamiltonian")) {
      const Json &h = j["hamiltonian"];
      if (h.contains("h_s") || h.contains("potentials")) {
        if (!h.contains("h_s") || !h.contains("potentials")) {
          throw ConfigError("hamiltonian override needs both 'h_s' and "
                            "'potentials'");
        }
        ComplexMatrix h_s = matrix_from_json(h["h_s"]);
        std::vector<ComplexMatrix> pots;
        for (const Json &p : h["potentials"]) {
          pots.push_back(matrix_from_json(p));
        }
        RealVector energies = h.contains("energies")
                                  ? real_vector_from_json(h["energies"])
                                  : RealVector::Zero(pots.size());
        cfg.hamiltonian.emplace(std::move(energies), std::move(h_s),
                                std::move(pots));
      }
    }
    if (j.contains("bases")) {
      for (auto it = j["bases"].begin(); it != j["bases"].end(); ++it) {
        const Json &cols_json = *it;
        if (!cols_json.is_array() || cols_json.empty()) {
          throw ConfigError("basis '" + it.key() +
                            "' must be a list of column vectors");
        }
        ComplexMatrix cols(cols_json[0].size(), cols_json.size());
        for (std::size_t c = 0; c < cols_json.size(); ++c) {
          cols.col(static_cast<Eigen::Index>(c)) =
              vector_from_json(cols_json[c]);
        }
        cfg.bases.insert_or_assign(it.key(), MeasurementBasis(cols));
      }
    }
    if (j.contains("generators")) {
      for (auto it = j["generators"].begin(); it != j["generators"].end();
           ++it) {
        cfg.generators.insert_or_assign(
            it.key(), MarkovGenerator(real_matrix_from_json(*it)));
      }
    }
    if (j.contains("schedule")) {
      cfg.schedule.clear();
      for (const Json &a : j["schedule"]) {
        cfg.schedule.push_back(action_from_json(a));
      }
    }
    if (j.contains("reporting_basis")) {
      cfg.reporting_basis = j["reporting_basis"].get<std::string>();
    }
    if (j.contains("seed")) {
      cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("trajectories")) {
      cfg.trajectories = j["trajectories"].get<int>();
    }
    if (j.contains("k_const")) {
      cfg.k_const = j["k_const"].get<double>();
    }
    if (j.contains("hbar")) {
      cfg.hbar = j["hbar"].get<double>();
    }
  } catch (const Json::exception &e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const Error &) {
    throw;
  }
}

void add_default_bases(ScenarioConfig &cfg) {
  if (cfg.system_dim >= 1 && !cfg.bases.count("comp")) {
    cfg.bases.emplace("comp", MeasurementBasis::computational(cfg.system_dim));
  }
  if (cfg.system_dim == 2 && !cfg.bases.count("pm")) {
    cfg.bases.emplace("pm", MeasurementBasis::plus_minus());
  }
  if (cfg.reporting_basis.empty()) {
    cfg.reporting_basis = "comp";
  }
}

void validate_config(const ScenarioConfig &cfg) {
  const int n = static_cast<int>(cfg.weights.size());
  if (n < 1) {
    throw ConfigError("apparatus has no pointer states");
  }
  if (static_cast<int>(cfg.labels.size()) != n ||
      static_cast<int>(cfg.energies.size()) != n) {
    throw ConfigError("apparatus labels/energies/weights lengths disagree");
  }
  if (static_cast<int>(cfg.initial_blocks.size()) != n) {
    throw ConfigError("initial system blocks count (" +
                      std::to_string(cfg.initial_blocks.size()) +
                      ") does not match pointer count (" + std::to_string(n) +
                      ")");
  }
  if (cfg.system_dim < 1) {
    throw ConfigError("system dimension is not set");
  }
  if (cfg.trajectories < 1) {
    throw ConfigError("trajectories must be >= 1");
  }
  if (cfg.hbar <= 0.0 || cfg.k_const <= 0.0) {
    throw ConfigError("hbar and k_const must be positive");
  }
  if (cfg.hamiltonian.has_value() &&
      (cfg.hamiltonian->apparatus_dim() != n ||
       cfg.hamiltonian->system_dim() != cfg.system_dim)) {
    throw ConfigError("hamiltonian dimensions do not match apparatus/system");
  }
  if (!cfg.bases.count(cfg.reporting_basis)) {
    throw ConfigError("reporting basis '" + cfg.reporting_basis +
                      "' is not declared");
  }
  for (std::size_t s = 0; s < cfg.schedule.size(); ++s) {
    const ScheduleAction &a = cfg.schedule[s];
    if (a.kind == ScheduleAction::Kind::Evolve && !cfg.hamiltonian) {
      throw ConfigError("schedule step " + std::to_string(s) +
                        ": evolve requires a measurement Hamiltonian");
    }
    if (a.kind == ScheduleAction::Kind::Complete && !cfg.bases.count(a.basis)) {
      throw ConfigError("schedule step " + std::to_string(s) +
                        ": basis '" + a.basis + "' is not declared");
    }
    if (a.kind == ScheduleAction::Kind::Markov &&
        !cfg.generators.count(a.generator)) {
      throw ConfigError("schedule step " + std::to_string(s) +
                        ": generator '" + a.generator + "' is not declared");
    }
  }
  for (const auto &b : cfg.bases) {
    if (b.second.dimension() != cfg.system_dim) {
      throw ConfigError("basis '" + b.first + "' dimension mismatch");
    }
  }
  for (const auto &g : cfg.generators) {
    if (g.second.dimension() != n) {
      throw ConfigError("generator '" + g.first + "' dimension mismatch");
    }
  }
}

ScenarioConfig preset_stern_gerlach(double g) {
  ScenarioConfig cfg;
  cfg.kind = "stern_gerlach";
  cfg.labels = {"spot-up", "spot-down"};
  cfg.energies = RealVector::Zero(2);
  cfg.weights = RealVector::Constant(2, 0.5);
  cfg.system_dim = 2;
  ComplexVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  QuantumState init = QuantumState::pure(plus);
  cfg.initial_blocks = {init, init};
  cfg.hamiltonian.emplace(
      RealVector::Zero(2), ComplexMatrix::Zero(2, 2),
      std::vector<ComplexMatrix>{g * pauli_z(), -g * pauli_z()});
  cfg.reporting_basis = "pm";
  cfg.schedule = {
      {ScheduleAction::Kind::Evolve, std::acos(-1.0) / 4.0, "", ""},
      {ScheduleAction::Kind::Register, 0.0, "", ""},
      {ScheduleAction::Kind::Complete, 0.0, "pm", ""},
  };
  return cfg;
}

ScenarioConfig preset_cat(double g) {
  ScenarioConfig cfg;
  cfg.kind = "cat";
  cfg.labels = {"alive", "dead"};
  cfg.energies = RealVector::Zero(2);
  cfg.weights = RealVector::Constant(2, 0.5);
  cfg.system_dim = 2;
  ComplexMatrix non_decayed = ComplexMatrix::Zero(2, 2);
  non_decayed(0, 0) = 1.0;
  ComplexMatrix decayed = ComplexMatrix::Zero(2, 2);
  decayed(1, 1) = 1.0;
  cfg.initial_blocks = {QuantumState(non_decayed), QuantumState(decayed)};
  // The surviving-atom block undergoes a Rabi-type rotation; the decayed
  // block is inert.
  cfg.hamiltonian.emplace(
      RealVector::Zero(2), ComplexMatrix::Zero(2, 2),
      std::vector<ComplexMatrix>{g * pauli_x(), ComplexMatrix::Zero(2, 2)});
  cfg.reporting_basis = "comp";
  cfg.schedule = {{ScheduleAction::Kind::Register, 0.0, "", ""}};
  return cfg;
}

ScenarioConfig preset_wigner_friend() {
  ScenarioConfig cfg;
  cfg.kind = "wigner_friend";
  cfg.labels = {"no", "yes"};
  cfg.energies = RealVector::Zero(2);
  cfg.weights = RealVector::Constant(2, 0.5);
  cfg.system_dim = 2;
  ComplexMatrix non_decayed = ComplexMatrix::Zero(2, 2);
  non_decayed(0, 0) = 1.0;
  ComplexMatrix decayed = ComplexMatrix::Zero(2, 2);
  decayed(1, 1) = 1.0;
  cfg.initial_blocks = {QuantumState(non_decayed), QuantumState(decayed)};
  cfg.hamiltonian.emplace(
      RealVector::Zero(2), ComplexMatrix::Zero(2, 2),
      std::vector<ComplexMatrix>{ComplexMatrix::Zero(2, 2),
                                 ComplexMatrix::Zero(2, 2)});
  cfg.reporting_basis = "comp";
  // The friend completes the measurement inside the chamber; the outer
  // observer's later query changes nothing.
  cfg.schedule = {{ScheduleAction::Kind::Complete, 0.0, "comp", ""},
                  {ScheduleAction::Kind::Query, 0.0, "", ""}};
  return cfg;
}

} // namespace

HybridState ScenarioConfig::initial_state() const {
  return assemble_hybrid(weights, initial_blocks, energies);
}

Json ScenarioConfig::to_json() const {
  Json j;
  j["kind"] = kind;
  Json apparatus;
  apparatus["labels"] = labels;
  apparatus["energies"] = std::vector<double>(
      energies.data(), energies.data() + energies.size());
  apparatus["weights"] = std::vector<double>(
      weights.data(), weights.data() + weights.size());
  j["apparatus"] = std::move(apparatus);
  Json system;
  system["dim"] = system_dim;
  Json blocks = Json::array();
  for (const auto &b : initial_blocks) {
    blocks.push_back(b ? matrix_to_json(b->matrix()) : Json(nullptr));
  }
  system["initial"] = Json{{"blocks", std::move(blocks)}};
  j["system"] = std::move(system);
  if (hamiltonian) {
    Json h;
    h["energies"] = std::vector<double>(
        hamiltonian->apparatus_energies().data(),
        hamiltonian->apparatus_energies().data() +
            hamiltonian->apparatus_energies().size());
    h["h_s"] = matrix_to_json(hamiltonian->system_hamiltonian());
    Json pots = Json::array();
    for (int i = 0; i < hamiltonian->apparatus_dim(); ++i) {
      pots.push_back(matrix_to_json(hamiltonian->potential(i)));
    }
    h["potentials"] = std::move(pots);
    j["hamiltonian"] = std::move(h);
  }
  Json bases_json;
  for (const auto &b : bases) {
    Json cols = Json::array();
    for (int c = 0; c < b.second.dimension(); ++c) {
      Json col = Json::array();
      for (int r = 0; r < b.second.dimension(); ++r) {
        col.push_back(complex_to_json(b.second.columns()(r, c)));
      }
      cols.push_back(std::move(col));
    }
    bases_json[b.first] = std::move(cols);
  }
  j["bases"] = std::move(bases_json);
  Json gens_json = Json::object();
  for (const auto &g : generators) {
    Json rows = Json::array();
    for (int r = 0; r < g.second.dimension(); ++r) {
      Json row = Json::array();
      for (int c = 0; c < g.second.dimension(); ++c) {
        row.push_back(g.second.entries()(r, c));
      }
      rows.push_back(std::move(row));
    }
    gens_json[g.first] = std::move(rows);
  }
  j["generators"] = std::move(gens_json);
  Json schedule_json = Json::array();
  for (const auto &a : schedule) {
    schedule_json.push_back(action_to_json(a));
  }
  j["schedule"] = std::move(schedule_json);
  j["reporting_basis"] = reporting_basis;
  j["seed"] = seed;
  j["trajectories"] = trajectories;
  j["k_const"] = k_const;
  j["hbar"] = hbar;
  return j;
}

ScenarioConfig build_scenario(const std::string &kind, const Json &params) {
  ScenarioConfig cfg;
  if (kind == "stern_gerlach") {
    double g = 1.0;
    if (params.contains("hamiltonian") &&
        params["hamiltonian"].contains("g")) {
      g = params["hamiltonian"]["g"].get<double>();
    }
    cfg = preset_stern_gerlach(g);
  } else if (kind == "cat") {
    double g = 1.0;
    if (params.contains("hamiltonian") &&
        params["hamiltonian"].contains("g")) {
      g = params["hamiltonian"]["g"].get<double>();
    }
    cfg = preset_cat(g);
  } else if (kind == "wigner_friend") {
    cfg = preset_wigner_friend();
  } else if (kind == "custom") {
    cfg.kind = "custom";
  } else {
    throw ConfigError("unknown scenario kind '" + kind + "'");
  }
  apply_overrides(cfg, params);
  if (cfg.kind == "custom" && cfg.labels.empty() && cfg.weights.size() > 0) {
    for (Eigen::Index i = 0; i < cfg.weights.size(); ++i) {
      cfg.labels.push_back("pointer-" + std::to_string(i));
    }
  }
  if (cfg.kind == "custom" && cfg.energies.size() == 0 &&
      cfg.weights.size() > 0) {
    cfg.energies = RealVector::Zero(cfg.weights.size());
  }
  add_default_bases(cfg);
  validate_config(cfg);
  return cfg;
}

ScenarioConfig config_from_json(const Json &j) {
  std::string kind;
  try {
    kind = j.value("kind", "custom");
  } catch (const Json::exception &e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return build_scenario(kind, j);
}

namespace {

TrajectoryEvent make_event(double time, const std::string &action,
                           int outcome, double probability,
                           const HybridState &state,
                           const MeasurementBasis &reporting,
                           double k_const) {
  InformationLedger ledger = information_ledger(state, k_const);
  QuantumState rho_s = reduce_to_system(state);
  std::vector<double> diag;
  diag.reserve(static_cast<std::size_t>(reporting.dimension()));
  for (int m = 0; m < reporting.dimension(); ++m) {
    diag.push_back(born_probability(rho_s, reporting, m));
  }
  return TrajectoryEvent{
      time,
      action,
      outcome,
      probability,
      ledger.i_apparatus,
      ledger.i_system,
      ledger.i_total,
      std::vector<double>(state.weights().data(),
                          state.weights().data() + state.weights().size()),
      std::move(diag)};
}

} // namespace

RunResult run_trajectories(const ScenarioConfig &cfg) {
  validate_config(cfg);
  const HybridState initial = cfg.initial_state();
  const MeasurementBasis &reporting = cfg.bases.at(cfg.reporting_basis);

  RunResult result;
  result.records.reserve(static_cast<std::size_t>(cfg.trajectories));

  for (int idx = 0; idx < cfg.trajectories; ++idx) {
    RandomStream rng = RandomStream::for_trajectory(cfg.seed,
                                                    static_cast<std::uint64_t>(
                                                        idx));
    HybridState state = initial;
    double time = 0.0;
    TrajectoryRecord rec{idx, {}};
    rec.events.push_back(
        make_event(time, "init", -1, kNan, state, reporting, cfg.k_const));

    for (const ScheduleAction &a : cfg.schedule) {
      switch (a.kind) {
      case ScheduleAction::Kind::Evolve: {
        state = evolve_hybrid(state, *cfg.hamiltonian, a.dt, cfg.hbar);
        time += a.dt;
        rec.events.push_back(make_event(time, "evolve", -1, kNan, state,
                                        reporting, cfg.k_const));
        break;
      }
      case ScheduleAction::Kind::Register: {
        auto [l, post] = register_pointer(state, rng);
        double p_l = state.pointer_probability(l);
        state = std::move(post);
        rec.events.push_back(make_event(time, "register", l, p_l, state,
                                        reporting, cfg.k_const));
        break;
      }
      case ScheduleAction::Kind::Complete: {
        CompletionEvent ev =
            complete_measurement(state, cfg.bases.at(a.basis), rng);
        state = std::move(ev.post_state);
        rec.events.push_back(make_event(time, "complete", ev.reduced_outcome,
                                        ev.outcome_prob, state, reporting,
                                        cfg.k_const));
        break;
      }
      case ScheduleAction::Kind::Markov: {
        ClassicalState apparatus(state.weights(), state.energies());
        ClassicalState evolved =
            evolve_master(apparatus, cfg.generators.at(a.generator), a.dt);
        std::vector<std::optional<QuantumState>> blocks;
        blocks.reserve(static_cast<std::size_t>(state.apparatus_dim()));
        for (int i = 0; i < state.apparatus_dim(); ++i) {
          if (evolved.probabilities()(i) > kWeightFloor &&
              !state.block(i).has_value()) {
            throw ConfigError(
                "markov action moves weight onto pointer " +
                std::to_string(i) +
                ", whose conditional state is undefined");
          }
          blocks.push_back(state.block(i));
        }
        state = assemble_hybrid(evolved.probabilities(), std::move(blocks),
                                state.energies());
        time += a.dt;
        rec.events.push_back(make_event(time, "markov", -1, kNan, state,
                                        reporting, cfg.k_const));
        break;
      }
      case ScheduleAction::Kind::Query: {
        rec.events.push_back(make_event(time, "query", -1, kNan, state,
                                        reporting, cfg.k_const));
        break;
      }
      }
    }
    result.records.push_back(std::move(rec));
  }

  // Aggregate outcome counts per sampling step and mean entropy per step.
  Json counts = Json::object();
  Json freq_ci = Json::object();
  const std::size_t steps = result.records.front().events.size();
  std::vector<double> mean_ia(steps, 0.0), mean_is(steps, 0.0),
      mean_ias(steps, 0.0);
  std::map<std::string, std::map<int, long>> tally;
  for (const TrajectoryRecord &rec : result.records) {
    for (std::size_t s = 0; s < steps; ++s) {
      const TrajectoryEvent &e = rec.events[s];
      mean_ia[s] += e.i_a;
      mean_is[s] += e.i_s;
      mean_ias[s] += e.i_as;
      if (e.outcome >= 0) {
        tally[std::to_string(s - 1) + ":" + e.action][e.outcome] += 1;
      }
    }
  }
  const double n_traj = static_cast<double>(cfg.trajectories);
  for (const auto &step : tally) {
    Json step_counts = Json::object();
    Json step_ci = Json::object();
    for (const auto &oc : step.second) {
      double f = static_cast<double>(oc.second) / n_traj;
      double se = std::sqrt(std::max(f * (1.0 - f), 0.0) / n_traj);
      step_counts[std::to_string(oc.first)] = oc.second;
      step_ci[std::to_string(oc.first)] =
          Json{{"frequency", f}, {"stderr", se}, {"ci95_halfwidth", 1.96 * se}};
    }
    counts[step.first] = std::move(step_counts);
    freq_ci[step.first] = std::move(step_ci);
  }
  Json series = Json::array();
  for (std::size_t s = 0; s < steps; ++s) {
    series.push_back(Json{{"t", result.records.front().events[s].time},
                          {"I_A", mean_ia[s] / n_traj},
                          {"I_S", mean_is[s] / n_traj},
                          {"I_AS", mean_ias[s] / n_traj}});
  }
  result.aggregate = Json{{"config_echo", cfg.to_json()},
                          {"seed", cfg.seed},
                          {"outcome_counts", std::move(counts)},
                          {"frequency_ci", std::move(freq_ci)},
                          {"entropy_series", std::move(series)}};
  return result;
}

std::string trajectories_csv(const std::vector<TrajectoryRecord> &records) {
  std::ostringstream out;
  out << "trajectory,time,action,outcome,probability,I_A,I_S,I_AS\n";
  for (const TrajectoryRecord &rec : records) {
    for (const TrajectoryEvent &e : rec.events) {
      out << rec.index << ',' << format_double(e.time) << ',' << e.action
          << ',';
      if (e.outcome >= 0) {
        out << e.outcome;
      }
      out << ',';
      if (!std::isnan(e.probability)) {
        out << format_double(e.probability);
      }
      out << ',' << format_double(e.i_a) << ',' << format_double(e.i_s)
          << ',' << format_double(e.i_as) << '\n';
    }
  }
  return out.str();
}

void emit_outputs(const RunResult &result, const std::string &out_dir,
                  const std::string &format) {
  if (format != "csv" && format != "json" && format != "both") {
    throw ConfigError("emit_outputs: format must be csv, json or both");
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("emit_outputs: cannot create directory '" + out_dir +
                  "': " + ec.message());
  }
  auto write_file = [&](const std::string &name, const std::string &body) {
    std::filesystem::path path = std::filesystem::path(out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      throw IoError("emit_outputs: cannot open '" + path.string() + "'");
    }
    f << body;
    if (!f) {
      throw IoError("emit_outputs: write to '" + path.string() + "' failed");
    }
  };
  if (format != "json") {
    write_file("trajectories.csv", trajectories_csv(result.records));
  }
  if (format != "csv") {
    write_file("aggregate.json", result.aggregate.dump(2) + "\n");
  }
}

Json matrix_to_json(const ComplexMatrix &m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_to_json(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json &j) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError("expected a nonempty array of matrix rows");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw ConfigError("ragged matrix rows");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c]);
    }
  }
  return m;
}

Json hybrid_to_json(const HybridState &state) {
  Json j;
  j["apparatus_dim"] = state.apparatus_dim();
  j["system_dim"] = state.system_dim();
  j["weights"] = std::vector<double>(
      state.weights().data(),
      state.weights().data() + state.weights().size());
  j["energies"] = std::vector<double>(
      state.energies().data(),
      state.energies().data() + state.energies().size());
  Json blocks = Json::array();
  for (int i = 0; i < state.apparatus_dim(); ++i) {
    blocks.push_back(state.block(i) ? matrix_to_json(state.block(i)->matrix())
                                    : Json(nullptr));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

HybridState hybrid_from_json(const Json &j) {
  try {
    RealVector weights = real_vector_from_json(j.at("weights"));
    RealVector energies = j.contains("energies")
                              ? real_vector_from_json(j["energies"])
                              : RealVector();
    std::vector<std::optional<QuantumState>> blocks;
    for (const Json &b : j.at("blocks")) {
      if (b.is_null()) {
        blocks.emplace_back(std::nullopt);
      } else {
        blocks.emplace_back(QuantumState(matrix_from_json(b)));
      }
    }
    return assemble_hybrid(std::move(weights), std::move(blocks),
                           std::move(energies));
  } catch (const Json::exception &e) {
    throw ConfigError(std::string("malformed hybrid state: ") + e.what());
  }
}

GeneralHamiltonian general_hamiltonian_from_json(const Json &j) {
  try {
    int n = j.at("n").get<int>();
    int d = j.at("d").get<int>();
    std::vector<ComplexMatrix> blocks;
    const Json &rows = j.at("blocks");
    for (const Json &row : rows) {
      for (const Json &b : row) {
        blocks.push_back(matrix_from_json(b));
      }
    }
    return GeneralHamiltonian(n, d, std::move(blocks));
  } catch (const Json::exception &e) {
    throw ConfigError(std::string("malformed Hamiltonian: ") + e.what());
  }
}

} // namespace hqcm
