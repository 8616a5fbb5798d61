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

#ifndef HQCM_SCENARIO_HPP
#define HQCM_SCENARIO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hqcm/measurement.hpp"

namespace hqcm {

using Json = nlohmann::json;

// One timed step of a scenario schedule.
struct ScheduleAction {
  enum class Kind { Evolve, Register, Complete, Markov, Query };
  Kind kind;
  double dt = 0.0;        // Evolve, Markov
  std::string basis;      // Complete
  std::string generator;  // Markov
};

// Full description of an executable experiment: apparatus, system,
// interaction Hamiltonian, named bases and generators, and a schedule of
// actions. (config, seed) fully determines every output.
struct ScenarioConfig {
  std::string kind;  // stern_gerlach | cat | wigner_friend | custom
  std::vector<std::string> labels;
  RealVector energies;
  RealVector weights;
  int system_dim = 0;
  std::vector<std::optional<QuantumState>> initial_blocks;
  std::optional<MeasurementHamiltonian> hamiltonian;
  std::map<std::string, MeasurementBasis> bases;
  std::map<std::string, MarkovGenerator> generators;
  std::string reporting_basis;
  std::vector<ScheduleAction> schedule;
  std::uint64_t seed = 0;
  int trajectories = 1;
  double k_const = 1.0;
  double hbar = 1.0;

  HybridState initial_state() const;
  Json to_json() const;
};

// Built-in scenario presets with optional parameter overrides; throws
// ConfigError for an unknown kind.
ScenarioConfig build_scenario(const std::string &kind,
                              const Json &params = Json::object());

// Parse a full config document (kind + overrides).
ScenarioConfig config_from_json(const Json &j);

// One recorded event of one trajectory. outcome < 0 and probability NaN
// mark non-sampling actions.
struct TrajectoryEvent {
  double time;
  std::string action;
  int outcome;
  double probability;
  double i_a;
  double i_s;
  double i_as;
  std::vector<double> weights;
  std::vector<double> system_diag;  // in the reporting basis
};

struct TrajectoryRecord {
  int index;
  std::vector<TrajectoryEvent> events;
};

struct RunResult {
  std::vector<TrajectoryRecord> records;
  Json aggregate;
};

// Execute the schedule once per trajectory, each with its own stream
// derived from (seed, trajectory index), and aggregate outcome counts,
// confidence intervals, and mean entropy series.
RunResult run_trajectories(const ScenarioConfig &config);

// CSV with header trajectory,time,action,outcome,probability,I_A,I_S,I_AS.
std::string trajectories_csv(const std::vector<TrajectoryRecord> &records);

// Write trajectories.csv and/or aggregate.json under out_dir.
// format is "csv", "json", or "both".
void emit_outputs(const RunResult &result, const std::string &out_dir,
                  const std::string &format);

// Complex-matrix JSON helpers: entries are [re, im] pairs, row-major.
Json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const Json &j);

// HybridState file schema: {weights: [...], blocks: [matrix | null, ...]}.
Json hybrid_to_json(const HybridState &state);
HybridState hybrid_from_json(const Json &j);

// General Hamiltonian file schema: {n, d, blocks: n x n nested matrices}.
GeneralHamiltonian general_hamiltonian_from_json(const Json &j);

} // namespace hqcm

#endif
