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

#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "hqcm/errors.hpp"
#include "hqcm/propositions.hpp"
#include "hqcm/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitClassicalityViolation = 3;
constexpr int kExitIo = 4;

hqcm::Json load_json(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw hqcm::IoError("cannot open '" + path + "'");
  }
  try {
    return hqcm::Json::parse(in);
  } catch (const hqcm::Json::exception &e) {
    throw hqcm::ConfigError("cannot parse '" + path + "': " + e.what());
  }
}

int cmd_run(const std::string &scenario, const std::string &config_path,
            std::optional<std::uint64_t> seed, std::optional<int> trajectories,
            const std::string &out_dir, const std::string &format) {
  hqcm::Json params = hqcm::Json::object();
  if (!config_path.empty()) {
    params = load_json(config_path);
  }
  if (seed) {
    params["seed"] = *seed;
  }
  if (trajectories) {
    params["trajectories"] = *trajectories;
  }
  hqcm::ScenarioConfig cfg;
  if (!scenario.empty()) {
    cfg = hqcm::build_scenario(scenario, params);
  } else {
    cfg = hqcm::config_from_json(params);
  }
  hqcm::RunResult result = hqcm::run_trajectories(cfg);
  hqcm::emit_outputs(result, out_dir, format);
  const hqcm::Json &counts = result.aggregate["outcome_counts"];
  std::cout << "scenario " << cfg.kind << ": " << cfg.trajectories
            << " trajectories, seed " << cfg.seed << "\n";
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    std::cout << "  step " << it.key() << " outcomes: " << it.value().dump()
              << "\n";
  }
  std::cout << "outputs written to " << out_dir << "\n";
  return kExitOk;
}

int cmd_check(const std::string &path, double tolerance) {
  hqcm::GeneralHamiltonian h =
      hqcm::general_hamiltonian_from_json(load_json(path));
  hqcm::ClassicalityVerdict v = hqcm::check_classicality(h, tolerance);
  if (v.classical) {
    std::cout << "classical: all off-diagonal coupling blocks vanish within "
              << tolerance << "\n";
    const auto &dec = *v.decomposition;
    std::cout << "apparatus energies:";
    for (int i = 0; i < dec.apparatus_dim(); ++i) {
      std::cout << ' ' << dec.apparatus_energies()(i);
    }
    std::cout << "\n";
    return kExitOk;
  }
  std::cout << "violating: off-diagonal coupling between pointer states "
            << v.witness_row << " and " << v.witness_col << " (max magnitude "
            << hqcm::max_abs(v.witness_block)
            << "); apparatus coherences grow at first order in time\n";
  return kExitClassicalityViolation;
}

int cmd_info(const std::string &path, double k_const) {
  hqcm::HybridState state = hqcm::hybrid_from_json(load_json(path));
  hqcm::InformationLedger ledger = hqcm::information_ledger(state, k_const);
  std::cout << "pointers: " << state.apparatus_dim()
            << ", system dimension: " << state.system_dim() << "\n";
  std::cout << "weights:";
  for (int i = 0; i < state.apparatus_dim(); ++i) {
    std::cout << ' ' << state.weights()(i);
  }
  std::cout << "\n";
  std::cout << "I_A  = " << ledger.i_apparatus << "\n";
  std::cout << "I_S  = " << ledger.i_system << "\n";
  std::cout << "I_AS = " << ledger.i_total << "\n";
  return kExitOk;
}

int cmd_props() {
  using hqcm::Proposition;
  hqcm::Proposition alive = hqcm::from_pointer_subset(2, {0});
  hqcm::Proposition dead = hqcm::from_pointer_subset(2, {1});
  hqcm::Proposition both = hqcm::conjunction(alive, dead);
  hqcm::Proposition either = hqcm::disjunction(alive, dead);
  hqcm::QuantumState mixed = hqcm::QuantumState::maximally_mixed(2);

  std::cout << "pointer basis: {alive, dead}\n";
  std::cout << "alive AND dead -> zero operator (max |entry| = "
            << hqcm::max_abs(both.projector()) << "); false in any state\n";
  std::cout << "alive OR dead  -> identity (max |P - 1| = "
            << hqcm::max_abs(either.projector() -
                             hqcm::ComplexMatrix::Identity(2, 2))
            << "); true in any state\n";
  std::cout << "truth probability of 'alive' in the equal mixture: "
            << hqcm::truth_probability(alive, mixed) << "\n";
  std::cout << "compatible(alive, dead): "
            << (hqcm::compatible(alive, dead) ? "yes" : "no") << "\n";
  std::vector<Proposition> family;
  for (int mask = 0; mask < 4; ++mask) {
    std::set<int> subset;
    for (int i = 0; i < 2; ++i) {
      if (mask & (1 << i)) {
        subset.insert(i);
      }
    }
    family.push_back(hqcm::from_pointer_subset(2, subset));
  }
  std::cout << "subset projectors form a Boolean sublattice: "
            << (hqcm::boolean_sublattice_check(family) ? "yes" : "no") << "\n";
  return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"hybrid quantum-classical measurement simulator"};
  app.require_subcommand(1);

  std::string scenario;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trajectories;
  std::string out_dir = "out";
  std::string format = "both";
  double tolerance = 1e-10;
  double k_const = 1.0;
  std::string file_path;

  CLI::App *run = app.add_subcommand("run", "execute a scenario");
  run->add_option("--scenario", scenario,
                  "stern_gerlach | cat | wigner_friend | custom");
  run->add_option("--config", config_path, "scenario config JSON file");
  run->add_option("--seed", seed, "master seed");
  run->add_option("--trajectories", trajectories, "trajectory count");
  run->add_option("--out-dir", out_dir, "output directory");
  run->add_option("--format", format, "csv | json | both")
      ->check(CLI::IsMember({"csv", "json", "both"}));

  CLI::App *check =
      app.add_subcommand("check", "classicality verdict for a Hamiltonian");
  check->add_option("--config", file_path, "general Hamiltonian JSON file")
      ->required();
  check->add_option("--tolerance", tolerance, "coherence tolerance");

  CLI::App *info = app.add_subcommand("info", "entropy ledger of a state");
  info->add_option("--config", file_path, "hybrid state JSON file")
      ->required();
  info->add_option("--k-const", k_const, "information constant K");

  CLI::App *props =
      app.add_subcommand("props", "pointer-proposition demonstrations");
  (void)props;

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (scenario.empty() && config_path.empty()) {
        throw hqcm::ConfigError("run needs --scenario and/or --config");
      }
      return cmd_run(scenario, config_path, seed, trajectories, out_dir,
                     format);
    }
    if (check->parsed()) {
      return cmd_check(file_path, tolerance);
    }
    if (info->parsed()) {
      return cmd_info(file_path, k_const);
    }
    if (props->parsed()) {
      return cmd_props();
    }
  } catch (const hqcm::IoError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const hqcm::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
