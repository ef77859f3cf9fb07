// Copyright 2026 The seceq Authors.
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

// seceq: solve, verify and inspect secure equilibria of turn-based games.
//
// Exit codes: 0 success, 1 verification failure, 2 input error (malformed
// document, unsupported engine or family), 3 internal error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "report.h"
#include "seceq/delta.h"
#include "seceq/eliminate.h"
#include "seceq/errors.h"
#include "seceq/game_io.h"
#include "seceq/generator.h"
#include "seceq/oracle.h"
#include "seceq/product.h"
#include "seceq/secure.h"
#include "seceq/verify.h"
#include "seceq/zerosum.h"

namespace seceq::tools {
namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

struct Options {
  std::string file;
  std::string engine = "auto";
  std::string weights;
  std::string out;
  std::string format = "text";
  long max_oracle_profiles = 1000000;

  GeneratorConfig gen;
  std::string family = "discounted";
  bool random_transitions = false;
  std::string discount = "1/2";
};

std::vector<Scalar> ParseWeights(const std::string& text, int num_players) {
  std::vector<Scalar> out;
  if (text.empty()) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(ParseScalar(item));
  if (static_cast<int>(out.size()) != num_players) {
    throw InputError("--weights needs one value per player");
  }
  for (const Scalar& w : out) {
    if (w <= 0) throw InputError("--weights must be positive");
  }
  return out;
}

Family ParseFamily(const std::string& name) {
  for (Family f : {Family::kDiscounted, Family::kFiniteHorizon,
                   Family::kReachedSet, Family::kCappedHitting}) {
    if (FamilyName(f) == name) return f;
  }
  throw InputError("unknown payoff family: " + name);
}

void Emit(const Options& options, const std::string& text) {
  if (options.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(options.out, std::ios::binary);
  if (!file) throw InputError("cannot write " + options.out);
  file << text;
}

bool Structured(const Options& options) {
  if (options.format == "structured") return true;
  if (options.format == "text") return false;
  throw InputError("--format must be text or structured");
}

std::string ResolveEngine(const Options& options, const GameDocument& doc) {
  const bool finite_range = AllFiniteRange(doc.specs);
  const bool reward = AllOfFamily(doc.specs, Family::kDiscounted) ||
                      AllOfFamily(doc.specs, Family::kFiniteHorizon);
  std::string engine = options.engine;
  if (engine == "auto") {
    if (finite_range && doc.arena.IsDeterministic()) {
      engine = "thm2";
    } else if (reward) {
      engine = "thm1";
    } else {
      throw UnsupportedError(
          "no engine handles this game: mixed payoff families, or "
          "finite-range payoffs on a probabilistic arena");
    }
  }
  if (engine == "thm1" && !reward) {
    throw UnsupportedError(
        "engine thm1 needs all-discounted or all-finite-horizon payoffs");
  }
  if (engine == "thm2" && !(finite_range && doc.arena.IsDeterministic())) {
    throw UnsupportedError(
        "engine thm2 needs a deterministic arena and reached-set or "
        "hitting-time payoffs");
  }
  if (engine != "thm1" && engine != "thm2") {
    throw InputError("--engine must be auto, thm1 or thm2");
  }
  return engine;
}

int Solve(const Options& options) {
  const bool structured = Structured(options);
  GameDocument doc = LoadGame(options.file);
  const std::string engine = ResolveEngine(options, doc);
  const std::vector<Scalar> weights =
      ParseWeights(options.weights, doc.arena.NumPlayers());

  EquilibriumReport report;
  Json info = Json::object();
  std::ostringstream text;
  info["engine"] = engine;
  if (engine == "thm1") {
    SecureResult result =
        ConstructSecureEquilibrium(doc.arena, doc.specs, weights);
    report = result.report;
    doc.profile = result.profile;
    info["levels"] = result.trace.levels.size();
    info["profile_memory"] = result.profile.memory.size;
    text << "engine: thm1 (elimination, " << result.trace.levels.size()
         << " levels; see `seceq eliminate` for the trace)\n";
  } else {
    DeltaResult result = ConstructSecureEquilibriumDet(doc.arena, doc.specs);
    report = result.report;
    doc.profile = result.profile;
    if (result.params) {
      info["delta"] = ToString(result.params->delta);
      text << "engine: thm2, delta = " << ToString(result.params->delta) << "\n";
    } else {
      info["delta"] = "0";
      text << "engine: thm2, constant payoff range, delta = 0\n";
    }
    info["profile_memory"] = result.profile.memory.size;
  }
  text << "profile memory: " << doc.profile->memory.size << " states\n";
  text << ReportText(doc.arena, report);

  if (!options.out.empty()) {
    // The solved document carries the profile so `verify` can re-check it.
    std::ofstream file(options.out, std::ios::binary);
    if (!file) throw InputError("cannot write " + options.out);
    file << SerializeGame(doc);
  }
  if (structured) {
    info["report"] = ReportJson(doc.arena, report);
    std::cout << info.dump(2) << "\n";
  } else {
    std::cout << text.str();
  }
  return report.nash.holds && report.sum_secure.holds ? kOk
                                                      : kVerificationFailed;
}

int VerifyCommand(const Options& options) {
  const bool structured = Structured(options);
  const GameDocument doc = LoadGame(options.file);
  if (!doc.profile) throw InputError("document has no profile section");
  const std::vector<Scalar> weights =
      ParseWeights(options.weights, doc.arena.NumPlayers());
  const EquilibriumReport report =
      Verify(doc.arena, doc.specs, *doc.profile, weights);
  Emit(options, structured ? ReportJson(doc.arena, report).dump(2) + "\n"
                           : ReportText(doc.arena, report));
  return report.nash.holds && report.secure.holds ? kOk : kVerificationFailed;
}

int Eliminate(const Options& options) {
  const bool structured = Structured(options);
  const GameDocument doc = LoadGame(options.file);
  const RewardGame game = RewardGameFromSpecs(doc.arena, doc.specs);
  const EliminationTrace trace = EliminateFixpoint(game);
  // Finite-horizon games are eliminated on the clock product.
  const Arena& arena = game.product ? game.product->arena : doc.arena;
  Emit(options, structured ? TraceJson(arena, trace).dump(2) + "\n"
                           : TraceText(arena, trace));
  return kOk;
}

int Transform(const Options& options) {
  const bool structured = Structured(options);
  const GameDocument doc = LoadGame(options.file);
  if (!AllFiniteRange(doc.specs)) {
    throw UnsupportedError(
        "transform needs reached-set or hitting-time payoffs");
  }
  ValidateSpecs(doc.arena, doc.specs);
  std::optional<DeltaParams> params;
  std::vector<Scalar> range;
  for (const PayoffSpec& spec : doc.specs) {
    for (const Scalar& m : PayoffRange(spec)) range.push_back(m);
  }
  std::sort(range.begin(), range.end());
  range.erase(std::unique(range.begin(), range.end()), range.end());
  if (range.size() >= 2) params = ComputeDelta(doc.specs, doc.arena.NumPlayers());
  const Scalar delta = params ? params->delta : Scalar(0);
  const TransformedPayoffs payoffs =
      TransformPayoffs(doc.arena, doc.specs, delta);
  const PayoffTracker tracker(doc.arena, doc.specs);
  Emit(options,
       structured
           ? TransformJson(doc.arena, tracker, params, payoffs).dump(2) + "\n"
           : TransformText(doc.arena, tracker, params, payoffs));
  return kOk;
}

int Oracle(const Options& options) {
  const bool structured = Structured(options);
  const GameDocument doc = LoadGame(options.file);
  OracleBounds bounds;
  bounds.max_profiles = options.max_oracle_profiles;
  const OracleResult result = OracleEnumerate(doc.arena, doc.specs, bounds);
  Emit(options, structured ? OracleJson(doc.arena, result).dump(2) + "\n"
                           : OracleText(doc.arena, result));
  return result.hierarchy_violations == 0 ? kOk : kVerificationFailed;
}

int Gen(Options options) {
  options.gen.family = ParseFamily(options.family);
  options.gen.deterministic = !options.random_transitions;
  options.gen.discount = ParseScalar(options.discount);
  Emit(options, SerializeGame(Generate(options.gen)));
  return kOk;
}

int Run(int argc, char** argv) {
  CLI::App app{"Secure equilibria of multi-player turn-based games"};
  app.require_subcommand(1);
  Options options;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("file", options.file, "Game document")->required();
    cmd->add_option("--out", options.out, "Output file");
    cmd->add_option("--format", options.format, "text or structured");
  };

  CLI::App* solve = app.add_subcommand("solve", "Construct a secure equilibrium");
  add_common(solve);
  solve->add_option("--engine", options.engine, "auto, thm1 or thm2");
  solve->add_option("--weights", options.weights,
                    "Positive player weights, comma separated");

  CLI::App* verify =
      app.add_subcommand("verify", "Check the profile section of a document");
  add_common(verify);
  verify->add_option("--weights", options.weights,
                     "Weights for the sum-secure check");

  CLI::App* eliminate =
      app.add_subcommand("eliminate", "Print the elimination trace");
  add_common(eliminate);

  CLI::App* transform =
      app.add_subcommand("transform", "Print delta and the transformed payoffs");
  add_common(transform);

  CLI::App* oracle =
      app.add_subcommand("oracle", "Enumerate secure equilibria by brute force");
  add_common(oracle);
  oracle->add_option("--max-oracle-profiles", options.max_oracle_profiles,
                     "Refuse to enumerate more profiles than this");

  CLI::App* gen = app.add_subcommand("gen", "Write a random game document");
  gen->add_option("--seed", options.gen.seed, "Random seed");
  gen->add_option("--out", options.out, "Output file");
  gen->add_option("--players", options.gen.num_players, "Number of players")
      ->check(CLI::Range(1, 8));
  gen->add_option("--states", options.gen.num_states, "Number of states")
      ->check(CLI::Range(1, 64));
  gen->add_option("--actions", options.gen.max_actions, "Actions per state")
      ->check(CLI::Range(1, 8));
  gen->add_option("--family", options.family,
                  "discounted, finite_horizon, reached_set or capped_hitting");
  gen->add_flag("--random-transitions", options.random_transitions,
                "Probabilistic transitions");
  gen->add_option("--denominator", options.gen.prob_denominator,
                  "Probability denominator")
      ->check(CLI::Range(1, 64));
  gen->add_option("--reward-denominator", options.gen.reward_denominator,
                  "Largest reward denominator")
      ->check(CLI::Range(1, 64));
  gen->add_option("--discount", options.discount, "Discount factor");
  gen->add_option("--horizon", options.gen.horizon, "Finite horizon")
      ->check(CLI::Range(1, 16));
  gen->add_option("--labels", options.gen.num_labels,
                  "Reached-set target sets per player")
      ->check(CLI::Range(1, 4));
  gen->add_option("--cap", options.gen.cap, "Hitting-time cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve) return Solve(options);
    if (*verify) return VerifyCommand(options);
    if (*eliminate) return Eliminate(options);
    if (*transform) return Transform(options);
    if (*oracle) return Oracle(options);
    if (*gen) return Gen(options);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const UnsupportedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInputError;
}

}  // namespace
}  // namespace seceq::tools

int main(int argc, char** argv) { return seceq::tools::Run(argc, argv); }
