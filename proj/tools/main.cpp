// Copyright 2026 The signed-engel Authors.
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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "signed_engel/ball.hpp"
#include "signed_engel/error.hpp"
#include "signed_engel/expansion.hpp"
#include "signed_engel/intervals.hpp"
#include "signed_engel/markov.hpp"
#include "signed_engel/rational.hpp"
#include "signed_engel/stats.hpp"
#include "signed_engel/symbolic.hpp"

namespace se = signed_engel;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecision = 3;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw se::Error(se::ErrorCode::kParseError, "empty list item");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

int parse_sign(const std::string& s) {
  if (s == "+" || s == "+1" || s == "1") return 1;
  if (s == "-" || s == "-1") return -1;
  throw se::Error(se::ErrorCode::kParseError, "bad sign '" + s + "'");
}

void emit(const nlohmann::ordered_json& j, int indent = -1) { std::cout << j.dump(indent) << '\n'; }

struct ExpandArgs {
  std::string input;
  std::optional<std::size_t> max_digits;
};

int run_expand(const ExpandArgs& a) {
  se::SignedEngelExpansion e;
  if (a.input.find('/') != std::string::npos) {
    e = se::expand_rational(se::parse_rational(a.input),
                            a.max_digits.value_or(se::kDefaultRationalDigits));
  } else {
    e = se::expand_certified(se::ball_from_decimal(a.input),
                             a.max_digits.value_or(se::kDefaultBallDigits));
  }
  emit(se::to_json(e));
  const bool short_of_request = a.max_digits && e.size() < *a.max_digits && !e.terminated;
  return short_of_request && e.stop_reason == se::StopReason::kPrecisionExhausted ? kExitPrecision
                                                                                   : 0;
}

struct ReconstructArgs {
  std::string digits;
  std::string signs;
  std::optional<std::size_t> n;
};

int run_reconstruct(const ReconstructArgs& a) {
  std::vector<se::BigInt> digits;
  for (const auto& d : split(a.digits, ',')) digits.push_back(se::parse_bigint(d));
  std::vector<int> signs;
  for (const auto& s : split(a.signs, ',')) signs.push_back(parse_sign(s));
  if (digits.size() != signs.size()) {
    throw se::Error(se::ErrorCode::kMalformed, "--digits and --signs differ in length");
  }
  for (const auto& d : digits) {
    if (d < 1) throw se::Error(se::ErrorCode::kMalformed, "digits must be positive");
  }
  std::size_t n = a.n.value_or(digits.size());
  if (n < 1 || n > digits.size()) {
    throw se::Error(se::ErrorCode::kIndexOutOfRange, "--n must lie in [1, " +
                                                         std::to_string(digits.size()) + "]");
  }
  const se::Rational value = se::reconstruct(std::span<const se::BigInt>(digits.data(), n),
                                             std::span<const int>(signs.data(), n));
  nlohmann::ordered_json j;
  j["n"] = n;
  j["value"] = value.to_string();
  j["decimal"] = value.to_decimal(30);
  emit(j);
  return 0;
}

int run_admissible(const std::string& sequence, const std::string& variant) {
  const se::SymbolSequence s = se::parse_symbols(sequence);
  const se::SymbolSpace space =
      variant == "prime" ? se::SymbolSpace::kSigmaNPrime : se::SymbolSpace::kSigmaN;
  const se::Admissibility verdict = se::check_admissible(s, space);
  nlohmann::ordered_json j;
  j["sequence"] = se::format_symbols(s);
  j["variant"] = variant;
  j["admissible"] = verdict.valid;
  j["reason"] = verdict.reason;
  emit(j);
  return verdict.valid ? 0 : kExitFail;
}

int run_interval(const std::string& sequence) {
  emit(se::to_json(se::basic_interval(se::parse_symbols(sequence))));
  return 0;
}

struct SimulateArgs {
  std::string chain;
  std::size_t n = 0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string meta;
};

int run_simulate(const SimulateArgs& a) {
  const se::TrajectoryBatch batch = se::simulate(se::parse_chain_source(a.chain), a.n, a.count, a.seed);
  if (a.out.empty()) {
    se::write_csv(batch, std::cout);
  } else {
    std::ofstream file(a.out, std::ios::binary);
    if (!file) throw se::Error(se::ErrorCode::kParseError, "cannot open " + a.out);
    se::write_csv(batch, file);
  }
  if (!a.meta.empty()) {
    std::ofstream file(a.meta, std::ios::binary);
    if (!file) throw se::Error(se::ErrorCode::kParseError, "cannot open " + a.meta);
    file << se::batch_metadata(batch).dump(2) << '\n';
  }
  return 0;
}

struct VerifyArgs {
  std::string suite;
  std::uint64_t seed = 42;
  std::vector<std::string> phis;
  std::string chain;
  std::optional<std::size_t> n;
  std::optional<std::size_t> count;
};

int run_verify(const VerifyArgs& a) {
  se::SuiteOptions options;
  if (!a.chain.empty()) options.source = se::parse_chain_source(a.chain);
  options.n = a.n;
  options.count = a.count;
  for (const auto& p : a.phis) options.phis.push_back(se::PhiFunction::parse(p));
  const se::VerificationReport report = se::run_suite(a.suite, a.seed, options);
  emit(se::to_json(report), 2);
  return report.verdict == se::Verdict::kPass ? 0 : kExitFail;
}

int exit_code_for(se::ErrorCode code) {
  switch (code) {
    case se::ErrorCode::kPrecisionExhausted:
      return kExitPrecision;
    case se::ErrorCode::kZeroDenominator:
    case se::ErrorCode::kParseError:
    case se::ErrorCode::kOutOfDomain:
    case se::ErrorCode::kIndexOutOfRange:
    case se::ErrorCode::kMalformed:
    case se::ErrorCode::kNotAdmissible:
    case se::ErrorCode::kOddFinalDigit:
    case se::ErrorCode::kExpansionTooShort:
    case se::ErrorCode::kOddDigitAtN:
      return kExitUsage;
    default:
      return kExitFail;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signed Engel expansions: digits, cylinders, chain simulation and verification"};
  app.require_subcommand(1);

  ExpandArgs expand;
  auto* expand_cmd = app.add_subcommand("expand", "Expand a rational p/q or a decimal in (0,1)");
  expand_cmd->add_option("--input", expand.input, "\"p/q\" or a decimal such as 0.4142")->required();
  expand_cmd->add_option("--max-digits", expand.max_digits, "Digit limit")->check(CLI::PositiveNumber);

  ReconstructArgs reconstruct;
  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Sum a finite digit/sign sequence");
  reconstruct_cmd->add_option("--digits", reconstruct.digits, "Comma separated digits")->required();
  reconstruct_cmd->add_option("--signs", reconstruct.signs, "Comma separated cumulative signs")
      ->required();
  reconstruct_cmd->add_option("--n", reconstruct.n, "Number of terms")->check(CLI::PositiveNumber);

  std::string admissible_sequence;
  std::string variant = "plain";
  auto* admissible_cmd = app.add_subcommand("admissible", "Check a symbol string");
  admissible_cmd->add_option("--sequence", admissible_sequence, "e.g. \"2 +1 4\"")->required();
  admissible_cmd->add_option("--variant", variant, "plain or prime")
      ->check(CLI::IsMember({"plain", "prime"}));

  std::string interval_sequence;
  auto* interval_cmd = app.add_subcommand("interval", "Cylinder of a symbol string");
  interval_cmd->add_option("--sequence", interval_sequence, "e.g. \"2 -1 4\"")->required();

  SimulateArgs simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate digit chain trajectories as CSV");
  simulate_cmd->add_option("--chain", simulate.chain, "exact, surrogate or real")
      ->required()
      ->check(CLI::IsMember({"exact", "surrogate", "real"}));
  simulate_cmd->add_option("--n", simulate.n, "Trajectory length")->required()->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--count", simulate.count, "Number of trajectories")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", simulate.seed, "Master seed")->required();
  simulate_cmd->add_option("--out", simulate.out, "CSV file (default stdout)");
  simulate_cmd->add_option("--meta", simulate.meta, "Batch metadata JSON file");

  VerifyArgs verify;
  std::vector<std::string> suites{"all"};
  for (const auto name : se::suite_names()) suites.emplace_back(name);
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("--suite", verify.suite, "Suite name")->required()->check(CLI::IsMember(suites));
  verify_cmd->add_option("--seed", verify.seed, "Master seed")->capture_default_str();
  verify_cmd->add_option("--phi", verify.phis, "power:a, nlogpow:a, const:c or table:v1,v2,...")
      ->take_all();
  verify_cmd->add_option("--chain", verify.chain, "Override the chain source")
      ->check(CLI::IsMember({"exact", "surrogate", "real"}));
  verify_cmd->add_option("--n", verify.n, "Override the suite's n")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--count", verify.count, "Override the suite's count")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*expand_cmd) return run_expand(expand);
    if (*reconstruct_cmd) return run_reconstruct(reconstruct);
    if (*admissible_cmd) return run_admissible(admissible_sequence, variant);
    if (*interval_cmd) return run_interval(interval_sequence);
    if (*simulate_cmd) return run_simulate(simulate);
    if (*verify_cmd) return run_verify(verify);
  } catch (const se::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
