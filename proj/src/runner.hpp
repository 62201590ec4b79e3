#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "games.hpp"
#include "report.hpp"

namespace seqhyper {

inline constexpr const char* kConfigSchema = "seqhyper.config/1";
inline constexpr const char* kReportSchema = "seqhyper.report/1";

struct RunConfig {
  std::string schema = kConfigSchema;
  // One space descriptor, or an array of them run side by side.
  Json space;
  std::string task;  // certify | metric | game | meager | diagnose | profile
  int depth = 8;
  int rounds = 30;
  std::vector<std::uint64_t> seeds{0};  // an explicit empty list runs nothing
  std::string out;                   // report directory; empty for none
  std::string adversary = "random";  // random | scripted:FILE | interactive
  std::string strategy;              // empty selects one from the space kind
  int max_fresh_indices = 5;
  bool transcripts = true;

  Json to_json() const;
  // Validates task-specific fields; throws kSchema.
  void validate() const;
};

// Parses a config document; schema errors carry line and column.
RunConfig parse_config(const std::string& text);
// "0-99", "1,5,9" or "3"; an empty string gives no seeds.
std::vector<std::uint64_t> parse_seeds(const std::string& text);

RunConfig scenario(const std::string& name);
std::vector<std::string> scenario_names();

struct RunResult {
  Json report;
  // Rows for plotting: the first row holds the column names.
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> warnings;
  int exit_code = 0;
};

// Interactive play reads from `in` and writes prompts to `out`.
RunResult run(const RunConfig& config, std::istream* in = nullptr, std::ostream* out = nullptr);
// Writes report.json and table.tsv into config.out.
void write_outputs(const RunConfig& config, const RunResult& result);

StrategyFactory strategy_for(const SpacePtr& x, const Json& descriptor, const std::string& name);

}  // namespace seqhyper
