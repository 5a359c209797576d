#pragma once

// The mns command line: configuration, dispatch, guard limits and output.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mns/report.hpp"

namespace mns {

namespace exit_code {
inline constexpr int verified = 0;
inline constexpr int counterexample = 2;
inline constexpr int inconclusive = 3;
inline constexpr int usage = 64;
inline constexpr int guard = 65;
inline constexpr int internal = 70;
}  // namespace exit_code

struct GuardLimits {
  int L = 16;
  int D = 12;
  int N = 20;
};

struct RunConfig {
  std::string command;  // verify-monoid, classify, verify-group-algebra, digit-sum, magnus, expand, check-crossed, pingpong
  std::string group = "heis";
  std::vector<std::string> generators;  // element strings
  std::optional<int> L, D, N;
  std::string field = "Q";
  std::string system = "trivial";
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  std::string format = "json";  // json | text
  std::string out;              // empty: standard output
  bool unsafe_bounds = false;

  std::string r = "2";
  std::string t = "1";
  std::string c = "1";
  std::string d = "1";
  std::optional<int> alphabet;
  std::vector<std::string> words;
  std::string series_file;
  bool invert = false;
};

struct CommandOutcome {
  int exit_code = exit_code::verified;
  std::string output;  // the rendered report; empty on error
  std::string error;
};

/// Runs one command. Never throws: errors become exit codes 64, 65 or 70.
CommandOutcome run_command(const RunConfig& config, const GuardLimits& limits = {});

/// Splits "H(1,0,0),H(0,1,0)" at top-level commas only.
std::vector<std::string> split_top_level(std::string_view text);

/// Writes to a sibling temporary file and renames it over path.
void write_atomically(const std::string& path, const std::string& content);

/// Full entry point: argument parsing, run_command, output.
int cli_main(int argc, const char* const* argv);

}  // namespace mns
