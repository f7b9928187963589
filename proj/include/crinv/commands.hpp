#pragma once

// Command implementations shared by the crinv executable and the tests.
// Each command returns a RunReport; printing and exit codes live in tools/.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "crinv/scalar.hpp"

namespace crinv::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInput = 2;

struct Options {
  std::optional<std::int64_t> radius;
  std::optional<std::vector<double>> rho_grid;
  double tolerance = 1e-9;  // float roundtrip threshold for solve
  ScalarKind scalar = ScalarKind::exact;
  int workers = 0;
  std::optional<std::string> output;  // solve: where to write the SolveResult JSON
};

struct Discrepancy {
  std::string item;
  std::string printed;
  std::string computed;
  std::string note;
};

struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> fields;  // printed in insertion order
  json payload = json::object();
  std::vector<Discrepancy> discrepancies;
  std::vector<std::string> errors;
  int exit_status = kExitOk;

  void field(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }
  void mismatch(Discrepancy d);
  void fail_input(std::string message);

  std::string text() const;
  json to_json() const;
};

RunReport cmd_verify_tables();
RunReport cmd_classify(const json& input);
RunReport cmd_leviflat(const json& input);
RunReport cmd_dc(const json& input, const Options& options);
RunReport cmd_solve(const json& input, const Options& options);
RunReport cmd_extend(const json& input);
/// Writes every fixture as a JSON file into dir; the file list goes in the payload.
RunReport cmd_fixtures_export(const std::string& dir, std::uint64_t seed);

/// Runs one of the file-based commands on a path, mapping unreadable or
/// unparsable files to exit status 2.
RunReport run_on_file(const std::string& command, const std::string& path, const Options& options);

/// CR_INVARIANTS_SEED, or a fixed default.
std::uint64_t seed_from_env();

/// Fixture documents as written by `fixtures export`, keyed by file name.
std::vector<std::pair<std::string, json>> fixture_documents(std::uint64_t seed);

}  // namespace crinv::cli
