#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rq/manifest.hpp"

namespace rq {

struct CheckRow {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
};

struct ResultRow {
  std::string label;
  std::string text;             // expression or symbolic value
  std::optional<double> number; // set for numeric rows
};

/// Deterministic command report; renders to plain text or to the JSON shape
/// {command, inputs, results, checks}.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<ResultRow> results;
  std::vector<CheckRow> checks;

  std::string to_text() const;
  std::string to_json() const;
  bool all_checks_passed() const;
};

struct RunOptions {
  std::uint64_t seed = 42;
  int order = 2;
  int count = 5;
  std::string tensor;
  std::string tensor2;
  std::string field;
};

extern const std::vector<std::string> kCommands;

/// Dispatch one CLI command against a manifest. Throws ManifestError for
/// missing names/settings, DomainError/NumericError/EvalError for
/// computation failures.
Report run_command(const std::string& command, const Manifest& manifest,
                   const RunOptions& options);

std::string format_double(double v);

}  // namespace rq
