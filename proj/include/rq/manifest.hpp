#pragma once

#include <map>
#include <optional>
#include <string>

#include "rq/wavelab.hpp"

namespace rq {

/// A fully validated problem description loaded from a JSON manifest: one
/// chart, the metric, and optional named tensors, vector fields, potential,
/// grid settings, and action functions. See README for the schema.
struct Manifest {
  Manifest(Chart chart, Metric metric) : chart(std::move(chart)), metric(std::move(metric)) {}

  Chart chart;
  Metric metric;
  std::map<std::string, SymCoTensor> tensors;
  std::map<std::string, VectorField> fields;
  std::optional<Expr> potential;
  std::optional<GridSpec> grid;

  struct Action {
    Expr expression;
    double energy = 0.0;
  };
  std::map<std::string, Action> actions;

  double hbar_default = 1.0;

  const SymCoTensor& tensor(const std::string& name) const;
  const VectorField& field(const std::string& name) const;
  const Action& action(const std::string& name) const;
  const GridSpec& grid_or_throw() const;

  /// Probe domain over the chart with the manifest's hbar default.
  ProbeDomain probe_domain(std::uint64_t seed) const;
};

/// Parse and validate a manifest from JSON text. Throws ManifestError with a
/// field path on any violation.
Manifest parse_manifest(const std::string& json_text);

/// Load a manifest file (UTF-8 JSON).
Manifest load_manifest(const std::string& path);

}  // namespace rq
