#pragma once

#include <string>
#include <vector>

#include "rq/probe.hpp"

namespace rq {

/// A single coordinate chart: ordered coordinate names with per-coordinate
/// probe intervals. Coordinate names must be valid identifiers, distinct,
/// and disjoint from the reserved symbols (hbar, i, pi). The prefixes "v_"
/// and "f"/"f_..." are reserved for fiber velocities and derivative symbols.
class Chart {
 public:
  Chart(std::vector<std::string> names, std::vector<Interval> intervals);

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& coordinates() const { return names_; }
  const std::string& coordinate(int j) const { return names_.at(j); }
  const Interval& interval(int j) const { return intervals_.at(j); }

  /// Name of the fiber velocity symbol paired with coordinate j.
  std::string velocity(int j) const { return "v_" + names_.at(j); }

  /// Position of a coordinate name, or -1.
  int index_of(const std::string& name) const;

  /// Probe domain over the coordinates; velocities get [-2, 2] when included.
  ProbeDomain probe_domain(std::uint64_t seed = 42, bool with_velocities = false) const;

  friend bool operator==(const Chart& a, const Chart& b) { return a.names_ == b.names_; }
  friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

 private:
  std::vector<std::string> names_;
  std::vector<Interval> intervals_;
};

/// Throws DomainError unless both values live on the same chart.
void require_same_chart(const Chart& a, const Chart& b, const char* what);

}  // namespace rq
