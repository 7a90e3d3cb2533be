#include "rq/chart.hpp"

#include <cctype>
#include <set>

namespace rq {

namespace {

bool valid_identifier(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

bool reserved_prefix(const std::string& name) {
  if (name == "f" || name == "v") return true;
  return name.rfind("v_", 0) == 0 || name.rfind("f_", 0) == 0;
}

}  // namespace

Chart::Chart(std::vector<std::string> names, std::vector<Interval> intervals)
    : names_(std::move(names)), intervals_(std::move(intervals)) {
  if (names_.empty()) throw DomainError("chart needs at least one coordinate");
  if (intervals_.size() != names_.size())
    throw DomainError("chart needs one probe interval per coordinate");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!valid_identifier(n)) throw DomainError("coordinate name '" + n + "' is not an identifier");
    if (is_reserved_symbol(n)) throw DomainError("coordinate name '" + n + "' is reserved");
    if (func_from_name(n)) throw DomainError("coordinate name '" + n + "' is a function name");
    if (reserved_prefix(n))
      throw DomainError("coordinate name '" + n + "' collides with fiber/derivative symbols");
    if (!seen.insert(n).second) throw DomainError("duplicate coordinate name '" + n + "'");
  }
  for (std::size_t j = 0; j < intervals_.size(); ++j)
    if (!(intervals_[j].lo < intervals_[j].hi))
      throw DomainError("probe interval for coordinate '" + names_[j] + "' is empty");
}

int Chart::index_of(const std::string& name) const {
  for (std::size_t j = 0; j < names_.size(); ++j)
    if (names_[j] == name) return static_cast<int>(j);
  return -1;
}

ProbeDomain Chart::probe_domain(std::uint64_t seed, bool with_velocities) const {
  ProbeDomain d;
  d.set_seed(seed);
  for (int j = 0; j < dim(); ++j) {
    d.set(names_[j], intervals_[j].lo, intervals_[j].hi);
    if (with_velocities) d.set(velocity(j), -2.0, 2.0);
  }
  return d;
}

void require_same_chart(const Chart& a, const Chart& b, const char* what) {
  if (a != b) throw DomainError(std::string("chart mismatch in ") + what);
}

}  // namespace rq
