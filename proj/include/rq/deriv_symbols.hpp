#pragma once

#include <string>
#include <vector>

#include "rq/expr.hpp"

namespace rq {

/// A family of symbols standing for the iterated partial derivatives of one
/// opaque function. The base symbol "f" denotes the function itself and
/// "f_12" denotes d^2 f / dx^1 dx^2 (coordinate positions, 1-based, sorted —
/// mixed partials commute, so one sorted name per multi-set). Limited to
/// charts of dimension <= 9 by the digit encoding.
class DerivFamily {
 public:
  explicit DerivFamily(std::string base);

  const std::string& base() const { return base_; }

  /// Symbol for the derivative with respect to the (1-based) coordinate
  /// positions in `indices` (order irrelevant).
  std::string symbol(std::vector<int> indices) const;

  /// True if `name` belongs to this family.
  bool matches(const std::string& name) const;

  /// Number of derivatives encoded in `name`, or -1 if not in the family.
  int order(const std::string& name) const;

  /// Indices (sorted, 1-based) encoded in a member name.
  std::vector<int> indices(const std::string& name) const;

  /// Name of d(name)/dx^position for a member symbol.
  std::string differentiated(const std::string& name, int position) const;

  /// Differentiation rule: members differentiate to the next member when the
  /// variable is one of `coordinates`; non-members are untouched.
  DerivativeTable table(const std::vector<std::string>& coordinates) const;

  /// Highest family order appearing anywhere in `e` (-1 if none).
  int max_order_in(const Expr& e) const;

 private:
  std::string base_;
};

}  // namespace rq
