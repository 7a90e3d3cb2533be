#pragma once

#include <map>
#include <string>
#include <vector>

#include "rq/chart.hpp"
#include "rq/diff_operator.hpp"

namespace rq {

/// Exponent vector of a fiber monomial, one entry per coordinate.
using Monomial = std::vector<int>;

/// Polynomial in the chart's fiber velocity symbols with Expr coefficients
/// in the base coordinates. Zero coefficients are never stored.
class FiberPoly {
 public:
  explicit FiberPoly(Chart chart);
  FiberPoly(Chart chart, std::map<Monomial, Expr> terms);

  static FiberPoly constant(const Chart& chart, const Expr& value);
  /// The velocity monomial v^j.
  static FiberPoly velocity(const Chart& chart, int j);

  const Chart& chart() const { return chart_; }
  const std::map<Monomial, Expr>& terms() const { return terms_; }
  Expr coefficient(const Monomial& m) const;  // zero if absent
  bool is_structurally_zero() const { return terms_.empty(); }
  int degree() const;  // max total degree; 0 for the zero polynomial
  bool is_homogeneous(int d) const;

  FiberPoly scaled(const Expr& factor) const;
  /// Terms of total degree exactly d / at most d.
  FiberPoly homogeneous_part(int d) const;
  FiberPoly truncated(int max_degree) const;
  /// Polynomial derivative with respect to fiber variable j.
  FiberPoly fiber_derivative(int j) const;

  /// Substitute fiber variable j -> replacement[j] (an Expr in base symbols).
  Expr substitute_fiber(const std::vector<Expr>& replacement) const;
  /// Rewrite through a linear fiber change w_j = sum_k M[j][k] * fiber_k.
  FiberPoly compose_linear(const std::vector<std::vector<Expr>>& m) const;

  /// The polynomial as a single Expr in base and velocity symbols.
  Expr to_expr() const;

  friend FiberPoly operator+(const FiberPoly& a, const FiberPoly& b);
  friend FiberPoly operator-(const FiberPoly& a, const FiberPoly& b);

 private:
  Chart chart_;
  std::map<Monomial, Expr> terms_;
};

/// Product, truncated at total fiber degree `max_degree` (-1: no truncation).
FiberPoly multiply(const FiberPoly& a, const FiberPoly& b, int max_degree = -1);

std::string to_string(const FiberPoly& p);

/// Sorted index tuple <-> exponent-vector conversions.
Monomial tuple_to_monomial(const std::vector<int>& tuple, int dim);
std::vector<int> monomial_to_tuple(const Monomial& m);

}  // namespace rq
