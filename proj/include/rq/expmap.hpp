#pragma once

#include "rq/deriv_symbols.hpp"
#include "rq/fiber_poly.hpp"
#include "rq/geometry.hpp"

namespace rq {

/// Truncated Taylor expansion of the geodesic exponential map in the fiber
/// velocities: coordinate j of exp_x(v) as a polynomial of total degree <= K.
/// Degree 0 is the base coordinate itself, degree 1 is v^j, and the degree-2
/// quadratic form is -(1/2) Gamma^j_{rs} v^r v^s.
class JetMap {
 public:
  JetMap(Chart chart, int order, std::vector<FiberPoly> coordinates);

  const Chart& chart() const { return chart_; }
  int order() const { return order_; }
  const FiberPoly& coordinate(int j) const { return coordinates_.at(j); }

 private:
  Chart chart_;
  int order_;
  std::vector<FiberPoly> coordinates_;
};

/// Jet of the exponential map computed by repeated total differentiation of
/// the geodesic equation. Requires 2 <= order <= 6.
JetMap geodesic_jet(const Metric& g, int order, const CancelToken* cancel = nullptr);

/// f(exp(v)) as a truncated fiber polynomial whose coefficients carry the
/// abstract derivative symbols f, f_1, f_12, ... of an opaque function f.
class JetPullback {
 public:
  JetPullback(Chart chart, int order, FiberPoly poly);

  const Chart& chart() const { return chart_; }
  int order() const { return order_; }
  const FiberPoly& poly() const { return poly_; }

  /// The symbol family used for the abstract function ("f").
  static const DerivFamily& family();

 private:
  Chart chart_;
  int order_;
  FiberPoly poly_;
};

/// Formal composition of an abstract function with the jet, truncated at
/// total fiber degree `order` (requires order <= jet.order()).
JetPullback pullback(const JetMap& jet, int order);

/// Taylor expansion of F(x + shift) in the fiber variables where every
/// shift_j has fiber valuation >= 1; truncated at `max_degree`.
FiberPoly taylor_shift(const Expr& f, const Chart& chart, const std::vector<FiberPoly>& shift,
                       int max_degree, const DerivativeTable& table = {});

/// End point of the geodesic through (x0, v) at t = 1, integrated with
/// fixed-step RK4 (h = 1/1024). Throws NumericError if the trajectory leaves
/// the chart's probe intervals or becomes non-finite.
std::vector<double> exp_numeric(const Metric& g, const std::vector<double>& x0,
                                const std::vector<double>& v);

/// Numeric evaluation of the jet polynomials at (x0, v).
std::vector<double> evaluate_jet(const JetMap& jet, const std::vector<double>& x0,
                                 const std::vector<double>& v);

}  // namespace rq
