#pragma once

#include "rq/expmap.hpp"

namespace rq {

/// A classical magnitude: the fiberwise-polynomial function on TM obtained
/// from a symmetric covariant tensor by substituting dx^j -> v^j.
using ClassicalMagnitude = FiberPoly;

/// underline(a): replace dx^j by the velocity symbols in the symmetric
/// polynomial of the tensor.
ClassicalMagnitude magnitude_of(const SymCoTensor& a);

/// Inverse of magnitude_of. The polynomial must be homogeneous of the given
/// degree (the zero polynomial is accepted at any degree).
SymCoTensor tensor_of(const ClassicalMagnitude& m, int degree);

/// Symmetric tensor product, computed through the magnitude algebra
/// isomorphism (polynomial multiplication on the fibers).
SymCoTensor symmetric_product(const SymCoTensor& a, const SymCoTensor& b);

/// Vertical differential operator of a magnitude once TM and T*M are
/// identified by the metric: coefficient array raise_indices(a, g) acting in
/// the fiber derivatives with the global factor (-i hbar)^degree.
class VerticalOperator {
 public:
  VerticalOperator(Chart chart, int degree, std::map<std::vector<int>, Expr> raised);

  const Chart& chart() const { return chart_; }
  int degree() const { return degree_; }
  /// Contravariant coefficients keyed by sorted tuples.
  const std::map<std::vector<int>, Expr>& coefficients() const { return raised_; }
  /// (-i hbar)^degree
  Expr global_factor() const;

  /// Apply to a fiber polynomial and restrict to the zero section.
  Expr apply_at_zero(const FiberPoly& p) const;

 private:
  Chart chart_;
  int degree_;
  std::map<std::vector<int>, Expr> raised_;
};

VerticalOperator vertical_operator(const SymCoTensor& a, const Metric& g);

/// The quantization rule a -> a-hat: apply the vertical operator of a to the
/// jet pullback of an abstract function and restrict to the zero section.
/// Degree cap 6.
DiffOperator quantize(const SymCoTensor& a, const Metric& g, const CancelToken* cancel = nullptr);

/// Poisson bracket of two magnitudes. Computed in (x, p) coordinates with
/// the convention {F,G} = sum_j dF/dp_j dG/dx^j - dF/dx^j dG/dp_j, moving
/// between v and p with p_j = g_jk v^k. The optional derivative table lets
/// coefficients be abstract symbols.
ClassicalMagnitude poisson_bracket(const ClassicalMagnitude& a, const ClassicalMagnitude& b,
                                   const Metric& g, const DerivativeTable& table = {});

/// quantize(a*a) - quantize(a)^2 (degree cap 3 on a).
DiffOperator quantization_defect_square(const SymCoTensor& a, const Metric& g,
                                        const CancelToken* cancel = nullptr);

struct BracketCommutatorReport {
  DiffOperator defect;        ///< [a-hat, b-hat] - (-i hbar) * quantize({a,b})
  bool defect_probably_zero;  ///< probing verdict, coefficient by coefficient
  /// Largest derivative order applied to the input tensors' coefficients
  /// among terms surviving in the defect (computed on abstract replicas).
  int max_coeff_derivative_order;
};

/// Compares the commutator of two quantized tensors against the quantization
/// of their Poisson bracket (degree cap 3 on both).
BracketCommutatorReport bracket_vs_commutator_report(const SymCoTensor& a, const SymCoTensor& b,
                                                     const Metric& g,
                                                     const CancelToken* cancel = nullptr);

}  // namespace rq
