#pragma once

#include <map>
#include <string>
#include <vector>

#include "rq/cancel.hpp"
#include "rq/chart.hpp"

namespace rq {

/// Derivative multi-index: per-coordinate derivative orders.
using MultiIndex = std::vector<int>;

int multi_index_order(const MultiIndex& a);
std::string multi_index_label(const MultiIndex& a, const Chart& chart);

/// Linear differential operator sum_alpha c_alpha d^alpha with symbolic
/// coefficients. Coefficients are kept simplified; structural zeros are
/// never stored.
class DiffOperator {
 public:
  explicit DiffOperator(Chart chart);
  DiffOperator(Chart chart, std::map<MultiIndex, Expr> coefficients);

  static DiffOperator identity(const Chart& chart);
  static DiffOperator multiplication(const Chart& chart, const Expr& factor);
  /// c * d/dx_j
  static DiffOperator first_order(const Chart& chart, int j, const Expr& coefficient);

  const Chart& chart() const { return chart_; }
  const std::map<MultiIndex, Expr>& coefficients() const { return coeffs_; }
  Expr coefficient(const MultiIndex& alpha) const;  // zero if absent
  bool is_structurally_zero() const { return coeffs_.empty(); }
  int order() const;

  DiffOperator scaled(const Expr& factor) const;  // left multiplication

  friend DiffOperator operator+(const DiffOperator& a, const DiffOperator& b);
  friend DiffOperator operator-(const DiffOperator& a, const DiffOperator& b);

 private:
  Chart chart_;
  std::map<MultiIndex, Expr> coeffs_;
};

/// Operator composition A after B via the Leibniz expansion. When
/// `max_coeff_derivative_order` is given, it receives the largest number of
/// derivatives applied to a coefficient of B among surviving terms. An
/// optional derivative table extends coefficient differentiation to abstract
/// function symbols.
DiffOperator compose(const DiffOperator& a, const DiffOperator& b,
                     const CancelToken* cancel = nullptr,
                     int* max_coeff_derivative_order = nullptr,
                     const DerivativeTable* table = nullptr);

DiffOperator commutator(const DiffOperator& a, const DiffOperator& b,
                        const CancelToken* cancel = nullptr);

/// Coefficient-by-coefficient probing equality over the union of indices.
bool probably_equal(const DiffOperator& a, const DiffOperator& b, const ProbeDomain& domain,
                    const ProbeOptions& options = {});

/// Every coefficient probes to zero.
bool probably_zero(const DiffOperator& op, const ProbeDomain& domain,
                   const ProbeOptions& options = {});

std::string to_string(const DiffOperator& op);

}  // namespace rq
