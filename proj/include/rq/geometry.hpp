#pragma once

#include <map>
#include <vector>

#include "rq/chart.hpp"
#include "rq/diff_operator.hpp"

namespace rq {

/// Symmetric metric tensor g_ij over a chart. Construction checks structural
/// symmetry and probes nondegeneracy (det g != 0 at every probe point); the
/// signature may be arbitrary.
class Metric {
 public:
  Metric(Chart chart, std::vector<std::vector<Expr>> components);

  const Chart& chart() const { return chart_; }
  const Expr& at(int i, int j) const { return components_.at(i).at(j); }
  const std::vector<std::vector<Expr>>& components() const { return components_; }

 private:
  Chart chart_;
  std::vector<std::vector<Expr>> components_;
};

/// Symbolic determinant by cofactor expansion (charts are low-dimensional).
Expr determinant(const std::vector<std::vector<Expr>>& m);

/// Symbolic inverse via adjugate over determinant; entries are simplified.
std::vector<std::vector<Expr>> inverse_metric(const Metric& g);

/// Levi-Civita connection coefficients, symmetric in the lower index pair.
class ChristoffelField {
 public:
  ChristoffelField(Chart chart, std::vector<std::vector<std::vector<Expr>>> components);
  const Chart& chart() const { return chart_; }
  /// Gamma^j_{rs}
  const Expr& at(int j, int r, int s) const { return components_.at(j).at(r).at(s); }

 private:
  Chart chart_;
  std::vector<std::vector<std::vector<Expr>>> components_;
};

ChristoffelField christoffel(const Metric& g);

/// Degree-m symmetric covariant tensor; only sorted index tuples are stored.
/// Degree 0 is a single function on the chart.
class SymCoTensor {
 public:
  SymCoTensor(Chart chart, int degree, std::map<std::vector<int>, Expr> components);

  static SymCoTensor function(const Chart& chart, const Expr& value);
  /// Coordinate differential dx^j as a degree-1 tensor.
  static SymCoTensor dx(const Chart& chart, int j);
  /// The metric itself as the degree-2 tensor g_ij dx^i dx^j.
  static SymCoTensor metric_tensor(const Metric& g);
  /// Row tensor g_{j l} dx^l (the classical momentum p_j).
  static SymCoTensor momentum(const Metric& g, int j);

  const Chart& chart() const { return chart_; }
  int degree() const { return degree_; }
  const std::map<std::vector<int>, Expr>& components() const { return components_; }
  /// Component for any index tuple (sorted internally); zero when absent.
  Expr at(std::vector<int> indices) const;

  SymCoTensor scaled(const Expr& factor) const;
  friend SymCoTensor operator+(const SymCoTensor& a, const SymCoTensor& b);

 private:
  Chart chart_;
  int degree_;
  std::map<std::vector<int>, Expr> components_;
};

/// Contravariant components obtained by raising every index with g^{-1};
/// keyed by sorted tuples like the input.
std::map<std::vector<int>, Expr> raise_indices(const SymCoTensor& a, const Metric& g);

/// Lower a contravariant component array with g_ij (test aid; inverse of
/// raise_indices).
std::map<std::vector<int>, Expr> lower_indices(const std::map<std::vector<int>, Expr>& up,
                                               int degree, const Metric& g);

/// Vector field u^j d/dx^j on the chart.
class VectorField {
 public:
  VectorField(Chart chart, std::vector<Expr> components);
  const Chart& chart() const { return chart_; }
  const Expr& component(int j) const { return components_.at(j); }
  const std::vector<Expr>& components() const { return components_; }

 private:
  Chart chart_;
  std::vector<Expr> components_;
};

/// Independent Laplace-Beltrami oracle in divergence form,
/// |g|^{-1/2} d_k (|g|^{1/2} g^{kl} d_l). Refuses metrics that are not
/// definite on the probe domain; the symbolic pipeline elsewhere still
/// accepts them.
DiffOperator laplace_beltrami(const Metric& g);

/// Multiplicity of a sorted index tuple under full symmetrization,
/// m! / prod(count_k!).
long long symmetric_multiplicity(const std::vector<int>& sorted_tuple);

}  // namespace rq
