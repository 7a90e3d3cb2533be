#include "rq/quantizer.hpp"

#include <algorithm>

namespace rq {

ClassicalMagnitude magnitude_of(const SymCoTensor& a) {
  std::map<Monomial, Expr> terms;
  for (const auto& [tuple, value] : a.components()) {
    Monomial m = tuple_to_monomial(tuple, a.chart().dim());
    Expr c = Expr::integer(symmetric_multiplicity(tuple)) * value;
    auto it = terms.find(m);
    if (it == terms.end())
      terms.emplace(std::move(m), c);
    else
      it->second = it->second + c;
  }
  return ClassicalMagnitude(a.chart(), std::move(terms));
}

SymCoTensor tensor_of(const ClassicalMagnitude& m, int degree) {
  if (!m.is_homogeneous(degree) && !m.is_structurally_zero())
    throw DomainError("magnitude is not homogeneous of the requested degree");
  std::map<std::vector<int>, Expr> comps;
  for (const auto& [mono, c] : m.terms()) {
    std::vector<int> tuple = monomial_to_tuple(mono);
    comps.emplace(tuple, c / Expr::integer(symmetric_multiplicity(tuple)));
  }
  return SymCoTensor(m.chart(), degree, std::move(comps));
}

SymCoTensor symmetric_product(const SymCoTensor& a, const SymCoTensor& b) {
  require_same_chart(a.chart(), b.chart(), "symmetric tensor product");
  ClassicalMagnitude product = multiply(magnitude_of(a), magnitude_of(b));
  return tensor_of(product, a.degree() + b.degree());
}

VerticalOperator::VerticalOperator(Chart chart, int degree,
                                   std::map<std::vector<int>, Expr> raised)
    : chart_(std::move(chart)), degree_(degree) {
  for (auto& [tuple, c] : raised) {
    if (static_cast<int>(tuple.size()) != degree_)
      throw DomainError("vertical operator tuple length does not match degree");
    if (!std::is_sorted(tuple.begin(), tuple.end()))
      throw DomainError("vertical operator tuples must be sorted");
    Expr s = simplify(c);
    if (!s.is_zero()) raised_.emplace(tuple, std::move(s));
  }
}

Expr VerticalOperator::global_factor() const {
  // (-i hbar)^degree
  Expr base = product_of({Expr::integer(-1), imaginary_unit(), hbar()});
  return pow(base, degree_);
}

Expr VerticalOperator::apply_at_zero(const FiberPoly& p) const {
  // sum over full index tuples of a~ * d^tuple p |_{v=0}; equivalently over
  // sorted tuples with the symmetrization multiplicity. The derivative of a
  // monomial at zero picks its coefficient times the exponent factorials.
  Expr acc = Expr::integer(0);
  for (const auto& [tuple, c] : raised_) {
    Monomial mono = tuple_to_monomial(tuple, chart_.dim());
    Expr coeff = p.coefficient(mono);
    if (coeff.is_zero()) continue;
    long long fact = 1;
    for (int e : mono)
      for (int k = 2; k <= e; ++k) fact *= k;
    acc = acc + Expr::integer(symmetric_multiplicity(tuple) * fact) * c * coeff;
  }
  return simplify(global_factor() * acc);
}

VerticalOperator vertical_operator(const SymCoTensor& a, const Metric& g) {
  require_same_chart(a.chart(), g.chart(), "vertical_operator");
  return VerticalOperator(a.chart(), a.degree(), raise_indices(a, g));
}

DiffOperator quantize(const SymCoTensor& a, const Metric& g, const CancelToken* cancel) {
  require_same_chart(a.chart(), g.chart(), "quantize");
  const Chart& chart = a.chart();
  int m = a.degree();
  if (m > 6) throw DomainError("quantize supports tensors of degree at most 6");
  if (m == 0)
    return DiffOperator::multiplication(chart, a.at({}));

  JetMap jet = geodesic_jet(g, std::max(2, m), cancel);
  JetPullback pb = pullback(jet, m);
  VerticalOperator vertical = vertical_operator(a, g);
  Expr applied = vertical.apply_at_zero(pb.poly());

  // `applied` is linear in the abstract derivative symbols f_alpha; the
  // coefficient of f_alpha is the operator coefficient at multi-index alpha.
  const DerivFamily& fam = JetPullback::family();
  std::map<MultiIndex, Expr> coeffs;
  int n = chart.dim();
  std::vector<int> alpha(n, 0);
  while (true) {
    throw_if_cancelled(cancel);
    int total = 0;
    for (int e : alpha) total += e;
    std::vector<int> tuple;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < alpha[j]; ++k) tuple.push_back(j + 1);
    Expr c = differentiate(applied, fam.symbol(tuple));
    if (!c.is_zero()) coeffs.emplace(alpha, c);
    int j = n - 1;
    while (j >= 0) {
      if (total < m) {
        ++alpha[j];
        break;
      }
      total -= alpha[j];
      alpha[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return DiffOperator(chart, std::move(coeffs));
}

namespace {

/// Differentiate every coefficient with respect to base coordinate j.
FiberPoly base_derivative(const FiberPoly& p, int j, const DerivativeTable& table) {
  std::map<Monomial, Expr> out;
  for (const auto& [m, c] : p.terms()) {
    Expr d = differentiate(c, p.chart().coordinate(j), table);
    if (!d.is_zero()) out.emplace(m, d);
  }
  return FiberPoly(p.chart(), std::move(out));
}

}  // namespace

ClassicalMagnitude poisson_bracket(const ClassicalMagnitude& a, const ClassicalMagnitude& b,
                                   const Metric& g, const DerivativeTable& table) {
  require_same_chart(a.chart(), g.chart(), "poisson_bracket");
  require_same_chart(b.chart(), g.chart(), "poisson_bracket");
  const Chart& chart = g.chart();
  int n = chart.dim();
  auto inv = inverse_metric(g);

  // to momentum coordinates: v^j = g^{jk} p_k
  FiberPoly fp = a.compose_linear(inv);
  FiberPoly gp = b.compose_linear(inv);

  FiberPoly bracket(chart);
  for (int j = 0; j < n; ++j) {
    FiberPoly t1 = multiply(fp.fiber_derivative(j), base_derivative(gp, j, table));
    FiberPoly t2 = multiply(base_derivative(fp, j, table), gp.fiber_derivative(j));
    bracket = bracket + (t1 - t2);
  }

  // back to velocities: p_j = g_jk v^k
  return bracket.compose_linear(g.components());
}

DiffOperator quantization_defect_square(const SymCoTensor& a, const Metric& g,
                                        const CancelToken* cancel) {
  if (a.degree() > 3)
    throw DomainError("quantization_defect_square supports tensors of degree at most 3");
  DiffOperator squared = quantize(symmetric_product(a, a), g, cancel);
  DiffOperator hat = quantize(a, g, cancel);
  return squared - compose(hat, hat, cancel);
}

namespace {

struct Replica {
  SymCoTensor tensor;
  std::vector<DerivFamily> families;
};

/// Tensor with the same sparsity pattern but abstract function coefficients,
/// one derivative-symbol family per stored component.
Replica abstract_replica(const SymCoTensor& a, const std::string& prefix) {
  std::map<std::vector<int>, Expr> comps;
  std::vector<DerivFamily> families;
  int ordinal = 0;
  for (const auto& [tuple, value] : a.components()) {
    DerivFamily fam(prefix + std::to_string(ordinal++));
    comps.emplace(tuple, Expr::symbol(fam.base()));
    families.push_back(fam);
  }
  return Replica{SymCoTensor(a.chart(), a.degree(), std::move(comps)), std::move(families)};
}

DerivativeTable combined_table(const std::vector<DerivFamily>& families, const Chart& chart) {
  std::vector<std::string> coords = chart.coordinates();
  DerivativeTable t;
  t.rule = [families, coords](const std::string& name,
                              const std::string& wrt) -> std::optional<Expr> {
    for (const auto& fam : families) {
      if (!fam.matches(name)) continue;
      for (std::size_t j = 0; j < coords.size(); ++j)
        if (coords[j] == wrt)
          return Expr::symbol(fam.differentiated(name, static_cast<int>(j) + 1));
      return std::nullopt;
    }
    return std::nullopt;
  };
  return t;
}

int max_family_order(const DiffOperator& op, const std::vector<DerivFamily>& families) {
  int best = 0;
  for (const auto& [alpha, c] : op.coefficients())
    for (const auto& fam : families) best = std::max(best, fam.max_order_in(c));
  return best;
}

Expr minus_i_hbar() { return product_of({Expr::integer(-1), imaginary_unit(), hbar()}); }

}  // namespace

BracketCommutatorReport bracket_vs_commutator_report(const SymCoTensor& a, const SymCoTensor& b,
                                                     const Metric& g, const CancelToken* cancel) {
  if (a.degree() > 3 || b.degree() > 3)
    throw DomainError("bracket_vs_commutator_report supports degrees at most 3");
  require_same_chart(a.chart(), b.chart(), "bracket_vs_commutator_report");
  const Chart& chart = g.chart();

  // Real defect, probed for vanishing.
  DiffOperator comm = commutator(quantize(a, g, cancel), quantize(b, g, cancel), cancel);
  int bracket_degree = std::max(a.degree() + b.degree() - 1, 0);
  ClassicalMagnitude pb = poisson_bracket(magnitude_of(a), magnitude_of(b), g);
  DiffOperator quantized_bracket = quantize(tensor_of(pb, bracket_degree), g, cancel);
  DiffOperator defect = comm - quantized_bracket.scaled(minus_i_hbar());
  bool zero = probably_zero(defect, chart.probe_domain());

  // Abstract replica reveals the derivative orders applied to coefficients.
  Replica ra = abstract_replica(a, "aT");
  Replica rb = abstract_replica(b, "bT");
  std::vector<DerivFamily> families = ra.families;
  families.insert(families.end(), rb.families.begin(), rb.families.end());
  DerivativeTable table = combined_table(families, chart);
  DiffOperator comm_r = compose(quantize(ra.tensor, g, cancel), quantize(rb.tensor, g, cancel),
                                cancel, nullptr, &table) -
                        compose(quantize(rb.tensor, g, cancel), quantize(ra.tensor, g, cancel),
                                cancel, nullptr, &table);
  ClassicalMagnitude pb_r =
      poisson_bracket(magnitude_of(ra.tensor), magnitude_of(rb.tensor), g, table);
  DiffOperator defect_r =
      comm_r - quantize(tensor_of(pb_r, bracket_degree), g, cancel).scaled(minus_i_hbar());

  BracketCommutatorReport report{std::move(defect), zero, max_family_order(defect_r, families)};
  return report;
}

}  // namespace rq
