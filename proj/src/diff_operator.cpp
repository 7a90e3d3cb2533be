#include "rq/diff_operator.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rq {

int multi_index_order(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

std::string multi_index_label(const MultiIndex& a, const Chart& chart) {
  if (multi_index_order(a) == 0) return "1";
  std::string out = "d[";
  bool first = true;
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (int k = 0; k < a[j]; ++k) {
      if (!first) out += ",";
      out += chart.coordinate(static_cast<int>(j));
      first = false;
    }
  }
  out += "]";
  return out;
}

DiffOperator::DiffOperator(Chart chart) : chart_(std::move(chart)) {}

DiffOperator::DiffOperator(Chart chart, std::map<MultiIndex, Expr> coefficients)
    : chart_(std::move(chart)) {
  for (auto& [alpha, c] : coefficients) {
    if (static_cast<int>(alpha.size()) != chart_.dim())
      throw DomainError("multi-index length does not match chart dimension");
    Expr s = simplify(c);
    if (!s.is_zero()) coeffs_.emplace(alpha, std::move(s));
  }
}

DiffOperator DiffOperator::identity(const Chart& chart) {
  return multiplication(chart, Expr::integer(1));
}

DiffOperator DiffOperator::multiplication(const Chart& chart, const Expr& factor) {
  std::map<MultiIndex, Expr> c;
  c.emplace(MultiIndex(chart.dim(), 0), factor);
  return DiffOperator(chart, std::move(c));
}

DiffOperator DiffOperator::first_order(const Chart& chart, int j, const Expr& coefficient) {
  MultiIndex alpha(chart.dim(), 0);
  alpha.at(j) = 1;
  std::map<MultiIndex, Expr> c;
  c.emplace(std::move(alpha), coefficient);
  return DiffOperator(chart, std::move(c));
}

Expr DiffOperator::coefficient(const MultiIndex& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? Expr::integer(0) : it->second;
}

int DiffOperator::order() const {
  int best = 0;
  for (const auto& [alpha, c] : coeffs_) best = std::max(best, multi_index_order(alpha));
  return best;
}

DiffOperator DiffOperator::scaled(const Expr& factor) const {
  std::map<MultiIndex, Expr> out;
  for (const auto& [alpha, c] : coeffs_) out.emplace(alpha, factor * c);
  return DiffOperator(chart_, std::move(out));
}

DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
  require_same_chart(a.chart_, b.chart_, "operator addition");
  std::map<MultiIndex, Expr> out = a.coeffs_;
  for (const auto& [alpha, c] : b.coeffs_) {
    auto it = out.find(alpha);
    if (it == out.end())
      out.emplace(alpha, c);
    else
      it->second = it->second + c;
  }
  return DiffOperator(a.chart_, std::move(out));
}

DiffOperator operator-(const DiffOperator& a, const DiffOperator& b) {
  return a + b.scaled(Expr::integer(-1));
}

namespace {

/// Iterates gamma over the box 0 <= gamma <= alpha (componentwise).
bool next_sub_index(MultiIndex& gamma, const MultiIndex& alpha) {
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    if (gamma[j] < alpha[j]) {
      ++gamma[j];
      return true;
    }
    gamma[j] = 0;
  }
  return false;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - j + 1) / j;
  return r;
}

Expr iterated_derivative(const Expr& e, const MultiIndex& delta, const Chart& chart,
                         const DerivativeTable* table) {
  static const DerivativeTable empty{};
  const DerivativeTable& t = table != nullptr ? *table : empty;
  Expr out = e;
  for (std::size_t j = 0; j < delta.size(); ++j)
    for (int k = 0; k < delta[j]; ++k)
      out = differentiate(out, chart.coordinate(static_cast<int>(j)), t);
  return out;
}

}  // namespace

DiffOperator compose(const DiffOperator& a, const DiffOperator& b, const CancelToken* cancel,
                     int* max_coeff_derivative_order, const DerivativeTable* table) {
  require_same_chart(a.chart(), b.chart(), "operator composition");
  const Chart& chart = a.chart();
  std::map<MultiIndex, Expr> out;
  int deepest = 0;
  for (const auto& [alpha, ca] : a.coefficients()) {
    for (const auto& [beta, cb] : b.coefficients()) {
      MultiIndex gamma(alpha.size(), 0);
      do {
        throw_if_cancelled(cancel);
        // ca * binom(alpha, gamma) * d^(alpha-gamma) cb at index gamma+beta
        long long mult = 1;
        MultiIndex delta(alpha.size(), 0);
        MultiIndex target = beta;
        for (std::size_t j = 0; j < alpha.size(); ++j) {
          mult *= binomial(alpha[j], gamma[j]);
          delta[j] = alpha[j] - gamma[j];
          target[j] += gamma[j];
        }
        Expr dcb = iterated_derivative(cb, delta, chart, table);
        Expr term = simplify(Expr::integer(mult) * ca * dcb);
        if (!term.is_zero()) {
          deepest = std::max(deepest, multi_index_order(delta));
          auto it = out.find(target);
          if (it == out.end())
            out.emplace(std::move(target), term);
          else
            it->second = it->second + term;
        }
      } while (next_sub_index(gamma, alpha));
    }
  }
  if (max_coeff_derivative_order != nullptr) *max_coeff_derivative_order = deepest;
  return DiffOperator(chart, std::move(out));
}

DiffOperator commutator(const DiffOperator& a, const DiffOperator& b, const CancelToken* cancel) {
  return compose(a, b, cancel) - compose(b, a, cancel);
}

bool probably_equal(const DiffOperator& a, const DiffOperator& b, const ProbeDomain& domain,
                    const ProbeOptions& options) {
  require_same_chart(a.chart(), b.chart(), "operator comparison");
  std::set<MultiIndex> indices;
  for (const auto& [alpha, c] : a.coefficients()) indices.insert(alpha);
  for (const auto& [alpha, c] : b.coefficients()) indices.insert(alpha);
  for (const auto& alpha : indices)
    if (!probably_equal(a.coefficient(alpha), b.coefficient(alpha), domain, options)) return false;
  return true;
}

bool probably_zero(const DiffOperator& op, const ProbeDomain& domain,
                   const ProbeOptions& options) {
  for (const auto& [alpha, c] : op.coefficients())
    if (!probably_zero(c, domain, options)) return false;
  return true;
}

std::string to_string(const DiffOperator& op) {
  // Rows sorted by (order, index) for stable reports.
  std::vector<std::pair<MultiIndex, Expr>> rows(op.coefficients().begin(),
                                                op.coefficients().end());
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    int ox = multi_index_order(x.first), oy = multi_index_order(y.first);
    if (ox != oy) return ox < oy;
    return x.first < y.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [alpha, c] : rows) {
    if (!first) os << "\n";
    os << multi_index_label(alpha, op.chart()) << ": " << to_string(c);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace rq
