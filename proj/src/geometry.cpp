#include "rq/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>

namespace rq {

namespace {

void check_square(const std::vector<std::vector<Expr>>& m, int n) {
  if (static_cast<int>(m.size()) != n) throw DomainError("metric matrix has wrong row count");
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n) throw DomainError("metric matrix is not square");
}

}  // namespace

Metric::Metric(Chart chart, std::vector<std::vector<Expr>> components)
    : chart_(std::move(chart)) {
  int n = chart_.dim();
  check_square(components, n);
  components_.resize(n);
  for (int i = 0; i < n; ++i) {
    components_[i].resize(n);
    for (int j = 0; j < n; ++j) components_[i][j] = simplify(components[i][j]);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (components_[i][j] != components_[j][i])
        throw DomainError("metric is not structurally symmetric at (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
  // Nondegeneracy: det g must stay away from zero on the probe domain.
  Expr det = determinant(components_);
  ProbeDomain domain = chart_.probe_domain();
  if (probably_zero(det, domain))
    throw DomainError("metric is degenerate: det g vanishes on the probe domain");
  ProbeRng rng(domain.seed());
  EvalOptions options;
  for (int point = 0; point < 25; ++point) {
    std::map<std::string, Complex> assignment;
    for (int j = 0; j < n; ++j)
      assignment[chart_.coordinate(j)] = Complex(rng.uniform(chart_.interval(j)), 0.0);
    Complex v = evaluate(det, assignment, options);
    if (std::abs(v) <= 1e-9) throw DomainError("metric is degenerate at a probe point");
  }
}

Expr determinant(const std::vector<std::vector<Expr>>& m) {
  int n = static_cast<int>(m.size());
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Expr det = Expr::integer(0);
  for (int k = 0; k < n; ++k) {
    std::vector<std::vector<Expr>> minor;
    minor.reserve(n - 1);
    for (int r = 1; r < n; ++r) {
      std::vector<Expr> row;
      row.reserve(n - 1);
      for (int c = 0; c < n; ++c)
        if (c != k) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Expr term = m[0][k] * determinant(minor);
    det = (k % 2 == 0) ? det + term : det - term;
  }
  return det;
}

std::vector<std::vector<Expr>> inverse_metric(const Metric& g) {
  int n = g.chart().dim();
  const auto& m = g.components();
  Expr det = simplify(determinant(m));
  std::vector<std::vector<Expr>> inv(n, std::vector<Expr>(n));
  if (n == 1) {
    inv[0][0] = simplify(Expr::integer(1) / det);
    return inv;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // adjugate: cofactor C_ji (transposed)
      std::vector<std::vector<Expr>> minor;
      minor.reserve(n - 1);
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<Expr> row;
        row.reserve(n - 1);
        for (int c = 0; c < n; ++c)
          if (c != i) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      Expr cof = determinant(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      inv[i][j] = simplify(cof / det);
    }
  }
  return inv;
}

ChristoffelField::ChristoffelField(Chart chart,
                                   std::vector<std::vector<std::vector<Expr>>> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  int n = chart_.dim();
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < n; ++r)
      for (int s = r + 1; s < n; ++s)
        if (components_.at(j).at(r).at(s) != components_.at(j).at(s).at(r))
          throw DomainError("Christoffel symbols are not symmetric in the lower indices");
}

ChristoffelField christoffel(const Metric& g) {
  const Chart& chart = g.chart();
  int n = chart.dim();
  auto inv = inverse_metric(g);
  std::vector<std::vector<std::vector<Expr>>> gamma(
      n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n)));
  // Gamma^j_{rs} = 1/2 g^{jm} (d_r g_{ms} + d_s g_{mr} - d_m g_{rs})
  for (int j = 0; j < n; ++j) {
    for (int r = 0; r < n; ++r) {
      for (int s = r; s < n; ++s) {
        Expr acc = Expr::integer(0);
        for (int m = 0; m < n; ++m) {
          Expr bracket = differentiate(g.at(m, s), chart.coordinate(r)) +
                         differentiate(g.at(m, r), chart.coordinate(s)) -
                         differentiate(g.at(r, s), chart.coordinate(m));
          acc = acc + inv[j][m] * bracket;
        }
        Expr value = simplify(Expr::number(Rational(1, 2)) * acc);
        gamma[j][r][s] = value;
        gamma[j][s][r] = value;
      }
    }
  }
  return ChristoffelField(chart, std::move(gamma));
}

SymCoTensor::SymCoTensor(Chart chart, int degree, std::map<std::vector<int>, Expr> components)
    : chart_(std::move(chart)), degree_(degree) {
  if (degree_ < 0) throw DomainError("tensor degree must be nonnegative");
  for (auto& [idx, value] : components) {
    if (static_cast<int>(idx.size()) != degree_)
      throw DomainError("tensor index tuple length does not match degree");
    if (!std::is_sorted(idx.begin(), idx.end()))
      throw DomainError("tensor component indices must be sorted");
    for (int k : idx)
      if (k < 0 || k >= chart_.dim()) throw DomainError("tensor index out of range");
    Expr s = simplify(value);
    if (!s.is_zero()) components_.emplace(idx, std::move(s));
  }
}

SymCoTensor SymCoTensor::function(const Chart& chart, const Expr& value) {
  std::map<std::vector<int>, Expr> c;
  c.emplace(std::vector<int>{}, value);
  return SymCoTensor(chart, 0, std::move(c));
}

SymCoTensor SymCoTensor::dx(const Chart& chart, int j) {
  std::map<std::vector<int>, Expr> c;
  c.emplace(std::vector<int>{j}, Expr::integer(1));
  return SymCoTensor(chart, 1, std::move(c));
}

SymCoTensor SymCoTensor::metric_tensor(const Metric& g) {
  std::map<std::vector<int>, Expr> c;
  int n = g.chart().dim();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) c.emplace(std::vector<int>{i, j}, g.at(i, j));
  return SymCoTensor(g.chart(), 2, std::move(c));
}

SymCoTensor SymCoTensor::momentum(const Metric& g, int j) {
  std::map<std::vector<int>, Expr> c;
  for (int l = 0; l < g.chart().dim(); ++l) c.emplace(std::vector<int>{l}, g.at(j, l));
  return SymCoTensor(g.chart(), 1, std::move(c));
}

Expr SymCoTensor::at(std::vector<int> indices) const {
  std::sort(indices.begin(), indices.end());
  auto it = components_.find(indices);
  return it == components_.end() ? Expr::integer(0) : it->second;
}

SymCoTensor SymCoTensor::scaled(const Expr& factor) const {
  std::map<std::vector<int>, Expr> out;
  for (const auto& [idx, value] : components_) out.emplace(idx, factor * value);
  return SymCoTensor(chart_, degree_, std::move(out));
}

SymCoTensor operator+(const SymCoTensor& a, const SymCoTensor& b) {
  require_same_chart(a.chart(), b.chart(), "tensor addition");
  if (a.degree() != b.degree()) throw DomainError("tensor degrees differ in addition");
  std::map<std::vector<int>, Expr> out = a.components_;
  for (const auto& [idx, value] : b.components_) {
    auto it = out.find(idx);
    if (it == out.end())
      out.emplace(idx, value);
    else
      it->second = it->second + value;
  }
  return SymCoTensor(a.chart_, a.degree_, std::move(out));
}

long long symmetric_multiplicity(const std::vector<int>& sorted_tuple) {
  long long fact = 1;
  for (std::size_t k = 2; k <= sorted_tuple.size(); ++k) fact *= static_cast<long long>(k);
  long long run = 1;
  for (std::size_t k = 1; k <= sorted_tuple.size(); ++k) {
    if (k < sorted_tuple.size() && sorted_tuple[k] == sorted_tuple[k - 1]) {
      ++run;
      continue;
    }
    for (long long j = 2; j <= run; ++j) fact /= j;
    run = 1;
  }
  return fact;
}

namespace {

/// Enumerates all sorted tuples of length m over {0..n-1}.
void sorted_tuples(int n, int m, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(m, 0);
  if (m == 0) {
    out.push_back(cur);
    return;
  }
  while (true) {
    out.push_back(cur);
    int k = m - 1;
    while (k >= 0 && cur[k] == n - 1) --k;
    if (k < 0) return;
    int v = cur[k] + 1;
    for (int j = k; j < m; ++j) cur[j] = v;
  }
}

/// Enumerates all tuples of length m over {0..n-1} (n^m of them).
bool next_tuple(std::vector<int>& t, int n) {
  for (int j = static_cast<int>(t.size()) - 1; j >= 0; --j) {
    if (t[j] + 1 < n) {
      ++t[j];
      return true;
    }
    t[j] = 0;
  }
  return false;
}

}  // namespace

std::map<std::vector<int>, Expr> raise_indices(const SymCoTensor& a, const Metric& g) {
  require_same_chart(a.chart(), g.chart(), "raise_indices");
  int n = g.chart().dim();
  int m = a.degree();
  auto inv = inverse_metric(g);
  std::map<std::vector<int>, Expr> out;
  if (m == 0) {
    for (const auto& [idx, value] : a.components()) out.emplace(idx, value);
    return out;
  }
  std::vector<std::vector<int>> keys;
  sorted_tuples(n, m, keys);
  for (const auto& key : keys) {
    Expr acc = Expr::integer(0);
    std::vector<int> src(m, 0);
    do {
      Expr factor = a.at(src);
      if (factor.is_zero()) continue;
      for (int k = 0; k < m; ++k) factor = factor * inv[key[k]][src[k]];
      acc = acc + factor;
    } while (next_tuple(src, n));
    acc = simplify(acc);
    if (!acc.is_zero()) out.emplace(key, acc);
  }
  return out;
}

std::map<std::vector<int>, Expr> lower_indices(const std::map<std::vector<int>, Expr>& up,
                                               int degree, const Metric& g) {
  int n = g.chart().dim();
  auto component = [&](std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    auto it = up.find(idx);
    return it == up.end() ? Expr::integer(0) : it->second;
  };
  std::map<std::vector<int>, Expr> out;
  if (degree == 0) return up;
  std::vector<std::vector<int>> keys;
  sorted_tuples(n, degree, keys);
  for (const auto& key : keys) {
    Expr acc = Expr::integer(0);
    std::vector<int> src(degree, 0);
    do {
      Expr factor = component(src);
      if (factor.is_zero()) continue;
      for (int k = 0; k < degree; ++k) factor = factor * g.at(key[k], src[k]);
      acc = acc + factor;
    } while (next_tuple(src, n));
    acc = simplify(acc);
    if (!acc.is_zero()) out.emplace(key, acc);
  }
  return out;
}

VectorField::VectorField(Chart chart, std::vector<Expr> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (static_cast<int>(components_.size()) != chart_.dim())
    throw DomainError("vector field needs one component per coordinate");
  for (auto& c : components_) c = simplify(c);
}

DiffOperator laplace_beltrami(const Metric& g) {
  const Chart& chart = g.chart();
  int n = chart.dim();
  Expr det = simplify(determinant(g.components()));

  // The oracle needs a definite metric on the probe domain; check numerically.
  ProbeDomain domain = chart.probe_domain();
  ProbeRng rng(domain.seed());
  int det_sign = 0;
  for (int point = 0; point < 25; ++point) {
    std::map<std::string, Complex> assignment;
    for (int j = 0; j < n; ++j)
      assignment[chart.coordinate(j)] = Complex(rng.uniform(chart.interval(j)), 0.0);
    Eigen::MatrixXd mat(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) mat(r, c) = evaluate(g.at(r, c), assignment).real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat, Eigen::EigenvaluesOnly);
    bool pos = (es.eigenvalues().array() > 0).all();
    bool neg = (es.eigenvalues().array() < 0).all();
    if (!pos && !neg)
      throw NumericError("laplace_beltrami oracle refuses an indefinite metric");
    int s = evaluate(det, assignment).real() > 0 ? 1 : -1;
    if (det_sign == 0) det_sign = s;
    if (det_sign != s) throw NumericError("determinant changes sign on the probe domain");
  }

  Expr abs_det = det_sign > 0 ? det : -det;
  Expr sqrt_det = apply(FuncKind::Sqrt, abs_det);
  auto inv = inverse_metric(g);

  std::map<MultiIndex, Expr> coeffs;
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      MultiIndex alpha(n, 0);
      alpha[k] += 1;
      alpha[l] += 1;
      auto it = coeffs.find(alpha);
      if (it == coeffs.end())
        coeffs.emplace(alpha, inv[k][l]);
      else
        it->second = it->second + inv[k][l];
    }
  }
  for (int j = 0; j < n; ++j) {
    Expr acc = Expr::integer(0);
    for (int k = 0; k < n; ++k)
      acc = acc + differentiate(sqrt_det * inv[k][j], chart.coordinate(k));
    MultiIndex alpha(n, 0);
    alpha[j] = 1;
    Expr c = simplify(acc / sqrt_det);
    auto it = coeffs.find(alpha);
    if (it == coeffs.end())
      coeffs.emplace(alpha, c);
    else
      it->second = it->second + c;
  }
  return DiffOperator(chart, std::move(coeffs));
}

}  // namespace rq
