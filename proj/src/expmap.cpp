#include "rq/expmap.hpp"

#include <algorithm>
#include <cmath>

namespace rq {

JetMap::JetMap(Chart chart, int order, std::vector<FiberPoly> coordinates)
    : chart_(std::move(chart)), order_(order), coordinates_(std::move(coordinates)) {
  if (static_cast<int>(coordinates_.size()) != chart_.dim())
    throw DomainError("jet needs one polynomial per coordinate");
}

namespace {

/// Truncated power series in the curve parameter t whose coefficients are
/// fiber polynomials. Index = power of t.
using TSeries = std::vector<FiberPoly>;

TSeries zero_series(const Chart& chart, int len) { return TSeries(len, FiberPoly(chart)); }

TSeries series_add(const TSeries& a, const TSeries& b) {
  TSeries out = a;
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (k < out.size())
      out[k] = out[k] + b[k];
    else
      out.push_back(b[k]);
  }
  return out;
}

TSeries series_mul(const TSeries& a, const TSeries& b, int max_t, int max_v) {
  TSeries out = zero_series(a.empty() ? b[0].chart() : a[0].chart(), max_t + 1);
  for (std::size_t p = 0; p < a.size() && static_cast<int>(p) <= max_t; ++p) {
    if (a[p].is_structurally_zero()) continue;
    for (std::size_t q = 0; q < b.size() && static_cast<int>(p + q) <= max_t; ++q) {
      if (b[q].is_structurally_zero()) continue;
      out[p + q] = out[p + q] + multiply(a[p], b[q], max_v);
    }
  }
  return out;
}

TSeries series_scale(const TSeries& a, const Expr& c) {
  TSeries out = a;
  for (auto& p : out) p = p.scaled(c);
  return out;
}

/// d/dt of a series.
TSeries series_derivative(const TSeries& a, const Chart& chart) {
  if (a.size() <= 1) return zero_series(chart, 1);
  TSeries out(a.size() - 1, FiberPoly(chart));
  for (std::size_t k = 1; k < a.size(); ++k)
    out[k - 1] = a[k].scaled(Expr::integer(static_cast<long long>(k)));
  return out;
}

/// Composition F(x + u(t)) for shift series u_j with zero t^0 part:
/// sum over derivative multi-indices alpha of d^alpha F / alpha! * u^alpha.
TSeries taylor_shift_series(const Expr& f, const Chart& chart, const std::vector<TSeries>& shift,
                            int max_t, int max_v, const CancelToken* cancel) {
  int n = chart.dim();
  TSeries out = zero_series(chart, max_t + 1);

  // shift powers u_j^p, built incrementally
  std::vector<std::vector<TSeries>> powers(n);
  for (int j = 0; j < n; ++j) {
    powers[j].push_back(zero_series(chart, 1));
    powers[j][0][0] = FiberPoly::constant(chart, Expr::integer(1));
  }

  // enumerate alpha with |alpha| <= max_t (each u_j has t-valuation >= 1)
  std::vector<int> alpha(n, 0);
  std::map<std::vector<int>, Expr> partials;  // cache of d^alpha f
  partials.emplace(alpha, simplify(f));
  while (true) {
    throw_if_cancelled(cancel);
    int total = 0;
    for (int e : alpha) total += e;

    const Expr& df = partials.at(alpha);
    if (!df.is_zero()) {
      long long fact = 1;
      for (int e : alpha)
        for (int k = 2; k <= e; ++k) fact *= k;
      TSeries term = zero_series(chart, 0);
      term.push_back(FiberPoly(chart));
      term[0] = FiberPoly::constant(chart, df / Expr::integer(fact));
      for (int j = 0; j < n; ++j) {
        if (alpha[j] == 0) continue;
        while (static_cast<int>(powers[j].size()) <= alpha[j])
          powers[j].push_back(
              series_mul(powers[j].back(), shift[j], max_t, max_v));
        term = series_mul(term, powers[j][alpha[j]], max_t, max_v);
      }
      out = series_add(out, term);
    }

    // next alpha in graded enumeration
    int j = n - 1;
    while (j >= 0) {
      if (total < max_t) {
        ++alpha[j];
        break;
      }
      total -= alpha[j];
      alpha[j] = 0;
      --j;
    }
    if (j < 0) break;
    if (!partials.count(alpha)) {
      // differentiate the cached parent d^(alpha - e_j) f once more
      std::vector<int> parent = alpha;
      parent[j] -= 1;
      partials.emplace(alpha, differentiate(partials.at(parent), chart.coordinate(j)));
    }
  }
  while (static_cast<int>(out.size()) <= max_t) out.push_back(FiberPoly(chart));
  return out;
}

}  // namespace

JetMap geodesic_jet(const Metric& g, int order, const CancelToken* cancel) {
  if (order < 2 || order > 6) throw DomainError("jet order must be between 2 and 6");
  const Chart& chart = g.chart();
  int n = chart.dim();
  ChristoffelField gamma = christoffel(g);

  // x^j(t) = x0^j + v^j t + sum_{m>=2} a^j_m t^m with the geodesic equation
  // fixing a_m = -[t^(m-2)](Gamma(x) xdot xdot) / (m (m-1)).
  std::vector<TSeries> x(n);
  for (int j = 0; j < n; ++j) {
    x[j] = zero_series(chart, order + 1);
    x[j][0] = FiberPoly::constant(chart, Expr::symbol(chart.coordinate(j)));
    x[j][1] = FiberPoly::velocity(chart, j);
  }

  for (int m = 2; m <= order; ++m) {
    throw_if_cancelled(cancel);
    int max_t = m - 2;
    std::vector<TSeries> shift(n);
    for (int j = 0; j < n; ++j) {
      shift[j] = x[j];
      shift[j][0] = FiberPoly(chart);  // drop the base point
    }
    std::vector<TSeries> xdot(n);
    for (int j = 0; j < n; ++j) xdot[j] = series_derivative(x[j], chart);

    for (int j = 0; j < n; ++j) {
      TSeries rhs = zero_series(chart, max_t + 1);
      for (int r = 0; r < n; ++r) {
        for (int s = r; s < n; ++s) {
          const Expr& G = gamma.at(j, r, s);
          if (G.is_zero()) continue;
          TSeries composed = taylor_shift_series(G, chart, shift, max_t, order, cancel);
          TSeries prod = series_mul(composed, series_mul(xdot[r], xdot[s], max_t, order),
                                    max_t, order);
          if (s != r) prod = series_scale(prod, Expr::integer(2));
          rhs = series_add(rhs, prod);
        }
      }
      Expr scale = Expr::integer(-1) / Expr::integer(static_cast<long long>(m) * (m - 1));
      x[j][m] = rhs[max_t].scaled(scale);
    }
  }

  std::vector<FiberPoly> coords;
  coords.reserve(n);
  for (int j = 0; j < n; ++j) {
    FiberPoly acc(chart);
    for (int t = 0; t <= order; ++t) acc = acc + x[j][t];
    coords.push_back(acc.truncated(order));
  }
  return JetMap(chart, order, std::move(coords));
}

JetPullback::JetPullback(Chart chart, int order, FiberPoly poly)
    : chart_(std::move(chart)), order_(order), poly_(std::move(poly)) {}

const DerivFamily& JetPullback::family() {
  static const DerivFamily f("f");
  return f;
}

FiberPoly taylor_shift(const Expr& f, const Chart& chart, const std::vector<FiberPoly>& shift,
                       int max_degree, const DerivativeTable& table) {
  int n = chart.dim();
  FiberPoly out(chart);
  std::vector<std::vector<FiberPoly>> powers(n);
  for (int j = 0; j < n; ++j) powers[j].push_back(FiberPoly::constant(chart, Expr::integer(1)));

  std::vector<int> alpha(n, 0);
  std::map<std::vector<int>, Expr> partials;
  partials.emplace(alpha, simplify(f));
  while (true) {
    int total = 0;
    for (int e : alpha) total += e;
    const Expr& df = partials.at(alpha);
    if (!df.is_zero()) {
      long long fact = 1;
      for (int e : alpha)
        for (int k = 2; k <= e; ++k) fact *= k;
      FiberPoly term = FiberPoly::constant(chart, df / Expr::integer(fact));
      for (int j = 0; j < n; ++j) {
        if (alpha[j] == 0) continue;
        while (static_cast<int>(powers[j].size()) <= alpha[j])
          powers[j].push_back(multiply(powers[j].back(), shift[j], max_degree));
        term = multiply(term, powers[j][alpha[j]], max_degree);
      }
      out = out + term;
    }
    int j = n - 1;
    while (j >= 0) {
      if (total < max_degree) {
        ++alpha[j];
        break;
      }
      total -= alpha[j];
      alpha[j] = 0;
      --j;
    }
    if (j < 0) break;
    if (!partials.count(alpha)) {
      std::vector<int> parent = alpha;
      parent[j] -= 1;
      partials.emplace(alpha, differentiate(partials.at(parent), chart.coordinate(j), table));
    }
  }
  return out;
}

JetPullback pullback(const JetMap& jet, int order) {
  if (order > jet.order()) throw DomainError("pullback order exceeds jet order");
  if (order < 0) throw DomainError("pullback order must be nonnegative");
  const Chart& chart = jet.chart();
  int n = chart.dim();
  const DerivFamily& fam = JetPullback::family();

  // shift_j = jet_j - x^j: the fiber-positive part of the jet
  std::vector<FiberPoly> shift;
  shift.reserve(n);
  for (int j = 0; j < n; ++j) {
    FiberPoly p = jet.coordinate(j);
    std::map<Monomial, Expr> t;
    for (const auto& [m, c] : p.terms()) {
      int total = 0;
      for (int e : m) total += e;
      if (total >= 1 && total <= order) t.emplace(m, c);
    }
    shift.push_back(FiberPoly(chart, std::move(t)));
  }

  // sum over alpha of f_alpha / alpha! * shift^alpha
  FiberPoly out(chart);
  std::vector<std::vector<FiberPoly>> powers(n);
  for (int j = 0; j < n; ++j) powers[j].push_back(FiberPoly::constant(chart, Expr::integer(1)));
  std::vector<int> alpha(n, 0);
  while (true) {
    int total = 0;
    for (int e : alpha) total += e;
    long long fact = 1;
    for (int e : alpha)
      for (int k = 2; k <= e; ++k) fact *= k;
    std::vector<int> tuple;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < alpha[j]; ++k) tuple.push_back(j + 1);
    Expr fsym = Expr::symbol(fam.symbol(tuple));
    FiberPoly term = FiberPoly::constant(chart, fsym / Expr::integer(fact));
    for (int j = 0; j < n; ++j) {
      if (alpha[j] == 0) continue;
      while (static_cast<int>(powers[j].size()) <= alpha[j])
        powers[j].push_back(multiply(powers[j].back(), shift[j], order));
      term = multiply(term, powers[j][alpha[j]], order);
    }
    out = out + term;
    int j = n - 1;
    while (j >= 0) {
      if (total < order) {
        ++alpha[j];
        break;
      }
      total -= alpha[j];
      alpha[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return JetPullback(chart, order, out.truncated(order));
}

namespace {

struct GeodesicOde {
  const Chart& chart;
  std::vector<std::vector<std::vector<Expr>>> gamma;  // evaluated lazily

  explicit GeodesicOde(const Metric& g) : chart(g.chart()) {
    ChristoffelField field = christoffel(g);
    int n = chart.dim();
    gamma.assign(n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n)));
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) gamma[j][r][s] = field.at(j, r, s);
  }

  /// state = (x, xdot); returns (xdot, -Gamma xdot xdot)
  std::vector<double> operator()(const std::vector<double>& state) const {
    int n = chart.dim();
    std::map<std::string, Complex> assignment;
    for (int j = 0; j < n; ++j) assignment[chart.coordinate(j)] = Complex(state[j], 0.0);
    std::vector<double> out(2 * n);
    for (int j = 0; j < n; ++j) out[j] = state[n + j];
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
          if (gamma[j][r][s].is_zero()) continue;
          Complex gv = evaluate(gamma[j][r][s], assignment);
          acc -= gv.real() * state[n + r] * state[n + s];
        }
      }
      out[n + j] = acc;
    }
    return out;
  }
};

}  // namespace

std::vector<double> exp_numeric(const Metric& g, const std::vector<double>& x0,
                                const std::vector<double>& v) {
  const Chart& chart = g.chart();
  int n = chart.dim();
  if (static_cast<int>(x0.size()) != n || static_cast<int>(v.size()) != n)
    throw DomainError("exp_numeric: point/velocity dimension mismatch");
  GeodesicOde ode(g);

  std::vector<double> state(2 * n);
  for (int j = 0; j < n; ++j) {
    state[j] = x0[j];
    state[n + j] = v[j];
  }
  const int steps = 1024;
  const double h = 1.0 / steps;
  auto axpy = [n](const std::vector<double>& base, double c, const std::vector<double>& d) {
    std::vector<double> out(2 * n);
    for (int k = 0; k < 2 * n; ++k) out[k] = base[k] + c * d[k];
    return out;
  };
  for (int step = 0; step < steps; ++step) {
    std::vector<double> k1 = ode(state);
    std::vector<double> k2 = ode(axpy(state, h / 2, k1));
    std::vector<double> k3 = ode(axpy(state, h / 2, k2));
    std::vector<double> k4 = ode(axpy(state, h, k3));
    for (int k = 0; k < 2 * n; ++k)
      state[k] += h / 6 * (k1[k] + 2 * k2[k] + 2 * k3[k] + k4[k]);
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(state[j])) throw NumericError("geodesic integration diverged");
      const Interval& iv = chart.interval(j);
      if (state[j] < iv.lo || state[j] > iv.hi)
        throw NumericError("geodesic left the probe domain in coordinate '" +
                           chart.coordinate(j) + "'");
    }
  }
  return std::vector<double>(state.begin(), state.begin() + n);
}

std::vector<double> evaluate_jet(const JetMap& jet, const std::vector<double>& x0,
                                 const std::vector<double>& v) {
  const Chart& chart = jet.chart();
  int n = chart.dim();
  if (static_cast<int>(x0.size()) != n || static_cast<int>(v.size()) != n)
    throw DomainError("evaluate_jet: point/velocity dimension mismatch");
  std::map<std::string, Complex> assignment;
  for (int j = 0; j < n; ++j) {
    assignment[chart.coordinate(j)] = Complex(x0[j], 0.0);
    assignment[chart.velocity(j)] = Complex(v[j], 0.0);
  }
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) {
    Complex value = evaluate(jet.coordinate(j).to_expr(), assignment);
    out[j] = value.real();
  }
  return out;
}

}  // namespace rq
