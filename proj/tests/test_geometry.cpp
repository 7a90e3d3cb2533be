#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rq/geometry.hpp"

using namespace rq;

namespace {

Chart polar_chart() { return Chart({"r", "phi"}, {{0.5, 3.0}, {0.1, 6.0}}); }
Chart sphere_chart() { return Chart({"theta", "phi"}, {{0.3, 2.8}, {0.1, 6.0}}); }
Chart flat_chart() { return Chart({"x", "y"}, {{-2.0, 2.0}, {-2.0, 2.0}}); }

Metric polar_metric() {
  Chart c = polar_chart();
  Expr r = Expr::symbol("r");
  return Metric(c, {{Expr::integer(1), Expr::integer(0)}, {Expr::integer(0), pow(r, 2)}});
}

Metric sphere_metric() {
  Chart c = sphere_chart();
  Expr st = apply(FuncKind::Sin, Expr::symbol("theta"));
  return Metric(c, {{Expr::integer(1), Expr::integer(0)}, {Expr::integer(0), pow(st, 2)}});
}

Metric flat_metric() {
  Chart c = flat_chart();
  return Metric(c, {{Expr::integer(1), Expr::integer(0)}, {Expr::integer(0), Expr::integer(1)}});
}

}  // namespace

TEST_CASE("metric validation") {
  Chart c = flat_chart();
  Expr x = Expr::symbol("x");
  // asymmetric
  CHECK_THROWS_AS(Metric(c, {{Expr::integer(1), x}, {Expr::integer(0), Expr::integer(1)}}),
                  DomainError);
  // degenerate (det = 0 identically)
  CHECK_THROWS_AS(Metric(c, {{Expr::integer(1), Expr::integer(1)},
                             {Expr::integer(1), Expr::integer(1)}}),
                  DomainError);
  // indefinite metrics are allowed symbolically
  CHECK_NOTHROW(Metric(c, {{Expr::integer(1), Expr::integer(0)},
                           {Expr::integer(0), Expr::integer(-1)}}));
}

TEST_CASE("inverse_metric: frozen 2x2 adjugates") {
  // Euclidean: identity
  auto inv_flat = inverse_metric(flat_metric());
  CHECK(inv_flat[0][0] == Expr::integer(1));
  CHECK(inv_flat[0][1].is_zero());
  CHECK(inv_flat[1][1] == Expr::integer(1));

  // polar: diag(1, 1/r^2)
  auto inv_polar = inverse_metric(polar_metric());
  CHECK(inv_polar[0][0] == Expr::integer(1));
  CHECK(inv_polar[1][1] == pow(Expr::symbol("r"), -2));
  CHECK(inv_polar[0][1].is_zero());

  // sphere: diag(1, 1/sin^2 theta)
  auto inv_sphere = inverse_metric(sphere_metric());
  CHECK(inv_sphere[0][0] == Expr::integer(1));
  CHECK(inv_sphere[1][1] == pow(apply(FuncKind::Sin, Expr::symbol("theta")), -2));
}

TEST_CASE("inverse_metric: g * g^-1 probes to the identity") {
  for (const Metric& g : {polar_metric(), sphere_metric()}) {
    auto inv = inverse_metric(g);
    ProbeDomain d = g.chart().probe_domain();
    int n = g.chart().dim();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Expr acc = Expr::integer(0);
        for (int k = 0; k < n; ++k) acc = acc + g.at(i, k) * inv[k][j];
        CHECK(probably_equal(acc, i == j ? Expr::integer(1) : Expr::integer(0), d));
      }
    }
  }
}

TEST_CASE("inverse_metric: non-diagonal entries") {
  Chart c = flat_chart();
  Expr x = Expr::symbol("x");
  // g = [[1, x],[x, 1+x^2]], det = 1
  Metric g(c, {{Expr::integer(1), x}, {x, Expr::integer(1) + pow(x, 2)}});
  auto inv = inverse_metric(g);
  ProbeDomain d = c.probe_domain();
  CHECK(probably_equal(inv[0][0], Expr::integer(1) + pow(x, 2), d));
  CHECK(probably_equal(inv[0][1], -x, d));
  CHECK(probably_equal(inv[1][1], Expr::integer(1), d));
}

TEST_CASE("christoffel: frozen values") {
  // Euclidean: all zero
  ChristoffelField flat = christoffel(flat_metric());
  for (int j = 0; j < 2; ++j)
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) CHECK(flat.at(j, r, s).is_zero());

  // polar: Gamma^r_{phi,phi} = -r, Gamma^phi_{r,phi} = 1/r
  ChristoffelField polar = christoffel(polar_metric());
  Expr r = Expr::symbol("r");
  CHECK(polar.at(0, 1, 1) == -r);
  CHECK(polar.at(1, 0, 1) == pow(r, -1));
  CHECK(polar.at(1, 1, 0) == pow(r, -1));
  CHECK(polar.at(0, 0, 0).is_zero());
  CHECK(polar.at(0, 0, 1).is_zero());
  CHECK(polar.at(1, 0, 0).is_zero());
  CHECK(polar.at(1, 1, 1).is_zero());

  // sphere: Gamma^theta_{phi,phi} = -sin cos, Gamma^phi_{theta,phi} = cos/sin
  ChristoffelField sphere = christoffel(sphere_metric());
  Expr st = apply(FuncKind::Sin, Expr::symbol("theta"));
  Expr ct = apply(FuncKind::Cos, Expr::symbol("theta"));
  ProbeDomain d = sphere_chart().probe_domain();
  CHECK(probably_equal(sphere.at(0, 1, 1), -(st * ct), d));
  CHECK(probably_equal(sphere.at(1, 0, 1), ct / st, d));
  CHECK(sphere.at(0, 0, 0).is_zero());
}

TEST_CASE("christoffel: vanishes for constant metrics of any signature") {
  Chart c = flat_chart();
  Metric g(c, {{Expr::integer(2), Expr::integer(1)}, {Expr::integer(1), Expr::integer(-3)}});
  ChristoffelField gamma = christoffel(g);
  ProbeDomain d = c.probe_domain();
  for (int j = 0; j < 2; ++j)
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) CHECK(probably_zero(gamma.at(j, r, s), d));
}

TEST_CASE("raise_indices: examples") {
  Metric g = polar_metric();
  ProbeDomain d = g.chart().probe_domain();

  // degree 0: unchanged
  SymCoTensor f = SymCoTensor::function(g.chart(), Expr::symbol("r"));
  auto raised0 = raise_indices(f, g);
  CHECK(raised0.at({}) == Expr::symbol("r"));

  // dphi -> (0, 1/r^2)
  SymCoTensor dphi = SymCoTensor::dx(g.chart(), 1);
  auto raised1 = raise_indices(dphi, g);
  CHECK(raised1.count({0}) == 0);
  CHECK(raised1.at({1}) == pow(Expr::symbol("r"), -2));

  // the metric raises to its inverse
  SymCoTensor t2 = SymCoTensor::metric_tensor(g);
  auto raised2 = raise_indices(t2, g);
  auto inv = inverse_metric(g);
  CHECK(probably_equal(raised2.at({0, 0}), inv[0][0], d));
  CHECK(probably_equal(raised2.at({1, 1}), inv[1][1], d));
  CHECK(raised2.count({0, 1}) == 0);
}

TEST_CASE("raise then lower is the identity on components") {
  Metric g = sphere_metric();
  ProbeDomain d = g.chart().probe_domain();
  Expr th = Expr::symbol("theta");
  std::map<std::vector<int>, Expr> comps;
  comps.emplace(std::vector<int>{0, 0}, apply(FuncKind::Cos, th));
  comps.emplace(std::vector<int>{0, 1}, Expr::integer(2));
  comps.emplace(std::vector<int>{1, 1}, th);
  SymCoTensor a(g.chart(), 2, comps);
  auto round = lower_indices(raise_indices(a, g), 2, g);
  for (const auto& [idx, value] : comps) {
    auto it = round.find(idx);
    REQUIRE(it != round.end());
    CHECK(probably_equal(it->second, value, d));
  }
}

TEST_CASE("laplace_beltrami: frozen divergence-form expansions") {
  // Euclidean: d2/dx2 + d2/dy2
  DiffOperator flat = laplace_beltrami(flat_metric());
  CHECK(flat.coefficient({2, 0}) == Expr::integer(1));
  CHECK(flat.coefficient({0, 2}) == Expr::integer(1));
  CHECK(flat.coefficient({1, 0}).is_zero());
  CHECK(flat.coefficient({0, 1}).is_zero());
  CHECK(flat.coefficient({1, 1}).is_zero());

  // polar: d2/dr2 + (1/r) d/dr + (1/r^2) d2/dphi2
  DiffOperator polar = laplace_beltrami(polar_metric());
  ProbeDomain dp = polar_chart().probe_domain();
  Expr r = Expr::symbol("r");
  CHECK(polar.coefficient({2, 0}) == Expr::integer(1));
  CHECK(probably_equal(polar.coefficient({0, 2}), pow(r, -2), dp));
  CHECK(probably_equal(polar.coefficient({1, 0}), pow(r, -1), dp));
  CHECK(probably_zero(polar.coefficient({0, 1}), dp));

  // sphere: d2/dtheta2 + (cos/sin) d/dtheta + (1/sin^2) d2/dphi2
  DiffOperator sphere = laplace_beltrami(sphere_metric());
  ProbeDomain ds = sphere_chart().probe_domain();
  Expr st = apply(FuncKind::Sin, Expr::symbol("theta"));
  Expr ct = apply(FuncKind::Cos, Expr::symbol("theta"));
  CHECK(sphere.coefficient({2, 0}) == Expr::integer(1));
  CHECK(probably_equal(sphere.coefficient({0, 2}), pow(st, -2), ds));
  CHECK(probably_equal(sphere.coefficient({1, 0}), ct / st, ds));
}

TEST_CASE("laplace_beltrami: refuses indefinite metrics, accepts negative-definite") {
  Chart c = flat_chart();
  Metric indefinite(c, {{Expr::integer(1), Expr::integer(0)},
                        {Expr::integer(0), Expr::integer(-1)}});
  CHECK_THROWS_AS(laplace_beltrami(indefinite), NumericError);

  Metric negative(c, {{Expr::integer(-1), Expr::integer(0)},
                      {Expr::integer(0), Expr::integer(-1)}});
  DiffOperator lap = laplace_beltrami(negative);
  CHECK(lap.coefficient({2, 0}) == Expr::integer(-1));
  CHECK(lap.coefficient({0, 2}) == Expr::integer(-1));
}

TEST_CASE("classical identity: g^{kl}(d2_kl - Gamma^j_kl d_j) equals the oracle") {
  for (const Metric& g : {flat_metric(), polar_metric(), sphere_metric()}) {
    const Chart& chart = g.chart();
    int n = chart.dim();
    auto inv = inverse_metric(g);
    ChristoffelField gamma = christoffel(g);
    std::map<MultiIndex, Expr> coeffs;
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        MultiIndex second(n, 0);
        second[k] += 1;
        second[l] += 1;
        auto it = coeffs.find(second);
        if (it == coeffs.end())
          coeffs.emplace(second, inv[k][l]);
        else
          it->second = it->second + inv[k][l];
        for (int j = 0; j < n; ++j) {
          MultiIndex first(n, 0);
          first[j] = 1;
          Expr term = -(inv[k][l] * gamma.at(j, k, l));
          auto jt = coeffs.find(first);
          if (jt == coeffs.end())
            coeffs.emplace(first, term);
          else
            jt->second = jt->second + term;
        }
      }
    }
    DiffOperator classical(chart, std::move(coeffs));
    DiffOperator oracle = laplace_beltrami(g);
    CHECK(probably_equal(classical, oracle, chart.probe_domain()));
  }
}

TEST_CASE("tensor component validation") {
  Chart c = polar_chart();
  std::map<std::vector<int>, Expr> bad_sorted;
  bad_sorted.emplace(std::vector<int>{1, 0}, Expr::integer(1));
  CHECK_THROWS_AS(SymCoTensor(c, 2, bad_sorted), DomainError);
  std::map<std::vector<int>, Expr> bad_range;
  bad_range.emplace(std::vector<int>{2}, Expr::integer(1));
  CHECK_THROWS_AS(SymCoTensor(c, 1, bad_range), DomainError);
  std::map<std::vector<int>, Expr> bad_len;
  bad_len.emplace(std::vector<int>{0}, Expr::integer(1));
  CHECK_THROWS_AS(SymCoTensor(c, 2, bad_len), DomainError);
  // chart mismatch surfaces in raise_indices
  SymCoTensor ok = SymCoTensor::dx(c, 0);
  CHECK_THROWS_AS(raise_indices(ok, sphere_metric()), DomainError);
}

TEST_CASE("symmetric multiplicity") {
  CHECK(symmetric_multiplicity({}) == 1);
  CHECK(symmetric_multiplicity({0}) == 1);
  CHECK(symmetric_multiplicity({0, 0}) == 1);
  CHECK(symmetric_multiplicity({0, 1}) == 2);
  CHECK(symmetric_multiplicity({0, 0, 1}) == 3);
  CHECK(symmetric_multiplicity({0, 1, 2}) == 6);
}

TEST_CASE("chart validation") {
  CHECK_THROWS_AS(Chart({"x", "x"}, {{0, 1}, {0, 1}}), DomainError);
  CHECK_THROWS_AS(Chart({"hbar"}, {{0, 1}}), DomainError);
  CHECK_THROWS_AS(Chart({"i"}, {{0, 1}}), DomainError);
  CHECK_THROWS_AS(Chart({"sin"}, {{0, 1}}), DomainError);
  CHECK_THROWS_AS(Chart({"v_x"}, {{0, 1}}), DomainError);
  CHECK_THROWS_AS(Chart({"f_1"}, {{0, 1}}), DomainError);
  CHECK_THROWS_AS(Chart({"x"}, {{1, 1}}), DomainError);
  CHECK_THROWS_AS(Chart({}, {}), DomainError);
  Chart ok({"x"}, {{0, 1}});
  CHECK(ok.velocity(0) == "v_x");
  CHECK(ok.index_of("x") == 0);
  CHECK(ok.index_of("q") == -1);
}
