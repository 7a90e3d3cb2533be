// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Everything is pinned to the tolerances stated alongside each
// check; run through ctest as "acceptance" or directly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rq/fourier.hpp"
#include "rq/wavelab.hpp"

using namespace rq;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& fn) {
  std::string detail;
  bool ok = false;
  try {
    ok = fn(detail);
  } catch (const std::exception& err) {
    detail = std::string("exception: ") + err.what();
  }
  std::printf("[%s] %2d. %s%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

Metric polar_metric() {
  Chart c({"r", "phi"}, {{0.5, 3.0}, {0.1, 6.0}});
  return Metric(c, {{Expr::integer(1), Expr::integer(0)},
                    {Expr::integer(0), pow(Expr::symbol("r"), 2)}});
}

Metric sphere_metric() {
  Chart c({"theta", "phi"}, {{0.3, 2.8}, {0.1, 6.0}});
  Expr st = apply(FuncKind::Sin, Expr::symbol("theta"));
  return Metric(c, {{Expr::integer(1), Expr::integer(0)}, {Expr::integer(0), pow(st, 2)}});
}

Metric flat_metric() {
  Chart c({"x", "y"}, {{-2.0, 2.0}, {-2.0, 2.0}});
  return Metric(c, {{Expr::integer(1), Expr::integer(0)}, {Expr::integer(0), Expr::integer(1)}});
}

std::vector<Metric> corpus() { return {flat_metric(), polar_metric(), sphere_metric()}; }

Expr minus_i_hbar() { return product_of({Expr::integer(-1), imaginary_unit(), hbar()}); }

double slope_fit(const std::vector<double>& s, const std::vector<double>& e) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = static_cast<int>(s.size());
  for (int k = 0; k < n; ++k) {
    double x = std::log2(s[k]), y = std::log2(e[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

GridSpec dirichlet_grid(double lo, double hi, int n) {
  GridSpec g;
  g.coordinate = "x";
  g.lo = lo;
  g.hi = hi;
  g.points = n;
  g.boundary = Boundary::Dirichlet;
  g.hbar = 1.0;
  return g;
}

DiffOperator oscillator_hamiltonian(const Metric& g) {
  Expr x = Expr::symbol("x");
  return schrodinger_operator(g, Expr::number(Rational(1, 2)) * pow(x, 2));
}

bool criterion_laplacian(std::string& detail) {
  bool ok = true;
  for (const Metric& g : corpus()) {
    DiffOperator quantized = quantize(SymCoTensor::metric_tensor(g), g);
    DiffOperator oracle = laplace_beltrami(g).scaled(-pow(hbar(), 2));
    ok = ok && probably_equal(quantized, oracle, g.chart().probe_domain());
  }
  detail = "quantize(T2) vs -hbar^2 Laplace-Beltrami on flat/polar/sphere";
  return ok;
}

bool criterion_momentum(std::string& detail) {
  bool ok = true;
  for (const Metric& g : corpus()) {
    for (int j = 0; j < g.chart().dim(); ++j) {
      DiffOperator op = quantize(SymCoTensor::momentum(g, j), g);
      MultiIndex expected(g.chart().dim(), 0);
      expected[j] = 1;
      ok = ok && op.coefficients().size() == 1 &&
           op.coefficient(expected) == minus_i_hbar();
    }
  }
  detail = "quantize(g_{j.}dx) == -i hbar d_j structurally";
  return ok;
}

bool criterion_jets(std::string& detail) {
  bool structural = true;
  for (const Metric& g : corpus()) {
    const Chart& chart = g.chart();
    ChristoffelField gamma = christoffel(g);
    JetMap jet = geodesic_jet(g, 2);
    for (int j = 0; j < chart.dim(); ++j) {
      for (int r = 0; r < chart.dim(); ++r) {
        for (int s = r; s < chart.dim(); ++s) {
          Monomial m(chart.dim(), 0);
          m[r] += 1;
          m[s] += 1;
          Expr expected = (r == s)
                              ? simplify(Expr::number(Rational(-1, 2)) * gamma.at(j, r, r))
                              : simplify(-gamma.at(j, r, s));
          structural = structural && jet.coordinate(j).coefficient(m) == expected;
        }
      }
    }
  }

  Metric polar = polar_metric();
  std::vector<double> x0{1.0, 0.8}, dir{0.6, 0.8};
  bool slopes_ok = true;
  std::string slopes;
  for (int order : {2, 3, 4}) {
    JetMap jet = geodesic_jet(polar, order);
    std::vector<double> scales, errors;
    for (int k = 3; k <= 7; ++k) {
      double s = std::ldexp(1.0, -k);
      std::vector<double> v{dir[0] * s, dir[1] * s};
      auto truth = exp_numeric(polar, x0, v);
      auto approx = evaluate_jet(jet, x0, v);
      double err = std::hypot(truth[0] - approx[0], truth[1] - approx[1]);
      scales.push_back(s);
      errors.push_back(err);
    }
    double slope = slope_fit(scales, errors);
    slopes_ok = slopes_ok && slope >= order + 0.7;
    char buf[48];
    std::snprintf(buf, sizeof(buf), " K=%d:%.2f", order, slope);
    slopes += buf;
  }
  detail = "order-2 coefficients are -(1/2)Gamma; polar slopes" + slopes;
  return structural && slopes_ok;
}

bool criterion_fourier(std::string& detail) {
  FourierFiberSpec spec;  // hbar=1, L=12, N=4096
  Expr v = Expr::symbol("v");
  Expr gaussian = apply(FuncKind::Exp, Expr::number(Rational(-1, 2)) * pow(v, 2));
  double err = fourier_correspondence_check(spec, gaussian, "v");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "max relative error %.3e (tol 1e-6)", err);
  detail = buf;
  return err <= 1e-6;
}

bool criterion_defect_witness(std::string& detail) {
  Metric g = polar_metric();
  ProbeDomain d = g.chart().probe_domain();
  SymCoTensor dphi = SymCoTensor::dx(g.chart(), 1);
  DiffOperator defect = quantization_defect_square(dphi, g);
  // expected: -(hbar^2/r^3) d_r
  std::map<MultiIndex, Expr> expected;
  expected.emplace(MultiIndex{1, 0},
                   -(pow(hbar(), 2) * pow(Expr::symbol("r"), -3)));
  DiffOperator witness(g.chart(), std::move(expected));
  bool equal = probably_equal(defect, witness, d);
  bool nonzero = !probably_zero(defect, d);
  detail = "quantize(dphi.dphi) - quantize(dphi)^2 == -(hbar^2/r^3) d_r, nonzero";
  return equal && nonzero;
}

bool criterion_commutators(std::string& detail) {
  Metric flat = flat_metric();
  const Chart& c = flat.chart();
  bool canonical = true;
  for (int j = 0; j < 2; ++j) {
    DiffOperator xj = DiffOperator::multiplication(c, Expr::symbol(c.coordinate(j)));
    for (int k = 0; k < 2; ++k) {
      DiffOperator pk = quantize(SymCoTensor::momentum(flat, k), flat);
      DiffOperator comm = commutator(xj, pk);
      if (j == k)
        canonical = canonical && comm.coefficients().size() == 1 &&
                    comm.coefficient(MultiIndex{0, 0}) ==
                        simplify(imaginary_unit() * hbar());
      else
        canonical = canonical && comm.is_structurally_zero();
    }
  }

  bool flat_pairs = true;
  std::vector<SymCoTensor> basis;
  basis.push_back(SymCoTensor::function(c, Expr::integer(1)));
  basis.push_back(SymCoTensor::dx(c, 0));
  basis.push_back(SymCoTensor::dx(c, 1));
  for (const auto& a : basis)
    for (const auto& b : basis)
      flat_pairs = flat_pairs && bracket_vs_commutator_report(a, b, flat).defect_probably_zero;

  Metric polar = polar_metric();
  SymCoTensor dphi2 = symmetric_product(SymCoTensor::dx(polar.chart(), 1),
                                        SymCoTensor::dx(polar.chart(), 1));
  BracketCommutatorReport rep =
      bracket_vs_commutator_report(SymCoTensor::metric_tensor(polar), dphi2, polar);
  bool polar_nonzero = !rep.defect_probably_zero;

  detail = "[x,p] = i hbar delta; flat degree<=1 defects vanish; polar degree-2 defect nonzero";
  return canonical && flat_pairs && polar_nonzero;
}

SpectrumResult oscillator_spectrum_2000(double& seconds) {
  Chart c({"x"}, {{-2.0, 2.0}});
  Metric g(c, {{Expr::integer(1)}});
  DiffOperator h = oscillator_hamiltonian(g);
  GridSpec grid = dirichlet_grid(-10.0, 10.0, 2000);
  auto t0 = std::chrono::steady_clock::now();
  Eigen::MatrixXcd mat = discretize(h, grid);
  SpectrumResult s = spectrum(mat, 5, grid);
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

bool criterion_oscillator(std::string& detail, SpectrumResult& out) {
  double seconds = 0.0;
  out = oscillator_spectrum_2000(seconds);
  bool values = true;
  for (int k = 0; k < 5; ++k) values = values && std::abs(out.eigenvalues[k] - (k + 0.5)) <= 1e-3;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "E = %.6f %.6f %.6f %.6f %.6f in %.1f s (< 60 s)",
                out.eigenvalues[0], out.eigenvalues[1], out.eigenvalues[2], out.eigenvalues[3],
                out.eigenvalues[4], seconds);
  detail = buf;
  return values && seconds < 60.0;
}

SpectrumResult circle_spectrum() {
  Chart c({"x"}, {{0.1, 6.0}});
  Metric g(c, {{Expr::integer(1)}});
  DiffOperator h = schrodinger_operator(g, Expr::integer(0));
  GridSpec grid;
  grid.coordinate = "x";
  grid.lo = 0.0;
  grid.hi = 6.283185307179586;
  grid.points = 256;
  grid.boundary = Boundary::Periodic;
  grid.hbar = 1.0;
  return spectrum(discretize(h, grid), 5, grid);
}

bool criterion_circle(std::string& detail, SpectrumResult& out) {
  out = circle_spectrum();
  std::vector<double> expected{0.0, 0.5, 0.5, 2.0, 2.0};
  bool values = true;
  for (int k = 0; k < 5; ++k) values = values && std::abs(out.eigenvalues[k] - expected[k]) <= 1e-3;
  bool degenerate = std::abs(out.eigenvalues[1] - out.eigenvalues[2]) <= 1e-6 &&
                    std::abs(out.eigenvalues[3] - out.eigenvalues[4]) <= 1e-6;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "E = %.6f %.6f %.6f %.6f %.6f, degeneracy within 1e-6",
                out.eigenvalues[0], out.eigenvalues[1], out.eigenvalues[2], out.eigenvalues[3],
                out.eigenvalues[4]);
  detail = buf;
  return values && degenerate;
}

bool criterion_wave_residual(std::string& detail, const SpectrumResult& oscillator,
                             const SpectrumResult& circle) {
  Chart cx({"x"}, {{-2.0, 2.0}});
  Metric gx(cx, {{Expr::integer(1)}});
  DiffOperator h_osc = oscillator_hamiltonian(gx);
  DiffOperator h_circ = schrodinger_operator(gx, Expr::integer(0));
  double worst = 0.0;
  for (std::size_t k = 0; k < oscillator.eigenvalues.size(); ++k)
    worst = std::max(worst,
                     wave_residual(h_osc, number_from_double(oscillator.eigenvalues[k]),
                                   oscillator.eigenvectors[k]));
  for (std::size_t k = 0; k < circle.eigenvalues.size(); ++k)
    worst = std::max(worst, wave_residual(h_circ, number_from_double(circle.eigenvalues[k]),
                                          circle.eigenvectors[k]));
  char buf[64];
  std::snprintf(buf, sizeof(buf), "max residual %.3e (tol 1e-8)", worst);
  detail = buf;
  return worst <= 1e-8;
}

bool criterion_hamilton_jacobi(std::string& detail) {
  Chart c({"x"}, {{-1.2, 1.2}});
  Metric g(c, {{Expr::integer(1)}});
  Expr x = Expr::symbol("x");
  Expr potential = Expr::number(Rational(1, 2)) * pow(x, 2);
  // S with S'(x) = sqrt(2E - x^2) at E = 1, written with the principal
  // complex logarithm (real-valued on |x| < sqrt(2))
  Expr action = parse("x/2*sqrt(2 - x^2) - i*log(i*x/sqrt(2) + sqrt(1 - x^2/2))");
  double residual = hamilton_jacobi_residual(g, potential, action, 1.0,
                                             dirichlet_grid(-1.2, 1.2, 400));
  char buf[64];
  std::snprintf(buf, sizeof(buf), "max residual %.3e (tol 1e-9)", residual);
  detail = buf;
  return residual <= 1e-9;
}

bool property_derivative_fd() {
  // d/dx of assorted closed forms against central differences
  std::vector<Expr> samples;
  Expr x = Expr::symbol("x");
  samples.push_back(apply(FuncKind::Sin, pow(x, 2)) * apply(FuncKind::Exp, x));
  samples.push_back(pow(x, 3) / (Expr::integer(1) + pow(x, 2)));
  samples.push_back(apply(FuncKind::Log, Expr::integer(1) + pow(x, 2)) +
                    apply(FuncKind::Sqrt, Expr::integer(2) + x));
  samples.push_back(apply(FuncKind::Tan, x / Expr::integer(2)) +
                    apply(FuncKind::Cosh, x) * apply(FuncKind::Sinh, x));
  ProbeRng rng(11);
  for (const Expr& e : samples) {
    Expr de = differentiate(e, "x");
    for (int pt = 0; pt < 5; ++pt) {
      double at = 0.3 + rng.uniform01();
      const double h = 1e-5;
      auto value = [&](double v) {
        std::map<std::string, Complex> a{{"x", Complex(v, 0.0)}};
        return evaluate(e, a).real();
      };
      std::map<std::string, Complex> a{{"x", Complex(at, 0.0)}};
      double sym = evaluate(de, a).real();
      double fd = (value(at + h) - value(at - h)) / (2 * h);
      if (std::abs(sym - fd) > 1e-6 * (1.0 + std::abs(sym))) return false;
    }
  }
  return true;
}

bool property_a_linearity() {
  Metric g = polar_metric();
  const Chart& c = g.chart();
  ProbeDomain d = c.probe_domain();
  Expr r = Expr::symbol("r");
  std::map<std::vector<int>, Expr> ca, cb;
  ca.emplace(std::vector<int>{0, 1}, r);
  ca.emplace(std::vector<int>{1, 1}, Expr::integer(2));
  cb.emplace(std::vector<int>{0, 0}, pow(r, -1));
  cb.emplace(std::vector<int>{0, 1}, Expr::integer(1));
  SymCoTensor a(c, 2, std::move(ca));
  SymCoTensor b(c, 2, std::move(cb));
  Expr h = pow(r, 2) + Expr::integer(1);
  DiffOperator lhs = quantize(a.scaled(h) + b, g);
  DiffOperator rhs = quantize(a, g).scaled(h) + quantize(b, g);
  return probably_equal(lhs, rhs, d);
}

bool property_principal_symbol() {
  Metric g = polar_metric();
  const Chart& c = g.chart();
  ProbeDomain d = c.probe_domain();
  Expr r = Expr::symbol("r");
  std::map<std::vector<int>, Expr> comps;
  comps.emplace(std::vector<int>{0, 1, 1}, r);
  comps.emplace(std::vector<int>{0, 0, 0}, Expr::integer(1));
  SymCoTensor a(c, 3, std::move(comps));
  DiffOperator op = quantize(a, g);
  auto raised = raise_indices(a, g);
  Expr factor = pow(minus_i_hbar(), 3);
  for (const auto& [tuple, value] : raised) {
    Monomial m = tuple_to_monomial(tuple, c.dim());
    Expr expected = simplify(factor * Expr::integer(symmetric_multiplicity(tuple)) * value);
    if (!probably_equal(op.coefficient(m), expected, d)) return false;
  }
  return true;
}

bool property_flat_degeneration() {
  Metric g = flat_metric();
  Expr x = Expr::symbol("x");
  std::map<std::vector<int>, Expr> comps;
  comps.emplace(std::vector<int>{0, 0}, apply(FuncKind::Sin, x));
  comps.emplace(std::vector<int>{0, 1}, pow(x, 2));
  SymCoTensor a(g.chart(), 2, std::move(comps));
  DiffOperator op = quantize(a, g);
  for (const auto& [alpha, coeff] : op.coefficients())
    if (multi_index_order(alpha) != 2) return false;
  return true;
}

bool property_grid_convergence(std::string& ratios_out) {
  Chart c({"x"}, {{-2.0, 2.0}});
  Metric g(c, {{Expr::integer(1)}});
  DiffOperator h = oscillator_hamiltonian(g);
  std::vector<int> sizes{250, 500, 1000, 2000};
  std::vector<double> errors;
  for (int n : sizes) {
    GridSpec grid = dirichlet_grid(-10.0, 10.0, n);
    SpectrumResult s = spectrum(discretize(h, grid), 1, grid);
    errors.push_back(std::abs(s.eigenvalues[0] - 0.5));
  }
  bool ok = true;
  for (std::size_t k = 1; k < errors.size(); ++k) {
    double ratio = errors[k - 1] / errors[k];
    char buf[16];
    std::snprintf(buf, sizeof(buf), " %.2f", ratio);
    ratios_out += buf;
    ok = ok && ratio >= 3.5 && ratio <= 4.5;
  }
  return ok;
}

bool criterion_properties(std::string& detail) {
  bool fd = property_derivative_fd();
  bool lin = property_a_linearity();
  bool sym = property_principal_symbol();
  bool flat = property_flat_degeneration();
  std::string ratios;
  bool conv = property_grid_convergence(ratios);
  detail = std::string("derivative-vs-FD ") + (fd ? "ok" : "FAIL") + ", A-linearity " +
           (lin ? "ok" : "FAIL") + ", principal symbol " + (sym ? "ok" : "FAIL") +
           ", flat degeneration " + (flat ? "ok" : "FAIL") + ", convergence ratios" + ratios;
  return fd && lin && sym && flat && conv;
}

}  // namespace

int main() {
  std::printf("rq acceptance suite\n");

  criterion(1, "Laplacian identity", criterion_laplacian);
  criterion(2, "Momentum rule", criterion_momentum);
  criterion(3, "Jet fidelity", criterion_jets);
  criterion(4, "Fourier correspondence", criterion_fourier);
  criterion(5, "Noncommutativity witness", criterion_defect_witness);
  criterion(6, "Canonical commutator", criterion_commutators);

  SpectrumResult oscillator, circle;
  criterion(7, "Oscillator spectrum", [&](std::string& d) {
    return criterion_oscillator(d, oscillator);
  });
  criterion(8, "Circle spectrum", [&](std::string& d) { return criterion_circle(d, circle); });
  criterion(9, "Wave residual", [&](std::string& d) {
    if (oscillator.eigenvalues.empty() || circle.eigenvalues.empty()) {
      d = "skipped: spectra unavailable";
      return false;
    }
    return criterion_wave_residual(d, oscillator, circle);
  });
  criterion(10, "Hamilton-Jacobi", criterion_hamilton_jacobi);
  criterion(11, "Property suites", criterion_properties);

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria FAILED\n", g_failures);
  return 1;
}
