#include "rq/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace rq {

void FourierFiberSpec::validate() const {
  if (points < 256 || (points & (points - 1)) != 0)
    throw DomainError("fourier grid needs at least 256 points and a power of two");
  if (!(half_width > 0.0) || !(p_half_width > 0.0) || !(p_step > 0.0))
    throw DomainError("fourier grid widths must be positive");
  if (!(hbar > 0.0)) throw DomainError("fourier check needs hbar > 0");
}

double fourier_correspondence_check(const FourierFiberSpec& spec, const Expr& f,
                                    const std::string& fiber_symbol) {
  spec.validate();
  const int n = spec.points;
  const double h = 2.0 * spec.half_width / (n - 1);

  // Tabulate f on the velocity grid.
  Expr fs = simplify(f);
  std::vector<double> v(n), fv(n);
  double peak = 0.0;
  for (int k = 0; k < n; ++k) {
    v[k] = -spec.half_width + k * h;
    std::map<std::string, Complex> assignment{{fiber_symbol, Complex(v[k], 0.0)}};
    EvalOptions options;
    options.hbar = spec.hbar;
    Complex value = evaluate(fs, assignment, options);
    if (std::abs(value.imag()) > 1e-12 * (1.0 + std::abs(value.real())))
      throw DomainError("fourier check expects a real-valued f on the fiber");
    fv[k] = value.real();
    peak = std::max(peak, std::abs(fv[k]));
  }
  if (peak == 0.0) return 0.0;
  if (std::abs(fv[0]) > 1e-10 * peak || std::abs(fv[n - 1]) > 1e-10 * peak)
    throw DomainError("f does not decay at the velocity grid endpoints");

  // Trapezoid weights.
  std::vector<double> w(n, h);
  w[0] = w[n - 1] = h / 2.0;

  // Momentum grid: uniform with spacing p_step; transforms are accumulated
  // by incremental phase rotation exp(i p_step v_k / hbar) per sample.
  const int mp = 2 * static_cast<int>(std::llround(spec.p_half_width / spec.p_step)) + 1;
  const double p0 = -spec.p_half_width;
  std::vector<Complex> phase(n), rot(n);
  std::vector<double> wf(n), wvf(n);
  for (int k = 0; k < n; ++k) {
    phase[k] = std::polar(1.0, p0 * v[k] / spec.hbar);
    rot[k] = std::polar(1.0, spec.p_step * v[k] / spec.hbar);
    wf[k] = w[k] * fv[k];
    wvf[k] = w[k] * v[k] * fv[k];
  }

  std::vector<Complex> transform_f(mp), transform_vf(mp);
  for (int m = 0; m < mp; ++m) {
    Complex sf(0.0, 0.0), svf(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
      sf += wf[k] * phase[k];
      svf += wvf[k] * phase[k];
    }
    transform_f[m] = sf;
    transform_vf[m] = svf;
    if (m + 1 < mp)
      for (int k = 0; k < n; ++k) phase[k] *= rot[k];
  }

  double denom = 0.0;
  for (int m = 0; m < mp; ++m) denom = std::max(denom, std::abs(transform_f[m]));
  if (denom == 0.0) return 0.0;

  double worst = 0.0;
  const Complex minus_i_hbar(0.0, -spec.hbar);
  for (int m = 1; m + 1 < mp; ++m) {
    Complex derivative = (transform_f[m + 1] - transform_f[m - 1]) / (2.0 * spec.p_step);
    worst = std::max(worst, std::abs(transform_vf[m] - minus_i_hbar * derivative));
  }
  return worst / denom;
}

}  // namespace rq
