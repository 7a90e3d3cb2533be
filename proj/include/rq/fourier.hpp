#pragma once

#include <string>

#include "rq/expr.hpp"

namespace rq {

/// One-dimensional fiberwise Fourier transform setup: kernel exp(+(i/hbar) p v)
/// with unit measure normalization, trapezoid quadrature on a uniform
/// velocity grid over [-half_width, half_width]. The derivative side is
/// checked on a uniform momentum grid of spacing `p_step` (adjacent-point
/// centered differences).
struct FourierFiberSpec {
  double hbar = 1.0;
  double half_width = 12.0;
  int points = 4096;  // velocity samples; >= 256 and a power of two
  double p_half_width = 4.0;
  double p_step = 0.0009765625;  // 2^-10

  void validate() const;
};

/// Max relative deviation between the transform of v*f and -i hbar times the
/// p-derivative of the transform of f, over the momentum grid:
///   max_p |F(v f)(p) + i hbar d/dp (F f)(p)| / max_p |F f(p)|.
/// `f` is an expression in the single fiber symbol `fiber_symbol`; it must
/// decay below 1e-10 of its grid peak at the endpoints. Returns 0 for f = 0.
double fourier_correspondence_check(const FourierFiberSpec& spec, const Expr& f,
                                    const std::string& fiber_symbol = "v");

}  // namespace rq
