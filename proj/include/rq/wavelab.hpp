#pragma once

#include <Eigen/Dense>

#include "rq/quantizer.hpp"

namespace rq {

enum class Boundary { Dirichlet, Periodic };

/// One-dimensional grid for wave equations. Dirichlet grids carry the N
/// interior points of [lo, hi] (ghost values vanish); periodic grids carry N
/// samples of one period with the right endpoint excluded.
struct GridSpec {
  std::string coordinate;
  double lo = 0.0;
  double hi = 1.0;
  int points = 16;
  Boundary boundary = Boundary::Dirichlet;
  double hbar = 1.0;

  void validate() const;
  double step() const;
  double abscissa(int k) const;

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.coordinate == b.coordinate && a.lo == b.lo && a.hi == b.hi &&
           a.points == b.points && a.boundary == b.boundary && a.hbar == b.hbar;
  }
};

struct GridFunction {
  GridSpec grid;
  Eigen::VectorXcd values;
};

/// Eigenvalues in ascending order with unit-norm eigenvectors; every pair
/// satisfies ||(M - E I) psi|| <= 1e-8 by construction.
struct SpectrumResult {
  std::vector<double> eigenvalues;
  std::vector<GridFunction> eigenvectors;
};

/// Second-order central differences on the grid: d^2 -> (psi_{k+1} - 2 psi_k
/// + psi_{k-1})/h^2, d -> (psi_{k+1} - psi_{k-1})/(2h), coefficients
/// evaluated at the abscissae. The operator may only involve the grid
/// coordinate and must have order <= 2.
Eigen::MatrixXcd discretize(const DiffOperator& op, const GridSpec& grid);

/// The m lowest eigenpairs of a dense real-symmetric matrix (asymmetry or
/// imaginary parts beyond 1e-10 are refused).
SpectrumResult spectrum(const Eigen::MatrixXcd& matrix, int m, const GridSpec& grid);

/// ||(discretize(op) - diag(a_of_u)) psi|| / ||psi|| with the classical value
/// a_of_u evaluated on the grid (constants allowed).
double wave_residual(const DiffOperator& op, const Expr& a_of_u, const GridFunction& psi);

/// Substitute the velocities with the components of u: the classical value
/// of the magnitude along the state u, a function on the base.
Expr classical_restriction(const ClassicalMagnitude& a, const VectorField& u);

/// Hamiltonian quantization for H = T + U: (1/2) quantize(T2) + U, which
/// equals -(hbar^2/2) Laplacian + U.
DiffOperator schrodinger_operator(const Metric& g, const Expr& potential);

/// max over the grid of |(1/2) g^{jk} dS_j dS_k + U - E|.
double hamilton_jacobi_residual(const Metric& g, const Expr& potential, const Expr& action,
                                double energy, const GridSpec& grid);

}  // namespace rq
