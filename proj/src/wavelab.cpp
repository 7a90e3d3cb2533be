#include "rq/wavelab.hpp"

#include <algorithm>
#include <cmath>

namespace rq {

void GridSpec::validate() const {
  if (points < 16) throw DomainError("grid needs at least 16 points");
  if (!(lo < hi)) throw DomainError("grid interval is empty");
  if (coordinate.empty()) throw DomainError("grid needs a coordinate name");
}

double GridSpec::step() const {
  return boundary == Boundary::Dirichlet ? (hi - lo) / (points + 1) : (hi - lo) / points;
}

double GridSpec::abscissa(int k) const {
  return boundary == Boundary::Dirichlet ? lo + (k + 1) * step() : lo + k * step();
}

Eigen::MatrixXcd discretize(const DiffOperator& op, const GridSpec& grid) {
  grid.validate();
  const Chart& chart = op.chart();
  int coord = chart.index_of(grid.coordinate);
  if (coord < 0) throw DomainError("grid coordinate is not on the operator's chart");
  if (op.order() > 2) throw DomainError("discretize supports operators of order at most 2");
  for (const auto& [alpha, c] : op.coefficients()) {
    for (std::size_t j = 0; j < alpha.size(); ++j)
      if (alpha[j] > 0 && static_cast<int>(j) != coord)
        throw DomainError("operator involves a non-grid coordinate derivative");
    for (const auto& s : free_symbols(c))
      if (!is_reserved_symbol(s) && s != grid.coordinate)
        throw DomainError("operator coefficient depends on symbol '" + s +
                          "' outside the grid coordinate");
  }

  const int n = grid.points;
  const double h = grid.step();
  EvalOptions options;
  options.hbar = grid.hbar;

  // Evaluate each coefficient on the grid once.
  std::vector<std::pair<int, std::vector<Complex>>> rows;  // (derivative order, values)
  for (const auto& [alpha, c] : op.coefficients()) {
    int order = multi_index_order(alpha);
    std::vector<Complex> values(n);
    for (int k = 0; k < n; ++k) {
      std::map<std::string, Complex> assignment{{grid.coordinate, Complex(grid.abscissa(k), 0.0)}};
      Complex value;
      try {
        value = evaluate(c, assignment, options);
      } catch (const EvalError& err) {
        throw NumericError(std::string("coefficient singular on grid: ") + err.what());
      }
      values[k] = value;
    }
    rows.emplace_back(order, std::move(values));
  }

  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(n, n);
  auto wrap = [n](int k) { return ((k % n) + n) % n; };
  for (const auto& [order, values] : rows) {
    for (int k = 0; k < n; ++k) {
      const Complex c = values[k];
      switch (order) {
        case 0:
          mat(k, k) += c;
          break;
        case 1: {
          // centered first difference; Dirichlet drops ghost points
          if (grid.boundary == Boundary::Periodic) {
            mat(k, wrap(k + 1)) += c / (2.0 * h);
            mat(k, wrap(k - 1)) -= c / (2.0 * h);
          } else {
            if (k + 1 < n) mat(k, k + 1) += c / (2.0 * h);
            if (k - 1 >= 0) mat(k, k - 1) -= c / (2.0 * h);
          }
          break;
        }
        case 2: {
          mat(k, k) += -2.0 * c / (h * h);
          if (grid.boundary == Boundary::Periodic) {
            mat(k, wrap(k + 1)) += c / (h * h);
            mat(k, wrap(k - 1)) += c / (h * h);
          } else {
            if (k + 1 < n) mat(k, k + 1) += c / (h * h);
            if (k - 1 >= 0) mat(k, k - 1) += c / (h * h);
          }
          break;
        }
        default:
          throw DomainError("discretize supports derivative orders 0..2");
      }
    }
  }
  return mat;
}

SpectrumResult spectrum(const Eigen::MatrixXcd& matrix, int m, const GridSpec& grid) {
  const int n = static_cast<int>(matrix.rows());
  if (matrix.cols() != n) throw DomainError("spectrum needs a square matrix");
  if (m < 1 || m > n) throw DomainError("requested eigenpair count exceeds matrix size");
  if (grid.points != n) throw DomainError("grid size does not match the matrix");

  double im = matrix.imag().cwiseAbs().maxCoeff();
  if (im > 1e-10) throw NumericError("matrix has imaginary entries beyond tolerance");
  Eigen::MatrixXd real = matrix.real();
  double asym = (real - real.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) throw NumericError("matrix asymmetry beyond tolerance");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(real);
  if (solver.info() != Eigen::Success) throw NumericError("eigen decomposition failed");

  SpectrumResult result;
  for (int k = 0; k < m; ++k) {
    double value = solver.eigenvalues()(k);
    Eigen::VectorXd vec = solver.eigenvectors().col(k);
    vec.normalize();
    double residual = (real * vec - value * vec).norm();
    if (residual > 1e-8)
      throw NumericError("eigenpair residual " + std::to_string(residual) + " exceeds 1e-8");
    GridFunction psi{grid, vec.cast<Complex>()};
    result.eigenvalues.push_back(value);
    result.eigenvectors.push_back(std::move(psi));
  }
  return result;
}

double wave_residual(const DiffOperator& op, const Expr& a_of_u, const GridFunction& psi) {
  const GridSpec& grid = psi.grid;
  if (psi.values.size() != grid.points) throw DomainError("grid function has wrong length");
  Eigen::MatrixXcd mat = discretize(op, grid);
  EvalOptions options;
  options.hbar = grid.hbar;
  Expr value = simplify(a_of_u);
  Eigen::VectorXcd scaled(grid.points);
  for (int k = 0; k < grid.points; ++k) {
    std::map<std::string, Complex> assignment{{grid.coordinate, Complex(grid.abscissa(k), 0.0)}};
    scaled(k) = evaluate(value, assignment, options) * psi.values(k);
  }
  double norm = psi.values.norm();
  if (norm == 0.0) throw DomainError("wave_residual of the zero function");
  return (mat * psi.values - scaled).norm() / norm;
}

Expr classical_restriction(const ClassicalMagnitude& a, const VectorField& u) {
  require_same_chart(a.chart(), u.chart(), "classical_restriction");
  return a.substitute_fiber(u.components());
}

DiffOperator schrodinger_operator(const Metric& g, const Expr& potential) {
  DiffOperator twice_kinetic = quantize(SymCoTensor::metric_tensor(g), g);
  return twice_kinetic.scaled(Expr::number(Rational(1, 2))) +
         DiffOperator::multiplication(g.chart(), potential);
}

double hamilton_jacobi_residual(const Metric& g, const Expr& potential, const Expr& action,
                                double energy, const GridSpec& grid) {
  grid.validate();
  const Chart& chart = g.chart();
  int n = chart.dim();
  auto inv = inverse_metric(g);
  Expr half = Expr::number(Rational(1, 2));
  Expr residual = Expr::integer(0);
  std::vector<Expr> ds(n);
  for (int j = 0; j < n; ++j) ds[j] = differentiate(action, chart.coordinate(j));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) residual = residual + half * inv[j][k] * ds[j] * ds[k];
  residual = simplify(residual + potential);

  EvalOptions options;
  options.hbar = grid.hbar;
  double worst = 0.0;
  for (int k = 0; k < grid.points; ++k) {
    std::map<std::string, Complex> assignment{{grid.coordinate, Complex(grid.abscissa(k), 0.0)}};
    Complex value = evaluate(residual, assignment, options) - Complex(energy, 0.0);
    worst = std::max(worst, std::abs(value));
  }
  return worst;
}

}  // namespace rq
