#include <cmath>
#include <numbers>

#include "rq/expr.hpp"

namespace rq {

namespace {

Complex pow_int(Complex base, long long e) {
  if (e < 0) {
    if (std::abs(base) == 0.0) throw EvalError("division by zero in power");
    return 1.0 / pow_int(base, -e);
  }
  Complex acc(1.0, 0.0);
  while (e > 0) {
    if (e & 1ll) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

struct Evaluator {
  const std::map<std::string, Complex>& assignment;
  const EvalOptions& options;

  Complex run(const Expr& e) const {
    Complex v = eval(e);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw EvalError("non-finite value in evaluation");
    return v;
  }

  void guard_branch(const Complex& arg, const char* what) const {
    if (!options.real_branch_guard) return;
    if (std::abs(arg.imag()) <= 1e-14 * (1.0 + std::abs(arg.real())) && arg.real() < 0.0)
      throw EvalError(std::string("negative real argument to ") + what + " under real probing");
  }

  Complex eval(const Expr& e) const {
    switch (e.kind()) {
      case ExprKind::Number:
        return Complex(e.number_value().to_double(), 0.0);
      case ExprKind::Symbol: {
        const std::string& name = e.symbol_name();
        auto it = assignment.find(name);
        if (it != assignment.end()) return it->second;
        if (name == "i") return Complex(0.0, 1.0);
        if (name == "pi") return Complex(std::numbers::pi, 0.0);
        if (name == "hbar") return Complex(options.hbar, 0.0);
        throw EvalError("unassigned symbol '" + name + "'");
      }
      case ExprKind::Add: {
        Complex acc(0.0, 0.0);
        for (const auto& t : e.operands()) acc += eval(t);
        return acc;
      }
      case ExprKind::Mul: {
        Complex acc(1.0, 0.0);
        for (const auto& f : e.operands()) acc *= eval(f);
        return acc;
      }
      case ExprKind::Pow:
        return pow_int(eval(e.operands()[0]), e.exponent());
      case ExprKind::Div: {
        Complex den = eval(e.operands()[1]);
        if (std::abs(den) == 0.0) throw EvalError("division by zero");
        return eval(e.operands()[0]) / den;
      }
      case ExprKind::Func: {
        Complex u = eval(e.operands()[0]);
        switch (e.func()) {
          case FuncKind::Sin: return std::sin(u);
          case FuncKind::Cos: return std::cos(u);
          case FuncKind::Tan: return std::tan(u);
          case FuncKind::Exp: return std::exp(u);
          case FuncKind::Log:
            if (std::abs(u) == 0.0) throw EvalError("log of zero");
            guard_branch(u, "log");
            return std::log(u);
          case FuncKind::Sqrt:
            guard_branch(u, "sqrt");
            return std::sqrt(u);
          case FuncKind::Sinh: return std::sinh(u);
          case FuncKind::Cosh: return std::cosh(u);
        }
        throw EvalError("unknown function");
      }
    }
    throw EvalError("malformed expression");
  }
};

}  // namespace

Complex evaluate(const Expr& e, const std::map<std::string, Complex>& assignment,
                 const EvalOptions& options) {
  return Evaluator{assignment, options}.run(e);
}

}  // namespace rq
