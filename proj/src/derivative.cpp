#include "rq/expr.hpp"

namespace rq {

namespace {

Expr d(const Expr& e, const std::string& s, const DerivativeTable& table) {
  switch (e.kind()) {
    case ExprKind::Number:
      return Expr::integer(0);
    case ExprKind::Symbol: {
      const std::string& name = e.symbol_name();
      if (name == s) return Expr::integer(1);
      if (is_reserved_symbol(name)) return Expr::integer(0);
      if (!table.empty()) {
        if (auto r = table.rule(name, s)) return *r;
      }
      return Expr::integer(0);
    }
    case ExprKind::Add: {
      std::vector<Expr> parts;
      parts.reserve(e.operands().size());
      for (const auto& t : e.operands()) parts.push_back(d(t, s, table));
      return sum_of(std::move(parts));
    }
    case ExprKind::Mul: {
      // n-ary product rule
      const auto& kids = e.operands();
      std::vector<Expr> parts;
      parts.reserve(kids.size());
      for (std::size_t k = 0; k < kids.size(); ++k) {
        std::vector<Expr> factors;
        factors.reserve(kids.size());
        for (std::size_t j = 0; j < kids.size(); ++j)
          factors.push_back(j == k ? d(kids[j], s, table) : kids[j]);
        parts.push_back(product_of(std::move(factors)));
      }
      return sum_of(std::move(parts));
    }
    case ExprKind::Pow: {
      const Expr& base = e.operands()[0];
      long long n = e.exponent();
      return Expr::integer(n) * pow(base, n - 1) * d(base, s, table);
    }
    case ExprKind::Div: {
      const Expr& a = e.operands()[0];
      const Expr& b = e.operands()[1];
      return (d(a, s, table) * b - a * d(b, s, table)) / pow(b, 2);
    }
    case ExprKind::Func: {
      const Expr& u = e.operands()[0];
      Expr du = d(u, s, table);
      if (du.is_zero()) return du;
      Expr outer;
      switch (e.func()) {
        case FuncKind::Sin: outer = apply(FuncKind::Cos, u); break;
        case FuncKind::Cos: outer = -apply(FuncKind::Sin, u); break;
        case FuncKind::Tan: outer = Expr::integer(1) + pow(apply(FuncKind::Tan, u), 2); break;
        case FuncKind::Exp: outer = apply(FuncKind::Exp, u); break;
        case FuncKind::Log: outer = pow(u, -1); break;
        case FuncKind::Sqrt:
          outer = Expr::number(Rational(1, 2)) * pow(apply(FuncKind::Sqrt, u), -1);
          break;
        case FuncKind::Sinh: outer = apply(FuncKind::Cosh, u); break;
        case FuncKind::Cosh: outer = apply(FuncKind::Sinh, u); break;
      }
      return outer * du;
    }
  }
  return Expr::integer(0);
}

}  // namespace

Expr differentiate(const Expr& e, const std::string& symbol) {
  static const DerivativeTable empty{};
  return differentiate(e, symbol, empty);
}

Expr differentiate(const Expr& e, const std::string& symbol, const DerivativeTable& table) {
  if (is_reserved_symbol(symbol)) return Expr::integer(0);
  return d(simplify(e), symbol, table);
}

}  // namespace rq
