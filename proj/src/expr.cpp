#include "rq/expr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rq {

struct ExprNode {
  ExprKind kind;
  Rational number;         // Number
  std::string symbol;      // Symbol
  std::vector<Expr> kids;  // Add/Mul operands; Pow {base}; Div {num, den}; Func {arg}
  long long exponent = 0;  // Pow
  FuncKind func = FuncKind::Sin;

  static Expr make(ExprNode n) { return Expr(std::make_shared<const ExprNode>(std::move(n))); }
};

const ExprNode& node_of(const Expr& e) { return *e.node_; }

namespace {
const std::vector<Expr> kNoKids{};
}

Expr::Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

Expr::Expr() {
  ExprNode n;
  n.kind = ExprKind::Number;
  n.number = Rational(0);
  node_ = std::make_shared<const ExprNode>(std::move(n));
}

Expr Expr::number(const Rational& r) {
  ExprNode n;
  n.kind = ExprKind::Number;
  n.number = r;
  return ExprNode::make(std::move(n));
}

Expr Expr::integer(long long v) { return number(Rational(v)); }

Expr Expr::symbol(const std::string& name) {
  ExprNode n;
  n.kind = ExprKind::Symbol;
  n.symbol = name;
  return ExprNode::make(std::move(n));
}

Expr Expr::make_sum(std::vector<Expr> terms) {
  ExprNode n;
  n.kind = ExprKind::Add;
  n.kids = std::move(terms);
  return ExprNode::make(std::move(n));
}

Expr Expr::make_product(std::vector<Expr> factors) {
  ExprNode n;
  n.kind = ExprKind::Mul;
  n.kids = std::move(factors);
  return ExprNode::make(std::move(n));
}

Expr Expr::make_pow(Expr base, long long exponent) {
  ExprNode n;
  n.kind = ExprKind::Pow;
  n.kids = {std::move(base)};
  n.exponent = exponent;
  return ExprNode::make(std::move(n));
}

Expr Expr::make_quotient(Expr numerator, Expr denominator) {
  ExprNode n;
  n.kind = ExprKind::Div;
  n.kids = {std::move(numerator), std::move(denominator)};
  return ExprNode::make(std::move(n));
}

Expr Expr::make_func(FuncKind f, Expr arg) {
  ExprNode n;
  n.kind = ExprKind::Func;
  n.func = f;
  n.kids = {std::move(arg)};
  return ExprNode::make(std::move(n));
}

ExprKind Expr::kind() const { return node_->kind; }

bool Expr::is_zero() const { return is_number() && node_->number.is_zero(); }
bool Expr::is_one() const { return is_number() && node_->number.is_one(); }

const Rational& Expr::number_value() const { return node_->number; }
const std::string& Expr::symbol_name() const { return node_->symbol; }
const std::vector<Expr>& Expr::operands() const { return node_->kids; }
long long Expr::exponent() const { return node_->exponent; }
FuncKind Expr::func() const { return node_->func; }

const char* func_name(FuncKind f) {
  switch (f) {
    case FuncKind::Sin: return "sin";
    case FuncKind::Cos: return "cos";
    case FuncKind::Tan: return "tan";
    case FuncKind::Exp: return "exp";
    case FuncKind::Log: return "log";
    case FuncKind::Sqrt: return "sqrt";
    case FuncKind::Sinh: return "sinh";
    case FuncKind::Cosh: return "cosh";
  }
  return "?";
}

std::optional<FuncKind> func_from_name(const std::string& name) {
  static const std::map<std::string, FuncKind> table = {
      {"sin", FuncKind::Sin},   {"cos", FuncKind::Cos},  {"tan", FuncKind::Tan},
      {"exp", FuncKind::Exp},   {"log", FuncKind::Log},  {"sqrt", FuncKind::Sqrt},
      {"sinh", FuncKind::Sinh}, {"cosh", FuncKind::Cosh}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

bool is_reserved_symbol(const std::string& name) {
  return name == "hbar" || name == "i" || name == "pi";
}

Expr number_from_double(double v) {
  if (v == 0.0) return Expr::integer(0);
  if (!std::isfinite(v)) throw DomainError("cannot represent a non-finite number");
  int exp2 = 0;
  double mantissa = std::frexp(v, &exp2);  // v = mantissa * 2^exp2, |mantissa| in [0.5, 1)
  long long m = static_cast<long long>(std::ldexp(mantissa, 53));
  long long e = exp2 - 53;
  while (m != 0 && (m & 1ll) == 0) {
    m >>= 1;
    ++e;
  }
  if (e >= 0) {
    if (e > 62) throw DomainError("number too large for an exact literal");
    __int128 shifted = static_cast<__int128>(m) << e;
    if (shifted > std::numeric_limits<long long>::max() ||
        shifted < std::numeric_limits<long long>::min())
      throw DomainError("number too large for an exact literal");
    return Expr::number(Rational(static_cast<long long>(shifted)));
  }
  if (e < -62) {
    int drop = static_cast<int>(-62 - e);
    m >>= drop;
    e = -62;
    if (m == 0) return Expr::integer(0);
  }
  return Expr::number(Rational(m, 1ll << (-e)));
}

bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

namespace {

int kind_rank(ExprKind k) {
  switch (k) {
    case ExprKind::Number: return 0;
    case ExprKind::Symbol: return 1;
    case ExprKind::Func: return 2;
    case ExprKind::Pow: return 3;
    case ExprKind::Mul: return 4;
    case ExprKind::Add: return 5;
    case ExprKind::Div: return 6;
  }
  return 7;
}

}  // namespace

int compare(const Expr& a, const Expr& b) {
  const ExprNode& na = node_of(a);
  const ExprNode& nb = node_of(b);
  if (&na == &nb) return 0;
  int ra = kind_rank(na.kind), rb = kind_rank(nb.kind);
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (na.kind) {
    case ExprKind::Number:
      return Rational::compare(na.number, nb.number);
    case ExprKind::Symbol:
      return na.symbol.compare(nb.symbol) < 0 ? -1 : (na.symbol == nb.symbol ? 0 : 1);
    case ExprKind::Func: {
      if (na.func != nb.func) return static_cast<int>(na.func) < static_cast<int>(nb.func) ? -1 : 1;
      return compare(na.kids[0], nb.kids[0]);
    }
    case ExprKind::Pow: {
      int c = compare(na.kids[0], nb.kids[0]);
      if (c != 0) return c;
      if (na.exponent != nb.exponent) return na.exponent < nb.exponent ? -1 : 1;
      return 0;
    }
    case ExprKind::Add:
    case ExprKind::Mul:
    case ExprKind::Div: {
      std::size_t n = std::min(na.kids.size(), nb.kids.size());
      for (std::size_t k = 0; k < n; ++k) {
        int c = compare(na.kids[k], nb.kids[k]);
        if (c != 0) return c;
      }
      if (na.kids.size() != nb.kids.size()) return na.kids.size() < nb.kids.size() ? -1 : 1;
      return 0;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Canonicalization

namespace {

Expr canon_sum(const std::vector<Expr>& terms);
Expr canon_product(const std::vector<Expr>& factors);
Expr canon_pow(const Expr& base, long long e);
Expr canon_func(FuncKind f, const Expr& arg);

bool is_unit_marker(const Expr& e) { return e.is_one(); }

/// Split a canonical term into (rational coefficient, key), where key is the
/// term with its leading numeric factor removed (1 acts as the unit key).
std::pair<Rational, Expr> split_coefficient(const Expr& term) {
  if (term.is_number()) return {term.number_value(), Expr::integer(1)};
  if (term.kind() == ExprKind::Mul) {
    const auto& kids = term.operands();
    if (!kids.empty() && kids[0].is_number()) {
      if (kids.size() == 2) return {kids[0].number_value(), kids[1]};
      std::vector<Expr> rest(kids.begin() + 1, kids.end());
      return {kids[0].number_value(), Expr::make_product(std::move(rest))};
    }
  }
  return {Rational(1), term};
}

/// Rebuild coefficient * key without re-canonicalizing (parts are canonical).
Expr join_coefficient(const Rational& c, const Expr& key) {
  if (c.is_zero()) return Expr::integer(0);
  if (is_unit_marker(key)) return Expr::number(c);
  if (c.is_one()) return key;
  std::vector<Expr> factors;
  factors.push_back(Expr::number(c));
  if (key.kind() == ExprKind::Mul) {
    for (const auto& f : key.operands()) factors.push_back(f);
  } else {
    factors.push_back(key);
  }
  return Expr::make_product(std::move(factors));
}

Expr canon_sum(const std::vector<Expr>& terms) {
  Rational constant(0);
  std::map<Expr, Rational, ExprLess> by_key;
  std::vector<Expr> flat;
  flat.reserve(terms.size());
  for (const auto& t : terms) {
    if (t.kind() == ExprKind::Add) {
      for (const auto& u : t.operands()) flat.push_back(u);
    } else {
      flat.push_back(t);
    }
  }
  for (const auto& t : flat) {
    if (t.is_number()) {
      constant = constant + t.number_value();
      continue;
    }
    auto [c, key] = split_coefficient(t);
    auto it = by_key.find(key);
    if (it == by_key.end())
      by_key.emplace(key, c);
    else
      it->second = it->second + c;
  }
  std::vector<Expr> out;
  if (!constant.is_zero()) out.push_back(Expr::number(constant));
  for (const auto& [key, c] : by_key) {
    if (c.is_zero()) continue;
    out.push_back(join_coefficient(c, key));
  }
  std::sort(out.begin(), out.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  if (out.empty()) return Expr::integer(0);
  if (out.size() == 1) return out[0];
  return Expr::make_sum(std::move(out));
}

/// Reduce i^e using i^2 = -1. Returns (sign flip, keep a factor of i).
std::pair<bool, bool> reduce_imaginary(long long e) {
  long long m = ((e % 4) + 4) % 4;
  switch (m) {
    case 0: return {false, false};
    case 1: return {false, true};
    case 2: return {true, false};
    default: return {true, true};
  }
}

Expr canon_product(const std::vector<Expr>& factors) {
  Rational coeff(1);
  std::map<Expr, long long, ExprLess> powers;  // base -> accumulated exponent
  std::vector<Expr> irreducible;               // Pow nodes that resist folding (e.g. 0^-1)
  std::vector<Expr> flat;
  flat.reserve(factors.size());
  for (const auto& f : factors) {
    if (f.kind() == ExprKind::Mul) {
      for (const auto& g : f.operands()) flat.push_back(g);
    } else {
      flat.push_back(f);
    }
  }
  for (const auto& f : flat) {
    if (f.is_number()) {
      if (f.is_zero()) return Expr::integer(0);
      coeff = coeff * f.number_value();
      continue;
    }
    if (f.kind() == ExprKind::Pow) {
      const Expr& b = f.operands()[0];
      if (b.is_number()) {
        irreducible.push_back(f);  // only unfoldable numeric powers reach here
        continue;
      }
      powers[b] += f.exponent();
      continue;
    }
    powers[f] += 1;
  }
  std::vector<Expr> out;
  for (const auto& [base, e] : powers) {
    if (e == 0) continue;  // x^0 -> 1
    if (base.is_symbol() && base.symbol_name() == "i") {
      auto [flip, keep_i] = reduce_imaginary(e);
      if (flip) coeff = -coeff;
      if (keep_i) out.push_back(base);
      continue;
    }
    if (e == 1)
      out.push_back(base);
    else
      out.push_back(Expr::make_pow(base, e));
  }
  for (const auto& f : irreducible) out.push_back(f);
  std::sort(out.begin(), out.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  if (coeff.is_zero()) return Expr::integer(0);
  if (out.empty()) return Expr::number(coeff);
  if (!coeff.is_one()) out.insert(out.begin(), Expr::number(coeff));
  if (out.size() == 1) return out[0];
  return Expr::make_product(std::move(out));
}

Expr canon_pow(const Expr& base, long long e) {
  if (e == 0) return Expr::integer(1);  // includes 0^0 -> 1
  if (e == 1) return base;
  switch (base.kind()) {
    case ExprKind::Number: {
      const Rational& r = base.number_value();
      if (r.is_zero()) {
        if (e > 0) return Expr::integer(0);
        return Expr::make_pow(base, e);  // 0^negative kept; evaluation rejects it
      }
      try {
        return Expr::number(r.pow(e));
      } catch (const std::overflow_error&) {
        return Expr::make_pow(base, e);
      }
    }
    case ExprKind::Pow: {
      __int128 prod = static_cast<__int128>(base.exponent()) * e;
      long long narrowed = static_cast<long long>(prod);
      if (static_cast<__int128>(narrowed) != prod) return Expr::make_pow(base, e);
      return canon_pow(base.operands()[0], narrowed);
    }
    case ExprKind::Mul: {
      std::vector<Expr> parts;
      parts.reserve(base.operands().size());
      for (const auto& f : base.operands()) parts.push_back(canon_pow(f, e));
      return canon_product(parts);
    }
    case ExprKind::Symbol: {
      if (base.symbol_name() == "i") {
        auto [flip, keep_i] = reduce_imaginary(e);
        Expr unit = keep_i ? base : Expr::integer(1);
        return flip ? canon_product({Expr::integer(-1), unit}) : unit;
      }
      return Expr::make_pow(base, e);
    }
    default:
      return Expr::make_pow(base, e);
  }
}

Expr canon_div(const Expr& a, const Expr& b) { return canon_product({a, canon_pow(b, -1)}); }

std::optional<long long> integer_sqrt(long long v) {
  if (v < 0) return std::nullopt;
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
  for (long long c = std::max(0ll, r - 2); c <= r + 2; ++c)
    if (c * c == v) return c;
  return std::nullopt;
}

Expr canon_func(FuncKind f, const Expr& arg) {
  if (arg.is_number()) {
    const Rational& r = arg.number_value();
    switch (f) {
      case FuncKind::Sin:
      case FuncKind::Tan:
      case FuncKind::Sinh:
        if (r.is_zero()) return Expr::integer(0);
        break;
      case FuncKind::Cos:
      case FuncKind::Cosh:
        if (r.is_zero()) return Expr::integer(1);
        break;
      case FuncKind::Exp:
        if (r.is_zero()) return Expr::integer(1);
        break;
      case FuncKind::Log:
        if (r.is_one()) return Expr::integer(0);
        break;
      case FuncKind::Sqrt: {
        if (!r.is_negative()) {
          auto n = integer_sqrt(r.num());
          auto d = integer_sqrt(r.den());
          if (n && d) return Expr::number(Rational(*n, *d));
        }
        break;
      }
    }
  }
  return Expr::make_func(f, arg);
}

}  // namespace

Expr simplify(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Number:
    case ExprKind::Symbol:
      return e;
    case ExprKind::Add: {
      std::vector<Expr> kids;
      kids.reserve(e.operands().size());
      for (const auto& k : e.operands()) kids.push_back(simplify(k));
      return canon_sum(kids);
    }
    case ExprKind::Mul: {
      std::vector<Expr> kids;
      kids.reserve(e.operands().size());
      for (const auto& k : e.operands()) kids.push_back(simplify(k));
      return canon_product(kids);
    }
    case ExprKind::Pow:
      return canon_pow(simplify(e.operands()[0]), e.exponent());
    case ExprKind::Div:
      return canon_div(simplify(e.operands()[0]), simplify(e.operands()[1]));
    case ExprKind::Func:
      return canon_func(e.func(), simplify(e.operands()[0]));
  }
  return e;
}

Expr operator+(const Expr& a, const Expr& b) { return canon_sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) {
  return canon_sum({a, canon_product({Expr::integer(-1), b})});
}
Expr operator*(const Expr& a, const Expr& b) { return canon_product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return canon_div(a, b); }
Expr operator-(const Expr& a) { return canon_product({Expr::integer(-1), a}); }
Expr pow(const Expr& base, long long exponent) { return canon_pow(base, exponent); }
Expr apply(FuncKind f, const Expr& arg) { return canon_func(f, arg); }
Expr sum_of(std::vector<Expr> terms) { return canon_sum(terms); }
Expr product_of(std::vector<Expr> factors) { return canon_product(factors); }

// ---------------------------------------------------------------------------
// Printing

namespace {

bool term_is_negative(const Expr& t) {
  if (t.is_number()) return t.number_value().is_negative();
  if (t.kind() == ExprKind::Mul) {
    const auto& kids = t.operands();
    return !kids.empty() && kids[0].is_number() && kids[0].number_value().is_negative();
  }
  return false;
}

Expr negate_term(const Expr& t) { return canon_product({Expr::integer(-1), t}); }

void print(std::ostream& os, const Expr& e);

/// Parenthesization context: a plain product factor, a divisor, or the base
/// of '^' (the tightest spot in the grammar).
enum class PrintCtx { Factor, Divisor, PowBase };

void print_atom(std::ostream& os, const Expr& e, PrintCtx ctx) {
  bool parens = false;
  switch (e.kind()) {
    case ExprKind::Add:
    case ExprKind::Div:
      parens = true;
      break;
    case ExprKind::Mul:
      parens = ctx != PrintCtx::Factor;
      break;
    case ExprKind::Pow:
      parens = ctx == PrintCtx::PowBase || e.exponent() < 0;
      break;
    case ExprKind::Number:
      parens = ctx != PrintCtx::Factor &&
               (e.number_value().is_negative() || !e.number_value().is_integer());
      break;
    default:
      break;
  }
  if (parens) os << '(';
  print(os, e);
  if (parens) os << ')';
}

void print_product(std::ostream& os, const Expr& e) {
  // Collect numerator and denominator factors (negative exponents flip).
  std::vector<Expr> num, den;
  const std::vector<Expr> singleton{e};
  const std::vector<Expr>& kids = e.kind() == ExprKind::Mul ? e.operands() : singleton;
  Rational coeff(1);
  for (const auto& f : kids) {
    if (f.is_number()) {
      coeff = coeff * f.number_value();
    } else if (f.kind() == ExprKind::Pow && f.exponent() < 0) {
      den.push_back(f.exponent() == -1 ? f.operands()[0]
                                       : Expr::make_pow(f.operands()[0], -f.exponent()));
    } else {
      num.push_back(f);
    }
  }
  bool wrote = false;
  if (coeff.is_negative()) {
    os << '-';
    coeff = -coeff;
  }
  if (!coeff.is_one() || num.empty()) {
    os << coeff.num();
    if (coeff.den() != 1) os << '/' << coeff.den();
    wrote = true;
  }
  for (const auto& f : num) {
    if (wrote) os << '*';
    print_atom(os, f, PrintCtx::Factor);
    wrote = true;
  }
  for (const auto& f : den) {
    os << '/';
    print_atom(os, f, PrintCtx::Divisor);
  }
}

void print(std::ostream& os, const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Number: {
      const Rational& r = e.number_value();
      if (r.is_negative()) {
        os << '-' << (-r).str();
      } else {
        os << r.str();
      }
      return;
    }
    case ExprKind::Symbol:
      os << e.symbol_name();
      return;
    case ExprKind::Add: {
      bool first = true;
      for (const auto& t : e.operands()) {
        if (first) {
          if (term_is_negative(t)) {
            os << '-';
            print_atom(os, negate_term(t), PrintCtx::Factor);
          } else {
            print_atom(os, t, PrintCtx::Factor);
          }
          first = false;
          continue;
        }
        if (term_is_negative(t)) {
          os << " - ";
          print_atom(os, negate_term(t), PrintCtx::Factor);
        } else {
          os << " + ";
          print_atom(os, t, PrintCtx::Factor);
        }
      }
      return;
    }
    case ExprKind::Mul:
      print_product(os, e);
      return;
    case ExprKind::Pow: {
      if (e.exponent() < 0) {
        print_product(os, e);  // renders as 1/base^k
        return;
      }
      print_atom(os, e.operands()[0], PrintCtx::PowBase);
      os << '^' << e.exponent();
      return;
    }
    case ExprKind::Div: {
      print_atom(os, e.operands()[0], PrintCtx::Factor);
      os << '/';
      print_atom(os, e.operands()[1], PrintCtx::Divisor);
      return;
    }
    case ExprKind::Func:
      os << func_name(e.func()) << '(';
      print(os, e.operands()[0]);
      os << ')';
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

void collect_symbols(const Expr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case ExprKind::Number:
      return;
    case ExprKind::Symbol:
      out.insert(e.symbol_name());
      return;
    default:
      for (const auto& k : e.operands()) collect_symbols(k, out);
  }
}

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  collect_symbols(e, out);
  return out;
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& replacements) {
  switch (e.kind()) {
    case ExprKind::Number:
      return e;
    case ExprKind::Symbol: {
      auto it = replacements.find(e.symbol_name());
      return it == replacements.end() ? e : it->second;
    }
    case ExprKind::Add: {
      std::vector<Expr> kids;
      kids.reserve(e.operands().size());
      for (const auto& k : e.operands()) kids.push_back(substitute(k, replacements));
      return sum_of(std::move(kids));
    }
    case ExprKind::Mul: {
      std::vector<Expr> kids;
      kids.reserve(e.operands().size());
      for (const auto& k : e.operands()) kids.push_back(substitute(k, replacements));
      return product_of(std::move(kids));
    }
    case ExprKind::Pow:
      return pow(substitute(e.operands()[0], replacements), e.exponent());
    case ExprKind::Div:
      return substitute(e.operands()[0], replacements) /
             substitute(e.operands()[1], replacements);
    case ExprKind::Func:
      return apply(e.func(), substitute(e.operands()[0], replacements));
  }
  return e;
}

}  // namespace rq
