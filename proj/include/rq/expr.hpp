#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rq/errors.hpp"
#include "rq/rational.hpp"

namespace rq {

enum class ExprKind { Number, Symbol, Add, Mul, Pow, Div, Func };

enum class FuncKind { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh };

const char* func_name(FuncKind f);
std::optional<FuncKind> func_from_name(const std::string& name);

struct ExprNode;

/// Immutable symbolic expression. Copying is cheap (shared tree).
///
/// Trees come in two flavours: raw trees straight out of the parser (binary
/// chains, explicit quotients) and canonical trees produced by simplify() and
/// by the arithmetic operators. All algorithm code works on canonical trees.
class Expr {
 public:
  Expr();  // the number 0

  // Raw constructors (parser and tests). No canonicalization.
  static Expr number(const Rational& r);
  static Expr integer(long long v);
  static Expr symbol(const std::string& name);
  static Expr make_sum(std::vector<Expr> terms);
  static Expr make_product(std::vector<Expr> factors);
  static Expr make_pow(Expr base, long long exponent);
  static Expr make_quotient(Expr numerator, Expr denominator);
  static Expr make_func(FuncKind f, Expr arg);

  ExprKind kind() const;
  bool is_number() const { return kind() == ExprKind::Number; }
  bool is_symbol() const { return kind() == ExprKind::Symbol; }
  bool is_zero() const;
  bool is_one() const;

  const Rational& number_value() const;
  const std::string& symbol_name() const;
  /// Operands of Add/Mul; {base} for Pow; {numerator, denominator} for Div;
  /// {argument} for Func.
  const std::vector<Expr>& operands() const;
  long long exponent() const;
  FuncKind func() const;

  /// Structural equality (same tree shape and content).
  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node);
  std::shared_ptr<const ExprNode> node_;
  friend struct ExprNode;
  friend const ExprNode& node_of(const Expr& e);
};

/// Total deterministic order over expressions; defines canonical sorting.
int compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

/// Canonical form: flattened and sorted sums/products, collected rational
/// coefficients, merged like factors/terms, i^2 -> -1, x^0 -> 1, 0*x -> 0,
/// quotients folded into negative powers. Idempotent.
Expr simplify(const Expr& e);

// Canonicalizing arithmetic. Inputs are expected canonical; outputs are.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, long long exponent);
Expr apply(FuncKind f, const Expr& arg);
Expr sum_of(std::vector<Expr> terms);
Expr product_of(std::vector<Expr> factors);

/// Grammar-conformant rendering; parse(to_string(e)) == e up to simplify.
std::string to_string(const Expr& e);

/// All symbol names appearing in the tree, reserved ones included.
std::set<std::string> free_symbols(const Expr& e);
void collect_symbols(const Expr& e, std::set<std::string>& out);

/// Replace symbols by expressions (single pass, no re-substitution).
/// The result is canonical if the replacements are.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& replacements);

bool is_reserved_symbol(const std::string& name);  // hbar, i, pi

/// Nearest dyadic rational literal for a double (exact for doubles whose
/// denominator fits 62 bits).
Expr number_from_double(double v);

inline Expr hbar() { return Expr::symbol("hbar"); }
inline Expr imaginary_unit() { return Expr::symbol("i"); }

/// Parse `text` against the expression grammar (see README). Throws
/// ParseError with a byte offset on malformed input.
Expr parse(const std::string& text);

/// Extra differentiation rules for symbols that stand for opaque functions:
/// maps (symbol name, coordinate name) to the derivative expression, or
/// nullopt to treat the symbol as constant.
struct DerivativeTable {
  std::function<std::optional<Expr>(const std::string& symbol, const std::string& wrt)> rule;
  bool empty() const { return !rule; }
};

/// Exact partial derivative. Reserved symbols are constants; differentiating
/// with respect to a reserved symbol yields zero. Result is canonical.
Expr differentiate(const Expr& e, const std::string& symbol);
Expr differentiate(const Expr& e, const std::string& symbol, const DerivativeTable& table);

using Complex = std::complex<double>;

struct EvalOptions {
  double hbar = 1.0;  // used when "hbar" is not in the assignment
  /// When set, sqrt/log of a negative real argument raises EvalError instead
  /// of taking the complex principal branch (probing samples real points).
  bool real_branch_guard = false;
};

/// Numeric evaluation. `i` and `pi` are built in; every other free symbol
/// must be assigned (hbar falls back to options). Throws EvalError.
Complex evaluate(const Expr& e, const std::map<std::string, Complex>& assignment,
                 const EvalOptions& options = {});

}  // namespace rq
