#include "rq/probe.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace rq {

ProbeDomain& ProbeDomain::set(const std::string& symbol, double lo, double hi) {
  if (!(lo < hi)) throw DomainError("probe interval for '" + symbol + "' is empty");
  intervals_[symbol] = Interval{lo, hi};
  return *this;
}

ProbeDomain& ProbeDomain::set_hbar(double value) {
  hbar_value_ = value;
  return *this;
}

ProbeDomain& ProbeDomain::set_seed(std::uint64_t seed) {
  seed_ = seed;
  return *this;
}

bool ProbeDomain::covers(const std::string& symbol) const {
  return intervals_.count(symbol) > 0 || is_reserved_symbol(symbol);
}

double probe_max_deviation(const Expr& a, const Expr& b, const ProbeDomain& domain,
                           const ProbeOptions& options) {
  Expr sa = simplify(a);
  Expr sb = simplify(b);
  if (sa == sb) return 0.0;

  std::set<std::string> symbols;
  collect_symbols(sa, symbols);
  collect_symbols(sb, symbols);
  std::vector<std::string> sampled;
  for (const auto& s : symbols) {
    if (domain.intervals().count(s)) {
      sampled.push_back(s);  // includes hbar when an interval overrides the default
    } else if (!is_reserved_symbol(s)) {
      throw DomainError("probe domain does not cover symbol '" + s + "'");
    }
  }
  std::sort(sampled.begin(), sampled.end());

  ProbeRng rng(domain.seed());
  EvalOptions eval_options;
  eval_options.hbar = domain.hbar_value();
  eval_options.real_branch_guard = true;

  double worst = 0.0;
  for (int point = 0; point < options.points; ++point) {
    bool ok = false;
    for (int attempt = 0; attempt <= options.max_retries && !ok; ++attempt) {
      std::map<std::string, Complex> assignment;
      for (const auto& s : sampled)
        assignment[s] = Complex(rng.uniform(domain.intervals().at(s)), 0.0);
      try {
        Complex va = evaluate(sa, assignment, eval_options);
        Complex vb = evaluate(sb, assignment, eval_options);
        double scale = 1.0 + std::max(std::abs(va), std::abs(vb));
        worst = std::max(worst, std::abs(va - vb) / scale);
        ok = true;
      } catch (const EvalError&) {
        // resample this point
      }
    }
    if (!ok) throw EvalError("probing failed: evaluation error at all retry attempts");
  }
  return worst;
}

bool probably_equal(const Expr& a, const Expr& b, const ProbeDomain& domain,
                    const ProbeOptions& options) {
  Expr sa = simplify(a);
  Expr sb = simplify(b);
  if (sa == sb) return true;
  return probe_max_deviation(sa, sb, domain, options) <= options.rel_tol;
}

bool probably_zero(const Expr& e, const ProbeDomain& domain, const ProbeOptions& options) {
  return probably_equal(e, Expr::integer(0), domain, options);
}

}  // namespace rq
