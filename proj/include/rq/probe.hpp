#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "rq/expr.hpp"

namespace rq {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Deterministic xorshift64* generator used for all probe sampling, so that
/// probing is reproducible across runs and implementations (see README).
class ProbeRng {
 public:
  explicit ProbeRng(std::uint64_t seed) : state_(seed != 0 ? seed : 0x9E3779B97F4A7C15ull) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1Dull;
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(const Interval& iv) { return iv.lo + uniform01() * (iv.hi - iv.lo); }

 private:
  std::uint64_t state_;
};

/// Per-symbol sampling intervals plus the default numeric value of hbar.
/// Symbols are drawn in lexicographic name order from a seeded ProbeRng.
class ProbeDomain {
 public:
  ProbeDomain() = default;

  ProbeDomain& set(const std::string& symbol, double lo, double hi);
  ProbeDomain& set_hbar(double value);
  ProbeDomain& set_seed(std::uint64_t seed);

  bool covers(const std::string& symbol) const;
  const std::map<std::string, Interval>& intervals() const { return intervals_; }
  double hbar_value() const { return hbar_value_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::map<std::string, Interval> intervals_;
  double hbar_value_ = 1.0;
  std::uint64_t seed_ = 42;
};

struct ProbeOptions {
  int points = 25;
  double rel_tol = 1e-9;
  int max_retries = 100;  // resamples per point on evaluation failure
};

/// Largest relative deviation |a-b| / (1 + max(|a|,|b|)) observed over the
/// sampled points. Throws EvalError if a point cannot be evaluated after the
/// retry budget, and DomainError if a free symbol is not covered.
double probe_max_deviation(const Expr& a, const Expr& b, const ProbeDomain& domain,
                           const ProbeOptions& options = {});

/// Semi-decision equality: structural equality after simplify short-circuits,
/// otherwise all probe points must agree within options.rel_tol.
bool probably_equal(const Expr& a, const Expr& b, const ProbeDomain& domain,
                    const ProbeOptions& options = {});

bool probably_zero(const Expr& e, const ProbeDomain& domain, const ProbeOptions& options = {});

}  // namespace rq
