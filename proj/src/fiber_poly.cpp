#include "rq/fiber_poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rq {

FiberPoly::FiberPoly(Chart chart) : chart_(std::move(chart)) {}

FiberPoly::FiberPoly(Chart chart, std::map<Monomial, Expr> terms) : chart_(std::move(chart)) {
  for (auto& [m, c] : terms) {
    if (static_cast<int>(m.size()) != chart_.dim())
      throw DomainError("fiber monomial length does not match chart dimension");
    for (int e : m)
      if (e < 0) throw DomainError("fiber monomial with negative exponent");
    Expr s = simplify(c);
    if (!s.is_zero()) terms_.emplace(m, std::move(s));
  }
}

FiberPoly FiberPoly::constant(const Chart& chart, const Expr& value) {
  std::map<Monomial, Expr> t;
  t.emplace(Monomial(chart.dim(), 0), value);
  return FiberPoly(chart, std::move(t));
}

FiberPoly FiberPoly::velocity(const Chart& chart, int j) {
  Monomial m(chart.dim(), 0);
  m.at(j) = 1;
  std::map<Monomial, Expr> t;
  t.emplace(std::move(m), Expr::integer(1));
  return FiberPoly(chart, std::move(t));
}

Expr FiberPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Expr::integer(0) : it->second;
}

int FiberPoly::degree() const {
  int best = 0;
  for (const auto& [m, c] : terms_)
    best = std::max(best, std::accumulate(m.begin(), m.end(), 0));
  return best;
}

bool FiberPoly::is_homogeneous(int d) const {
  for (const auto& [m, c] : terms_)
    if (std::accumulate(m.begin(), m.end(), 0) != d) return false;
  return true;
}

FiberPoly FiberPoly::scaled(const Expr& factor) const {
  std::map<Monomial, Expr> out;
  for (const auto& [m, c] : terms_) out.emplace(m, factor * c);
  return FiberPoly(chart_, std::move(out));
}

FiberPoly FiberPoly::homogeneous_part(int d) const {
  std::map<Monomial, Expr> out;
  for (const auto& [m, c] : terms_)
    if (std::accumulate(m.begin(), m.end(), 0) == d) out.emplace(m, c);
  return FiberPoly(chart_, std::move(out));
}

FiberPoly FiberPoly::truncated(int max_degree) const {
  std::map<Monomial, Expr> out;
  for (const auto& [m, c] : terms_)
    if (std::accumulate(m.begin(), m.end(), 0) <= max_degree) out.emplace(m, c);
  return FiberPoly(chart_, std::move(out));
}

FiberPoly FiberPoly::fiber_derivative(int j) const {
  std::map<Monomial, Expr> out;
  for (const auto& [m, c] : terms_) {
    if (m[j] == 0) continue;
    Monomial d = m;
    d[j] -= 1;
    Expr term = Expr::integer(m[j]) * c;
    auto it = out.find(d);
    if (it == out.end())
      out.emplace(std::move(d), term);
    else
      it->second = it->second + term;
  }
  return FiberPoly(chart_, std::move(out));
}

Expr FiberPoly::substitute_fiber(const std::vector<Expr>& replacement) const {
  if (static_cast<int>(replacement.size()) != chart_.dim())
    throw DomainError("fiber substitution needs one expression per coordinate");
  Expr acc = Expr::integer(0);
  for (const auto& [m, c] : terms_) {
    Expr term = c;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[j] > 0) term = term * pow(replacement[j], m[j]);
    acc = acc + term;
  }
  return simplify(acc);
}

FiberPoly FiberPoly::compose_linear(const std::vector<std::vector<Expr>>& m) const {
  int n = chart_.dim();
  std::vector<FiberPoly> images;
  images.reserve(n);
  for (int j = 0; j < n; ++j) {
    std::map<Monomial, Expr> t;
    for (int k = 0; k < n; ++k) {
      Monomial mono(n, 0);
      mono[k] = 1;
      Expr c = simplify(m.at(j).at(k));
      if (!c.is_zero()) t.emplace(std::move(mono), c);
    }
    images.push_back(FiberPoly(chart_, std::move(t)));
  }
  FiberPoly acc(chart_);
  for (const auto& [mono, c] : terms_) {
    FiberPoly term = FiberPoly::constant(chart_, c);
    for (std::size_t j = 0; j < mono.size(); ++j)
      for (int e = 0; e < mono[j]; ++e) term = multiply(term, images[j]);
    acc = acc + term;
  }
  return acc;
}

Expr FiberPoly::to_expr() const {
  std::vector<Expr> velocities;
  for (int j = 0; j < chart_.dim(); ++j) velocities.push_back(Expr::symbol(chart_.velocity(j)));
  Expr acc = Expr::integer(0);
  for (const auto& [m, c] : terms_) {
    Expr term = c;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[j] > 0) term = term * pow(velocities[j], m[j]);
    acc = acc + term;
  }
  return acc;
}

FiberPoly operator+(const FiberPoly& a, const FiberPoly& b) {
  require_same_chart(a.chart(), b.chart(), "fiber polynomial addition");
  std::map<Monomial, Expr> out = a.terms_;
  for (const auto& [m, c] : b.terms_) {
    auto it = out.find(m);
    if (it == out.end())
      out.emplace(m, c);
    else
      it->second = it->second + c;
  }
  return FiberPoly(a.chart_, std::move(out));
}

FiberPoly operator-(const FiberPoly& a, const FiberPoly& b) {
  return a + b.scaled(Expr::integer(-1));
}

FiberPoly multiply(const FiberPoly& a, const FiberPoly& b, int max_degree) {
  require_same_chart(a.chart(), b.chart(), "fiber polynomial product");
  std::map<Monomial, Expr> out;
  for (const auto& [ma, ca] : a.terms()) {
    int da = std::accumulate(ma.begin(), ma.end(), 0);
    for (const auto& [mb, cb] : b.terms()) {
      if (max_degree >= 0) {
        int db = std::accumulate(mb.begin(), mb.end(), 0);
        if (da + db > max_degree) continue;
      }
      Monomial m = ma;
      for (std::size_t j = 0; j < m.size(); ++j) m[j] += mb[j];
      Expr term = ca * cb;
      auto it = out.find(m);
      if (it == out.end())
        out.emplace(std::move(m), term);
      else
        it->second = it->second + term;
    }
  }
  return FiberPoly(a.chart(), std::move(out));
}

std::string to_string(const FiberPoly& p) {
  if (p.terms().empty()) return "0";
  std::vector<std::pair<Monomial, Expr>> rows(p.terms().begin(), p.terms().end());
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    int dx = std::accumulate(x.first.begin(), x.first.end(), 0);
    int dy = std::accumulate(y.first.begin(), y.first.end(), 0);
    if (dx != dy) return dx < dy;
    return x.first < y.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : rows) {
    if (!first) os << "\n";
    std::string mono;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += p.chart().velocity(static_cast<int>(j));
      if (m[j] > 1) mono += "^" + std::to_string(m[j]);
    }
    if (mono.empty()) mono = "1";
    os << mono << ": " << to_string(c);
    first = false;
  }
  return os.str();
}

Monomial tuple_to_monomial(const std::vector<int>& tuple, int dim) {
  Monomial m(dim, 0);
  for (int k : tuple) m.at(k) += 1;
  return m;
}

std::vector<int> monomial_to_tuple(const Monomial& m) {
  std::vector<int> tuple;
  for (std::size_t j = 0; j < m.size(); ++j)
    for (int k = 0; k < m[j]; ++k) tuple.push_back(static_cast<int>(j));
  return tuple;
}

}  // namespace rq
