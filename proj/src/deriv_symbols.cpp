#include "rq/deriv_symbols.hpp"

#include <algorithm>

namespace rq {

DerivFamily::DerivFamily(std::string base) : base_(std::move(base)) {
  if (base_.empty()) throw DomainError("derivative family needs a base name");
}

std::string DerivFamily::symbol(std::vector<int> indices) const {
  if (indices.empty()) return base_;
  std::sort(indices.begin(), indices.end());
  std::string name = base_ + "_";
  for (int k : indices) {
    if (k < 1 || k > 9) throw DomainError("derivative symbols support coordinate positions 1..9");
    name += static_cast<char>('0' + k);
  }
  return name;
}

bool DerivFamily::matches(const std::string& name) const { return order(name) >= 0; }

int DerivFamily::order(const std::string& name) const {
  if (name == base_) return 0;
  if (name.size() <= base_.size() + 1) return -1;
  if (name.compare(0, base_.size(), base_) != 0 || name[base_.size()] != '_') return -1;
  int count = 0;
  for (std::size_t k = base_.size() + 1; k < name.size(); ++k) {
    if (name[k] < '1' || name[k] > '9') return -1;
    ++count;
  }
  return count;
}

std::vector<int> DerivFamily::indices(const std::string& name) const {
  std::vector<int> out;
  int n = order(name);
  if (n <= 0) return out;
  for (std::size_t k = base_.size() + 1; k < name.size(); ++k) out.push_back(name[k] - '0');
  return out;
}

std::string DerivFamily::differentiated(const std::string& name, int position) const {
  std::vector<int> idx = indices(name);
  idx.push_back(position);
  return symbol(std::move(idx));
}

DerivativeTable DerivFamily::table(const std::vector<std::string>& coordinates) const {
  DerivFamily self = *this;
  std::vector<std::string> coords = coordinates;
  DerivativeTable t;
  t.rule = [self, coords](const std::string& name,
                          const std::string& wrt) -> std::optional<Expr> {
    if (!self.matches(name)) return std::nullopt;
    for (std::size_t j = 0; j < coords.size(); ++j) {
      if (coords[j] == wrt)
        return Expr::symbol(self.differentiated(name, static_cast<int>(j) + 1));
    }
    return std::nullopt;  // derivative w.r.t. a non-coordinate: constant
  };
  return t;
}

int DerivFamily::max_order_in(const Expr& e) const {
  std::set<std::string> symbols;
  collect_symbols(e, symbols);
  int best = -1;
  for (const auto& s : symbols) best = std::max(best, order(s));
  return best;
}

}  // namespace rq
