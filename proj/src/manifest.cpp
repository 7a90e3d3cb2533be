#include "rq/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rq {

namespace {

using nlohmann::json;

[[noreturn]] void reject(const std::string& message, const std::string& path) {
  throw ManifestError(message, path);
}

const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) reject("expected an object", path);
  auto it = obj.find(key);
  if (it == obj.end()) reject(std::string("missing required field '") + key + "'", path);
  return *it;
}

std::string string_at(const json& v, const std::string& path) {
  if (!v.is_string()) reject("expected a string", path);
  return v.get<std::string>();
}

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) reject("expected a number", path);
  return v.get<double>();
}

int int_at(const json& v, const std::string& path) {
  if (!v.is_number_integer()) reject("expected an integer", path);
  return v.get<int>();
}

Expr expr_at(const json& v, const std::string& path) {
  std::string text = string_at(v, path);
  try {
    return simplify(parse(text));
  } catch (const ParseError& err) {
    reject(std::string("expression does not parse: ") + err.what(), path);
  }
}

void check_symbols(const Expr& e, const Chart& chart, const std::string& path) {
  for (const auto& s : free_symbols(e)) {
    if (is_reserved_symbol(s)) continue;
    if (chart.index_of(s) < 0) reject("expression uses unknown symbol '" + s + "'", path);
  }
}

Chart parse_chart(const json& root) {
  const json& chart_json = member(root, "chart", "");
  const json& coords = member(chart_json, "coordinates", "chart");
  if (!coords.is_array() || coords.empty()) reject("expected a nonempty array", "chart.coordinates");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < coords.size(); ++k)
    names.push_back(string_at(coords[k], "chart.coordinates[" + std::to_string(k) + "]"));
  const json& intervals = member(chart_json, "intervals", "chart");
  if (!intervals.is_object()) reject("expected an object", "chart.intervals");
  for (auto it = intervals.begin(); it != intervals.end(); ++it) {
    bool known = false;
    for (const auto& n : names) known = known || n == it.key();
    if (!known) reject("interval for unknown coordinate", "chart.intervals." + it.key());
  }
  std::vector<Interval> ranges;
  for (const auto& n : names) {
    std::string path = "chart.intervals." + n;
    auto it = intervals.find(n);
    if (it == intervals.end()) reject("missing probe interval", path);
    if (!it->is_array() || it->size() != 2) reject("expected [lo, hi]", path);
    double lo = number_at((*it)[0], path + "[0]");
    double hi = number_at((*it)[1], path + "[1]");
    if (!(lo < hi)) reject("interval is empty", path);
    ranges.push_back(Interval{lo, hi});
  }
  try {
    return Chart(names, ranges);
  } catch (const DomainError& err) {
    reject(err.what(), "chart");
  }
}

Metric parse_metric(const json& root, const Chart& chart) {
  const json& m = member(root, "metric", "");
  int n = chart.dim();
  if (!m.is_array() || static_cast<int>(m.size()) != n)
    reject("expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix", "metric");
  std::vector<std::vector<Expr>> entries(n, std::vector<Expr>(n));
  for (int r = 0; r < n; ++r) {
    std::string row_path = "metric[" + std::to_string(r) + "]";
    if (!m[r].is_array() || static_cast<int>(m[r].size()) != n) reject("expected a row", row_path);
    for (int c = 0; c < n; ++c) {
      std::string path = row_path + "[" + std::to_string(c) + "]";
      entries[r][c] = expr_at(m[r][c], path);
      check_symbols(entries[r][c], chart, path);
    }
  }
  for (int r = 0; r < n; ++r)
    for (int c = r + 1; c < n; ++c)
      if (entries[r][c] != entries[c][r])
        reject("metric is not symmetric", "metric[" + std::to_string(r) + "][" +
                                              std::to_string(c) + "]");
  try {
    return Metric(chart, entries);
  } catch (const DomainError& err) {
    reject(err.what(), "metric");
  }
}

std::vector<int> parse_index_tuple(const std::string& key, const Chart& chart, int degree,
                                   const std::string& path) {
  std::vector<int> tuple;
  if (!key.empty()) {
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
      int idx = chart.index_of(part);
      if (idx < 0) reject("unknown coordinate '" + part + "' in tensor index", path);
      tuple.push_back(idx);
    }
  }
  if (static_cast<int>(tuple.size()) != degree)
    reject("index tuple length does not match the tensor degree", path);
  for (std::size_t k = 1; k < tuple.size(); ++k)
    if (tuple[k - 1] > tuple[k]) reject("tensor index tuple must be sorted", path);
  return tuple;
}

void parse_tensors(const json& root, const Chart& chart, Manifest& manifest) {
  auto it = root.find("tensors");
  if (it == root.end()) return;
  if (!it->is_object()) reject("expected an object", "tensors");
  for (auto t = it->begin(); t != it->end(); ++t) {
    std::string base = "tensors." + t.key();
    int degree = int_at(member(*t, "degree", base), base + ".degree");
    if (degree < 0 || degree > 6) reject("tensor degree must be between 0 and 6", base + ".degree");
    const json& comps = member(*t, "components", base);
    if (!comps.is_object()) reject("expected an object", base + ".components");
    std::map<std::vector<int>, Expr> components;
    for (auto c = comps.begin(); c != comps.end(); ++c) {
      std::string path = base + ".components." + (c.key().empty() ? "<empty>" : c.key());
      std::vector<int> tuple = parse_index_tuple(c.key(), chart, degree, path);
      Expr value = expr_at(*c, path);
      check_symbols(value, chart, path);
      if (!components.emplace(tuple, value).second) reject("duplicate index tuple", path);
    }
    manifest.tensors.emplace(t.key(), SymCoTensor(chart, degree, std::move(components)));
  }
}

void parse_fields(const json& root, const Chart& chart, Manifest& manifest) {
  auto it = root.find("fields");
  if (it == root.end()) return;
  if (!it->is_object()) reject("expected an object", "fields");
  for (auto f = it->begin(); f != it->end(); ++f) {
    std::string base = "fields." + f.key();
    if (!f->is_array() || static_cast<int>(f->size()) != chart.dim())
      reject("expected one component per coordinate", base);
    std::vector<Expr> comps;
    for (int j = 0; j < chart.dim(); ++j) {
      std::string path = base + "[" + std::to_string(j) + "]";
      Expr value = expr_at((*f)[j], path);
      check_symbols(value, chart, path);
      comps.push_back(value);
    }
    manifest.fields.emplace(f.key(), VectorField(chart, std::move(comps)));
  }
}

void parse_grid(const json& root, const Chart& chart, Manifest& manifest) {
  auto it = root.find("grid");
  if (it == root.end()) return;
  GridSpec grid;
  grid.coordinate = string_at(member(*it, "coordinate", "grid"), "grid.coordinate");
  if (chart.index_of(grid.coordinate) < 0)
    reject("grid coordinate is not on the chart", "grid.coordinate");
  const json& interval = member(*it, "interval", "grid");
  if (!interval.is_array() || interval.size() != 2) reject("expected [lo, hi]", "grid.interval");
  grid.lo = number_at(interval[0], "grid.interval[0]");
  grid.hi = number_at(interval[1], "grid.interval[1]");
  grid.points = int_at(member(*it, "points", "grid"), "grid.points");
  std::string boundary = string_at(member(*it, "boundary", "grid"), "grid.boundary");
  if (boundary == "dirichlet")
    grid.boundary = Boundary::Dirichlet;
  else if (boundary == "periodic")
    grid.boundary = Boundary::Periodic;
  else
    reject("boundary must be 'dirichlet' or 'periodic'", "grid.boundary");
  if (it->contains("hbar")) grid.hbar = number_at((*it)["hbar"], "grid.hbar");
  try {
    grid.validate();
  } catch (const DomainError& err) {
    reject(err.what(), "grid");
  }
  manifest.grid = grid;
}

void parse_actions(const json& root, const Chart& chart, Manifest& manifest) {
  auto it = root.find("actions");
  if (it == root.end()) return;
  if (!it->is_object()) reject("expected an object", "actions");
  for (auto a = it->begin(); a != it->end(); ++a) {
    std::string base = "actions." + a.key();
    Manifest::Action action{expr_at(member(*a, "expression", base), base + ".expression"),
                            number_at(member(*a, "energy", base), base + ".energy")};
    check_symbols(action.expression, chart, base + ".expression");
    manifest.actions.emplace(a.key(), std::move(action));
  }
}

}  // namespace

const SymCoTensor& Manifest::tensor(const std::string& name) const {
  auto it = tensors.find(name);
  if (it == tensors.end()) throw ManifestError("tensor not defined", "tensors." + name);
  return it->second;
}

const VectorField& Manifest::field(const std::string& name) const {
  auto it = fields.find(name);
  if (it == fields.end()) throw ManifestError("vector field not defined", "fields." + name);
  return it->second;
}

const Manifest::Action& Manifest::action(const std::string& name) const {
  auto it = actions.find(name);
  if (it == actions.end()) throw ManifestError("action not defined", "actions." + name);
  return it->second;
}

const GridSpec& Manifest::grid_or_throw() const {
  if (!grid) throw ManifestError("manifest has no grid settings", "grid");
  return *grid;
}

ProbeDomain Manifest::probe_domain(std::uint64_t seed) const {
  ProbeDomain d = chart.probe_domain(seed);
  d.set_hbar(hbar_default);
  return d;
}

Manifest parse_manifest(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ManifestError(std::string("invalid JSON: ") + err.what(), "");
  }
  if (!root.is_object()) throw ManifestError("manifest root must be an object", "");

  Chart chart = parse_chart(root);
  Metric metric = parse_metric(root, chart);
  Manifest manifest(chart, metric);

  parse_tensors(root, chart, manifest);
  parse_fields(root, chart, manifest);
  if (root.contains("potential")) {
    manifest.potential = expr_at(root["potential"], "potential");
    check_symbols(*manifest.potential, chart, "potential");
  }
  parse_grid(root, chart, manifest);
  parse_actions(root, chart, manifest);
  if (root.contains("hbar")) manifest.hbar_default = number_at(root["hbar"], "hbar");
  return manifest;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError("cannot open manifest file '" + path + "'", "");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_manifest(buffer.str());
}

}  // namespace rq
