#include "rq/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "rq/fourier.hpp"

namespace rq {

const std::vector<std::string> kCommands = {
    "christoffel", "expmap",  "quantize", "laplace-check", "commutator", "defect",
    "poisson",     "fourier-check", "spectrum", "wave-check", "hj-check"};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "command: " << command << "\n";
  for (const auto& [key, value] : inputs) os << "input " << key << " = " << value << "\n";
  for (const auto& row : results) {
    os << "result " << row.label << " = ";
    if (row.number)
      os << format_double(*row.number);
    else
      os << row.text;
    os << "\n";
  }
  for (const auto& check : checks) {
    os << "check " << check.name << ": " << (check.passed ? "PASS" : "FAIL")
       << " (value=" << format_double(check.value)
       << ", tolerance=" << format_double(check.tolerance) << ")\n";
  }
  return os.str();
}

std::string Report::to_json() const {
  nlohmann::ordered_json root;
  root["command"] = command;
  nlohmann::ordered_json in = nlohmann::ordered_json::object();
  for (const auto& [key, value] : inputs) in[key] = value;
  root["inputs"] = in;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : results) {
    nlohmann::ordered_json r;
    r["label"] = row.label;
    if (row.number)
      r["value"] = *row.number;
    else
      r["value"] = row.text;
    rows.push_back(r);
  }
  root["results"] = rows;
  nlohmann::ordered_json checks_json = nlohmann::ordered_json::array();
  for (const auto& check : checks) {
    nlohmann::ordered_json c;
    c["name"] = check.name;
    c["passed"] = check.passed;
    c["value"] = check.value;
    c["tolerance"] = check.tolerance;
    checks_json.push_back(c);
  }
  root["checks"] = checks_json;
  return root.dump(2) + "\n";
}

bool Report::all_checks_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRow& c) { return c.passed; });
}

namespace {

std::string monomial_label(const Chart& chart, const Monomial& m) {
  std::string out;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[j] == 0) continue;
    if (!out.empty()) out += "*";
    out += chart.velocity(static_cast<int>(j));
    if (m[j] > 1) out += "^" + std::to_string(m[j]);
  }
  return out.empty() ? "1" : out;
}

void append_operator_rows(Report& report, const DiffOperator& op, const std::string& prefix) {
  std::vector<std::pair<MultiIndex, Expr>> rows(op.coefficients().begin(),
                                                op.coefficients().end());
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    int ox = multi_index_order(x.first), oy = multi_index_order(y.first);
    if (ox != oy) return ox < oy;
    return x.first < y.first;
  });
  if (rows.empty()) {
    report.results.push_back({prefix, "0", std::nullopt});
    return;
  }
  for (const auto& [alpha, c] : rows)
    report.results.push_back(
        {prefix + "[" + multi_index_label(alpha, op.chart()) + "]", to_string(c), std::nullopt});
}

void append_poly_rows(Report& report, const FiberPoly& p, const std::string& prefix) {
  std::vector<std::pair<Monomial, Expr>> rows(p.terms().begin(), p.terms().end());
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    int dx = std::accumulate(x.first.begin(), x.first.end(), 0);
    int dy = std::accumulate(y.first.begin(), y.first.end(), 0);
    if (dx != dy) return dx < dy;
    return x.first < y.first;
  });
  if (rows.empty()) {
    report.results.push_back({prefix, "0", std::nullopt});
    return;
  }
  for (const auto& [m, c] : rows)
    report.results.push_back(
        {prefix + "[" + monomial_label(p.chart(), m) + "]", to_string(c), std::nullopt});
}

/// Max probing deviation between operators over the union of their indices.
double operator_deviation(const DiffOperator& a, const DiffOperator& b,
                          const ProbeDomain& domain) {
  std::set<MultiIndex> indices;
  for (const auto& [alpha, c] : a.coefficients()) indices.insert(alpha);
  for (const auto& [alpha, c] : b.coefficients()) indices.insert(alpha);
  double worst = 0.0;
  for (const auto& alpha : indices)
    worst = std::max(worst,
                     probe_max_deviation(a.coefficient(alpha), b.coefficient(alpha), domain));
  return worst;
}

Expr minus_hbar_squared() {
  return product_of({Expr::integer(-1), pow(hbar(), 2)});
}

Report cmd_christoffel(const Manifest& manifest) {
  Report report;
  ChristoffelField gamma = christoffel(manifest.metric);
  const Chart& chart = manifest.chart;
  int n = chart.dim();
  bool any = false;
  for (int j = 0; j < n; ++j) {
    for (int r = 0; r < n; ++r) {
      for (int s = r; s < n; ++s) {
        const Expr& value = gamma.at(j, r, s);
        if (value.is_zero()) continue;
        report.results.push_back({"Gamma[" + chart.coordinate(j) + "][" + chart.coordinate(r) +
                                      "," + chart.coordinate(s) + "]",
                                  to_string(value), std::nullopt});
        any = true;
      }
    }
  }
  if (!any) report.results.push_back({"Gamma", "0", std::nullopt});
  return report;
}

Report cmd_expmap(const Manifest& manifest, const RunOptions& options) {
  Report report;
  JetMap jet = geodesic_jet(manifest.metric, options.order);
  const Chart& chart = manifest.chart;
  for (int j = 0; j < chart.dim(); ++j) {
    std::vector<std::pair<Monomial, Expr>> rows(jet.coordinate(j).terms().begin(),
                                                jet.coordinate(j).terms().end());
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
      int dx = std::accumulate(x.first.begin(), x.first.end(), 0);
      int dy = std::accumulate(y.first.begin(), y.first.end(), 0);
      if (dx != dy) return dx < dy;
      return x.first < y.first;
    });
    for (const auto& [m, c] : rows)
      report.results.push_back({"exp[" + chart.coordinate(j) + "][" + monomial_label(chart, m) +
                                    "]",
                                to_string(c), std::nullopt});
  }
  return report;
}

Report cmd_quantize(const Manifest& manifest, const RunOptions& options) {
  if (options.tensor.empty()) throw ManifestError("quantize needs --tensor", "tensors");
  Report report;
  DiffOperator op = quantize(manifest.tensor(options.tensor), manifest.metric);
  append_operator_rows(report, op, "coefficient");
  return report;
}

Report cmd_laplace_check(const Manifest& manifest, const RunOptions& options) {
  Report report;
  DiffOperator quantized = quantize(SymCoTensor::metric_tensor(manifest.metric), manifest.metric);
  DiffOperator oracle = laplace_beltrami(manifest.metric).scaled(minus_hbar_squared());
  append_operator_rows(report, quantized, "coefficient");
  ProbeDomain domain = manifest.probe_domain(options.seed);
  double deviation = operator_deviation(quantized, oracle, domain);
  report.checks.push_back({"laplacian-identity", deviation <= 1e-9, deviation, 1e-9});
  return report;
}

Report cmd_commutator(const Manifest& manifest, const RunOptions& options) {
  if (options.tensor.empty() || options.tensor2.empty())
    throw ManifestError("commutator needs --tensor and --tensor2", "tensors");
  Report report;
  const SymCoTensor& a = manifest.tensor(options.tensor);
  const SymCoTensor& b = manifest.tensor(options.tensor2);
  DiffOperator comm =
      commutator(quantize(a, manifest.metric), quantize(b, manifest.metric));
  append_operator_rows(report, comm, "commutator");
  BracketCommutatorReport rep = bracket_vs_commutator_report(a, b, manifest.metric);
  append_operator_rows(report, rep.defect, "defect");
  report.results.push_back(
      {"defect_probably_zero", rep.defect_probably_zero ? "true" : "false", std::nullopt});
  report.results.push_back({"max_coeff_derivative_order", "",
                            static_cast<double>(rep.max_coeff_derivative_order)});
  return report;
}

Report cmd_defect(const Manifest& manifest, const RunOptions& options) {
  if (options.tensor.empty()) throw ManifestError("defect needs --tensor", "tensors");
  Report report;
  DiffOperator defect =
      quantization_defect_square(manifest.tensor(options.tensor), manifest.metric);
  append_operator_rows(report, defect, "defect");
  ProbeDomain domain = manifest.probe_domain(options.seed);
  report.results.push_back(
      {"defect_probably_zero", probably_zero(defect, domain) ? "true" : "false", std::nullopt});
  return report;
}

Report cmd_poisson(const Manifest& manifest, const RunOptions& options) {
  if (options.tensor.empty() || options.tensor2.empty())
    throw ManifestError("poisson needs --tensor and --tensor2", "tensors");
  Report report;
  ClassicalMagnitude bracket =
      poisson_bracket(magnitude_of(manifest.tensor(options.tensor)),
                      magnitude_of(manifest.tensor(options.tensor2)), manifest.metric);
  append_poly_rows(report, bracket, "bracket");
  return report;
}

Report cmd_fourier_check(const Manifest& manifest) {
  Report report;
  FourierFiberSpec spec;
  spec.hbar = manifest.hbar_default;
  Expr gaussian = apply(FuncKind::Exp,
                        product_of({Expr::number(Rational(-1, 2)), pow(Expr::symbol("v"), 2)}));
  double error = fourier_correspondence_check(spec, gaussian, "v");
  report.results.push_back({"max_relative_error", "", error});
  report.checks.push_back({"fourier-correspondence", error <= 1e-6, error, 1e-6});
  return report;
}

Report cmd_spectrum(const Manifest& manifest, const RunOptions& options) {
  Report report;
  const GridSpec& grid = manifest.grid_or_throw();
  Expr potential = manifest.potential.value_or(Expr::integer(0));
  DiffOperator hamiltonian = schrodinger_operator(manifest.metric, potential);
  Eigen::MatrixXcd mat = discretize(hamiltonian, grid);
  SpectrumResult spec = spectrum(mat, options.count, grid);
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k)
    report.results.push_back(
        {"eigenvalue[" + std::to_string(k) + "]", "", spec.eigenvalues[k]});
  return report;
}

Report cmd_wave_check(const Manifest& manifest, const RunOptions& options) {
  Report report;
  const GridSpec& grid = manifest.grid_or_throw();
  Expr potential = manifest.potential.value_or(Expr::integer(0));
  DiffOperator hamiltonian = schrodinger_operator(manifest.metric, potential);
  Eigen::MatrixXcd mat = discretize(hamiltonian, grid);
  SpectrumResult spec = spectrum(mat, options.count, grid);
  double worst = 0.0;
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    double residual = wave_residual(hamiltonian, number_from_double(spec.eigenvalues[k]),
                                    spec.eigenvectors[k]);
    report.results.push_back({"wave_residual[" + std::to_string(k) + "]", "", residual});
    worst = std::max(worst, residual);
  }
  report.checks.push_back({"wave-residuals", worst <= 1e-8, worst, 1e-8});
  return report;
}

Report cmd_hj_check(const Manifest& manifest, const RunOptions& options) {
  Report report;
  const GridSpec& grid = manifest.grid_or_throw();
  std::string name = options.field;
  if (name.empty()) {
    if (manifest.actions.size() != 1)
      throw ManifestError("hj-check needs --field to pick an action", "actions");
    name = manifest.actions.begin()->first;
  }
  const Manifest::Action& action = manifest.action(name);
  Expr potential = manifest.potential.value_or(Expr::integer(0));
  double residual =
      hamilton_jacobi_residual(manifest.metric, potential, action.expression, action.energy, grid);
  report.results.push_back({"hj_residual", "", residual});
  report.checks.push_back({"hamilton-jacobi", residual <= 1e-9, residual, 1e-9});
  return report;
}

}  // namespace

Report run_command(const std::string& command, const Manifest& manifest,
                   const RunOptions& options) {
  Report report;
  if (command == "christoffel")
    report = cmd_christoffel(manifest);
  else if (command == "expmap")
    report = cmd_expmap(manifest, options);
  else if (command == "quantize")
    report = cmd_quantize(manifest, options);
  else if (command == "laplace-check")
    report = cmd_laplace_check(manifest, options);
  else if (command == "commutator")
    report = cmd_commutator(manifest, options);
  else if (command == "defect")
    report = cmd_defect(manifest, options);
  else if (command == "poisson")
    report = cmd_poisson(manifest, options);
  else if (command == "fourier-check")
    report = cmd_fourier_check(manifest);
  else if (command == "spectrum")
    report = cmd_spectrum(manifest, options);
  else if (command == "wave-check")
    report = cmd_wave_check(manifest, options);
  else if (command == "hj-check")
    report = cmd_hj_check(manifest, options);
  else
    throw DomainError("unknown command '" + command + "'");

  report.command = command;
  std::vector<std::pair<std::string, std::string>> inputs;
  inputs.emplace_back("seed", std::to_string(options.seed));
  if (command == "expmap") inputs.emplace_back("order", std::to_string(options.order));
  if (!options.tensor.empty()) inputs.emplace_back("tensor", options.tensor);
  if (!options.tensor2.empty()) inputs.emplace_back("tensor2", options.tensor2);
  if (!options.field.empty()) inputs.emplace_back("field", options.field);
  if (command == "spectrum" || command == "wave-check")
    inputs.emplace_back("m", std::to_string(options.count));
  inputs.insert(inputs.begin() + 1, report.inputs.begin(), report.inputs.end());
  report.inputs = std::move(inputs);
  return report;
}

}  // namespace rq
