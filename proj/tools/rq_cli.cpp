// rq command-line front end. Talks to the core exclusively through the C API
// in rq.h; exit codes are 0 (success), 1 (computation error), 2 (manifest or
// usage error).

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rq.h"

namespace {

struct ManifestDeleter {
  void operator()(rq_manifest* m) const { rq_manifest_free(m); }
};
struct OptionsDeleter {
  void operator()(rq_options* o) const { rq_options_free(o); }
};
struct ReportDeleter {
  void operator()(rq_report* r) const { rq_report_free(r); }
};

const std::vector<std::string> kCommands = {
    "christoffel", "expmap",  "quantize", "laplace-check", "commutator", "defect",
    "poisson",     "fourier-check", "spectrum", "wave-check", "hj-check"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rq — Riemannian quantization toolkit"};
  app.require_subcommand(1);

  std::string manifest_path;
  std::string format = "text";
  std::uint64_t seed = 42;
  int order = 2;
  int count = 5;
  std::string tensor, tensor2, field;

  for (const auto& name : kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--manifest", manifest_path, "manifest JSON file")->required();
    sub->add_option("--format", format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", seed, "probe sampling seed (default 42)");
    sub->add_option("--order", order, "jet order for expmap (2..6)");
    sub->add_option("--tensor", tensor, "named tensor from the manifest");
    sub->add_option("--tensor2", tensor2, "second named tensor");
    sub->add_option("--field", field, "named vector field or action");
    sub->add_option("--m", count, "number of eigenvalues");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    std::fprintf(stderr, "rq: %s\n", e.what());
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();

  rq_manifest* raw_manifest = nullptr;
  int status = rq_manifest_load(manifest_path.c_str(), &raw_manifest);
  if (status != RQ_OK) {
    std::fprintf(stderr, "rq: %s\n", rq_last_error());
    return status == RQ_ERR_ARGUMENT ? 2 : status;
  }
  std::unique_ptr<rq_manifest, ManifestDeleter> manifest(raw_manifest);

  std::unique_ptr<rq_options, OptionsDeleter> options(rq_options_new());
  if (!options) {
    std::fprintf(stderr, "rq: out of memory\n");
    return 1;
  }
  rq_options_set_seed(options.get(), seed);
  rq_options_set_order(options.get(), order);
  rq_options_set_count(options.get(), count);
  if (!tensor.empty()) rq_options_set_tensor(options.get(), tensor.c_str());
  if (!tensor2.empty()) rq_options_set_tensor2(options.get(), tensor2.c_str());
  if (!field.empty()) rq_options_set_field(options.get(), field.c_str());

  rq_report* raw_report = nullptr;
  status = rq_run(manifest.get(), command.c_str(), options.get(), &raw_report);
  if (status != RQ_OK) {
    std::fprintf(stderr, "rq: %s\n", rq_last_error());
    return status == RQ_ERR_ARGUMENT ? 2 : status;
  }
  std::unique_ptr<rq_report, ReportDeleter> report(raw_report);

  const char* body = format == "json" ? rq_report_json(report.get())
                                      : rq_report_text(report.get());
  std::fputs(body, stdout);
  return 0;
}
