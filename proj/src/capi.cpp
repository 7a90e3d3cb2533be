#include "rq.h"

#include <new>
#include <string>

#include "rq/report.hpp"

// extern-C shim: exceptions from the core are converted to status codes and
// a thread-local error message.

struct rq_manifest {
  rq::Manifest value;
};

struct rq_options {
  rq::RunOptions value;
};

struct rq_report {
  std::string text;
  std::string json;
  int checks_passed = 1;
};

namespace {

thread_local std::string t_last_error;

int fail(int code, const std::string& message) {
  t_last_error = message;
  return code;
}

int load_impl(const char* source, rq_manifest** out_manifest, bool from_file) {
  if (source == nullptr || out_manifest == nullptr)
    return fail(RQ_ERR_ARGUMENT, "null argument");
  *out_manifest = nullptr;
  try {
    rq::Manifest m = from_file ? rq::load_manifest(source) : rq::parse_manifest(source);
    *out_manifest = new rq_manifest{std::move(m)};
    t_last_error.clear();
    return RQ_OK;
  } catch (const rq::ManifestError& err) {
    return fail(RQ_ERR_MANIFEST, err.what());
  } catch (const rq::Error& err) {
    return fail(RQ_ERR_MANIFEST, err.what());
  } catch (const std::exception& err) {
    return fail(RQ_ERR_COMPUTE, err.what());
  }
}

int set_name(rq_options* options, const char* name, std::string rq::RunOptions::*member) {
  if (options == nullptr || name == nullptr) return fail(RQ_ERR_ARGUMENT, "null argument");
  options->value.*member = name;
  return RQ_OK;
}

}  // namespace

extern "C" {

const char* rq_version(void) { return "0.1.0"; }

const char* rq_last_error(void) { return t_last_error.c_str(); }

int rq_manifest_load(const char* path, rq_manifest** out_manifest) {
  return load_impl(path, out_manifest, true);
}

int rq_manifest_parse(const char* json_text, rq_manifest** out_manifest) {
  return load_impl(json_text, out_manifest, false);
}

void rq_manifest_free(rq_manifest* manifest) { delete manifest; }

rq_options* rq_options_new(void) { return new (std::nothrow) rq_options{}; }

void rq_options_free(rq_options* options) { delete options; }

int rq_options_set_seed(rq_options* options, uint64_t seed) {
  if (options == nullptr) return fail(RQ_ERR_ARGUMENT, "null options");
  options->value.seed = seed;
  return RQ_OK;
}

int rq_options_set_order(rq_options* options, int order) {
  if (options == nullptr) return fail(RQ_ERR_ARGUMENT, "null options");
  options->value.order = order;
  return RQ_OK;
}

int rq_options_set_count(rq_options* options, int count) {
  if (options == nullptr) return fail(RQ_ERR_ARGUMENT, "null options");
  options->value.count = count;
  return RQ_OK;
}

int rq_options_set_tensor(rq_options* options, const char* name) {
  return set_name(options, name, &rq::RunOptions::tensor);
}

int rq_options_set_tensor2(rq_options* options, const char* name) {
  return set_name(options, name, &rq::RunOptions::tensor2);
}

int rq_options_set_field(rq_options* options, const char* name) {
  return set_name(options, name, &rq::RunOptions::field);
}

int rq_run(const rq_manifest* manifest, const char* command, const rq_options* options,
           rq_report** out_report) {
  if (manifest == nullptr || command == nullptr || out_report == nullptr)
    return fail(RQ_ERR_ARGUMENT, "null argument");
  *out_report = nullptr;
  try {
    rq::RunOptions run_options = options != nullptr ? options->value : rq::RunOptions{};
    rq::Report report = rq::run_command(command, manifest->value, run_options);
    auto* out = new rq_report{report.to_text(), report.to_json(),
                              report.all_checks_passed() ? 1 : 0};
    *out_report = out;
    t_last_error.clear();
    return RQ_OK;
  } catch (const rq::ManifestError& err) {
    return fail(RQ_ERR_MANIFEST, err.what());
  } catch (const std::exception& err) {
    return fail(RQ_ERR_COMPUTE, err.what());
  }
}

const char* rq_report_text(const rq_report* report) {
  return report != nullptr ? report->text.c_str() : "";
}

const char* rq_report_json(const rq_report* report) {
  return report != nullptr ? report->json.c_str() : "";
}

int rq_report_checks_passed(const rq_report* report) {
  return report != nullptr && report->checks_passed;
}

void rq_report_free(rq_report* report) { delete report; }

}  // extern "C"
