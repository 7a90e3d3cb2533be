// Drives the installed CLI binary and checks the documented exit codes:
// 0 success, 1 computation error, 2 manifest/usage error.
// Usage: test_exit_codes <cli> <manifest_dir>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

namespace {

int run(const std::string& cmd) {
  std::string full = cmd + " > /dev/null 2>&1";
  int status = std::system(full.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int g_failures = 0;

void expect(const std::string& cmd, int expected) {
  int got = run(cmd);
  if (got != expected) {
    std::cerr << "FAIL: '" << cmd << "' exited " << got << ", expected " << expected << "\n";
    ++g_failures;
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: test_exit_codes <cli> <manifest_dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string dir = argv[2];
  const std::string polar = " --manifest " + dir + "/polar.json";

  expect(cli + " christoffel" + polar, 0);
  expect(cli + " christoffel" + polar + " --format json", 0);

  // computation errors -> 1
  expect(cli + " expmap" + polar + " --order 9", 1);              // jet order cap

  // manifest errors -> 2
  expect(cli + " laplace-check --manifest " + dir + "/../tests/golden/christoffel_polar.txt", 2);
  expect(cli + " spectrum" + polar + " --m 5", 2);                // no grid in manifest
  expect(cli + " quantize" + polar, 2);                           // missing --tensor
  expect(cli + " quantize" + polar + " --tensor nope", 2);        // unknown tensor name
  expect(cli + " christoffel --manifest /does/not/exist.json", 2);

  // usage errors -> 2
  expect(cli + " frobnicate" + polar, 2);                         // unknown subcommand
  expect(cli + " christoffel", 2);                                // missing --manifest
  expect(cli + " christoffel" + polar + " --format yaml", 2);     // bad format value

  if (g_failures == 0) {
    std::puts("exit codes: all checks passed");
    return 0;
  }
  return 1;
}
