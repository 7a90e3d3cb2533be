// Runs the CLI against a manifest and compares stdout byte-for-byte with a
// golden file. Usage:
//   golden_runner <cli> <manifest> <golden> <command> [flags...]
// Set RQ_UPDATE_GOLDEN=1 to rewrite the golden file instead of comparing.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string run_capture(const std::string& command_line, int& exit_code) {
  std::string output;
  FILE* pipe = popen(command_line.c_str(), "r");
  if (pipe == nullptr) {
    exit_code = -1;
    return output;
  }
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) output.append(buffer, got);
  int status = pclose(pipe);
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return output;
}

std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

}  // namespace

int main(int argc, char** argv) {
  if (argc < 5) {
    std::cerr << "usage: golden_runner <cli> <manifest> <golden> <command> [flags...]\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string manifest = argv[2];
  const std::string golden_path = argv[3];

  std::ostringstream cmd;
  cmd << shell_quote(cli) << " " << argv[4] << " --manifest " << shell_quote(manifest);
  for (int k = 5; k < argc; ++k) cmd << " " << argv[k];
  cmd << " 2>/dev/null";

  int exit_code = 0;
  std::string output = run_capture(cmd.str(), exit_code);
  if (exit_code != 0) {
    std::cerr << "CLI exited with code " << exit_code << "\n" << output;
    return 1;
  }

  if (const char* update = std::getenv("RQ_UPDATE_GOLDEN"); update && std::string(update) == "1") {
    std::ofstream out(golden_path, std::ios::binary);
    out << output;
    std::cout << "updated " << golden_path << "\n";
    return 0;
  }

  std::ifstream in(golden_path, std::ios::binary);
  if (!in) {
    std::cerr << "missing golden file " << golden_path << " (run with RQ_UPDATE_GOLDEN=1)\n";
    return 1;
  }
  std::ostringstream expected;
  expected << in.rdbuf();
  if (expected.str() != output) {
    std::cerr << "golden mismatch for " << golden_path << "\n--- expected ---\n"
              << expected.str() << "--- actual ---\n"
              << output;
    return 1;
  }
  std::cout << "golden ok: " << golden_path << "\n";
  return 0;
}
