// Drives the installed CLI binary (path from PSIEPI_CLI_BIN) and captures its
// stdout and exit code.

#pragma once

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include <sys/wait.h>

namespace run_cli {

struct Result {
  int exit_code = -1;
  std::string stdout_text;
};

inline std::string binary_path() {
  const char* path = std::getenv("PSIEPI_CLI_BIN");
  if (path == nullptr || *path == '\0') {
    throw std::runtime_error("PSIEPI_CLI_BIN is not set");
  }
  return path;
}

inline Result run(const std::string& arguments) {
  const std::string command =
      binary_path() + " " + arguments + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed");
  Result result;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.stdout_text.append(buffer, n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace run_cli
