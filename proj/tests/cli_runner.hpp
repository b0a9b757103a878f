#pragma once

// Runs the evoalg executable through the shell and captures stdout.

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace cli {

struct Result {
  int code = -1;
  std::string out;
};

inline std::string source(const std::string& rel) { return std::string(EVOALG_SOURCE_DIR) + "/" + rel; }

inline Result run(const std::string& args) {
  const std::string cmd = std::string("\"") + EVOALG_CLI + "\" " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace cli
