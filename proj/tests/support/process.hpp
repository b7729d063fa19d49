#ifndef FINSLER_TESTS_PROCESS_HPP
#define FINSLER_TESTS_PROCESS_HPP

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace testproc {

struct Result {
  int exit_code = -1;
  std::string out;  // stdout only
};

/// Runs the CLI with `args` through the shell; stderr goes to `err_file`
/// when given, otherwise it is discarded.
inline Result run_cli(const std::string& args, const std::string& err_file = "") {
  const std::string cmd =
      std::string("\"") + FINSLER_CLI_PATH + "\" " + args + " 2>" + (err_file.empty() ? "/dev/null" : err_file);
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace testproc

#endif  // FINSLER_TESTS_PROCESS_HPP
