#pragma once

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace testing_support {

struct ProcessResult {
  int exit_code = -1;
  std::string out;
};

// Runs a shell command and captures stdout.
inline ProcessResult run_command(const std::string& command) {
  ProcessResult r;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Structural JSON equality with a numeric tolerance. On mismatch, `where`
// names the first differing path.
inline bool json_close(const nlohmann::json& a, const nlohmann::json& b, double tol, std::string& where,
                       const std::string& path = "$") {
  if (a.is_number() && b.is_number()) {
    const double x = a.get<double>();
    const double y = b.get<double>();
    if (std::abs(x - y) <= tol * (1.0 + std::max(std::abs(x), std::abs(y)))) return true;
    where = path;
    return false;
  }
  if (a.type() != b.type()) {
    where = path + " (type)";
    return false;
  }
  if (a.is_object()) {
    if (a.size() != b.size()) {
      where = path + " (keys)";
      return false;
    }
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) {
        where = path + "." + it.key() + " (missing)";
        return false;
      }
      if (!json_close(it.value(), b.at(it.key()), tol, where, path + "." + it.key())) return false;
    }
    return true;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) {
      where = path + " (length)";
      return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!json_close(a[i], b[i], tol, where, path + "[" + std::to_string(i) + "]")) return false;
    }
    return true;
  }
  if (a == b) return true;
  where = path;
  return false;
}

}  // namespace testing_support
