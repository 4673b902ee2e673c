#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef HKR_TESTDATA
#define HKR_TESTDATA "testdata"
#endif

namespace golden {

inline std::string path(const std::string& name) { return std::string(HKR_TESTDATA) + "/" + name; }

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

// Lines "p P : field : field ..." keyed by P; '#' lines are comments.
inline std::map<int, std::vector<std::string>> load(const std::string& name) {
  std::ifstream f(path(name));
  if (!f) throw std::runtime_error("missing golden file " + name);
  std::map<int, std::vector<std::string>> out;
  std::string line;
  while (std::getline(f, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto parts = split(line, ':');
    out[std::stoi(parts[0].substr(1))] = {parts.begin() + 1, parts.end()};
  }
  return out;
}

inline std::string slurp(const std::string& name) {
  std::ifstream f(path(name));
  if (!f) throw std::runtime_error("missing test file " + name);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace golden
