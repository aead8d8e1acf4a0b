#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace cli_cases {

struct Case {
  std::string name;
  int exit_code = 0;
  std::string args;
};

struct RunResult {
  int exit_code = -1;
  std::string out;
};

/// Reads golden/cases.tsv: name, expected exit code, argument string with {in} for the inputs directory.
inline std::vector<Case> load(const std::string& golden_dir) {
  std::ifstream in(golden_dir + "/cases.tsv");
  if (!in) throw std::runtime_error("cannot open " + golden_dir + "/cases.tsv");
  std::vector<Case> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    Case c;
    std::string code;
    std::getline(ss, c.name, '\t');
    std::getline(ss, code, '\t');
    std::getline(ss, c.args);
    c.exit_code = std::stoi(code);
    std::string key = "{in}";
    for (auto p = c.args.find(key); p != std::string::npos; p = c.args.find(key))
      c.args.replace(p, key.size(), golden_dir + "/inputs");
    out.push_back(c);
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs the CLI with stdout captured and stderr discarded.
inline RunResult run(const std::string& cli, const std::string& args) {
  std::string cmd = "'" + cli + "' " + args + " 2>/dev/null";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), k);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace cli_cases
