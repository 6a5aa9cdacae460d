#pragma once

#include "qk/json_io.hpp"

#include <iostream>

namespace qk {

struct JobConfig {
  std::string command;
  std::vector<std::string> inputs;
  int trunc = 6;
  int degree = 6;
  int witness_degree = 8;
  std::string format = "text"; // text | json
  std::string out;             // empty = stdout
};

// Exit status: 0 success, 1 a check reported false, 2 operational error.
int run_command(const JobConfig& cfg, std::ostream& err);

// Core of run_command without I/O routing; fills the report.
int run_command_impl(const JobConfig& cfg, Json& report);

} // namespace qk
