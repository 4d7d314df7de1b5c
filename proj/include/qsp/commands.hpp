#pragma once

// Command dispatcher shared by the CLI and the tests.
//
//   load FILE                      normalize ALG EXPR       d ALG EXPR
//   partials [ALG] EXPR            coproduct HOPF EXPR
//   check hopf|confluence|calculus NAME
//   vf check|twist|dual|reconcile  solve FILE               set cutoff|splits N
//   list

#include <string>
#include <vector>

#include "qsp/report.hpp"
#include "qsp/session.hpp"

namespace qsp {

/// Throws UsageError for malformed commands; evaluation errors propagate.
Report run_command(const std::vector<std::string>& args, Session& session);

/// Shell-like splitting with single and double quotes.
std::vector<std::string> split_command(const std::string& line);

/// 0 pass, 1 check failure, 2 usage or parse error.
int exit_code_for(const std::exception& e);

}  // namespace qsp
