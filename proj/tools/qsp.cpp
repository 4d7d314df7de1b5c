// Command-line front end. With no command, reads one command per line from
// standard input and runs them against a single session.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsp/commands.hpp"
#include "qsp/error.hpp"

namespace {

int run(const std::vector<std::string>& args, qsp::Session& session, qsp::Format format) {
  try {
    const auto report = qsp::run_command(args, session);
    std::cout << qsp::render(report, format);
    return report.passed ? 0 : 1;
  } catch (const std::exception& e) {
    std::cout << std::flush;
    std::cerr << "error: " << e.what() << "\n";
    return qsp::exit_code_for(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal forms, calculi and Hopf structures on graded presented algebras"};
  std::string format = "text";
  std::size_t cutoff = 6;
  std::size_t splits = 64;
  bool serial = false;
  std::vector<std::string> command;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "kv"}));
  app.add_option("--cutoff", cutoff, "Degree cutoff for word-wise checks");
  app.add_option("--splits", splits, "Case-split budget for the ansatz solver");
  app.add_flag("--serial", serial, "Use the serial reference kernels");
  app.add_option("command", command, "Command and arguments; reads commands from stdin when absent");
  app.allow_extras(false);
  app.prefix_command(false);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  qsp::Session session;
  session.cutoff = cutoff;
  session.split_budget = splits;
  session.exec = serial ? qsp::Execution::serial : qsp::Execution::parallel;
  const auto fmt = format == "kv" ? qsp::Format::kv : qsp::Format::text;

  if (!command.empty()) return run(command, session, fmt);

  int status = 0;
  for (std::string line; std::getline(std::cin, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> args;
    try {
      args = qsp::split_command(line);
    } catch (const qsp::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      status = 2;
      continue;
    }
    if (args.empty()) continue;
    status = std::max(status, run(args, session, fmt));
  }
  return status;
}
