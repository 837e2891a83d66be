#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

int main(int argc, char** argv) {
  using namespace qfrac::cli;

  CLI::App app{"q-fractional calculus toolkit"};
  std::string command;
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::string fault;
  app.add_option("command", command, "eval | solve | verify | ml")
      ->check(CLI::IsMember({"eval", "solve", "verify", "ml"}));
  app.add_option("--config", config_path, "config file (key = value, or a JSON report)")
      ->required();
  app.add_option("--out", out_path, "output file; stdout when omitted");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--inject-fault", fault, "perturb one verify identity (harness self-test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code::config;
  }

  RunConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const qfrac::Error& e) {
    std::cerr << "qfrac: " << e.what() << "\n";
    return exit_code::config;
  }
  if (!command.empty()) {
    const auto c = parse_command(command);
    if (cfg.command && cfg.command != c) {
      std::cerr << "qfrac: command '" << command << "' conflicts with config command '"
                << command_name(*cfg.command) << "'\n";
      return exit_code::config;
    }
    cfg.command = c;
  }
  cfg.output_path = out_path;
  cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  return execute(cfg, std::cout, std::cerr, fault);
}
