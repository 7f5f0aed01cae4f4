#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "runner.hpp"
#include "zpd/error.hpp"

int main(int argc, char** argv) {
  using namespace zpd::runner;
  CLI::App app{"zpd: zeros, primes and duality experiments"};
  std::string config;
  std::map<std::string, std::string> flags;
  app.add_option("--config", config, "flat key=value config file");
  const char* keys[][2] = {
      {"command", "one of: zeros-find zeros-import verify-explicit-formula verify-stationary-phase "
                  "verify-theorem41 verify-superbound verify-characters verify-lemmas fit"},
      {"xi", "twist m/q (or decimal where allowed)"},
      {"bump", "a,b (canonical), a,b,c,d (plateau) or zero"},
      {"xgrid", "X1,X2,... ascending"},
      {"zeros", "zero table (text or cache)"},
      {"height", "zero height"},
      {"tol", "tolerance"},
      {"out", "output directory"},
      {"workers", "worker threads"},
      {"data", "input for fit"},
      {"qmax", "largest modulus for verify-characters"},
      {"samples", "ordinates per X for verify-stationary-phase"},
  };
  for (const auto& [key, help] : keys) {
    app.add_option_function<std::string>(std::string("--") + key,
                                         [&flags, k = std::string(key)](const std::string& v) { flags[k] = v; }, help);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  RunConfig cfg;
  try {
    if (!config.empty()) apply_settings(cfg, read_config_file(config));
    apply_settings(cfg, flags);
  } catch (const zpd::Error& e) {
    std::cerr << "error [" << zpd::to_string(e.kind()) << "]: " << e.what() << "\n";
    return kInputError;
  }
  if (cfg.command.empty()) {
    std::cerr << "error [input]: no command given\n";
    return kInputError;
  }
  return run(cfg, std::cout);
}
