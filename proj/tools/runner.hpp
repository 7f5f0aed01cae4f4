#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace zpd::runner {

enum ExitCode { kPass = 0, kVerifyFail = 1, kInputError = 2, kBudgetError = 3 };

struct RunConfig {
  std::string command;
  std::string xi = "1/3";
  std::string bump = "1,2";
  std::vector<double> xgrid;
  std::string zeros;  // table path (text or cache); empty = compute
  double height = 0.0;
  double tol = 1e-6;
  std::filesystem::path out = "zpd-out";
  unsigned workers = 1;
  std::string data;  // input for `fit`
  long qmax = 30;
  long samples = 50;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {
      "zeros-find",       "zeros-import",       "verify-explicit-formula", "verify-stationary-phase",
      "verify-theorem41", "verify-superbound",  "verify-characters",       "verify-lemmas",
      "fit"};
  return c;
}

/// Flat key=value lines; '#' starts a comment. Unknown keys are input errors.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Applies key=value pairs onto cfg.
void apply_settings(RunConfig& cfg, const std::map<std::string, std::string>& kv);

std::vector<double> parse_grid(const std::string& text);

/// Runs one command, writes artifacts under cfg.out, prints PASS/FAIL lines to log.
/// Errors are caught and mapped to exit codes.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace zpd::runner
