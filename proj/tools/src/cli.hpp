#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dskg/fields.hpp"

namespace dskg::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "a+bi", "a-bi", with both parts present ("1+0i", "-0.5-2i").
cplx parse_complex(std::string_view text);
// "lo:hi,lo:hi,lo:hi"
std::array<std::pair<double, double>, 3> parse_box(std::string_view text);

struct RunConfig {
  std::string command;
  std::string case_filter = "all";
  fields::FieldParams field;
  double J = 1.0;
  std::optional<cplx> lambda;
  int grid = 5;
  std::optional<std::array<std::pair<double, double>, 3>> box;
  int points = 50;
  std::uint64_t seed = 42;
  std::string format;  // empty selects the command default
  std::map<std::string, double> tolerances;
  std::optional<std::pair<std::string, double>> perturb;  // chi:eps or field:eps
  int basis = 1;

  void validate() const;
};

// Cases named by the filter; parameterized families need --a unless the
// filter is "all", where a = 1 is used.
std::vector<CaseId> selected_cases(const RunConfig& cfg);
fields::FieldParams params_for(const RunConfig& cfg, CaseId id);

int cmd_catalog(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_chart(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Full command-line entry point; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dskg::cli
