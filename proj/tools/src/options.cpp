#include <CLI11.hpp>
#include <charconv>
#include <ostream>
#include <regex>

#include "cli.hpp"

namespace dskg::cli {

namespace {

double to_double(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

}  // namespace

cplx parse_complex(std::string_view text) {
  static const std::regex re(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i\s*$)");
  std::cmatch m;
  std::string s(text);
  if (!std::regex_match(s.c_str(), m, re))
    throw UsageError("complex value must look like a+bi with both parts: '" + s + "'");
  std::string im = m[2].str();
  if (im[0] == '+') im.erase(0, 1);
  return {to_double(m[1].str()), to_double(im)};
}

std::array<std::pair<double, double>, 3> parse_box(std::string_view text) {
  std::array<std::pair<double, double>, 3> box{};
  std::string s(text);
  static const std::regex part(R"(\s*([^:,]+):([^:,]+)\s*)");
  std::size_t start = 0;
  for (int k = 0; k < 3; ++k) {
    std::size_t end = s.find(',', start);
    if ((k < 2) != (end != std::string::npos)) throw UsageError("box must be lo:hi,lo:hi,lo:hi");
    std::string item = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    std::smatch m;
    if (!std::regex_match(item, m, part)) throw UsageError("box entry must be lo:hi: '" + item + "'");
    box[k] = {to_double(m[1].str()), to_double(m[2].str())};
    if (!(box[k].first < box[k].second)) throw UsageError("box entry needs lo < hi");
    start = end + 1;
  }
  return box;
}

void RunConfig::validate() const {
  if (field.zeta != 0.0 && std::abs(field.zeta - 1.0 / 6.0) > 1e-12) throw UsageError("--zeta must be 0 or 1/6");
  if (field.a && !(*field.a > 0.0)) throw UsageError("--a must be positive");
  if (grid < 2) throw UsageError("--grid must be at least 2");
  if (points < 1) throw UsageError("--points must be positive");
  if (basis != 1 && basis != 2) throw UsageError("--basis must be 1 or 2");
  if (perturb && perturb->first != "chi" && perturb->first != "field")
    throw UsageError("--perturb must be chi:<eps> or field:<eps>");
}

std::vector<CaseId> selected_cases(const RunConfig& cfg) {
  if (cfg.case_filter == "all") return {kAllCases.begin(), kAllCases.end()};
  auto id = parse_case(cfg.case_filter);
  if (!id) throw UsageError("unknown case '" + cfg.case_filter + "'");
  if (has_parameter(*id) && !cfg.field.a) throw UsageError(case_cli_name(*id) + " needs --a");
  return {*id};
}

fields::FieldParams params_for(const RunConfig& cfg, CaseId id) {
  fields::FieldParams p = cfg.field;
  if (has_parameter(id)) {
    if (!p.a) p.a = 1.0;
  } else {
    p.a.reset();
  }
  try {
    p.validate(id);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return p;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Klein-Gordon symmetry toolkit on dS3"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string lambda_text, box_text, perturb_text;
  std::vector<std::string> tol_items;
  std::optional<double> a;

  auto add_case = [&](CLI::App* sub) {
    sub->add_option("--case", cfg.case_filter, "case id (g3_4, G34, ...) or all");
  };
  auto add_physics = [&](CLI::App* sub) {
    sub->add_option("--e", cfg.field.e, "charge");
    sub->add_option("--m", cfg.field.m, "mass");
    sub->add_option("--zeta", cfg.field.zeta, "curvature coupling, 0 or 1/6");
    sub->add_option("--mu", cfg.field.mu, "field strength");
    sub->add_option("--mu1", cfg.field.mu1, "field strength, first component");
    sub->add_option("--mu2", cfg.field.mu2, "field strength, second component");
    sub->add_option("--a", a, "family parameter a > 0");
    sub->add_option("--seed", cfg.seed, "random seed");
  };

  auto* catalog = app.add_subcommand("catalog", "subalgebras, fields and integrability table");
  catalog->add_option("--a", a, "family parameter used for G13a and G33a (default 1)");

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  add_case(verify);
  add_physics(verify);
  verify->add_option("--J", cfg.J, "representation parameter");
  verify->add_option("--lambda", lambda_text, "lambda as a+bi");
  verify->add_option("--points", cfg.points, "sample points per residual");
  verify->add_option("--perturb", perturb_text, "inject a fault: chi:<eps> or field:<eps>");
  verify->add_option("--tol", tol_items, "tolerance override key=value (repeatable)");

  auto* solve = app.add_subcommand("solve", "sample separated solutions");
  add_case(solve);
  add_physics(solve);
  solve->add_option("--J", cfg.J, "representation parameter");
  solve->add_option("--lambda", lambda_text, "lambda as a+bi");
  solve->add_option("--grid", cfg.grid, "nodes per axis (>= 2)");
  solve->add_option("--box", box_text, "lo:hi,lo:hi,lo:hi in chart coordinates");
  solve->add_option("--basis", cfg.basis, "basis member 1 or 2");
  solve->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* chart = app.add_subcommand("chart", "export chart embedding samples");
  add_case(chart);
  chart->add_option("--a", a, "family parameter a > 0");
  chart->add_option("--grid", cfg.grid, "nodes per axis (>= 2)");
  chart->add_option("--box", box_text, "lo:hi,lo:hi,lo:hi in chart coordinates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    cfg.field.a = a;
    if (!lambda_text.empty()) cfg.lambda = parse_complex(lambda_text);
    if (!box_text.empty()) cfg.box = parse_box(box_text);
    if (!perturb_text.empty()) {
      auto colon = perturb_text.find(':');
      if (colon == std::string::npos) throw UsageError("--perturb must be kind:eps");
      std::string num = perturb_text.substr(colon + 1);
      std::size_t used = 0;
      double eps = std::stod(num, &used);
      if (used != num.size()) throw UsageError("bad --perturb size");
      cfg.perturb = std::make_pair(perturb_text.substr(0, colon), eps);
    }
    for (const auto& item : tol_items) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("--tol must be key=value");
      cfg.tolerances[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    cfg.validate();
    if (*catalog) return cmd_catalog(cfg, out, err);
    if (*verify) return cmd_verify(cfg, out, err);
    if (*solve) return cmd_solve(cfg, out, err);
    return cmd_chart(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: malformed number\n";
    return kUsage;
  }
}

}  // namespace dskg::cli
