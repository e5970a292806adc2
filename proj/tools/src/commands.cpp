#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <ostream>
#include <random>

#include "cli.hpp"
#include "dskg/integrate.hpp"

namespace dskg::cli {

using nlohmann::ordered_json;

namespace {

const std::vector<std::pair<std::string, double>>& default_tolerances() {
  static const std::vector<std::pair<std::string, double>> tol = {
      {"hyperboloid", 1e-12}, {"pushforward", 1e-10}, {"DefEq1", 1e-8},      {"dF", 1e-10},
      {"LieF", 1e-10},        {"dA", 1e-10},          {"EqChi", 1e-10},      {"comm_opX", 1e-9},
      {"symmetry_H", 1e-8},   {"display_H", 1e-10},   {"lambda_rep", 1e-10}, {"Xleqs", 1e-10},
      {"H_phi", 1e-6}};
  return tol;
}

std::map<std::string, double> effective_tolerances(const RunConfig& cfg) {
  std::map<std::string, double> tol(default_tolerances().begin(), default_tolerances().end());
  for (const auto& [k, v] : cfg.tolerances) {
    if (!tol.count(k)) throw UsageError("unknown tolerance key '" + k + "'");
    if (!(v > 0.0)) throw UsageError("tolerance for '" + k + "' must be positive");
    tol[k] = v;
  }
  return tol;
}

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // no "-0" in output
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json complex_json(cplx z) { return ordered_json{{"re", z.real()}, {"im", z.imag()}}; }

ordered_json parameters_json(const fields::FieldParams& p) {
  ordered_json j;
  j["e"] = p.e;
  j["m"] = p.m;
  j["zeta"] = p.zeta;
  j["mu"] = p.mu;
  j["mu1"] = p.mu1;
  j["mu2"] = p.mu2;
  j["a"] = p.a ? ordered_json(*p.a) : ordered_json(nullptr);
  return j;
}

ordered_json record_json(const lie::IntegrabilityRecord& r) {
  return ordered_json{{"dim", r.dim}, {"ind", r.ind}, {"s", r.s}, {"l", r.l}, {"m_tilde", r.m_tilde},
                      {"integrable", r.integrable}};
}

// Invariant 2-form and potential templates, with f1, f2 free profiles.
std::pair<std::string, std::string> field_templates(CaseId id) {
  switch (id) {
    case CaseId::G11:
    case CaseId::G12:
    case CaseId::G13a:
    case CaseId::G14:
      return {"dq1^df1(u1,u2) + f2(u1,u2) du1^du2", "standard"};
    case CaseId::G21:
    case CaseId::G22:
      return {"mu dq1^dq2 + f1(u) dq1^du + f2(u) dq2^du", "standard"};
    case CaseId::G23:
      return {"exp(q2) dq1^(f1(u) dq2 + df1) + f2(u) dq2^du", "standard"};
    case CaseId::G31:
      return {"exp(q3)(mu1 dq1 + mu2 dq2)^dq3", "exp(q3)(mu1 q1 + mu2 q2) dq3"};
    case CaseId::G32:
      return {"mu dq1^dq2", "mu/2 (q1 dq2 - q2 dq1)"};
    case CaseId::G33a:
      return {"exp(a q3)[(mu1 cos q3 + mu2 sin q3) dq1 + (mu1 sin q3 - mu2 cos q3) dq2]^dq3", "A3 dq3"};
    case CaseId::G34:
    case CaseId::G35:
      return {"mu cos(q2) dq1^dq2", "-mu sin(q2) dq1"};
    case CaseId::G41:
      return {"0", "0"};
  }
  return {"", ""};
}

std::vector<Vec3> linspace_grid(const geometry::Box& box, int n) {
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(n) * n * n);
  auto at = [&](int k, int i) { return box.lo[k] + (box.hi[k] - box.lo[k]) * i / (n - 1); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) pts.push_back({at(0, i), at(1, j), at(2, k)});
  return pts;
}

geometry::Box grid_box(const RunConfig& cfg, const geometry::Chart& chart) {
  if (!cfg.box) return chart.domain.shrunk(0.1);
  geometry::Box b;
  for (int k = 0; k < 3; ++k) b.lo[k] = (*cfg.box)[k].first, b.hi[k] = (*cfg.box)[k].second;
  return b;
}

// Residuals for one case; missing keys mean "not applicable".
ordered_json verify_case(const RunConfig& cfg, CaseId id) {
  const auto params = params_for(cfg, id);
  const auto a = has_parameter(id) ? params.a : std::nullopt;
  auto fc = fields::make_config(id, params);
  if (cfg.perturb) {
    if (cfg.perturb->first == "chi")
      fc = ops::perturb_chi(fc, cfg.perturb->second);
    else
      fc.F = fields::add_nonclosed_perturbation(fc.F, cfg.perturb->second);
  }

  const auto chart = geometry::chart_for(id, a);
  const auto X = geometry::chart_fields(id, a);
  const auto box = chart.domain.shrunk(0.1);
  std::mt19937_64 rng(cfg.seed);

  double hyp = 0, push = 0, kill = 0, dF = 0, lieF = 0, dA = 0, chi = 0;
  for (int k = 0; k < cfg.points; ++k) {
    const Vec3 pt = geometry::sample_box(box, rng);
    hyp = std::max(hyp, geometry::hyperboloid_residual(chart.map(pt)));
    dF = std::max(dF, fields::closedness_residual(fc.F, pt));
    dA = std::max(dA, fields::potential_residual(fc.A, fc.F, pt));
    for (std::size_t A = 0; A < X.size(); ++A) {
      auto pf = geometry::pushforward(id, static_cast<int>(A), pt, a);
      push = std::max({push, pf.solve_residual, pf.transverse, pf.table2_residual});
      kill = std::max(kill, geometry::killing_residual(chart, X[A], pt));
      lieF = std::max(lieF, fields::lie_derivative_residual(X[A], fc.F, pt));
      chi = std::max(chi, fields::chi_residual(X[A], fc.chi[A], fc.F, pt));
    }
  }

  ordered_json r;
  r["hyperboloid"] = hyp;
  r["pushforward"] = push;
  r["DefEq1"] = kill;
  r["dF"] = dF;
  r["LieF"] = lieF;
  r["dA"] = dA;
  r["EqChi"] = chi;

  const auto Xhat = ops::symmetry_operators(fc);
  const cplx central(0.0, params.e);
  const auto probes = ops::probe_points(id, a, 12, cfg.seed);
  const auto fit = ops::commutation_table_fit(Xhat, probes, central);
  const auto sub = lie::chart_subalgebra(id, a);
  const auto coc = fields::cocycle(fc);
  r["comm_opX"] = std::max({fit.residual, fit.C.distance(sub.algebra), (fit.F.F - coc.F).cwiseAbs().maxCoeff()});

  ops::SymmetryOptions so;
  so.points = cfg.points;
  so.seed = cfg.seed;
  r["symmetry_H"] = ops::symmetry_check(fc, so).max_residual;

  if (is_integrable_case(id)) {
    r["display_H"] = ops::operator_distance(ops::kg_operator(fc), ops::kg_display(fc), id, a, cfg.points, cfg.seed);

    integrate::SolveParams sp{params, cfg.J, cfg.lambda};
    const auto rep = integrate::lambda_rep(id, sp);
    const auto an = integrate::ansatz(id, sp);
    const auto lprobes = integrate::ansatz_probes(an, 20, cfg.seed);
    const auto xfit = ops::commutation_table_fit(Xhat, lprobes, central);
    r["lambda_rep"] = integrate::lambda_table_residual(rep, xfit.C, xfit.F);
    r["Xleqs"] = integrate::xleqs_residual(an, rep, lprobes);

    const auto basis = integrate::solution_basis(id, sp);
    const auto H = ops::kg_operator(fc);
    const auto grid = integrate::ansatz_grid(an, 6);
    r["H_phi"] = std::max(integrate::reduction_residual(an, H, basis.phi1, grid),
                          integrate::reduction_residual(an, H, basis.phi2, grid));
  }
  return r;
}

}  // namespace

int cmd_catalog(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  ordered_json doc;
  doc["schema"] = 1;
  doc["command"] = "catalog";
  ordered_json cases = ordered_json::array();
  ordered_json diff = ordered_json::array();
  const lie::IndexOptions iopt;

  for (CaseId id : kAllCases) {
    fields::FieldParams p;
    if (has_parameter(id)) p.a = cfg.field.a.value_or(1.0);
    const auto sub = lie::subalgebra(id, p.a);
    ordered_json c;
    c["id"] = case_name(id);
    c["cli_name"] = case_cli_name(id);
    c["parameter"] = has_parameter(id) ? ordered_json{{"name", "a"}, {"value", *p.a}} : ordered_json(nullptr);
    c["dim"] = sub.dim();
    c["orbit_dim"] = orbit_dim(id);
    c["basis"] = sub.algebra.basis_labels;

    ordered_json gens = ordered_json::array();
    for (int r = 0; r < sub.generator_coeffs.rows(); ++r) {
      std::vector<double> row(6);
      for (int k = 0; k < 6; ++k) row[k] = sub.generator_coeffs(r, k);
      gens.push_back(row);
    }
    c["generators"] = gens;
    c["generator_basis"] = {"J01", "J02", "J03", "J12", "J13", "J23"};

    ordered_json sc = ordered_json::array();
    const int n = sub.dim();
    for (int A = 0; A < n; ++A)
      for (int B = A + 1; B < n; ++B)
        for (int C = 0; C < n; ++C)
          if (sub.algebra.c(A, B, C) != 0.0) sc.push_back({A + 1, B + 1, C + 1, sub.algebra.c(A, B, C)});
    c["structure_constants"] = sc;

    auto [two_form, gauge] = field_templates(id);
    c["field"] = {{"two_form", two_form}, {"potential", gauge}};

    const auto ext = fields::extended_algebra(fields::make_config(id, p));
    const auto computed = lie::integrability_check(ext, 3, iopt);
    const auto tab = lie::tabulated_record(id);
    c["table3"] = {{"computed", record_json(computed)}, {"tabulated", record_json(tab)}, {"match", computed == tab}};
    if (!(computed == tab)) {
      auto cj = record_json(computed), tj = record_json(tab);
      for (auto it = cj.begin(); it != cj.end(); ++it)
        if (*it != tj[it.key()])
          diff.push_back({{"case", case_name(id)}, {"field", it.key()}, {"computed", *it}, {"tabulated", tj[it.key()]}});
    }
    cases.push_back(c);
  }
  doc["cases"] = cases;
  doc["table3_diff"] = diff;
  out << doc.dump(2) << "\n";
  return kPass;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto tol = effective_tolerances(cfg);
  const auto ids = selected_cases(cfg);

  ordered_json doc;
  doc["schema"] = 1;
  doc["command"] = "verify";
  doc["seed"] = cfg.seed;
  doc["points"] = cfg.points;
  doc["parameters"] = parameters_json(cfg.field);
  doc["J"] = cfg.J;
  doc["lambda"] = cfg.lambda ? complex_json(*cfg.lambda) : ordered_json(nullptr);
  doc["perturb"] = cfg.perturb ? ordered_json{{"kind", cfg.perturb->first}, {"eps", cfg.perturb->second}}
                               : ordered_json(nullptr);
  ordered_json tj;
  for (const auto& [k, v] : default_tolerances()) tj[k] = tol.at(k);
  doc["tolerances"] = tj;

  ordered_json cases = ordered_json::array();
  ordered_json summary = ordered_json::array();
  bool all_pass = true;
  for (CaseId id : ids) {
    ordered_json residuals;
    try {
      residuals = verify_case(cfg, id);
    } catch (const DomainError& e) {
      throw UsageError(case_name(id) + ": " + e.what());
    }
    ordered_json failed = ordered_json::array();
    for (auto it = residuals.begin(); it != residuals.end(); ++it) {
      const double v = it->get<double>();
      if (!std::isfinite(v) || !(v < tol.at(it.key()))) failed.push_back(it.key());
    }
    const bool pass = failed.empty();
    all_pass = all_pass && pass;
    const auto a = has_parameter(id) ? params_for(cfg, id).a : std::nullopt;
    ordered_json c;
    c["case"] = case_name(id);
    c["a"] = a ? ordered_json(*a) : ordered_json(nullptr);
    c["residuals"] = residuals;
    c["failed"] = failed;
    c["pass"] = pass;
    cases.push_back(c);
    summary.push_back({{"case", case_name(id)}, {"checks", residuals.size()}, {"failed", failed.size()}, {"pass", pass}});
    for (const auto& k : failed)
      err << case_name(id) << ": " << k.get<std::string>() << " = " << fmt(residuals[k.get<std::string>()].get<double>())
          << " exceeds " << fmt(tol.at(k.get<std::string>())) << "\n";
  }
  doc["cases"] = cases;
  doc["summary"] = summary;
  doc["pass"] = all_pass;
  out << doc.dump(2) << "\n";
  return all_pass ? kPass : kFail;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.case_filter == "all") throw UsageError("solve needs a single --case");
  const CaseId id = selected_cases(cfg).front();
  if (id == CaseId::G41) throw UsageError("free-field case out of scope");
  if (!is_integrable_case(id))
    throw UsageError(case_name(id) + " is not in the separable family (G31, G32, G33a, G34, G35)");
  const auto tol = effective_tolerances(cfg);

  integrate::SolveParams sp{params_for(cfg, id), cfg.J, cfg.lambda};
  integrate::SolutionAnsatz an;
  integrate::SolutionBasis basis;
  try {
    an = integrate::ansatz(id, sp);
    basis = integrate::solution_basis(id, sp);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const auto& Phi = cfg.basis == 1 ? basis.phi1 : basis.phi2;
  const cplx lambda = sp.lambda_or_default(id);
  const auto chart = geometry::chart_for(id, has_parameter(id) ? sp.field.a : std::nullopt);
  const auto H = ops::kg_operator(fields::make_config(id, sp.field));

  struct Row {
    Vec3 p;
    cplx phi;
    double residual;
  };
  std::vector<Row> rows;
  int dropped = 0;
  double max_res = 0.0;
  for (const Vec3& p : linspace_grid(grid_box(cfg, chart), cfg.grid)) {
    try {
      if (!chart.domain.contains(p)) throw DomainError("outside chart domain");
      const Coords x = seed<4>(p, lambda);
      const cplx phi = an.assemble(x, Phi).value();
      const double res = integrate::reduction_residual(an, H, Phi, {x});
      if (!std::isfinite(phi.real()) || !std::isfinite(phi.imag()) || !std::isfinite(res)) throw DomainError("nan");
      rows.push_back({p, phi, res});
      max_res = std::max(max_res, res);
    } catch (const DomainError&) {
      ++dropped;
    }
  }
  if (dropped > 0) err << "warning: dropped " << dropped << " grid nodes (branch point or outside the chart domain)\n";
  if (rows.empty()) throw UsageError("no grid node inside the solution domain");
  const bool pass = max_res < tol.at("H_phi");

  if (cfg.format == "json") {
    ordered_json doc;
    doc["schema"] = 1;
    doc["command"] = "solve";
    doc["case"] = case_name(id);
    doc["parameters"] = parameters_json(sp.field);
    doc["J"] = sp.J;
    doc["lambda"] = complex_json(lambda);
    doc["reduction_variable"] = an.v_display;
    doc["basis"] = {{"member", cfg.basis}, {"closed_form", basis.closed_form}, {"description", basis.description}};
    ordered_json rec;
    for (const auto& [k, v] : basis.record) rec[k] = complex_json(v);
    doc["record"] = rec;
    doc["nodes"] = rows.size();
    doc["dropped"] = dropped;
    doc["max_residual"] = max_res;
    doc["tolerance"] = tol.at("H_phi");
    doc["pass"] = pass;
    out << doc.dump(2) << "\n";
  } else {
    out << chart.coord_names[0] << "," << chart.coord_names[1] << "," << chart.coord_names[2]
        << ",re_phi,im_phi,residual\n";
    for (const auto& r : rows)
      out << fmt(r.p[0]) << "," << fmt(r.p[1]) << "," << fmt(r.p[2]) << "," << fmt(r.phi.real()) << ","
          << fmt(r.phi.imag()) << "," << fmt(r.residual) << "\n";
    err << case_name(id) << ": " << rows.size() << " nodes, max residual " << fmt(max_res) << "\n";
  }
  return pass ? kPass : kFail;
}

int cmd_chart(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto ids = selected_cases(cfg);
  const bool single = ids.size() == 1;
  for (CaseId id : ids) {
    const auto a = has_parameter(id) ? std::optional<double>(cfg.field.a.value_or(1.0)) : std::nullopt;
    const auto chart = geometry::chart_for(id, a);
    const auto& n = chart.coord_names;
    if (single)
      out << "case," << n[0] << "," << n[1] << "," << n[2] << ",x0,x1,x2,x3,hyperboloid_residual\n";
    else if (id == ids.front())
      out << "case,coords,c1,c2,c3,x0,x1,x2,x3,hyperboloid_residual\n";

    auto pts = linspace_grid(grid_box(cfg, chart), cfg.grid);
    const Vec3 origin{0.0, 0.0, 0.0};
    if (chart.domain.contains(origin) && std::find(pts.begin(), pts.end(), origin) == pts.end())
      pts.insert(pts.begin(), origin);
    for (const Vec3& p : pts) {
      const Vec4 x = chart.map(p);
      out << case_name(id);
      if (!single) out << "," << n[0] << " " << n[1] << " " << n[2];
      for (double v : p) out << "," << fmt(v);
      for (double v : x) out << "," << fmt(v);
      out << "," << fmt(geometry::hyperboloid_residual(x)) << "\n";
    }
  }
  return kPass;
}

}  // namespace dskg::cli
