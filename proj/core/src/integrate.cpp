#include "dskg/integrate.hpp"

#include <cmath>
#include <memory>
#include <random>

namespace dskg::integrate {

namespace {

const cplx I(0.0, 1.0);

void require_integrable(CaseId id) {
  if (!is_integrable_case(id)) throw DomainError("case " + case_name(id) + " has no separated solutions");
}

double mass_term(const fields::FieldParams& f) { return f.m * f.m + 6.0 * f.zeta; }

std::optional<double> case_a(CaseId id, const fields::FieldParams& f) {
  return id == CaseId::G33a ? std::optional<double>(checked_parameter(id, f.a)) : std::nullopt;
}

// Principal logarithm that refuses to sit on the cut.
J4 branch_log(const J4& base, const char* what) {
  using std::log;
  cplx b = base.value();
  if (std::abs(b) < 1e-300) throw DomainError(std::string("ansatz: ") + what + " vanishes (branch point)");
  if (b.imag() == 0.0 && b.real() < 0.0)
    throw DomainError(std::string("ansatz: ") + what + " lies on the branch cut of the principal power");
  return log(base);
}

ops::DiffOp1 lambda_op(std::function<J4(const J4&)> a, std::function<J4(const J4&)> b) {
  ops::DiffOp1 op;
  op.coeffs = [a](const Coords& x) { return std::array<J4, kSlots>{J4(0.0), J4(0.0), J4(0.0), a(x[3])}; };
  op.scalar = [b](const Coords& x) { return b(x[3]); };
  return op;
}

}  // namespace

cplx default_lambda(CaseId id) {
  switch (id) {
    case CaseId::G31: return 1.0;
    case CaseId::G32: return {0.2, 0.1};
    case CaseId::G33a: return 0.0;
    case CaseId::G34: return {0.3, 0.2};
    case CaseId::G35: return 0.05;
    default: return 0.0;
  }
}

cplx SolveParams::lambda_or_default(CaseId id) const { return lambda ? *lambda : default_lambda(id); }

std::string to_string(Measure m) {
  switch (m) {
    case Measure::Lebesgue: return "lebesgue";
    case Measure::Gaussian: return "gaussian";
    case Measure::Weighted: return "weighted";
  }
  return "?";
}

LambdaRep lambda_rep(CaseId id, const SolveParams& p) {
  require_integrable(id);
  const double J = p.J, e = p.field.e, mu = p.field.mu;
  if (!std::isfinite(J)) throw DomainError("lambda_rep: J must be finite");
  if (id == CaseId::G34 && !(J > 0.0)) throw DomainError("lambda_rep: G34 requires J > 0");
  if (id == CaseId::G35 && !(J >= 0.0)) throw DomainError("lambda_rep: G35 requires J >= 0");
  LambdaRep r;
  r.id = id;
  r.J = J;
  r.ell0 = -I * e;
  auto zero = [](const J4&) { return J4(0.0); };
  auto one = [](const J4&) { return J4(1.0); };
  switch (id) {
    case CaseId::G31:
      r.ops = {lambda_op(zero, [J](const J4& l) { return (I * J) * l; }),
               lambda_op(zero, [](const J4& l) { return I * l; }),
               lambda_op([](const J4& l) { return l; }, [](const J4&) { return J4(0.5); })};
      r.measure_note = "d lambda on R";
      break;
    case CaseId::G32:
      r.ops = {lambda_op([](const J4&) { return J4(I); }, [=](const J4& l) { return (-0.5 * I * e * mu) * l; }),
               lambda_op([](const J4&) { return J4(-1.0); }, [=](const J4& l) { return (-0.5 * e * mu) * l; }),
               lambda_op([](const J4& l) { return I * l; }, [=](const J4&) { return J4(-I * J); })};
      r.measure = Measure::Gaussian;
      r.measure_note = "exp(-e |lambda|^2 / 2) on C";
      break;
    case CaseId::G33a: {
      const double a = checked_parameter(id, p.field.a);
      r.ops = {lambda_op(zero, [=](const J4& l) { using std::exp, std::cos; return (I * J) * exp(a * l) * cos(l); }),
               lambda_op(zero, [=](const J4& l) { using std::exp, std::sin; return (I * J) * exp(a * l) * sin(l); }),
               lambda_op(one, zero)};
      r.measure_note = "d lambda on R";
      break;
    }
    case CaseId::G34:
      r.ops = {lambda_op([](const J4& l) { return -I * l; }, [=](const J4&) { return J4(I * J); }),
               lambda_op([](const J4& l) { return (0.5 * I) * (1.0 - l * l); }, [=](const J4& l) { return (I * J) * l; }),
               lambda_op([](const J4& l) { return -0.5 * (1.0 + l * l); }, [=](const J4& l) { return J * l; })};
      r.measure = Measure::Weighted;
      r.measure_note = "(1 + |lambda|^2)^(2(J+1)) on C";
      break;
    case CaseId::G35: {
      const cplx w = I * J + 0.5;
      // continuous series only
      r.ops = {lambda_op([](const J4& l) { return l; }, [=](const J4&) { return J4(w); }),
               lambda_op([](const J4& l) { return 0.5 * (l * l + 1.0); }, [=](const J4& l) { return w * l; }),
               lambda_op([](const J4& l) { return 0.5 * (l * l - 1.0); }, [=](const J4& l) { return w * l; })};
      r.measure_note = "d lambda on R";
      break;
    }
    default: break;
  }
  return r;
}

ops::TableFit lambda_commutation_fit(const LambdaRep& rep, int samples, std::uint64_t seed_value) {
  std::mt19937_64 rng(seed_value);
  std::uniform_real_distribution<double> U(-0.9, 0.9);
  const bool complex_lambda = rep.id == CaseId::G32 || rep.id == CaseId::G34;
  std::vector<Coords> probes;
  for (int i = 0; i < samples; ++i) {
    cplx l(U(rng), complex_lambda ? U(rng) : 0.0);
    probes.push_back(seed<4>(Vec3{0.0, 0.0, 0.0}, l));
  }
  return ops::commutation_table_fit(rep.ops, probes, rep.ell0);
}

double lambda_table_residual(const LambdaRep& rep, const lie::LieAlgebraSpec& C, const lie::Cocycle& F, int samples,
                             std::uint64_t seed_value) {
  std::mt19937_64 rng(seed_value);
  std::uniform_real_distribution<double> U(-0.9, 0.9);
  const bool complex_lambda = rep.id == CaseId::G32 || rep.id == CaseId::G34;
  const int n = int(rep.ops.size());
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    Coords x = seed<4>(Vec3{0.0, 0.0, 0.0}, cplx(U(rng), complex_lambda ? U(rng) : 0.0));
    std::vector<ops::OpSample> s;
    for (const auto& op : rep.ops) s.push_back(ops::sample(op, x));
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        ops::OpSample lhs = ops::commutator(rep.ops[a], rep.ops[b], x);
        ops::OpSample rhs;
        rhs.scalar = F.F(a, b) * rep.ell0;
        for (int c = 0; c < n; ++c) {
          for (int k = 0; k < kSlots; ++k) rhs.coeffs[k] += C.c(a, b, c) * s[c].coeffs[k];
          rhs.scalar += C.c(a, b, c) * s[c].scalar;
        }
        for (int k = 0; k < kSlots; ++k) worst = std::max(worst, std::abs(lhs.coeffs[k] - rhs.coeffs[k]));
        worst = std::max(worst, std::abs(lhs.scalar - rhs.scalar));
      }
  }
  return worst;
}

J4 SolutionAnsatz::assemble(const Coords& x, const UniFn& Phi) const {
  using std::exp;
  return exp(phase(x)) * Phi(v(x));
}

SolutionAnsatz ansatz(CaseId id, const SolveParams& p) {
  require_integrable(id);
  SolutionAnsatz an;
  an.id = id;
  an.params = p;
  const cplx lam = p.lambda_or_default(id);
  an.params.lambda = lam;
  const double J = p.J, e = p.field.e, mu = p.field.mu, mu1 = p.field.mu1, mu2 = p.field.mu2;
  const bool real_lambda = id == CaseId::G31 || id == CaseId::G33a || id == CaseId::G35;
  if (real_lambda && lam.imag() != 0.0) throw DomainError("ansatz: lambda must be real for " + case_name(id));
  using std::exp, std::sin, std::cos;
  switch (id) {
    case CaseId::G31:
      if (lam == 0.0) throw DomainError("ansatz: G31 needs lambda != 0 (v vanishes identically)");
      an.phase = [=](const Coords& x) {
        return -I * x[3] * (J * x[0] + x[1]) - 0.5 * x[2] + (I * e) * exp(x[2]) * (mu1 * x[0] + mu2 * x[1]);
      };
      an.v = [](const Coords& x) { return x[3] * exp(-x[2]); };
      an.v_display = "lambda exp(-q3)";
      break;
    case CaseId::G32:
      an.phase = [=](const Coords& x) {
        J4 base = x[0] + I * (x[1] + x[3]);
        return J * branch_log(base, "q1 + i(q2 + lambda)") + (0.5 * e * mu) * x[3] * (I * x[0] + x[1]) +
               (0.25 * e * mu) * (x[0] * x[0] + x[1] * x[1]);
      };
      an.v = [](const Coords& x) { return x[2]; };
      an.v_display = "u1";
      break;
    case CaseId::G33a: {
      const double a = checked_parameter(id, p.field.a);
      const double p1 = (a * mu1 - mu2) / (1 + a * a), p2 = (mu1 + a * mu2) / (1 + a * a);
      an.phase = [=](const Coords& x) {
        J4 E = exp(a * x[2]);
        return (I * e) * E * (p1 * x[0] - p2 * x[1]) * cos(x[2]) + (I * e) * E * (p2 * x[0] + p1 * x[1]) * sin(x[2]) -
               (I * J) * exp(a * x[3]) * (x[0] * cos(x[3]) + x[1] * sin(x[3]));
      };
      an.v = [](const Coords& x) { return x[2] - x[3]; };
      an.v_display = "q3 - lambda";
      break;
    }
    case CaseId::G34:
      an.phase = [=](const Coords& x) {
        J4 c2 = cos(x[1]), s2 = sin(x[1]), E = exp(I * x[0]);
        J4 base = (x[3] * x[3] * E + recip(E)) * c2 - (2.0 * I) * x[3] * s2;
        J4 w = I * x[3] * E * c2;
        J4 ratio = ((w + s2 + 1.0) * (s2 - 1.0)) / ((w + s2 - 1.0) * c2);
        return J * branch_log(base, "power base") + (e * mu) * branch_log(ratio, "field ratio");
      };
      an.v = [](const Coords& x) { return x[2]; };
      an.v_display = "u1";
      break;
    case CaseId::G35:
      an.phase = [=](const Coords& x) {
        J4 c2 = cos(x[1]), s2 = sin(x[1]), Em = exp(-x[0]);
        J4 base = 2.0 * x[3] * s2 + (recip(Em) - x[3] * x[3] * Em) * c2;
        J4 ratio = (x[3] * Em * c2 + 1.0 - s2) / (c2 - x[3] * Em * (1.0 - s2));
        return (-I * J - 0.5) * branch_log(base, "power base") + (I * e * mu) * branch_log(ratio, "field ratio");
      };
      an.v = [](const Coords& x) { return x[2]; };
      an.v_display = "u1";
      break;
    default: break;
  }
  return an;
}

double xleqs_residual(const SolutionAnsatz& an, const LambdaRep& rep, const std::vector<Coords>& probes) {
  auto cfg = fields::make_config(an.id, an.params.field);
  auto X = ops::symmetry_operators(cfg);
  // any function of v is annihilated; take one with all derivatives nonzero
  UniFn Phi = [](const J4& v) {
    using std::exp;
    return exp(0.3 * v) + v * v;
  };
  double worst = 0.0;
  for (const auto& x : probes) {
    J4 phi = an.assemble(x, Phi);
    for (std::size_t A = 0; A < X.size(); ++A) {
      cplx xa = X[A].apply(phi, x).value();
      cplx la = rep.ops[A].apply(phi, x).value();
      worst = std::max(worst, std::abs(xa + la) / (1.0 + std::abs(xa) + std::abs(la)));
    }
  }
  return worst;
}

ReducedODE reduced_ode(CaseId id, const SolveParams& p) {
  require_integrable(id);
  ReducedODE r;
  r.id = id;
  r.params = p;
  const double J = p.J, e = p.field.e, mu = p.field.mu, mu1 = p.field.mu1, mu2 = p.field.mu2;
  const double k = mass_term(p.field);
  using std::exp, std::sin, std::cos, std::tanh, std::cosh, std::tan;
  switch (id) {
    case CaseId::G31: {
      const double c0 = k + e * e * (mu1 * mu1 + mu2 * mu2) - 0.75, c1 = -2.0 * e * (J * mu1 + mu2);
      r.p = [](const J4&) { return J4(0.0); };
      r.q = [=](const J4& v) {
        if (std::abs(v.value()) < 1e-12) throw DomainError("reduced ODE: v = 0 is a singular point");
        return (J * J + 1.0) + c1 * recip(v) + c0 * recip(v * v);
      };
      r.display = "v^2 Phi'' + [(J^2+1) v^2 - 2e(J mu1 + mu2) v + m^2 + 6 zeta + e^2(mu1^2 + mu2^2) - 3/4] Phi = 0";
      break;
    }
    case CaseId::G32: {
      const double s = e * mu * (2.0 * J + 1.0);
      r.p = [](const J4&) { return J4(-2.0); };
      r.q = [=](const J4& v) { return k - s * exp(2.0 * v); };
      r.display = "Phi'' - 2 Phi' + [m^2 + 6 zeta - e mu (2J+1) exp(2v)] Phi = 0";
      break;
    }
    case CaseId::G33a: {
      const double a = checked_parameter(id, p.field.a);
      const double f = 2.0 * e * a * a * J / (1.0 + a * a);
      const double c = a * a * k + e * e * a * a * (mu1 * mu1 + mu2 * mu2) / (1.0 + a * a);
      r.p = [a](const J4&) { return J4(2.0 * a); };
      r.q = [=](const J4& v) {
        J4 E = exp(-a * v);
        return -f * E * ((a * mu1 - mu2) * cos(v) + (mu1 + a * mu2) * sin(v)) + (a * a * J * J) * E * E + c;
      };
      r.display =
          "Phi'' + 2a Phi' + [-2 e a^2 J exp(-av) ((a mu1 - mu2) cos v + (mu1 + a mu2) sin v)/(1+a^2) "
          "+ a^2 J^2 exp(-2av) + a^2 (m^2 + 6 zeta) + e^2 a^2 (mu1^2 + mu2^2)/(1+a^2)] Phi = 0";
      break;
    }
    case CaseId::G34: {
      const double c = J * (J + 1.0) - e * e * mu * mu;
      r.p = [](const J4& v) { return 2.0 * tanh(v); };
      r.q = [=](const J4& v) { return k + c * recip(square(cosh(v))); };
      r.display = "Phi'' + 2 tanh(v) Phi' + [m^2 + 6 zeta + (J(J+1) - e^2 mu^2)/cosh^2 v] Phi = 0";
      break;
    }
    case CaseId::G35: {
      const double c = J * J - e * e * mu * mu + 0.25;
      auto check = [](const J4& v) {
        if (std::abs(std::sin(v.value())) < 1e-12) throw DomainError("reduced ODE: sin v = 0 is a singular point");
      };
      r.p = [check](const J4& v) {
        check(v);
        return 2.0 * recip(tan(v));
      };
      r.q = [=](const J4& v) {
        check(v);
        return -k + c * recip(square(sin(v)));
      };
      r.display = "Phi'' + 2 cot(v) Phi' + [-(m^2 + 6 zeta) + (J^2 - e^2 mu^2 + 1/4)/sin^2 v] Phi = 0";
      break;
    }
    default: break;
  }
  return r;
}

cplx ReducedODE::residual(const UniFn& Phi, double v) const {
  J4 t = J4::variable(0, v);
  J4 f = Phi(t);
  J4 d1 = f.deriv(0);
  J4 d2 = d1.deriv(0);
  return d2.value() + p_at(v) * d1.value() + q_at(v) * f.value();
}

double reduction_residual(const SolutionAnsatz& an, const ops::DiffOp2& H, const UniFn& Phi,
                          const std::vector<Coords>& probes) {
  double worst = 0.0;
  for (const auto& x : probes) {
    J4 phi = an.assemble(x, Phi);
    double scale = 0.0;
    cplx h = H.apply(phi, x, &scale).value();
    worst = std::max(worst, std::abs(h) / (1.0 + scale));
  }
  return worst;
}

double reduction_residual(const SolutionAnsatz& an, const UniFn& Phi, const std::vector<Coords>& probes) {
  return reduction_residual(an, ops::kg_operator(fields::make_config(an.id, an.params.field)), Phi, probes);
}

std::vector<Coords> ansatz_probes(const SolutionAnsatz& an, int count, std::uint64_t seed) {
  return ops::probe_points(an.id, case_a(an.id, an.params.field), count, seed, an.params.lambda_or_default(an.id));
}

std::vector<Coords> ansatz_grid(const SolutionAnsatz& an, int n) {
  auto box = geometry::chart_for(an.id, case_a(an.id, an.params.field)).domain.shrunk(0.1);
  const cplx lam = an.params.lambda_or_default(an.id);
  std::vector<Coords> out;
  auto node = [&](int axis, int i) {
    return n == 1 ? 0.5 * (box.lo[axis] + box.hi[axis]) : box.lo[axis] + (box.hi[axis] - box.lo[axis]) * i / (n - 1);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out.push_back(seed<4>(Vec3{node(0, i), node(1, j), node(2, k)}, lam));
  return out;
}

std::pair<double, double> v_range(const SolutionAnsatz& an) {
  auto box = geometry::chart_for(an.id, case_a(an.id, an.params.field)).domain.shrunk(0.1);
  const double lam = an.params.lambda_or_default(an.id).real();
  switch (an.id) {
    case CaseId::G31: {
      double v1 = lam * std::exp(-box.hi[2]), v2 = lam * std::exp(-box.lo[2]);
      return {std::min(v1, v2), std::max(v1, v2)};
    }
    case CaseId::G33a: return {box.lo[2] - lam, box.hi[2] - lam};
    default: return {box.lo[2], box.hi[2]};
  }
}

OdePhi::OdePhi(const ReducedODE& ode, double v0, cplx phi0, cplx dphi0, double v_lo, double v_hi,
               const sf::OdeConfig& cfg)
    : ode_(ode),
      sol_([p = ode.p](double v) { return p(J4(v)).value(); }, [q = ode.q](double v) { return q(J4(v)).value(); },
           v0, phi0, dphi0, v_lo, v_hi, cfg) {}

J4 OdePhi::operator()(const J4& v) const {
  const double v0 = v.value().real();
  auto [f0, f1] = sol_(v0);
  // Taylor data of p and q at v0
  std::array<cplx, 3> pk, qk;
  J4 pj = ode_.p(J4::variable(0, v0)), qj = ode_.q(J4::variable(0, v0));
  for (int k = 0; k < 3; ++k) {
    pk[k] = pj.value();
    qk[k] = qj.value();
    pj = pj.deriv(0);
    qj = qj.deriv(0);
  }
  std::array<cplx, 5> d{f0, f1, 0.0, 0.0, 0.0};
  for (int n = 0; n <= 2; ++n) {
    cplx s = 0.0;
    for (int k = 0; k <= n; ++k) s += double(detail::binom(n, k)) * (pk[k] * d[n - k + 1] + qk[k] * d[n - k]);
    d[n + 2] = -s;
  }
  return v.compose(d);
}

SolutionBasis solution_basis(CaseId id, const SolveParams& p) {
  require_integrable(id);
  SolutionBasis b;
  b.id = id;
  const double J = p.J, e = p.field.e, mu = p.field.mu, mu1 = p.field.mu1, mu2 = p.field.mu2;
  const double k = mass_term(p.field);
  using std::exp, std::sqrt, std::cos, std::sin, std::tanh, std::cosh;
  switch (id) {
    case CaseId::G31: {
      const double sq = std::sqrt(J * J + 1.0);
      const cplx alpha = I * e * (J * mu1 + mu2) / sq;
      const cplx beta = std::sqrt(cplx(1.0 - k - e * e * (mu1 * mu1 + mu2 * mu2)));
      const cplx c = 2.0 * I * sq;
      b.phi1 = [=](const J4& v) { return sf::whittaker_m(alpha, beta, v * c); };
      b.phi2 = [=](const J4& v) { return sf::whittaker_w(alpha, beta, v * c); };
      b.record = {{"alpha", alpha}, {"beta", beta}, {"z_per_v", c}};
      b.description = "M_{alpha,beta}(z), W_{alpha,beta}(z), z = 2i sqrt(J^2+1) v";
      b.domain = {1e-3, sf::kSeriesLimit / std::abs(c)};
      break;
    }
    case CaseId::G32: {
      const cplx s = std::sqrt(cplx(e * mu * (2.0 * J + 1.0)));
      const cplx alpha = std::sqrt(cplx(1.0 - k));
      b.phi1 = [=](const J4& v) { return exp(v) * sf::bessel_j(alpha, exp(v) * (I * s)); };
      b.phi2 = [=](const J4& v) { return exp(v) * sf::bessel_y(alpha, exp(v) * (I * s)); };
      b.record = {{"alpha", alpha}, {"argument_scale", I * s}};
      b.description = "exp(v) J_alpha(i exp(v) s), exp(v) Y_alpha(i exp(v) s), s = sqrt(e mu (2J+1))";
      b.domain = {-10.0, std::log(sf::kSeriesLimit / std::max(std::abs(s), 1e-300))};
      break;
    }
    case CaseId::G33a: {
      SolutionAnsatz an = ansatz(id, p);
      auto [lo, hi] = v_range(an);
      const double pad = 0.05 * (hi - lo) + 0.05;
      lo -= pad;
      hi += pad;
      const double mid = 0.5 * (lo + hi);
      auto ode = reduced_ode(id, p);
      auto s1 = std::make_shared<OdePhi>(ode, mid, 1.0, 0.0, lo, hi);
      auto s2 = std::make_shared<OdePhi>(ode, mid, 0.0, 1.0, lo, hi);
      b.phi1 = [s1](const J4& v) { return (*s1)(v); };
      b.phi2 = [s2](const J4& v) { return (*s2)(v); };
      b.closed_form = false;
      b.record = {{"v0", mid}};
      b.description = "numerical pair with (Phi, Phi') = (1, 0) and (0, 1) at v0";
      b.domain = {lo, hi};
      break;
    }
    case CaseId::G34: {
      const cplx nu = std::sqrt(cplx((J + 0.5) * (J + 0.5) - e * e * mu * mu)) - 0.5;
      const cplx sigma = std::sqrt(cplx(1.0 - k));
      b.phi1 = [=](const J4& v) { return sf::legendre_p(nu, sigma, tanh(v)) * recip(cosh(v)); };
      b.phi2 = [=](const J4& v) { return sf::legendre_q(nu, sigma, tanh(v)) * recip(cosh(v)); };
      b.record = {{"nu", nu}, {"sigma", sigma}};
      b.description = "P_nu^sigma(tanh v)/cosh v, Q_nu^sigma(tanh v)/cosh v";
      b.domain = {-2.5, 2.5};
      break;
    }
    case CaseId::G35: {
      const cplx nu = std::sqrt(cplx(1.0 - k)) - 0.5;
      const cplx sigma = std::sqrt(cplx(e * e * mu * mu - J * J));
      b.phi1 = [=](const J4& v) { return sf::legendre_p(nu, sigma, cos(v)) * recip(sqrt(sin(v))); };
      b.phi2 = [=](const J4& v) { return sf::legendre_q(nu, sigma, cos(v)) * recip(sqrt(sin(v))); };
      b.record = {{"nu", nu}, {"sigma", sigma}};
      b.description = "P_nu^sigma(cos v)/sqrt(sin v), Q_nu^sigma(cos v)/sqrt(sin v)";
      b.domain = {0.05, std::numbers::pi - 0.05};
      break;
    }
    default: break;
  }
  return b;
}

cplx wronskian(const SolutionBasis& b, double v) {
  J4 t = J4::variable(0, v);
  J4 f = b.phi1(t), g = b.phi2(t);
  return f.value() * g.d(0) - f.d(0) * g.value();
}

double cross_oracle_deviation(const SolutionBasis& b, const ReducedODE& ode, int member, double v0, double v1,
                              int samples, const sf::OdeConfig& cfg) {
  const UniFn& Phi = member == 1 ? b.phi1 : b.phi2;
  J4 t = J4::variable(0, v0);
  J4 f = Phi(t);
  sf::SecondOrderSolution rk([&ode](double v) { return ode.p_at(v); }, [&ode](double v) { return ode.q_at(v); }, v0,
                             f.value(), f.d(0), std::min(v0, v1), std::max(v0, v1), cfg);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    double v = v0 + (v1 - v0) * i / (samples - 1);
    cplx exact = Phi(J4(v)).value();
    cplx num = rk(v).first;
    worst = std::max(worst, std::abs(exact - num) / std::max(1.0, std::abs(exact)));
  }
  return worst;
}

std::pair<double, double> test_interval(CaseId id) {
  switch (id) {
    case CaseId::G31: return {0.5, 2.5};
    case CaseId::G35: return {0.3, 2.3};
    default: return {-1.0, 1.0};
  }
}

}  // namespace dskg::integrate
