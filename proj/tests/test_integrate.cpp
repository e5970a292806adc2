#include <doctest.h>

#include <cmath>
#include <random>

#include "dskg/integrate.hpp"

using namespace dskg;
using namespace dskg::integrate;

namespace {

SolveParams defaults(CaseId id) {
  SolveParams p;
  if (has_parameter(id)) p.field.a = 1.0;
  return p;
}

// Coefficients of H(exp(R) Phi(v)) = exp(R) [c2 Phi'' + c1 Phi' + c0 Phi]
// recovered from Phi = 1, v, v^2 at a chart point.
std::array<cplx, 3> extract_coefficients(const SolutionAnsatz& an, const ops::DiffOp2& H, const Coords& x) {
  const cplx v = an.v(x).value(), eR = exp(an.phase(x)).value();
  auto apply = [&](const UniFn& Phi) { return H.apply(an.assemble(x, Phi), x).value() / eR; };
  const cplx h0 = apply([](const J4&) { return J4(1.0); });
  const cplx h1 = apply([](const J4& t) { return t; });
  const cplx h2 = apply([](const J4& t) { return t * t; });
  const cplx c0 = h0, c1 = h1 - c0 * v;
  const cplx c2 = (h2 - 2.0 * v * c1 - c0 * v * v) / 2.0;
  return {c0, c1, c2};
}

double max_ode_residual(const ReducedODE& ode, const UniFn& Phi, std::pair<double, double> range, int n = 40) {
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    const double v = range.first + (range.second - range.first) * i / (n - 1);
    const J4 f = Phi(J4::variable(0, v));
    worst = std::max(worst, std::abs(ode.residual(Phi, v)) / (1 + std::abs(f.value()) + std::abs(f.d(0))));
  }
  return worst;
}

}  // namespace

TEST_CASE("lambda-representations close with the constants of the symmetry operators") {
  for (CaseId id : kIntegrableCases) {
    auto p = defaults(id);
    auto rep = lambda_rep(id, p);
    auto an = ansatz(id, p);
    auto X = ops::symmetry_operators(fields::make_config(id, p.field));
    auto xfit = ops::commutation_table_fit(X, ansatz_probes(an, 20, 5), cplx(0.0, p.field.e));
    INFO(case_name(id));
    CHECK(rep.ell0 == cplx(0.0, -p.field.e));
    CHECK(lambda_table_residual(rep, xfit.C, xfit.F) < 1e-10);
    CHECK(lambda_commutation_fit(rep).residual < 1e-10);
    if (id != CaseId::G31) {
      auto lfit = lambda_commutation_fit(rep);
      CHECK(lfit.C.distance(xfit.C) < 1e-10);
      CHECK((lfit.F.F - xfit.F.F).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("the ansatz solves the compatibility equations for an arbitrary profile") {
  for (CaseId id : kIntegrableCases) {
    auto p = defaults(id);
    auto an = ansatz(id, p);
    INFO(case_name(id));
    CHECK(xleqs_residual(an, lambda_rep(id, p), ansatz_probes(an, 30, 2)) < 1e-10);
  }
}

TEST_CASE("reduced equations match coefficients extracted from the Klein-Gordon operator") {
  for (CaseId id : kIntegrableCases) {
    for (double zeta : {0.0, 1.0 / 6.0}) {
      auto p = defaults(id);
      p.field.zeta = zeta;
      auto an = ansatz(id, p);
      auto ode = reduced_ode(id, p);
      auto H = ops::kg_operator(fields::make_config(id, p.field));
      for (const Coords& x : ansatz_probes(an, 8, 3)) {
        auto [c0, c1, c2] = extract_coefficients(an, H, x);
        const double v = an.v(x).value().real();
        INFO(case_name(id) << " v=" << v);
        CHECK(std::abs(c1 / c2 - ode.p_at(v)) < 1e-9 * (1 + std::abs(ode.p_at(v))));
        CHECK(std::abs(c0 / c2 - ode.q_at(v)) < 1e-9 * (1 + std::abs(ode.q_at(v))));
      }
    }
  }
}

TEST_CASE("the G33 family reduces correctly for several parameters") {
  for (double a : {0.7, 1.6}) {
    auto p = defaults(CaseId::G33a);
    p.field.a = a;
    auto an = ansatz(CaseId::G33a, p);
    auto ode = reduced_ode(CaseId::G33a, p);
    auto H = ops::kg_operator(fields::make_config(CaseId::G33a, p.field));
    for (const Coords& x : ansatz_probes(an, 5, 8)) {
      auto [c0, c1, c2] = extract_coefficients(an, H, x);
      const double v = an.v(x).value().real();
      CHECK(std::abs(c1 / c2 - ode.p_at(v)) < 1e-9 * (1 + std::abs(ode.p_at(v))));
      CHECK(std::abs(c0 / c2 - ode.q_at(v)) < 1e-9 * (1 + std::abs(ode.q_at(v))));
    }
  }
}

TEST_CASE("solution bases satisfy their reduced equations and are independent") {
  for (CaseId id : kIntegrableCases) {
    auto p = defaults(id);
    auto ode = reduced_ode(id, p);
    auto b = solution_basis(id, p);
    auto range = test_interval(id);
    INFO(case_name(id));
    CHECK(max_ode_residual(ode, b.phi1, range) < 1e-8);
    CHECK(max_ode_residual(ode, b.phi2, range) < 1e-8);
    for (double v : {range.first, 0.5 * (range.first + range.second), range.second})
      CHECK(std::abs(wronskian(b, v)) > 1e-6);
    if (b.closed_form) {
      CHECK(cross_oracle_deviation(b, ode, 1, range.first, range.second) < 1e-7);
      CHECK(cross_oracle_deviation(b, ode, 2, range.first, range.second) < 1e-7);
    }
  }
}

TEST_CASE("special-function parameters follow the closed-form expressions") {
  auto p = defaults(CaseId::G34);
  const double m = p.field.m, e = p.field.e, mu = p.field.mu, J = p.J;
  auto r34 = solution_basis(CaseId::G34, p).record;
  CHECK(std::abs(r34.at("sigma") - std::sqrt(1 - m * m)) < 1e-14);
  CHECK(std::abs(r34.at("nu") - (std::sqrt((J + 0.5) * (J + 0.5) - e * e * mu * mu) - 0.5)) < 1e-14);

  auto r35 = solution_basis(CaseId::G35, defaults(CaseId::G35)).record;
  CHECK(std::abs(r35.at("nu") - (std::sqrt(1 - m * m) - 0.5)) < 1e-14);
  CHECK(std::abs(r35.at("sigma") - std::sqrt(cplx(e * e * mu * mu - J * J))) < 1e-14);

  auto p31 = defaults(CaseId::G31);
  const double mu1 = p31.field.mu1, mu2 = p31.field.mu2;
  auto r31 = solution_basis(CaseId::G31, p31).record;
  CHECK(std::abs(r31.at("alpha") - cplx(0, e * (J * mu1 + mu2) / std::sqrt(J * J + 1))) < 1e-14);
  CHECK(std::abs(r31.at("beta") - std::sqrt(1 - m * m - e * e * (mu1 * mu1 + mu2 * mu2))) < 1e-14);

  auto r32 = solution_basis(CaseId::G32, defaults(CaseId::G32)).record;
  CHECK(std::abs(r32.at("alpha") - std::sqrt(1 - m * m)) < 1e-14);
}

TEST_CASE("the half-power Legendre prefactor does not solve the hyperbolic reduced equation") {
  auto p = defaults(CaseId::G34);
  auto ode = reduced_ode(CaseId::G34, p);
  auto rec = solution_basis(CaseId::G34, p).record;
  const cplx nu = rec.at("nu"), sigma = rec.at("sigma");
  UniFn half = [=](const J4& v) { return sf::legendre_p(nu, sigma, tanh(v)) / sqrt(cosh(v)); };
  UniFn full = [=](const J4& v) { return sf::legendre_p(nu, sigma, tanh(v)) / cosh(v); };
  CHECK(max_ode_residual(ode, half, {-1, 1}) > 1e-2);
  CHECK(max_ode_residual(ode, full, {-1, 1}) < 1e-10);
}

TEST_CASE("the Whittaker parameters with reversed charge sign do not solve the homothety reduced equation") {
  auto p = defaults(CaseId::G31);
  auto ode = reduced_ode(CaseId::G31, p);
  const double e = p.field.e, m = p.field.m, J = p.J, mu1 = p.field.mu1, mu2 = p.field.mu2;
  const cplx c(0.0, 2 * std::sqrt(J * J + 1));
  auto whittaker = [&](cplx alpha, cplx beta) {
    return UniFn([=](const J4& v) { return sf::whittaker_m(alpha, beta, c * v); });
  };
  const cplx alpha_printed(0, -e * (J * mu1 + mu2) / std::sqrt(J * J + 1));
  const cplx beta_printed = std::sqrt(cplx(1 - m * m - e * (mu1 * mu1 + mu2 * mu2)));
  const cplx alpha(0, e * (J * mu1 + mu2) / std::sqrt(J * J + 1));
  const cplx beta = std::sqrt(cplx(1 - m * m - e * e * (mu1 * mu1 + mu2 * mu2)));
  CHECK(max_ode_residual(ode, whittaker(alpha_printed, beta_printed), {0.5, 2.5}) > 1e-3);
  CHECK(max_ode_residual(ode, whittaker(alpha_printed, beta), {0.5, 2.5}) > 1e-3);
  CHECK(max_ode_residual(ode, whittaker(alpha, beta), {0.5, 2.5}) < 1e-10);
}

TEST_CASE("assembled solutions are annihilated by the Klein-Gordon operator") {
  for (CaseId id : kIntegrableCases) {
    auto p = defaults(id);
    auto an = ansatz(id, p);
    auto b = solution_basis(id, p);
    auto grid = ansatz_grid(an, 5);
    INFO(case_name(id));
    CHECK(reduction_residual(an, b.phi1, grid) < 1e-6);
    CHECK(reduction_residual(an, b.phi2, grid) < 1e-6);
    CHECK(reduction_residual(an, [](const J4&) { return J4(1.0); }, grid) > 1e-2);
  }
}

TEST_CASE("default lambdas and explicit overrides") {
  auto p = defaults(CaseId::G32);
  CHECK(p.lambda_or_default(CaseId::G32) == default_lambda(CaseId::G32));
  p.lambda = cplx(0.4, -0.1);
  auto an = ansatz(CaseId::G32, p);
  CHECK(xleqs_residual(an, lambda_rep(CaseId::G32, p), ansatz_probes(an, 10, 1)) < 1e-10);
  auto b = solution_basis(CaseId::G32, p);
  CHECK(reduction_residual(an, b.phi1, ansatz_grid(an, 4)) < 1e-6);
}

TEST_CASE("unsupported parameters are rejected") {
  auto p = defaults(CaseId::G34);
  p.J = 0.0;
  CHECK_THROWS_AS(lambda_rep(CaseId::G34, p), DomainError);
  auto p35 = defaults(CaseId::G35);
  p35.J = -1.0;
  CHECK_THROWS_AS(lambda_rep(CaseId::G35, p35), DomainError);
  auto p31 = defaults(CaseId::G31);
  p31.lambda = cplx(0.0, 0.0);
  CHECK_THROWS_AS(ansatz(CaseId::G31, p31), DomainError);
  p31.lambda = cplx(1.0, 0.5);
  CHECK_THROWS_AS(ansatz(CaseId::G31, p31), DomainError);
  CHECK_THROWS_AS(lambda_rep(CaseId::G21, defaults(CaseId::G21)), DomainError);
  CHECK_THROWS_AS(reduced_ode(CaseId::G31, defaults(CaseId::G31)).q_at(0.0), DomainError);
  CHECK_THROWS_AS(reduced_ode(CaseId::G35, defaults(CaseId::G35)).q_at(0.0), DomainError);
}
