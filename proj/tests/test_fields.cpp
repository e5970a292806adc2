#include <doctest.h>

#include <cmath>
#include <random>

#include "dskg/fields.hpp"

using namespace dskg;

namespace {

fields::FieldParams defaults(CaseId id) {
  fields::FieldParams p;
  if (has_parameter(id)) p.a = 1.0;
  return p;
}

std::vector<Vec3> sample_points(CaseId id, std::optional<double> a, int n, std::uint64_t seed) {
  auto c = geometry::chart_for(id, a);
  std::mt19937_64 rng(seed);
  std::vector<Vec3> pts;
  for (int k = 0; k < n; ++k) pts.push_back(geometry::sample_box(c.domain.shrunk(0.1), rng));
  return pts;
}

double component(const fields::TwoForm& F, const Vec3& p, int a, int b) {
  return F(seed<4>(p))[a][b].value().real();
}

// Cyclic sum of first derivatives by central differences.
double fd_exterior(const fields::TwoForm& F, const Vec3& p) {
  const double h = 1e-5;
  auto d = [&](int k, int a, int b) {
    Vec3 pp = p, pm = p;
    pp[k] += h;
    pm[k] -= h;
    return (component(F, pp, a, b) - component(F, pm, a, b)) / (2 * h);
  };
  return d(0, 1, 2) - d(1, 0, 2) + d(2, 0, 1);
}

}  // namespace

TEST_CASE("invariant 2-forms are closed and invariant for every case") {
  for (CaseId id : kAllCases) {
    auto p = defaults(id);
    auto cfg = fields::make_config(id, p);
    auto X = geometry::chart_fields(id, p.a);
    double dF = 0, lie = 0, fd = 0;
    for (const Vec3& pt : sample_points(id, p.a, 40, 17)) {
      dF = std::max(dF, fields::closedness_residual(cfg.F, pt));
      fd = std::max(fd, std::abs(fd_exterior(cfg.F, pt)));
      for (const auto& f : X) lie = std::max(lie, fields::lie_derivative_residual(f, cfg.F, pt));
    }
    INFO(case_name(id));
    CHECK(dF < 1e-10);
    CHECK(fd < 1e-8);
    CHECK(lie < 1e-10);
  }
}

TEST_CASE("free profiles other than the defaults keep the forms invariant") {
  fields::Profile f;
  f.f = [](const J4& u1, const J4& u2) { return sin(u1) * u2 + u1 * u1; };
  f.d1 = [](const J4& u1, const J4& u2) { return cos(u1) * u2 + 2.0 * u1; };
  f.d2 = [](const J4& u1, const J4&) { return sin(u1); };
  f.integral1 = [](const J4& u1, const J4& u2) { return -cos(u1) * u2 + u1 * u1 * u1 / 3.0; };
  for (CaseId id : {CaseId::G11, CaseId::G14, CaseId::G21, CaseId::G23}) {
    auto p = defaults(id);
    p.f1 = f;
    p.f2 = f;
    auto cfg = fields::make_config(id, p);
    auto X = geometry::chart_fields(id, p.a);
    for (const Vec3& pt : sample_points(id, p.a, 10, 3)) {
      CHECK(fields::closedness_residual(cfg.F, pt) < 1e-10);
      CHECK(fields::potential_residual(cfg.A, cfg.F, pt) < 1e-10);
      for (std::size_t A = 0; A < X.size(); ++A) {
        CHECK(fields::lie_derivative_residual(X[A], cfg.F, pt) < 1e-10);
        CHECK(fields::chi_residual(X[A], cfg.chi[A], cfg.F, pt) < 1e-10);
      }
    }
  }
}

TEST_CASE("injected perturbations are detected") {
  for (CaseId id : kAllCases) {
    auto p = defaults(id);
    auto cfg = fields::make_config(id, p);
    auto X = geometry::chart_fields(id, p.a);
    auto closed = fields::add_closed_perturbation(cfg.F, 1e-3);
    auto open = fields::add_nonclosed_perturbation(cfg.F, 1e-3);
    double lie = 0, dF = 0, dF_closed = 0;
    for (const Vec3& pt : sample_points(id, p.a, 10, 4)) {
      dF = std::max(dF, fields::closedness_residual(open, pt));
      dF_closed = std::max(dF_closed, fields::closedness_residual(closed, pt));
      for (const auto& f : X) lie = std::max(lie, fields::lie_derivative_residual(f, closed, pt));
    }
    INFO(case_name(id));
    CHECK(dF >= 5e-4);
    CHECK(dF_closed < 1e-12);
    CHECK(lie >= 5e-4);
  }
}

TEST_CASE("potentials and moment functions solve their defining equations") {
  for (CaseId id : kAllCases) {
    auto p = defaults(id);
    auto cfg = fields::make_config(id, p);
    auto X = geometry::chart_fields(id, p.a);
    REQUIRE(cfg.chi.size() == X.size());
    for (const Vec3& pt : sample_points(id, p.a, 20, 6)) {
      CHECK(fields::potential_residual(cfg.A, cfg.F, pt) < 1e-10);
      for (std::size_t A = 0; A < X.size(); ++A) CHECK(fields::chi_residual(X[A], cfg.chi[A], cfg.F, pt) < 1e-10);
    }
  }
}

TEST_CASE("cocycle is constant over the chart") {
  for (CaseId id : kAllCases) {
    auto cfg = fields::make_config(id, defaults(id));
    auto c0 = fields::cocycle(cfg);
    for (const Vec3& pt : sample_points(id, defaults(id).a, 20, 8))
      CHECK((fields::cocycle_at(cfg, pt).F - c0.F).cwiseAbs().maxCoeff() < 1e-10);
    auto alg = lie::chart_subalgebra(id, defaults(id).a).algebra;
    CHECK(c0.antisymmetry_residual() < 1e-14);
    CHECK(c0.cocycle_residual(alg) < 1e-10);
  }
}

TEST_CASE("central charge of the Euclidean case equals the field strength") {
  for (double mu : {0.5, 1.0, 2.0}) {
    fields::FieldParams p;
    p.mu = mu;
    auto c = fields::cocycle(fields::make_config(CaseId::G32, p));
    CHECK(c.F(0, 1) == doctest::Approx(mu).epsilon(1e-12));
    CHECK(std::abs(c.F(0, 2)) < 1e-12);
    CHECK(std::abs(c.F(1, 2)) < 1e-12);
  }
}

TEST_CASE("field components at a point match the displayed templates") {
  fields::FieldParams p;
  p.mu1 = 0.4;
  p.mu2 = -0.2;
  const Vec3 pt{0.3, -0.5, 0.7};
  auto F31 = fields::invariant_two_form(CaseId::G31, p);
  CHECK(component(F31, pt, 0, 2) == doctest::Approx(0.4 * std::exp(0.7)));
  CHECK(component(F31, pt, 1, 2) == doctest::Approx(-0.2 * std::exp(0.7)));
  CHECK(component(F31, pt, 0, 1) == doctest::Approx(0.0));
  auto F34 = fields::invariant_two_form(CaseId::G34, p);
  CHECK(component(F34, pt, 0, 1) == doctest::Approx(p.mu * std::cos(-0.5)));
}

TEST_CASE("field parameters are validated") {
  fields::FieldParams p;
  p.zeta = 0.1;
  CHECK_THROWS_AS(p.validate(CaseId::G31), DomainError);
  p.zeta = 1.0 / 6.0;
  CHECK_NOTHROW(p.validate(CaseId::G31));
  CHECK_THROWS_AS(p.validate(CaseId::G33a), DomainError);
  p.a = 2.0;
  CHECK_NOTHROW(p.validate(CaseId::G33a));
}
