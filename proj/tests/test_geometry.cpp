#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dskg/geometry.hpp"

using namespace dskg;
using std::numbers::pi;

namespace {

std::optional<double> param(CaseId id, double a = 1.3) {
  return has_parameter(id) ? std::optional<double>(a) : std::nullopt;
}

double max_diff(const Vec4& a, const Vec4& b) {
  double m = 0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Worked SO(1,2) example in closed form, before and after restricting to dS3.
Vec4 example_rectified(double q1, double q2, double u1t, double u2t) {
  const double r = u2t + 1;
  return {-r * std::sinh(q1) * std::cos(q2), r * std::cosh(q1) * std::cos(q2), r * std::sin(q2), u1t};
}
Vec4 example_on_ds3(double q1, double q2, double u) {
  return {-std::sinh(q1) * std::cos(q2) * std::sin(u), std::cosh(q1) * std::cos(q2) * std::sin(u),
          std::sin(q2) * std::sin(u), std::cos(u)};
}

}  // namespace

TEST_CASE("chart base points") {
  CHECK(max_diff(geometry::chart_for(CaseId::G35).map({0, 0, pi / 2}), {0, 1, 0, 0}) < 1e-15);
  CHECK(max_diff(geometry::chart_for(CaseId::G31).map({0, 0, 0}), {0, 0, 0, 1}) < 1e-15);
}

TEST_CASE("every chart lies on the unit hyperboloid") {
  std::mt19937_64 rng(11);
  for (CaseId id : kAllCases) {
    auto c = geometry::chart_for(id, param(id));
    double worst = 0;
    for (int k = 0; k < 1000; ++k)
      worst = std::max(worst, std::abs(geometry::hyperboloid_residual(c.map(geometry::sample_box(c.domain, rng)))));
    INFO(case_name(id));
    CHECK(worst < 1e-12);
    CHECK(c.r == orbit_dim(id));
  }
}

TEST_CASE("chart Jacobians agree with central differences") {
  std::mt19937_64 rng(5);
  for (CaseId id : kAllCases) {
    auto c = geometry::chart_for(id, param(id));
    const Vec3 p = geometry::sample_box(c.domain.shrunk(0.1), rng);
    auto J = c.jacobian(p);
    const double h = 1e-6;
    for (int a = 0; a < 3; ++a) {
      Vec3 pp = p, pm = p;
      pp[a] += h;
      pm[a] -= h;
      auto xp = c.map(pp), xm = c.map(pm);
      for (int i = 0; i < 4; ++i) CHECK(J(i, a) == doctest::Approx((xp[i] - xm[i]) / (2 * h)).epsilon(1e-7));
    }
  }
}

TEST_CASE("pushforwards have only orbit components and match the chart fields") {
  std::mt19937_64 rng(21);
  for (CaseId id : kAllCases) {
    auto c = geometry::chart_for(id, param(id));
    double solve = 0, trans = 0, table = 0;
    for (int k = 0; k < 200; ++k) {
      const Vec3 p = geometry::sample_box(c.domain, rng);
      for (int A = 0; A < subalgebra_dim(id); ++A) {
        auto r = geometry::pushforward(id, A, p, param(id));
        solve = std::max(solve, r.solve_residual);
        trans = std::max(trans, r.transverse);
        table = std::max(table, r.table2_residual);
      }
    }
    INFO(case_name(id));
    CHECK(solve < 1e-10);
    CHECK(trans < 1e-10);
    CHECK(table < 1e-10);
  }
}

TEST_CASE("generators are Killing vectors of the induced metric") {
  std::mt19937_64 rng(8);
  for (CaseId id : kAllCases) {
    auto c = geometry::chart_for(id, param(id));
    auto X = geometry::chart_fields(id, param(id));
    double worst = 0;
    for (int k = 0; k < 50; ++k) {
      const Vec3 p = geometry::sample_box(c.domain.shrunk(0.1), rng);
      for (const auto& f : X) worst = std::max(worst, geometry::killing_residual(c, f, p));
    }
    INFO(case_name(id));
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("a non-Killing field is detected") {
  auto c = geometry::chart_for(CaseId::G31);
  VectorField dilation = [](const Coords& x) { return std::array<J4, 3>{x[0], x[1], J4(0.0)}; };
  CHECK(geometry::killing_residual(c, dilation, {0.1, 0.2, 0.3}) > 1e-2);
}

TEST_CASE("induced metrics are Lorentzian with the expected form") {
  std::mt19937_64 rng(2);
  for (CaseId id : kAllCases) {
    auto c = geometry::chart_for(id, param(id));
    for (int k = 0; k < 50; ++k) {
      auto m = geometry::induced_metric(c, geometry::sample_box(c.domain, rng));
      CHECK(m.lorentzian());
    }
  }
  const double q3 = 0.3;
  auto m = geometry::induced_metric(CaseId::G31, {0.1, 0.2, q3});
  Eigen::Matrix3d ref = Eigen::Vector3d(-std::exp(2 * q3), -std::exp(2 * q3), 1.0).asDiagonal();
  CHECK((m.g - ref).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(m.sqrt_abs_det == doctest::Approx(std::exp(2 * q3)));
}

TEST_CASE("orbit rank equals the number of orbit coordinates") {
  for (CaseId id : kAllCases) {
    INFO(case_name(id));
    CHECK(geometry::orbit_rank(id, 64, 7, param(id)) == orbit_dim(id));
  }
}

TEST_CASE("matrix exponential agrees with eigendecomposition and closed forms") {
  Eigen::Matrix4d K = Eigen::Matrix4d::Zero();
  K(0, 1) = K(1, 0) = 1.0;
  auto E = geometry::matexp(0.7 * K);
  CHECK(E(0, 0) == doctest::Approx(std::cosh(0.7)).epsilon(1e-15));
  CHECK(E(0, 1) == doctest::Approx(std::sinh(0.7)).epsilon(1e-15));
  CHECK(E(2, 2) == doctest::Approx(1.0));

  std::mt19937_64 rng(4);
  std::normal_distribution<double> N;
  for (int t = 0; t < 10; ++t) {
    Eigen::Matrix4d Y;
    for (int i = 0; i < 16; ++i) Y(i) = 2.0 * N(rng);
    Eigen::EigenSolver<Eigen::Matrix4d> es(Y);
    Eigen::Matrix4cd V = es.eigenvectors();
    Eigen::Vector4cd d = es.eigenvalues().array().exp();
    Eigen::Matrix4cd ref = V * d.asDiagonal() * V.inverse();
    CHECK((geometry::matexp(Y).cast<cplx>() - ref).cwiseAbs().maxCoeff() < 1e-10 * ref.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("worked rectification reproduces the closed-form coordinates") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto c35 = geometry::chart_for(CaseId::G35);
  for (int k = 0; k < 200; ++k) {
    const double q1 = U(rng), q2 = 1.4 * U(rng), u1t = U(rng), u2t = U(rng), u = 1.5 + 1.4 * U(rng);
    CHECK(max_diff(geometry::so12_rectified(q1, q2, u1t, u2t), example_rectified(q1, q2, u1t, u2t)) < 1e-12);
    CHECK(max_diff(geometry::so12_on_ds3(q1, q2, u), example_on_ds3(q1, q2, u)) < 1e-12);
    CHECK(max_diff(c35.map({q1, q2, u}), example_on_ds3(q1, q2, u)) < 1e-12);
  }
}

TEST_CASE("rectify maps the section point to the base point") {
  auto rho = geometry::so12_example_rhos();
  REQUIRE(rho.size() == 3);
  auto y = geometry::rectify({rho[0], rho[1]}, geometry::so12_section(0.0, 0.0), {0.0, 0.0});
  CHECK(max_diff(geometry::so12_y_to_x(y), {0, 1, 0, 0}) < 1e-15);
}
