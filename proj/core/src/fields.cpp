#include "dskg/fields.hpp"

#include <cmath>

namespace dskg::fields {

namespace {

Matrix3J zero_form() {
  Matrix3J m;
  for (auto& r : m) r.fill(J4(0.0));
  return m;
}

void put(Matrix3J& m, int a, int b, const J4& v) {
  m[a][b] = v;
  m[b][a] = -v;
}

Vector3J zero_vec() { return {J4(0.0), J4(0.0), J4(0.0)}; }

const Profile& pick(const std::optional<Profile>& p, const Profile& fallback) { return p ? *p : fallback; }

bool one_dim(CaseId id) { return orbit_dim(id) == 1 && subalgebra_dim(id) == 1; }

// Transverse arguments of a profile for the given case.
std::pair<J4, J4> transverse(CaseId id, const Coords& x) {
  if (one_dim(id)) return {x[1], x[2]};
  return {x[2], J4(0.0)};
}

}  // namespace

Profile Profile::linear() {
  Profile p;
  p.f = [](const J4& u1, const J4& u2) { return u1 + u2; };
  p.d1 = [](const J4&, const J4&) { return J4(1.0); };
  p.d2 = [](const J4&, const J4&) { return J4(1.0); };
  p.integral1 = [](const J4& u1, const J4& u2) { return 0.5 * u1 * u1 + u1 * u2; };
  p.label = "u1+u2";
  return p;
}

Profile Profile::constant() {
  Profile p;
  p.f = [](const J4&, const J4&) { return J4(1.0); };
  p.d1 = [](const J4&, const J4&) { return J4(0.0); };
  p.d2 = [](const J4&, const J4&) { return J4(0.0); };
  p.integral1 = [](const J4& u1, const J4&) { return u1; };
  p.label = "1";
  return p;
}

void FieldParams::validate(CaseId id) const {
  if (!(std::abs(zeta) < 1e-15 || std::abs(zeta - 1.0 / 6.0) < 1e-15))
    throw DomainError("zeta must be 0 or 1/6");
  if (has_parameter(id)) {
    checked_parameter(id, a);
  }
}

TwoForm invariant_two_form(CaseId id, const FieldParams& p) {
  p.validate(id);
  const double mu = p.mu, mu1 = p.mu1, mu2 = p.mu2;
  const double a = has_parameter(id) ? *p.a : 0.0;
  const Profile f1 = pick(p.f1, Profile::linear());
  const Profile f2 = pick(p.f2, Profile::constant());
  TwoForm F;
  switch (id) {
    case CaseId::G11:
    case CaseId::G12:
    case CaseId::G13a:
    case CaseId::G14:
      F.components = [f1, f2](const Coords& x) {
        auto m = zero_form();
        put(m, 0, 1, f1.d1(x[1], x[2]));
        put(m, 0, 2, f1.d2(x[1], x[2]));
        put(m, 1, 2, f2.f(x[1], x[2]));
        return m;
      };
      break;
    case CaseId::G21:
    case CaseId::G22:
      F.components = [mu, f1, f2](const Coords& x) {
        auto m = zero_form();
        put(m, 0, 1, J4(mu));
        put(m, 0, 2, f1.f(x[2], J4(0.0)));
        put(m, 1, 2, f2.f(x[2], J4(0.0)));
        return m;
      };
      break;
    case CaseId::G23:
      F.components = [f1, f2](const Coords& x) {
        auto m = zero_form();
        J4 w = exp(x[1]);
        put(m, 0, 1, w * f1.f(x[2], J4(0.0)));
        put(m, 0, 2, w * f1.d1(x[2], J4(0.0)));
        put(m, 1, 2, f2.f(x[2], J4(0.0)));
        return m;
      };
      break;
    case CaseId::G31:
      F.components = [mu1, mu2](const Coords& x) {
        auto m = zero_form();
        J4 w = exp(x[2]);
        put(m, 0, 2, mu1 * w);
        put(m, 1, 2, mu2 * w);
        return m;
      };
      break;
    case CaseId::G32:
      F.components = [mu](const Coords&) {
        auto m = zero_form();
        put(m, 0, 1, J4(mu));
        return m;
      };
      break;
    case CaseId::G33a:
      F.components = [mu1, mu2, a](const Coords& x) {
        auto m = zero_form();
        J4 w = exp(a * x[2]), c = cos(x[2]), s = sin(x[2]);
        put(m, 0, 2, w * (mu1 * c + mu2 * s));
        put(m, 1, 2, w * (mu1 * s - mu2 * c));
        return m;
      };
      break;
    case CaseId::G34:
    case CaseId::G35:
      F.components = [mu](const Coords& x) {
        auto m = zero_form();
        put(m, 0, 1, mu * cos(x[1]));
        return m;
      };
      break;
    case CaseId::G41:
      F.components = [](const Coords&) { return zero_form(); };
      break;
  }
  return F;
}

OneForm potential(CaseId id, const FieldParams& p) {
  p.validate(id);
  const double mu = p.mu, mu1 = p.mu1, mu2 = p.mu2;
  const double a = has_parameter(id) ? *p.a : 0.0;
  const Profile f1 = pick(p.f1, Profile::linear());
  const Profile f2 = pick(p.f2, Profile::constant());
  OneForm A;
  switch (id) {
    case CaseId::G11:
    case CaseId::G12:
    case CaseId::G13a:
    case CaseId::G14:
      // q1 df1 + (int f2 du1) du2
      A.components = [f1, f2](const Coords& x) {
        auto v = zero_vec();
        v[1] = x[0] * f1.d1(x[1], x[2]);
        v[2] = x[0] * f1.d2(x[1], x[2]) + f2.integral1(x[1], x[2]);
        return v;
      };
      break;
    case CaseId::G21:
    case CaseId::G22:
      A.components = [mu, f1, f2](const Coords& x) {
        auto v = zero_vec();
        v[0] = -0.5 * mu * x[1];
        v[1] = 0.5 * mu * x[0];
        v[2] = x[0] * f1.f(x[2], J4(0.0)) + x[1] * f2.f(x[2], J4(0.0));
        return v;
      };
      break;
    case CaseId::G23:
      A.components = [f1, f2](const Coords& x) {
        auto v = zero_vec();
        J4 w = x[0] * exp(x[1]);
        v[1] = w * f1.f(x[2], J4(0.0));
        v[2] = w * f1.d1(x[2], J4(0.0)) + x[1] * f2.f(x[2], J4(0.0));
        return v;
      };
      break;
    case CaseId::G31:
      A.components = [mu1, mu2](const Coords& x) {
        auto v = zero_vec();
        v[2] = exp(x[2]) * (mu1 * x[0] + mu2 * x[1]);
        return v;
      };
      break;
    case CaseId::G32:
      A.components = [mu](const Coords& x) {
        auto v = zero_vec();
        v[0] = -0.5 * mu * x[1];
        v[1] = 0.5 * mu * x[0];
        return v;
      };
      break;
    case CaseId::G33a:
      A.components = [mu1, mu2, a](const Coords& x) {
        auto v = zero_vec();
        J4 c = cos(x[2]), s = sin(x[2]);
        v[2] = exp(a * x[2]) * ((mu1 * x[0] - mu2 * x[1]) * c + (mu1 * x[1] + mu2 * x[0]) * s);
        return v;
      };
      break;
    case CaseId::G34:
    case CaseId::G35:
      A.components = [mu](const Coords& x) {
        auto v = zero_vec();
        v[0] = -mu * sin(x[1]);
        return v;
      };
      break;
    case CaseId::G41:
      A.components = [](const Coords&) { return zero_vec(); };
      break;
  }
  return A;
}

std::vector<ScalarField> solve_chi(CaseId id, const FieldParams& p) {
  p.validate(id);
  const double mu = p.mu, mu1 = p.mu1, mu2 = p.mu2;
  const double a = has_parameter(id) ? *p.a : 0.0;
  const Profile f1 = pick(p.f1, Profile::linear());
  const Profile f2 = pick(p.f2, Profile::constant());
  switch (id) {
    case CaseId::G11:
    case CaseId::G12:
    case CaseId::G13a:
    case CaseId::G14:
      return {[f1](const Coords& x) { return -f1.f(x[1], x[2]); }};
    case CaseId::G21:
    case CaseId::G22:
      return {[mu, f1](const Coords& x) { return -mu * x[1] - f1.integral1(x[2], J4(0.0)); },
              [mu, f2](const Coords& x) { return mu * x[0] - f2.integral1(x[2], J4(0.0)); }};
    case CaseId::G23:
      return {[f1](const Coords& x) { return -exp(x[1]) * f1.f(x[2], J4(0.0)); },
              [f1, f2](const Coords& x) {
                return x[0] * exp(x[1]) * f1.f(x[2], J4(0.0)) - f2.integral1(x[2], J4(0.0));
              }};
    case CaseId::G31:
      return {[mu1](const Coords& x) { return -mu1 * exp(x[2]); },
              [mu2](const Coords& x) { return -mu2 * exp(x[2]); },
              [mu1, mu2](const Coords& x) { return exp(x[2]) * (mu1 * x[0] + mu2 * x[1]); }};
    case CaseId::G32:
      return {[mu](const Coords& x) { return -mu * x[1]; }, [mu](const Coords& x) { return mu * x[0]; },
              [mu](const Coords& x) { return 0.5 * mu * (x[0] * x[0] + x[1] * x[1]); }};
    case CaseId::G33a: {
      const double k = 1.0 / (1.0 + a * a);
      const double p1 = (a * mu1 - mu2) * k, p2 = (mu1 + a * mu2) * k;
      return {[a, p1, p2](const Coords& x) { return -exp(a * x[2]) * (p1 * cos(x[2]) + p2 * sin(x[2])); },
              [a, p1, p2](const Coords& x) { return exp(a * x[2]) * (p2 * cos(x[2]) - p1 * sin(x[2])); },
              [a, mu1, mu2](const Coords& x) {
                J4 c = cos(x[2]), s = sin(x[2]);
                return exp(a * x[2]) * ((mu1 * x[0] - mu2 * x[1]) * c + (mu1 * x[1] + mu2 * x[0]) * s);
              }};
    }
    case CaseId::G34:
      return {[mu](const Coords& x) { return -mu * sin(x[1]); },
              [mu](const Coords& x) { return mu * sin(x[0]) * cos(x[1]); },
              [mu](const Coords& x) { return mu * cos(x[0]) * cos(x[1]); }};
    case CaseId::G35:
      return {[mu](const Coords& x) { return -mu * sin(x[1]); },
              [mu](const Coords& x) { return mu * sinh(x[0]) * cos(x[1]); },
              [mu](const Coords& x) { return mu * cosh(x[0]) * cos(x[1]); }};
    case CaseId::G41: {
      ScalarField z = [](const Coords&) { return J4(0.0); };
      return {z, z, z, z};
    }
  }
  return {};
}

FieldConfig make_config(CaseId id, const FieldParams& p) {
  FieldConfig c;
  c.id = id;
  c.params = p;
  if (!c.params.f1) c.params.f1 = Profile::linear();
  if (!c.params.f2) c.params.f2 = Profile::constant();
  c.F = invariant_two_form(id, c.params);
  c.A = potential(id, c.params);
  c.chi = solve_chi(id, c.params);
  switch (id) {
    case CaseId::G31: c.gauge = "exp(q3)(mu1 q1 + mu2 q2) dq3"; break;
    case CaseId::G32: c.gauge = "mu/2 (q1 dq2 - q2 dq1)"; break;
    case CaseId::G33a: c.gauge = "A3 dq3"; break;
    case CaseId::G34:
    case CaseId::G35: c.gauge = "-mu sin(q2) dq1"; break;
    default: c.gauge = "standard"; break;
  }
  return c;
}

TwoForm add_closed_perturbation(const TwoForm& F, double eps) {
  return {[F, eps](const Coords& x) {
    auto m = F(x);
    J4 d = eps * x[0];
    m[0][2] += d;
    m[2][0] -= d;
    return m;
  }};
}

TwoForm add_nonclosed_perturbation(const TwoForm& F, double eps) {
  return {[F, eps](const Coords& x) {
    auto m = F(x);
    J4 d = eps * x[1];
    m[0][2] += d;
    m[2][0] -= d;
    return m;
  }};
}

namespace {

J4 dF(const Matrix3J& F) { return F[1][2].deriv(0) + F[2][0].deriv(1) + F[0][1].deriv(2); }

}  // namespace

double closedness_residual(const TwoForm& F, const Vec3& point) {
  return std::abs(dF(F(seed<4>(point))).value());
}

Eigen::Matrix3cd lie_derivative(const VectorField& X, const TwoForm& F, const Vec3& point) {
  Coords x = seed<4>(point);
  auto f = F(x);
  auto v = X(x);
  Vector3J w;
  for (int b = 0; b < 3; ++b) {
    w[b] = J4(0.0);
    for (int a = 0; a < 3; ++a) w[b] += v[a] * f[a][b];
  }
  cplx t = dF(f).value();
  const int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                            {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                            {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
  Eigen::Matrix3cd L;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      cplx s = w[b].d(a) - w[a].d(b);
      for (int c = 0; c < 3; ++c) s += v[c].value() * double(eps[c][a][b]) * t;
      L(a, b) = s;
    }
  return L;
}

double lie_derivative_residual(const VectorField& X, const TwoForm& F, const Vec3& point) {
  return lie_derivative(X, F, point).cwiseAbs().maxCoeff();
}

double potential_residual(const OneForm& A, const TwoForm& F, const Vec3& point) {
  Coords x = seed<4>(point);
  auto a = A(x);
  auto f = F(x);
  double r = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r = std::max(r, std::abs(a[j].d(i) - a[i].d(j) - f[i][j].value()));
  return r;
}

double chi_residual(const VectorField& X, const ScalarField& chi, const TwoForm& F, const Vec3& point) {
  Coords x = seed<4>(point);
  auto f = F(x);
  auto v = X(x);
  J4 c = chi(x);
  double r = 0.0;
  for (int b = 0; b < 3; ++b) {
    cplx s = c.d(b);
    for (int a = 0; a < 3; ++a) s += v[a].value() * f[a][b].value();
    r = std::max(r, std::abs(s));
  }
  return r;
}

lie::Cocycle cocycle_at(const FieldConfig& cfg, const Vec3& point) {
  auto sub = lie::chart_subalgebra(cfg.id, cfg.params.a);
  auto X = geometry::chart_fields(cfg.id, cfg.params.a);
  const int n = sub.dim();
  Coords x = seed<4>(point);
  auto f = cfg.F(x);
  std::vector<Vector3J> v(n);
  std::vector<double> chi(n);
  for (int A = 0; A < n; ++A) {
    v[A] = X[A](x);
    chi[A] = cfg.chi[A](x).value().real();
  }
  lie::Cocycle c;
  c.F = Eigen::MatrixXd::Zero(n, n);
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B) {
      cplx s = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) s += v[A][a].value() * v[B][b].value() * f[a][b].value();
      double val = s.real();
      for (int C = 0; C < n; ++C) val -= sub.algebra.c(A, B, C) * chi[C];
      c.F(A, B) = val;
    }
  return c;
}

lie::Cocycle cocycle(const FieldConfig& cfg) {
  auto box = geometry::chart_for(cfg.id, cfg.params.a).domain;
  Vec3 mid;
  for (int i = 0; i < 3; ++i) mid[i] = 0.5 * (box.lo[i] + box.hi[i]);
  auto c = cocycle_at(cfg, mid);
  // snap round-off so that exact zeros stay exact
  for (int i = 0; i < c.F.rows(); ++i)
    for (int j = 0; j < c.F.cols(); ++j)
      if (std::abs(c.F(i, j)) < 1e-13) c.F(i, j) = 0.0;
  return c;
}

lie::ExtendedAlgebraSpec extended_algebra(const FieldConfig& cfg) {
  lie::ExtendedAlgebraSpec ext;
  ext.base = lie::chart_subalgebra(cfg.id, cfg.params.a).algebra;
  ext.cocycle = cocycle(cfg);
  return ext;
}

}  // namespace dskg::fields
