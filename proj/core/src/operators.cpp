#include "dskg/operators.hpp"

#include <cmath>
#include <memory>
#include <random>

namespace dskg::ops {

namespace {

constexpr cplx I(0.0, 1.0);

}  // namespace

J4 DiffOp1::apply(const J4& f, const Coords& x) const {
  auto a = coeffs(x);
  J4 r = scalar(x) * f;
  for (int s = 0; s < kSlots; ++s)
    if (mag(a[s]) != 0.0) r += a[s] * f.deriv(s);
  return r;
}

cplx DiffOp1::apply(const ScalarField& f, const Vec3& point, cplx lambda) const {
  Coords x = seed<4>(point, lambda);
  return apply(f(x), x).value();
}

OpSample sample(const DiffOp1& op, const Coords& x) {
  OpSample s;
  auto a = op.coeffs(x);
  for (int i = 0; i < kSlots; ++i) s.coeffs[i] = a[i].value();
  s.scalar = op.scalar(x).value();
  return s;
}

OpSample commutator(const DiffOp1& A, const DiffOp1& B, const Coords& x) {
  auto a = A.coeffs(x), b = B.coeffs(x);
  J4 as = A.scalar(x), bs = B.scalar(x);
  OpSample r;
  for (int nu = 0; nu < kSlots; ++nu) {
    cplx an = a[nu].value(), bn = b[nu].value();
    for (int mu = 0; mu < kSlots; ++mu) r.coeffs[mu] += an * b[mu].d(nu) - bn * a[mu].d(nu);
    r.scalar += an * bs.d(nu) - bn * as.d(nu);
  }
  return r;
}

TableFit commutation_table_fit(const std::vector<DiffOp1>& ops, const std::vector<Coords>& probes, cplx central) {
  const int n = static_cast<int>(ops.size());
  const int P = static_cast<int>(probes.size());
  const int per = 2 * (kSlots + 1);
  std::vector<std::vector<OpSample>> S(P, std::vector<OpSample>(n));
  for (int p = 0; p < P; ++p)
    for (int A = 0; A < n; ++A) S[p][A] = sample(ops[A], probes[p]);

  Eigen::MatrixXd M(P * per, n + 1);
  for (int p = 0; p < P; ++p) {
    for (int C = 0; C <= n; ++C) {
      OpSample s;
      if (C < n)
        s = S[p][C];
      else
        s.scalar = central;
      for (int k = 0; k < kSlots; ++k) {
        M(p * per + 2 * k, C) = s.coeffs[k].real();
        M(p * per + 2 * k + 1, C) = s.coeffs[k].imag();
      }
      M(p * per + 2 * kSlots, C) = s.scalar.real();
      M(p * per + 2 * kSlots + 1, C) = s.scalar.imag();
    }
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(M);

  TableFit fit;
  fit.C = lie::LieAlgebraSpec::zero(n);
  fit.F.F = Eigen::MatrixXd::Zero(n, n);
  for (int A = 0; A < n; ++A)
    for (int B = A + 1; B < n; ++B) {
      Eigen::VectorXd rhs(P * per);
      for (int p = 0; p < P; ++p) {
        OpSample c = commutator(ops[A], ops[B], probes[p]);
        for (int k = 0; k < kSlots; ++k) {
          rhs(p * per + 2 * k) = c.coeffs[k].real();
          rhs(p * per + 2 * k + 1) = c.coeffs[k].imag();
        }
        rhs(p * per + 2 * kSlots) = c.scalar.real();
        rhs(p * per + 2 * kSlots + 1) = c.scalar.imag();
      }
      Eigen::VectorXd sol = cod.solve(rhs);
      fit.residual = std::max(fit.residual, (M * sol - rhs).cwiseAbs().maxCoeff());
      for (int C = 0; C < n; ++C) fit.C.set(A, B, C, sol(C));
      fit.F.F(A, B) = sol(n);
      fit.F.F(B, A) = -sol(n);
    }
  return fit;
}

J4 DiffOp2::apply(const J4& f, const Coords& x, double* scale) const {
  DiffOp2Coeffs c = coeffs(x);
  std::array<J4, 3> df;
  for (int a = 0; a < 3; ++a) df[a] = f.deriv(a);
  J4 r = c.h0 * f;
  double sc = std::abs(r.value());
  for (int a = 0; a < 3; ++a) {
    if (mag(c.h1[a]) != 0.0) {
      J4 t = c.h1[a] * df[a];
      sc += std::abs(t.value());
      r += t;
    }
    for (int b = 0; b < 3; ++b) {
      if (mag(c.h2[a][b]) == 0.0) continue;
      J4 t = c.h2[a][b] * df[a].deriv(b);
      sc += std::abs(t.value());
      r += t;
    }
  }
  if (scale) *scale = sc;
  return r;
}

cplx DiffOp2::apply(const ScalarField& f, const Vec3& point, cplx lambda, double* scale) const {
  Coords x = seed<4>(point, lambda);
  return apply(f(x), x, scale).value();
}

std::vector<DiffOp1> symmetry_operators(const fields::FieldConfig& cfg) {
  auto X = geometry::chart_fields(cfg.id, cfg.params.a);
  const double e = cfg.params.e;
  auto A = cfg.A;
  std::vector<DiffOp1> out;
  for (std::size_t k = 0; k < X.size(); ++k) {
    VectorField Xk = X[k];
    ScalarField chi = cfg.chi[k];
    DiffOp1 op;
    op.coeffs = [Xk](const Coords& x) {
      auto v = Xk(x);
      return std::array<J4, kSlots>{v[0], v[1], v[2], J4(0.0)};
    };
    op.scalar = [Xk, chi, A, e](const Coords& x) {
      auto v = Xk(x);
      auto a = A(x);
      J4 s = chi(x);
      for (int i = 0; i < 3; ++i) s -= v[i] * a[i];
      return (I * e) * s;
    };
    out.push_back(op);
  }
  return out;
}

DiffOp2 kg_operator(const fields::FieldConfig& cfg) {
  auto chart = std::make_shared<geometry::Chart>(geometry::chart_for(cfg.id, cfg.params.a));
  auto A = cfg.A;
  const double e = cfg.params.e;
  const double mass = 6.0 * cfg.params.zeta + cfg.params.m * cfg.params.m;
  DiffOp2 H;
  H.coeffs = [chart, A, e, mass](const Coords& x) {
    auto g = geometry::metric_jet(*chart, x);
    auto a = A(x);
    const J4& rg = g.sqrt_abs_det;
    J4 inv_rg = recip(rg);
    DiffOp2Coeffs c;
    std::array<J4, 3> ga;  // g^{ab} A_b
    J4 div, asq;
    for (int i = 0; i < 3; ++i) {
      ga[i] = J4(0.0);
      for (int j = 0; j < 3; ++j) ga[i] += g.g_inv[i][j] * a[j];
    }
    for (int b = 0; b < 3; ++b) {
      J4 s;
      for (int i = 0; i < 3; ++i) s += (rg * g.g_inv[i][b]).deriv(i);
      c.h1[b] = inv_rg * s - (2.0 * I * e) * ga[b];
      for (int i = 0; i < 3; ++i) c.h2[i][b] = g.g_inv[i][b];
    }
    for (int i = 0; i < 3; ++i) {
      div += (rg * ga[i]).deriv(i);
      asq += a[i] * ga[i];
    }
    c.h0 = (-I * e) * inv_rg * div - (e * e) * asq + mass;
    return c;
  };
  return H;
}

namespace {

DiffOp2Coeffs diag_coeffs(const J4& d0, const J4& d1, const J4& d2) {
  DiffOp2Coeffs c;
  for (auto& r : c.h2) r.fill(J4(0.0));
  c.h2[0][0] = d0;
  c.h2[1][1] = d1;
  c.h2[2][2] = d2;
  c.h1.fill(J4(0.0));
  return c;
}

}  // namespace

DiffOp2 kg_display(const fields::FieldConfig& cfg) {
  const auto& p = cfg.params;
  const double e = p.e, mu = p.mu, mu1 = p.mu1, mu2 = p.mu2;
  const double mass = 6.0 * p.zeta + p.m * p.m;
  DiffOp2 H;
  switch (cfg.id) {
    case CaseId::G31:
      H.coeffs = [=](const Coords& x) {
        J4 w = exp(-2.0 * x[2]);
        J4 s = exp(x[2]) * (mu1 * x[0] + mu2 * x[1]);
        auto c = diag_coeffs(-w, -w, J4(1.0));
        c.h1[2] = 2.0 - (2.0 * I * e) * s;
        c.h0 = (-3.0 * I * e) * s - (e * e) * s * s + mass;
        return c;
      };
      break;
    case CaseId::G32:
      H.coeffs = [=](const Coords& x) {
        J4 w = exp(2.0 * x[2]);
        auto c = diag_coeffs(-w, -w, J4(1.0));
        c.h1[0] = (-I * e * mu) * w * x[1];
        c.h1[1] = (I * e * mu) * w * x[0];
        c.h1[2] = J4(-2.0);
        c.h0 = (0.25 * e * e * mu * mu) * w * (x[0] * x[0] + x[1] * x[1]) + mass;
        return c;
      };
      break;
    case CaseId::G33a: {
      const double a = *p.a;
      H.coeffs = [=](const Coords& x) {
        const J4 &q1 = x[0], &q2 = x[1];
        J4 w = exp(-2.0 * a * x[2]);
        J4 ea = exp(a * x[2]), co = cos(x[2]), si = sin(x[2]);
        J4 A3 = ea * ((mu1 * q1 - mu2 * q2) * co + (mu2 * q1 + mu1 * q2) * si);
        auto c = diag_coeffs(-w, -w, J4(1.0 / (a * a)));
        c.h1[2] = 2.0 / a - (2.0 * I * e / (a * a)) * A3;
        J4 cc = (3.0 * a * q1 + q2) * mu1 + (q1 - 3.0 * a * q2) * mu2;
        J4 ss = (3.0 * a * q2 - q1) * mu1 + (3.0 * a * q1 + q2) * mu2;
        c.h0 = (-I * e / (a * a)) * ea * (cc * co + ss * si) - (e * e / (a * a)) * A3 * A3 + mass;
        return c;
      };
      break;
    }
    case CaseId::G34:
      H.coeffs = [=](const Coords& x) {
        J4 ch2 = square(cosh(x[2])), c2 = cos(x[1]), t = tan(x[1]);
        auto c = diag_coeffs(-1.0 / (ch2 * c2 * c2), -1.0 / ch2, J4(1.0));
        c.h1[0] = (-2.0 * I * e * mu) * t / (ch2 * c2);
        c.h1[1] = t / ch2;
        c.h1[2] = 2.0 * tanh(x[2]);
        c.h0 = (e * e * mu * mu) * t * t / ch2 + mass;
        return c;
      };
      break;
    case CaseId::G35:
      H.coeffs = [=](const Coords& x) {
        J4 s2 = square(sin(x[2])), c2 = cos(x[1]), t = tan(x[1]);
        auto c = diag_coeffs(1.0 / (s2 * c2 * c2), -1.0 / s2, J4(-1.0));
        c.h1[0] = (2.0 * I * e * mu) * t / (s2 * c2);
        c.h1[1] = t / s2;
        c.h1[2] = -2.0 * cos(x[2]) / sin(x[2]);
        c.h0 = (-e * e * mu * mu) * t * t / s2 + mass;
        return c;
      };
      break;
    default:
      throw DomainError("no closed-form Klein-Gordon operator for " + case_name(cfg.id));
  }
  return H;
}

ScalarField probe_function(std::uint64_t seed_value) {
  std::mt19937_64 rng(seed_value);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto rc = [&] { return cplx(U(rng), U(rng)); };
  std::array<cplx, 10> p;
  for (auto& c : p) c = rc();
  std::array<cplx, 3> k;
  for (auto& c : k) c = 0.5 * rc();
  return [p, k](const Coords& x) {
    J4 poly = J4(p[0]) + p[1] * x[0] + p[2] * x[1] + p[3] * x[2];
    poly += p[4] * x[0] * x[0] + p[5] * x[1] * x[1] + p[6] * x[2] * x[2];
    poly += p[7] * x[0] * x[1] + p[8] * x[0] * x[2] + p[9] * x[1] * x[2];
    return poly * exp(k[0] * x[0] + k[1] * x[1] + k[2] * x[2]);
  };
}

std::vector<Coords> probe_points(CaseId id, std::optional<double> a, int count, std::uint64_t seed_value,
                                 cplx lambda) {
  auto box = geometry::chart_for(id, a).domain.shrunk(0.1);
  std::mt19937_64 rng(seed_value);
  std::vector<Coords> out;
  for (int i = 0; i < count; ++i) out.push_back(seed<4>(geometry::sample_box(box, rng), lambda));
  return out;
}

SymmetryReport symmetry_check(const DiffOp2& H, const std::vector<DiffOp1>& X, CaseId id, std::optional<double> a,
                              const SymmetryOptions& opt) {
  SymmetryReport rep;
  rep.per_generator.assign(X.size(), 0.0);
  auto pts = probe_points(id, a, opt.points, opt.seed);
  for (int k = 0; k < opt.functions; ++k) {
    auto f = probe_function(opt.seed * 7919 + k);
    for (const auto& x : pts) {
      J4 fj = f(x);
      J4 Hf = H.apply(fj, x);
      for (std::size_t A = 0; A < X.size(); ++A) {
        cplx hx = H.apply(X[A].apply(fj, x), x).value();
        cplx xh = X[A].apply(Hf, x).value();
        double r = std::abs(hx - xh) / (1.0 + std::abs(hx) + std::abs(xh));
        rep.per_generator[A] = std::max(rep.per_generator[A], r);
        rep.max_residual = std::max(rep.max_residual, r);
      }
    }
  }
  return rep;
}

SymmetryReport symmetry_check(const fields::FieldConfig& cfg, const SymmetryOptions& opt) {
  return symmetry_check(kg_operator(cfg), symmetry_operators(cfg), cfg.id, cfg.params.a, opt);
}

fields::FieldConfig perturb_chi(const fields::FieldConfig& cfg, double eps) {
  fields::FieldConfig out = cfg;
  ScalarField c0 = cfg.chi.at(0);
  out.chi[0] = [c0, eps](const Coords& x) { return c0(x) + eps * x[0]; };
  return out;
}

double gauge_commutator_residual(const fields::FieldConfig& cfg, const ScalarField& f, const Vec3& point) {
  Coords x = seed<4>(point);
  auto A = cfg.A(x);
  auto F = cfg.F(x);
  J4 fj = f(x);
  const cplx ie = I * cfg.params.e;
  std::array<J4, 3> D;
  for (int a = 0; a < 3; ++a) D[a] = fj.deriv(a) - ie * A[a] * fj;
  double r = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      cplx dab = D[b].d(a) - ie * A[a].value() * D[b].value();
      cplx dba = D[a].d(b) - ie * A[b].value() * D[a].value();
      r = std::max(r, std::abs(dab - dba + ie * F[a][b].value() * fj.value()));
    }
  return r;
}

double operator_distance(const DiffOp2& A, const DiffOp2& B, CaseId id, std::optional<double> a, int points,
                         std::uint64_t seed_value) {
  auto pts = probe_points(id, a, points, seed_value);
  double r = 0.0;
  for (int k = 0; k < 3; ++k) {
    auto f = probe_function(seed_value + 101 * k);
    for (const auto& x : pts) {
      double sa = 0.0, sb = 0.0;
      cplx va = A.apply(f(x), x, &sa).value();
      cplx vb = B.apply(f(x), x, &sb).value();
      r = std::max(r, std::abs(va - vb) / (1.0 + sa + sb));
    }
  }
  return r;
}

}  // namespace dskg::ops
