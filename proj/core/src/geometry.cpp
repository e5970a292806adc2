#include "dskg/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dskg/lie.hpp"

namespace dskg::geometry {

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
void install(Chart& c, F f) {
  c.map = [f](const Vec3& p) { return f(p); };
  c.map_jet = [f](const std::array<J4, 3>& p) { return f(p); };
}

}  // namespace

double hyperboloid_residual(const Vec4& x) {
  return x[0] * x[0] - x[1] * x[1] - x[2] * x[2] - x[3] * x[3] + 1.0;
}

bool Box::contains(const Vec3& p) const {
  for (int i = 0; i < 3; ++i)
    if (!(p[i] > lo[i] && p[i] < hi[i])) return false;
  return true;
}

Box Box::shrunk(double margin) const {
  Box b = *this;
  for (int i = 0; i < 3; ++i) {
    double w = hi[i] - lo[i];
    b.lo[i] += margin * w;
    b.hi[i] -= margin * w;
  }
  return b;
}

Eigen::Matrix<double, 4, 3> Chart::jacobian(const Vec3& p) const {
  std::array<J4, 3> xi = {J4::variable(0, p[0]), J4::variable(1, p[1]), J4::variable(2, p[2])};
  auto x = map_jet(xi);
  Eigen::Matrix<double, 4, 3> J;
  for (int i = 0; i < 4; ++i)
    for (int a = 0; a < 3; ++a) J(i, a) = x[i].d(a).real();
  return J;
}

Chart chart_for(CaseId id, std::optional<double> a_opt) {
  const double a = checked_parameter(id, a_opt);
  Chart c;
  c.id = id;
  c.r = orbit_dim(id);
  if (has_parameter(id)) c.parameter_a = a;
  const double hp = kPi / 2;
  switch (id) {
    case CaseId::G11:
      c.coord_names = {"q1", "u1", "u2"};
      c.domain = {{-1.2, 0.2, 0.2}, {1.2, kPi - 0.2, kPi - 0.2}};
      install(c, [](const auto& p) {
        using std::cos, std::sin, std::cosh, std::sinh;
        auto q = p[0], u1 = p[1], u2 = p[2];
        auto w = sin(u1) * sin(u2);
        return std::array{-w * sinh(q), cos(u2), cos(u1) * sin(u2), w * cosh(q)};
      });
      break;
    case CaseId::G12:
      c.coord_names = {"q1", "u1", "u2"};
      c.domain = {{-kPi, -1.2, -hp + 0.2}, {kPi, 1.2, hp - 0.2}};
      install(c, [](const auto& p) {
        using std::cos, std::sin, std::cosh, std::sinh;
        auto q = p[0], u1 = p[1], u2 = p[2];
        auto w = cosh(u1) * cos(u2);
        return std::array{sinh(u1), -w * sin(q), w * cos(q), cosh(u1) * sin(u2)};
      });
      break;
    case CaseId::G13a:
      c.coord_names = {"q1", "u1", "u2"};
      c.domain = {{-1.2, -1.2, -hp + 0.2}, {1.2, 1.2, hp - 0.2}};
      install(c, [a](const auto& p) {
        using std::cos, std::sin, std::cosh, std::sinh;
        auto q = p[0], u1 = p[1], u2 = p[2];
        auto w = cosh(u1) * cos(u2);
        auto s = cosh(u1) * sin(u2);
        return std::array{-s * sinh(a * q) + sinh(u1) * cosh(a * q), -w * sin(q), w * cos(q),
                          s * cosh(a * q) - sinh(u1) * sinh(a * q)};
      });
      break;
    case CaseId::G14:
      c.coord_names = {"q1", "u1", "u2"};
      c.domain = {{-1.5, 0.2, -1.3}, {1.5, 1.2, -0.2}};
      install(c, [](const auto& p) {
        using std::cos, std::sin, std::cosh, std::sinh;
        auto q = p[0], u1 = p[1], u2 = p[2];
        auto d = sinh(u1) - cosh(u1) * sin(u2);
        auto h = 0.5 * q * q * d;
        return std::array{h + sinh(u1), -q * d, cosh(u1) * cos(u2), h + cosh(u1) * sin(u2)};
      });
      break;
    case CaseId::G21:
    case CaseId::G32:
      c.coord_names = {"q1", "q2", "u1"};
      c.domain = {{-1.2, -1.2, -1.2}, {1.2, 1.2, 1.2}};
      install(c, [](const auto& p) {
        using std::exp, std::cosh, std::sinh;
        auto q1 = p[0], q2 = p[1], u = p[2];
        auto e = exp(-u);
        auto h = 0.5 * e * (q1 * q1 + q2 * q2);
        return std::array{sinh(u) - h, q1 * e, q2 * e, cosh(u) - h};
      });
      break;
    case CaseId::G22:
      c.coord_names = {"q1", "q2", "u1"};
      c.domain = {{-kPi, -1.2, 0.2}, {kPi, 1.2, hp - 0.2}};
      install(c, [](const auto& p) {
        using std::cos, std::sin, std::cosh, std::sinh;
        auto q1 = p[0], q2 = p[1], u = p[2];
        return std::array{-sin(u) * sinh(q2), cos(u) * cos(q1), cos(u) * sin(q1), sin(u) * cosh(q2)};
      });
      break;
    case CaseId::G23:
      c.coord_names = {"q1", "q2", "u1"};
      c.domain = {{-1.2, -1.2, -hp + 0.2}, {1.2, 1.2, hp - 0.2}};
      install(c, [](const auto& p) {
        using std::cos, std::sin, std::cosh, std::sinh, std::exp;
        auto q1 = p[0], q2 = p[1], u = p[2];
        auto h = 0.5 * q1 * q1 * exp(q2);
        return std::array{-cos(u) * (sinh(q2) + h), q1 * exp(q2) * cos(u), sin(u), cos(u) * (cosh(q2) - h)};
      });
      break;
    case CaseId::G31:
    case CaseId::G41:
      c.coord_names = {"q1", "q2", "q3"};
      c.domain = {{-1.2, -1.2, -1.2}, {1.2, 1.2, 1.2}};
      install(c, [](const auto& p) {
        using std::exp, std::cosh, std::sinh;
        auto q1 = p[0], q2 = p[1], q3 = p[2];
        auto e = exp(q3);
        auto h = 0.5 * e * (q1 * q1 + q2 * q2);
        return std::array{-sinh(q3) - h, q1 * e, q2 * e, cosh(q3) - h};
      });
      break;
    case CaseId::G33a:
      c.coord_names = {"q1", "q2", "q3"};
      c.domain = {{-1.2, -1.2, -1.2 / std::max(a, 1.0)}, {1.2, 1.2, 1.2 / std::max(a, 1.0)}};
      install(c, [a](const auto& p) {
        using std::exp, std::cosh, std::sinh;
        auto q1 = p[0], q2 = p[1], q3 = p[2];
        auto e = exp(a * q3);
        auto h = 0.5 * e * (q1 * q1 + q2 * q2);
        return std::array{-sinh(a * q3) - h, q1 * e, q2 * e, cosh(a * q3) - h};
      });
      break;
    case CaseId::G34:
      c.coord_names = {"q1", "q2", "u1"};
      c.domain = {{-kPi, -hp + 0.1, -1.2}, {kPi, hp - 0.1, 1.2}};
      install(c, [](const auto& p) {
        using std::cos, std::sin, std::cosh, std::sinh;
        auto q1 = p[0], q2 = p[1], u = p[2];
        auto w = cosh(u) * cos(q2);
        return std::array{sinh(u), -w * sin(q1), w * cos(q1), cosh(u) * sin(q2)};
      });
      break;
    case CaseId::G35:
      c.coord_names = {"q1", "q2", "u1"};
      c.domain = {{-1.2, -hp + 0.1, 0.1}, {1.2, hp - 0.1, kPi - 0.1}};
      install(c, [](const auto& p) {
        using std::cos, std::sin, std::cosh, std::sinh;
        auto q1 = p[0], q2 = p[1], u = p[2];
        auto w = sin(u) * cos(q2);
        return std::array{-w * sinh(q1), w * cosh(q1), sin(u) * sin(q2), cos(u)};
      });
      break;
  }
  return c;
}

std::vector<VectorField> chart_fields(CaseId id, std::optional<double> a_opt) {
  const double a = checked_parameter(id, a_opt);
  using F3 = std::array<J4, 3>;
  auto d1 = [](const Coords&) { return F3{J4(1.0), J4(0.0), J4(0.0)}; };
  auto d2 = [](const Coords&) { return F3{J4(0.0), J4(1.0), J4(0.0)}; };
  auto dilation = [](const Coords& x) { return F3{-x[0], -x[1], J4(1.0)}; };
  auto rotation = [](const Coords& x) { return F3{-x[1], x[0], J4(0.0)}; };
  switch (id) {
    case CaseId::G11:
    case CaseId::G12:
    case CaseId::G13a:
    case CaseId::G14: return {d1};
    case CaseId::G21:
    case CaseId::G22: return {d1, d2};
    case CaseId::G23: return {d1, [](const Coords& x) { return F3{-x[0], J4(1.0), J4(0.0)}; }};
    case CaseId::G31: return {d1, d2, dilation};
    case CaseId::G32: return {d1, d2, rotation};
    case CaseId::G33a:
      return {d1, d2, [a](const Coords& x) { return F3{-(a * x[0] + x[1]), x[0] - a * x[1], J4(1.0)}; }};
    case CaseId::G34:
      return {d1,
              [](const Coords& x) { return F3{sin(x[0]) * tan(x[1]), cos(x[0]), J4(0.0)}; },
              [](const Coords& x) { return F3{cos(x[0]) * tan(x[1]), -sin(x[0]), J4(0.0)}; }};
    case CaseId::G35:
      return {d1,
              [](const Coords& x) { return F3{sinh(x[0]) * tan(x[1]), cosh(x[0]), J4(0.0)}; },
              [](const Coords& x) { return F3{cosh(x[0]) * tan(x[1]), sinh(x[0]), J4(0.0)}; }};
    case CaseId::G41: return {d1, d2, rotation, dilation};
  }
  return {};
}

Vec4 ambient_field(const Eigen::VectorXd& coeffs, const Vec4& x) {
  const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  Vec4 v{0, 0, 0, 0};
  for (int k = 0; k < 6; ++k) {
    if (coeffs(k) == 0.0) continue;
    int i = pairs[k][0], j = pairs[k][1];
    // J_ij = x_i d_j - x_j d_i with lowered x_i = eta_ii x^i
    v[j] += coeffs(k) * kEta[i] * x[i];
    v[i] -= coeffs(k) * kEta[j] * x[j];
  }
  return v;
}

PushforwardResult pushforward(CaseId id, int A, const Vec3& p, std::optional<double> a) {
  Chart c = chart_for(id, a);
  auto sub = lie::chart_subalgebra(id, a);
  if (A < 0 || A >= sub.dim()) throw std::out_of_range("pushforward: generator index");
  Eigen::Matrix<double, 4, 3> J = c.jacobian(p);
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 3>> svd(J, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()(2) < 1e-10 * svd.singularValues()(0))
    throw DomainError("pushforward: rank-deficient chart Jacobian at this point");
  Vec4 x = c.map(p);
  Vec4 X = ambient_field(sub.generator_coeffs.row(A).transpose(), x);
  Eigen::Vector4d rhs(X[0], X[1], X[2], X[3]);
  PushforwardResult r;
  r.components = svd.solve(rhs);
  r.solve_residual = (J * r.components - rhs).cwiseAbs().maxCoeff();
  auto fields = chart_fields(id, a);
  auto t2 = fields[A](seed<4>(p));
  for (int k = 0; k < 3; ++k) {
    double expect = t2[k].value().real();
    if (k < c.r)
      r.table2_residual = std::max(r.table2_residual, std::abs(r.components(k) - expect));
    else
      r.transverse = std::max(r.transverse, std::abs(r.components(k)));
  }
  return r;
}

MetricJet metric_jet(const Chart& chart, const Coords& xi) {
  auto x = chart.map_jet({xi[0], xi[1], xi[2]});
  std::array<std::array<J4, 3>, 4> dx;
  for (int i = 0; i < 4; ++i)
    for (int a = 0; a < 3; ++a) dx[i][a] = x[i].deriv(a);
  MetricJet m;
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      J4 s;
      for (int i = 0; i < 4; ++i) s += kEta[i] * (dx[i][a] * dx[i][b]);
      m.g[a][b] = s;
      m.g[b][a] = s;
    }
  const auto& g = m.g;
  std::array<std::array<J4, 3>, 3> cof;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      int a1 = (a + 1) % 3, a2 = (a + 2) % 3, b1 = (b + 1) % 3, b2 = (b + 2) % 3;
      cof[a][b] = g[a1][b1] * g[a2][b2] - g[a1][b2] * g[a2][b1];
    }
  J4 det = g[0][0] * cof[0][0] + g[0][1] * cof[0][1] + g[0][2] * cof[0][2];
  J4 inv = recip(det);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m.g_inv[a][b] = cof[b][a] * inv;
  m.sqrt_abs_det = det.value().real() >= 0 ? sqrt(det) : sqrt(-det);
  return m;
}

MetricSample induced_metric(const Chart& chart, const Vec3& p) {
  Eigen::Matrix<double, 4, 3> J = chart.jacobian(p);
  Eigen::Matrix4d eta = Eigen::Vector4d(kEta[0], kEta[1], kEta[2], kEta[3]).asDiagonal();
  MetricSample s;
  s.point = p;
  s.g = J.transpose() * eta * J;
  s.g_inv = s.g.inverse();
  s.sqrt_abs_det = std::sqrt(std::abs(s.g.determinant()));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(s.g);
  for (int i = 0; i < 3; ++i) {
    if (es.eigenvalues()(i) > 0) ++s.positive;
    if (es.eigenvalues()(i) < 0) ++s.negative;
  }
  if (!s.lorentzian()) throw DomainError("induced_metric: signature is not (+,-,-) at this point");
  return s;
}

MetricSample induced_metric(CaseId id, const Vec3& p, std::optional<double> a) {
  return induced_metric(chart_for(id, a), p);
}

double killing_residual(const Chart& chart, const VectorField& X, const Vec3& p) {
  Coords xi = seed<4>(p);
  MetricJet m = metric_jet(chart, xi);
  auto v = X(xi);
  double r = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      cplx s = 0.0;
      for (int c = 0; c < 3; ++c)
        s += v[c].value() * m.g[a][b].d(c) + m.g[c][b].value() * v[c].d(a) + m.g[a][c].value() * v[c].d(b);
      r = std::max(r, std::abs(s));
    }
  return r;
}

int orbit_rank(CaseId id, int samples, std::uint64_t seed_value, std::optional<double> a) {
  auto sub = lie::chart_subalgebra(id, a);
  std::mt19937_64 rng(seed_value);
  std::uniform_real_distribution<double> T(-1.0, 1.0), Z(-1.0, 1.0), P(0.0, 2 * kPi);
  int best = 0;
  for (int s = 0; s < samples; ++s) {
    double t = T(rng), z = Z(rng), ph = P(rng);
    double rho = std::sqrt(1 - z * z);
    Vec4 x = {std::sinh(t), std::cosh(t) * rho * std::cos(ph), std::cosh(t) * rho * std::sin(ph),
              std::cosh(t) * z};
    Eigen::MatrixXd M(sub.dim(), 4);
    for (int A = 0; A < sub.dim(); ++A) {
      Vec4 v = ambient_field(sub.generator_coeffs.row(A).transpose(), x);
      for (int i = 0; i < 4; ++i) M(A, i) = v[i];
    }
    best = std::max(best, lie::numerical_rank(M, 1e-10));
  }
  return best;
}

Eigen::Matrix4d matexp(const Eigen::Matrix4d& Y) {
  double norm = Y.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  Eigen::Matrix4d X = Y / std::ldexp(1.0, s);
  Eigen::Matrix4d term = Eigen::Matrix4d::Identity();
  Eigen::Matrix4d sum = Eigen::Matrix4d::Identity();
  for (int k = 1; k <= 20; ++k) {
    term = term * X / double(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

Eigen::Vector4d rectify(const std::vector<Eigen::Matrix4d>& rho, const Eigen::Vector4d& section,
                        const std::vector<double>& q) {
  if (q.size() > rho.size()) throw std::invalid_argument("rectify: more q's than generators");
  Eigen::Vector4d y = section;
  for (int a = static_cast<int>(q.size()) - 1; a >= 0; --a) y = matexp(-q[a] * rho[a]) * y;
  return y;
}

std::vector<Eigen::Matrix4d> so12_example_rhos() {
  Eigen::Matrix4d r1 = Eigen::Matrix4d::Zero(), r2 = Eigen::Matrix4d::Zero(), r3 = Eigen::Matrix4d::Zero();
  r1(0, 3) = -1;
  r1(3, 0) = -1;
  r2(1, 3) = -1;
  r2(3, 1) = 1;
  r3(0, 1) = -1;
  r3(1, 0) = -1;
  return {r1, r2, r3};
}

Eigen::Vector4d so12_section(double u1t, double u2t) { return {0.0, 0.0, u1t, u2t + 1.0}; }

Vec4 so12_y_to_x(const Eigen::Vector4d& y) { return {-y(0), y(3), y(1), y(2)}; }

Vec4 so12_rectified(double q1, double q2, double u1t, double u2t) {
  return so12_y_to_x(rectify(so12_example_rhos(), so12_section(u1t, u2t), {q1, q2}));
}

Vec4 so12_on_ds3(double q1, double q2, double u) {
  return so12_rectified(q1, q2, std::cos(u), std::sin(u) - 1.0);
}

}  // namespace dskg::geometry
