#include "dskg/lie.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace dskg::lie {

LieAlgebraSpec LieAlgebraSpec::zero(int dim, std::vector<std::string> labels) {
  LieAlgebraSpec s;
  s.dim = dim;
  s.constants.assign(static_cast<size_t>(dim) * dim * dim, 0.0);
  if (labels.empty())
    for (int i = 0; i < dim; ++i) labels.push_back("X" + std::to_string(i + 1));
  s.basis_labels = std::move(labels);
  return s;
}

void LieAlgebraSpec::set(int a, int b, int k, double v) {
  c(a, b, k) = v;
  c(b, a, k) = -v;
}

double LieAlgebraSpec::antisymmetry_residual() const {
  double r = 0.0;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int k = 0; k < dim; ++k) r = std::max(r, std::abs(c(a, b, k) + c(b, a, k)));
  return r;
}

double LieAlgebraSpec::jacobi_residual() const {
  double r = 0.0;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int k = 0; k < dim; ++k)
        for (int e = 0; e < dim; ++e) {
          double s = 0.0;
          for (int d = 0; d < dim; ++d)
            s += c(a, b, d) * c(d, k, e) + c(b, k, d) * c(d, a, e) + c(k, a, d) * c(d, b, e);
          r = std::max(r, std::abs(s));
        }
  return r;
}

double LieAlgebraSpec::distance(const LieAlgebraSpec& o) const {
  if (o.dim != dim) return std::numeric_limits<double>::infinity();
  double r = 0.0;
  for (size_t i = 0; i < constants.size(); ++i) r = std::max(r, std::abs(constants[i] - o.constants[i]));
  return r;
}

Eigen::VectorXd LieAlgebraSpec::bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      double w = x(a) * y(b);
      if (w == 0.0) continue;
      for (int k = 0; k < dim; ++k) r(k) += w * c(a, b, k);
    }
  return r;
}

std::pair<int, int> so13_index(int i, int j) {
  if (i == j) return {-1, 0};
  int sign = 1;
  if (i > j) {
    std::swap(i, j);
    sign = -1;
  }
  static const int table[4][4] = {{-1, 0, 1, 2}, {-1, -1, 3, 4}, {-1, -1, -1, 5}, {-1, -1, -1, -1}};
  return {table[i][j], sign};
}

LieAlgebraSpec so13_algebra() {
  const double eta[4] = {1.0, -1.0, -1.0, -1.0};
  auto g = [&](int a, int b) { return a == b ? eta[a] : 0.0; };
  const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  LieAlgebraSpec s = LieAlgebraSpec::zero(6, {"J01", "J02", "J03", "J12", "J13", "J23"});
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) {
      int i = pairs[p][0], j = pairs[p][1], k = pairs[q][0], l = pairs[q][1];
      // [J_ij, J_kl] = eta_jk J_il - eta_ik J_jl + eta_il J_jk - eta_jl J_ik
      auto add = [&](double coef, int x, int y) {
        if (coef == 0.0) return;
        auto [idx, sg] = so13_index(x, y);
        if (idx >= 0) s.c(p, q, idx) += coef * sg;
      };
      add(g(j, k), i, l);
      add(-g(i, k), j, l);
      add(g(i, l), j, k);
      add(-g(j, l), i, k);
    }
  return s;
}

namespace {

using Row = std::array<double, 6>;

Eigen::MatrixXd rows(std::initializer_list<Row> r) {
  Eigen::MatrixXd m(static_cast<int>(r.size()), 6);
  int i = 0;
  for (const auto& row : r) {
    for (int k = 0; k < 6; ++k) m(i, k) = row[k];
    ++i;
  }
  return m;
}

constexpr Row kNull1 = {-1, 0, 0, 0, 1, 0};  // J13 - J01
constexpr Row kNull2 = {0, -1, 0, 0, 0, 1};  // J23 - J02

SubalgebraSpec build(CaseId id, std::optional<double> a_opt, bool chart_order) {
  const double a = checked_parameter(id, a_opt);
  SubalgebraSpec s;
  s.id = id;
  if (has_parameter(id)) s.parameter_a = a;
  const int n = subalgebra_dim(id);
  s.algebra = LieAlgebraSpec::zero(n);
  auto& C = s.algebra;
  switch (id) {
    case CaseId::G11:
      s.generator_coeffs = rows({{0, 0, -1, 0, 0, 0}});
      s.table1_generators = rows({{0, 0, 1, 0, 0, 0}});
      break;
    case CaseId::G12:
      s.generator_coeffs = rows({{0, 0, 0, -1, 0, 0}});
      s.table1_generators = rows({{0, 0, 0, 1, 0, 0}});
      break;
    case CaseId::G13a:
      s.generator_coeffs = rows({{0, 0, -a, -1, 0, 0}});
      s.table1_generators = rows({{0, 0, a, 1, 0, 0}});
      break;
    case CaseId::G14:
      s.generator_coeffs = rows({kNull1});
      s.table1_generators = rows({kNull1});
      break;
    case CaseId::G21:
      s.generator_coeffs = rows({kNull1, kNull2});
      s.table1_generators = rows({kNull1, kNull2});
      break;
    case CaseId::G22:
      s.generator_coeffs = rows({{0, 0, 0, -1, 0, 0}, {0, 0, -1, 0, 0, 0}});
      s.table1_generators = rows({{0, 0, 0, 1, 0, 0}, {0, 0, 1, 0, 0, 0}});
      break;
    case CaseId::G23:
      s.generator_coeffs = rows({kNull1, {0, 0, -1, 0, 0, 0}});
      s.table1_generators = rows({kNull1, {0, 0, 1, 0, 0, 0}});
      C.set(0, 1, 0, -1);
      break;
    case CaseId::G31:
      s.generator_coeffs = rows({kNull1, kNull2, {0, 0, -1, 0, 0, 0}});
      s.table1_generators = rows({kNull1, kNull2, {0, 0, 1, 0, 0, 0}});
      C.set(0, 2, 0, -1);
      C.set(1, 2, 1, -1);
      break;
    case CaseId::G32:
      s.generator_coeffs = rows({kNull1, kNull2, {0, 0, 0, -1, 0, 0}});
      s.table1_generators = rows({kNull1, kNull2, {0, 0, 0, 1, 0, 0}});
      C.set(0, 2, 1, 1);
      C.set(1, 2, 0, -1);
      break;
    case CaseId::G33a:
      s.generator_coeffs = rows({kNull1, kNull2, {0, 0, -a, -1, 0, 0}});
      s.table1_generators = rows({kNull1, kNull2, {0, 0, a, 1, 0, 0}});
      C.set(0, 2, 1, 1);
      C.set(0, 2, 0, -a);
      C.set(1, 2, 0, -1);
      C.set(1, 2, 1, -a);
      break;
    case CaseId::G34:
      s.generator_coeffs = rows({{0, 0, 0, -1, 0, 0}, {0, 0, 0, 0, 0, -1}, {0, 0, 0, 0, -1, 0}});
      s.table1_generators = rows({{0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}});
      C.set(0, 1, 2, 1);
      C.set(0, 2, 1, -1);
      C.set(1, 2, 0, 1);
      break;
    case CaseId::G35:
      s.table1_generators = rows({{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}});
      if (chart_order) {
        s.generator_coeffs = rows({{-1, 0, 0, 0, 0, 0}, {0, 0, 0, -1, 0, 0}, {0, -1, 0, 0, 0, 0}});
        C.set(0, 1, 2, 1);
        C.set(0, 2, 1, 1);
        C.set(1, 2, 0, 1);
      } else {
        s.generator_coeffs = rows({{-1, 0, 0, 0, 0, 0}, {0, -1, 0, 0, 0, 0}, {0, 0, 0, -1, 0, 0}});
        C.set(0, 1, 2, 1);
        C.set(0, 2, 1, 1);
        C.set(1, 2, 0, -1);
      }
      break;
    case CaseId::G41:
      s.generator_coeffs = rows({kNull1, kNull2, {0, 0, 0, -1, 0, 0}, {0, 0, -1, 0, 0, 0}});
      s.table1_generators = rows({kNull1, kNull2, {0, 0, 0, 1, 0, 0}, {0, 0, 1, 0, 0, 0}});
      C.set(0, 2, 1, 1);
      C.set(0, 3, 0, -1);
      C.set(1, 2, 0, -1);
      C.set(1, 3, 1, -1);
      break;
  }
  return s;
}

}  // namespace

std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  for (CaseId id : kAllCases)
    out.push_back({id, has_parameter(id), [id](std::optional<double> a) { return build(id, a, false); }});
  return out;
}

SubalgebraSpec subalgebra(CaseId id, std::optional<double> a) { return build(id, a, false); }
SubalgebraSpec chart_subalgebra(CaseId id, std::optional<double> a) { return build(id, a, true); }

ClosureReport closure_check(const Eigen::MatrixXd& gens, const LieAlgebraSpec& amb,
                            const LieAlgebraSpec* stated, double tol) {
  if (gens.cols() != amb.dim) throw std::invalid_argument("closure_check: dimension mismatch");
  const int n = static_cast<int>(gens.rows());
  ClosureReport rep;
  rep.fitted = LieAlgebraSpec::zero(n);
  Eigen::MatrixXd G = gens.transpose();  // amb.dim x n
  auto solver = G.colPivHouseholderQr();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Eigen::VectorXd v = amb.bracket(gens.row(a).transpose(), gens.row(b).transpose());
      Eigen::VectorXd x = solver.solve(v);
      double res = (G * x - v).cwiseAbs().maxCoeff();
      if (res > rep.span_residual) rep.span_residual = res;
      if (res >= tol && !rep.offending) rep.offending = std::make_pair(a, b);
      for (int k = 0; k < n; ++k) rep.fitted.c(a, b, k) = x(k);
    }
  if (stated) rep.constants_residual = rep.fitted.distance(*stated);
  return rep;
}

ClosureReport closure_check(const SubalgebraSpec& sub, const LieAlgebraSpec& amb) {
  return closure_check(sub.generator_coeffs, amb, &sub.algebra);
}

double Cocycle::antisymmetry_residual() const { return (F + F.transpose()).cwiseAbs().maxCoeff(); }

double Cocycle::cocycle_residual(const LieAlgebraSpec& alg) const {
  const int n = alg.dim;
  double r = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int d = 0; d < n; ++d)
          s += alg.c(a, b, d) * F(k, d) + alg.c(b, k, d) * F(a, d) + alg.c(k, a, d) * F(b, d);
        r = std::max(r, std::abs(s));
      }
  return r;
}

Cocycle fchange(const LieAlgebraSpec& alg, const Cocycle& c, const Eigen::VectorXd& lambda) {
  Cocycle out = c;
  for (int a = 0; a < alg.dim; ++a)
    for (int b = 0; b < alg.dim; ++b)
      for (int k = 0; k < alg.dim; ++k) out.F(a, b) -= alg.c(a, b, k) * lambda(k);
  return out;
}

std::optional<Eigen::VectorXd> coboundary_solve(const LieAlgebraSpec& alg, const Cocycle& c, double tol) {
  const int n = alg.dim;
  const int m = n * (n - 1) / 2;
  if (m == 0) return Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd A(m, n);
  Eigen::VectorXd rhs(m);
  int row = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b, ++row) {
      for (int k = 0; k < n; ++k) A(row, k) = alg.c(a, b, k);
      rhs(row) = c.F(a, b);
    }
  Eigen::VectorXd lambda = A.completeOrthogonalDecomposition().solve(rhs);
  double res = (A * lambda - rhs).cwiseAbs().maxCoeff();
  if (res < tol) return lambda;
  return std::nullopt;
}

LieAlgebraSpec ExtendedAlgebraSpec::as_algebra() const {
  const int n = base.dim;
  std::vector<std::string> labels{"X0"};
  for (const auto& l : base.basis_labels) labels.push_back(l);
  LieAlgebraSpec e = LieAlgebraSpec::zero(n + 1, labels);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      e.c(a + 1, b + 1, 0) = cocycle.F(a, b);
      for (int k = 0; k < n; ++k) e.c(a + 1, b + 1, k + 1) = base.c(a, b, k);
    }
  return e;
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_threshold) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rel_threshold * s(0)) ++r;
  return r;
}

int index(const LieAlgebraSpec& alg, const IndexOptions& opt) {
  const int n = alg.dim;
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto rank_at = [&](const Eigen::VectorXd& f) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int k = 0; k < n; ++k) M(a, b) += alg.c(a, b, k) * f(k);
    return numerical_rank(M, opt.rel_threshold);
  };
  int best = rank_at(Eigen::VectorXd::Ones(n));
  for (int s = 0; s < opt.samples; ++s) {
    Eigen::VectorXd f(n);
    for (int k = 0; k < n; ++k) f(k) = U(rng);
    best = std::max(best, rank_at(f));
  }
  return n - best;
}

int index(const ExtendedAlgebraSpec& ext, const IndexOptions& opt) { return index(ext.as_algebra(), opt); }

IntegrabilityRecord integrability_from(int dim, int ind, int manifold_dim) {
  if (manifold_dim < 1) throw std::invalid_argument("manifold_dim must be >= 1");
  if ((dim - ind) % 2 != 0) throw std::logic_error("index parity violated: dim - ind is odd");
  IntegrabilityRecord r;
  r.dim = dim;
  r.ind = ind;
  r.s = (dim - ind) / 2;
  r.l = ind - 1;
  r.m_tilde = manifold_dim - (dim + ind) / 2 + 1;
  r.integrable = dim + ind >= 2 * manifold_dim;
  return r;
}

IntegrabilityRecord integrability_check(const ExtendedAlgebraSpec& ext, int manifold_dim,
                                        const IndexOptions& opt) {
  return integrability_from(ext.dim_hat(), index(ext, opt), manifold_dim);
}

IntegrabilityRecord tabulated_record(CaseId id) {
  switch (subalgebra_dim(id)) {
    case 1: return {2, 2, 0, 1, 2, false};
    case 2: return {3, 1, 1, 0, 2, false};
    case 3: return {4, 2, 1, 1, 1, true};
    default: return {5, 3, 1, 3, 0, true};
  }
}

}  // namespace dskg::lie
