#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dskg/cases.hpp"

namespace dskg::lie {

// Real Lie algebra given by structure constants [X_A, X_B] = C_AB^C X_C.
struct LieAlgebraSpec {
  int dim = 0;
  std::vector<double> constants;  // dim^3, row-major in (A, B, C)
  std::vector<std::string> basis_labels;

  static LieAlgebraSpec zero(int dim, std::vector<std::string> labels = {});

  double c(int a, int b, int k) const { return constants[(a * dim + b) * dim + k]; }
  double& c(int a, int b, int k) { return constants[(a * dim + b) * dim + k]; }
  // Sets C_ab^k and C_ba^k = -C_ab^k.
  void set(int a, int b, int k, double v);

  double antisymmetry_residual() const;
  double jacobi_residual() const;
  // Max |C - other.C|; infinity when dimensions differ.
  double distance(const LieAlgebraSpec& other) const;
  // Bracket of two coefficient vectors.
  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
};

// so(1,3) in the basis J01, J02, J03, J12, J13, J23 with J_ij = x_i d_j - x_j d_i
// and eta = diag(1, -1, -1, -1).
LieAlgebraSpec so13_algebra();
// Index (0..5) of J_ij in the basis above together with the sign from
// antisymmetry; returns {-1, 0} for i == j.
std::pair<int, int> so13_index(int i, int j);

struct SubalgebraSpec {
  CaseId id = CaseId::G11;
  std::optional<double> parameter_a;
  Eigen::MatrixXd generator_coeffs;   // n x 6 over (J01, J02, J03, J12, J13, J23)
  Eigen::MatrixXd table1_generators;  // the literal printed combinations
  LieAlgebraSpec algebra;
  int dim() const { return algebra.dim; }
};

// One catalog slot; families G13a and G33a are factories over a > 0.
struct CatalogEntry {
  CaseId id;
  bool parameterized;
  std::function<SubalgebraSpec(std::optional<double>)> make;
};

std::vector<CatalogEntry> catalog();
SubalgebraSpec subalgebra(CaseId id, std::optional<double> a = std::nullopt);
// Same subalgebra in the basis whose pushforwards are the rectified chart
// fields. It differs from subalgebra() only for G35 (X2 and X3 swapped).
SubalgebraSpec chart_subalgebra(CaseId id, std::optional<double> a = std::nullopt);

struct ClosureReport {
  double span_residual = 0.0;       // max distance of a bracket from the span
  double constants_residual = 0.0;  // max |fitted C - stated C|
  std::optional<std::pair<int, int>> offending;  // first pair outside the span
  LieAlgebraSpec fitted;
  bool closed(double tol = 1e-12) const { return span_residual < tol; }
  bool matches(double tol = 1e-12) const { return closed(tol) && constants_residual < tol; }
};

// Expresses every ambient bracket of generator combinations in their span.
ClosureReport closure_check(const Eigen::MatrixXd& generators, const LieAlgebraSpec& amb,
                            const LieAlgebraSpec* stated = nullptr, double tol = 1e-12);
ClosureReport closure_check(const SubalgebraSpec& sub, const LieAlgebraSpec& amb);

struct Cocycle {
  Eigen::MatrixXd F;
  double antisymmetry_residual() const;
  double cocycle_residual(const LieAlgebraSpec& alg) const;
};

// F_AB - C_AB^C lambda_C.
Cocycle fchange(const LieAlgebraSpec& alg, const Cocycle& c, const Eigen::VectorXd& lambda);

// Returns lambda with F = C lambda when the cocycle is a coboundary.
std::optional<Eigen::VectorXd> coboundary_solve(const LieAlgebraSpec& alg, const Cocycle& c,
                                                double tol = 1e-10);

struct ExtendedAlgebraSpec {
  LieAlgebraSpec base;
  Cocycle cocycle;
  int dim_hat() const { return base.dim + 1; }
  // Central element is basis index 0, base generators 1..n.
  LieAlgebraSpec as_algebra() const;
};

struct IndexOptions {
  int samples = 200;
  std::uint64_t seed = 12345;
  double rel_threshold = 1e-10;
};

int numerical_rank(const Eigen::MatrixXd& m, double rel_threshold);
int index(const ExtendedAlgebraSpec& ext, const IndexOptions& opt = {});
// Index of an arbitrary algebra via the same sampling scheme.
int index(const LieAlgebraSpec& alg, const IndexOptions& opt = {});

struct IntegrabilityRecord {
  int dim = 0, ind = 0, s = 0, l = 0, m_tilde = 0;
  bool integrable = false;
  bool operator==(const IntegrabilityRecord&) const = default;
};

IntegrabilityRecord integrability_check(const ExtendedAlgebraSpec& ext, int manifold_dim,
                                        const IndexOptions& opt = {});
IntegrabilityRecord integrability_from(int dim, int ind, int manifold_dim);

// Tabulated classification rows, used as the comparison target for the
// computed records.
IntegrabilityRecord tabulated_record(CaseId id);

}  // namespace dskg::lie
