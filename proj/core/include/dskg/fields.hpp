#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dskg/geometry.hpp"
#include "dskg/lie.hpp"

namespace dskg {

// Scalar field on (chart coordinates, lambda), evaluated as a jet.
using ScalarField = std::function<J4(const Coords&)>;

}  // namespace dskg

namespace dskg::fields {

using Matrix3J = std::array<std::array<J4, 3>, 3>;
using Vector3J = std::array<J4, 3>;

// A free function of the transverse coordinates (u1, u2) together with its
// partial derivatives and an antiderivative in u1. For cases with a single
// transverse coordinate the second argument is ignored.
struct Profile {
  using Fn = std::function<J4(const J4&, const J4&)>;
  Fn f, d1, d2, integral1;
  std::string label;

  static Profile linear();    // f = u1 + u2
  static Profile constant();  // f = 1
};

struct FieldParams {
  double mu = 0.3, mu1 = 0.3, mu2 = 0.3;
  double e = 0.1, m = 0.5, zeta = 0.0;
  std::optional<double> a;
  std::optional<Profile> f1, f2;  // defaults: linear() and constant()

  // Throws DomainError for zeta outside {0, 1/6} or a missing/invalid a.
  void validate(CaseId id) const;
};

struct TwoForm {
  std::function<Matrix3J(const Coords&)> components;
  Matrix3J operator()(const Coords& x) const { return components(x); }
};

struct OneForm {
  std::function<Vector3J(const Coords&)> components;
  Vector3J operator()(const Coords& x) const { return components(x); }
};

struct FieldConfig {
  CaseId id = CaseId::G11;
  FieldParams params;
  TwoForm F;
  OneForm A;
  std::vector<ScalarField> chi;  // one per chart-order generator
  std::string gauge;
};

TwoForm invariant_two_form(CaseId id, const FieldParams& p);
OneForm potential(CaseId id, const FieldParams& p);
std::vector<ScalarField> solve_chi(CaseId id, const FieldParams& p);
FieldConfig make_config(CaseId id, const FieldParams& p = {});

// Closed, non-invariant and non-closed perturbations of size eps.
TwoForm add_closed_perturbation(const TwoForm& F, double eps);
TwoForm add_nonclosed_perturbation(const TwoForm& F, double eps);

// |dF| (the single component of a 3-form in three dimensions).
double closedness_residual(const TwoForm& F, const Vec3& point);
// L_X F = d(i_X F) + i_X dF, as values at the point.
Eigen::Matrix3cd lie_derivative(const VectorField& X, const TwoForm& F, const Vec3& point);
double lie_derivative_residual(const VectorField& X, const TwoForm& F, const Vec3& point);
// max |dA - F|.
double potential_residual(const OneForm& A, const TwoForm& F, const Vec3& point);
// max_b |d_b chi + X^a F_ab|.
double chi_residual(const VectorField& X, const ScalarField& chi, const TwoForm& F, const Vec3& point);

// F_AB = F(X_A, X_B) - C_AB^C chi_C at a point (constant when the data are consistent).
lie::Cocycle cocycle_at(const FieldConfig& cfg, const Vec3& point);
// Cocycle at the chart base point used for bookkeeping (center of the domain).
lie::Cocycle cocycle(const FieldConfig& cfg);

lie::ExtendedAlgebraSpec extended_algebra(const FieldConfig& cfg);

}  // namespace dskg::fields
