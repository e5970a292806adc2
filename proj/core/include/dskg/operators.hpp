#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dskg/fields.hpp"

namespace dskg::ops {

// First-order operator a^mu d_mu + b over the four slots (chart coordinates
// and lambda).
struct DiffOp1 {
  std::function<std::array<J4, kSlots>(const Coords&)> coeffs;
  ScalarField scalar;

  // Action on the jet f of a function at the jet point x; the result is valid
  // to one order less than f.
  J4 apply(const J4& f, const Coords& x) const;
  cplx apply(const ScalarField& f, const Vec3& point, cplx lambda = 0.0) const;
};

struct OpSample {
  std::array<cplx, kSlots> coeffs{};
  cplx scalar = 0.0;
};

OpSample sample(const DiffOp1& op, const Coords& x);
// Coefficients of [A, B] at the point: c = a.d(b) - b.d(a), same for scalars.
OpSample commutator(const DiffOp1& A, const DiffOp1& B, const Coords& x);

struct TableFit {
  lie::LieAlgebraSpec C;
  lie::Cocycle F;
  double residual = 0.0;  // max misfit over pairs, probes and components
  bool closed(double tol = 1e-9) const { return residual < tol; }
};

// Fits every [op_A, op_B] into span{op_C} + F_AB * central, stacking real and
// imaginary parts over all probe points.
TableFit commutation_table_fit(const std::vector<DiffOp1>& ops, const std::vector<Coords>& probes, cplx central);

struct DiffOp2Coeffs {
  std::array<std::array<J4, 3>, 3> h2;
  std::array<J4, 3> h1;
  J4 h0;
};

// Second-order operator h2^{ab} d_a d_b + h1^a d_a + h0 in the chart slots.
struct DiffOp2 {
  std::function<DiffOp2Coeffs(const Coords&)> coeffs;

  // scale, when given, receives the sum of |term| over all individual terms.
  J4 apply(const J4& f, const Coords& x, double* scale = nullptr) const;
  cplx apply(const ScalarField& f, const Vec3& point, cplx lambda = 0.0, double* scale = nullptr) const;
};

// X-hat_A = X_A^a (d_a - i e A_a) + i e chi_A for every chart-order generator.
std::vector<DiffOp1> symmetry_operators(const fields::FieldConfig& cfg);

// Klein-Gordon operator assembled from the induced metric and the potential:
// |g|^{-1/2} D_a (|g|^{1/2} g^{ab} D_b) + 6 zeta + m^2.
DiffOp2 kg_operator(const fields::FieldConfig& cfg);
// Closed-form operator for the integrable cases G31..G35 (sign-corrected).
DiffOp2 kg_display(const fields::FieldConfig& cfg);

// Random complex polynomial times exponential in the chart slots.
ScalarField probe_function(std::uint64_t seed);
std::vector<Coords> probe_points(CaseId id, std::optional<double> a, int count, std::uint64_t seed,
                                 cplx lambda = 0.0);

struct SymmetryOptions {
  int functions = 5;
  int points = 50;
  std::uint64_t seed = 2024;
};

struct SymmetryReport {
  double max_residual = 0.0;
  std::vector<double> per_generator;
};

// max over A, probe functions and points of
// |H(X_A f) - X_A(H f)| / (1 + |H(X_A f)| + |X_A(H f)|).
SymmetryReport symmetry_check(const fields::FieldConfig& cfg, const SymmetryOptions& opt = {});
SymmetryReport symmetry_check(const DiffOp2& H, const std::vector<DiffOp1>& X, CaseId id, std::optional<double> a,
                              const SymmetryOptions& opt = {});

// Config with chi_1 replaced by chi_1 + eps * q1.
fields::FieldConfig perturb_chi(const fields::FieldConfig& cfg, double eps);

// max |[D_a, D_b] f + i e F_ab f| over the probe.
double gauge_commutator_residual(const fields::FieldConfig& cfg, const ScalarField& f, const Vec3& point);

// Maximum normalized difference of two second-order operators acting on probes.
double operator_distance(const DiffOp2& A, const DiffOp2& B, CaseId id, std::optional<double> a, int points,
                         std::uint64_t seed);

}  // namespace dskg::ops
