#pragma once

// Separation of variables for the integrable cases: lambda-representations,
// the ansatz phi = exp(R) Phi(v), reduced ODEs and their solution bases.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dskg/operators.hpp"
#include "dskg/specfun.hpp"

namespace dskg::integrate {

struct SolveParams {
  fields::FieldParams field;
  double J = 1.0;
  std::optional<cplx> lambda;  // default depends on the case

  cplx lambda_or_default(CaseId id) const;
};

// A sensible lambda for each case: real for G31, G33a, G35 and complex for
// G32, G34. For G35 it keeps the ansatz bases positive on the whole domain.
cplx default_lambda(CaseId id);

enum class Measure { Lebesgue, Gaussian, Weighted };
std::string to_string(Measure m);

struct LambdaRep {
  CaseId id = CaseId::G31;
  double J = 0.0;
  std::vector<ops::DiffOp1> ops;  // chart order, acting in slot 3
  cplx ell0 = 0.0;                // -i e
  Measure measure = Measure::Lebesgue;
  std::string measure_note;
};

// Throws DomainError for non-integrable cases and J outside the allowed range.
LambdaRep lambda_rep(CaseId id, const SolveParams& p);

// Fit of [l_A, l_B] into span{l_C} + F_AB l_0 at sample lambdas.
// The fit is not unique when the l_A are linearly dependent (G31).
ops::TableFit lambda_commutation_fit(const LambdaRep& rep, int samples = 6, std::uint64_t seed = 99);
// max |[l_A, l_B] - C_AB^C l_C - F_AB l_0| for given constants.
double lambda_table_residual(const LambdaRep& rep, const lie::LieAlgebraSpec& C, const lie::Cocycle& F,
                             int samples = 6, std::uint64_t seed = 99);

using UniFn = std::function<J4(const J4&)>;

struct SolutionAnsatz {
  CaseId id = CaseId::G31;
  SolveParams params;
  std::function<J4(const Coords&)> phase;  // R
  std::function<J4(const Coords&)> v;      // reduction variable
  std::string v_display;

  // exp(R) Phi(v) as a jet at x.
  J4 assemble(const Coords& x, const UniFn& Phi) const;
};

// Throws DomainError when the phase hits a branch point of a complex power.
SolutionAnsatz ansatz(CaseId id, const SolveParams& p);

// max_A |X_A phi + l_A phi| / (1 + |X_A phi| + |l_A phi|) for phi assembled with
// a generic Phi, so that only the ansatz itself is tested.
double xleqs_residual(const SolutionAnsatz& an, const LambdaRep& rep, const std::vector<Coords>& probes);

struct ReducedODE {
  CaseId id = CaseId::G31;
  SolveParams params;
  UniFn p, q;  // Phi'' + p Phi' + q Phi = 0
  std::string display;

  cplx p_at(double v) const { return p(J4(v)).value(); }
  cplx q_at(double v) const { return q(J4(v)).value(); }
  // Phi'' + p Phi' + q Phi for Phi given as a function of a jet.
  cplx residual(const UniFn& Phi, double v) const;
};

ReducedODE reduced_ode(CaseId id, const SolveParams& p);

// Max over probes of |H phi| / (1 + sum |terms of H phi|) with phi assembled
// from the ansatz and Phi, H the Klein-Gordon operator for the same fields.
double reduction_residual(const SolutionAnsatz& an, const UniFn& Phi, const std::vector<Coords>& probes);
double reduction_residual(const SolutionAnsatz& an, const ops::DiffOp2& H, const UniFn& Phi,
                          const std::vector<Coords>& probes);

// Probe points in the shrunken chart domain with the ansatz lambda.
std::vector<Coords> ansatz_probes(const SolutionAnsatz& an, int count, std::uint64_t seed);
// Regular n x n x n grid over the shrunken chart domain.
std::vector<Coords> ansatz_grid(const SolutionAnsatz& an, int n);

// Range of the reduction variable over the shrunken chart domain.
std::pair<double, double> v_range(const SolutionAnsatz& an);

// Phi from the RK oracle: values and first derivatives come from the dense
// output, higher derivatives from differentiating the ODE itself.
class OdePhi {
 public:
  OdePhi(const ReducedODE& ode, double v0, cplx phi0, cplx dphi0, double v_lo, double v_hi,
         const sf::OdeConfig& cfg = {});
  J4 operator()(const J4& v) const;
  std::pair<cplx, cplx> values(double v) const { return sol_(v); }

 private:
  ReducedODE ode_;
  sf::SecondOrderSolution sol_;
};

struct SolutionBasis {
  CaseId id = CaseId::G31;
  UniFn phi1, phi2;
  bool closed_form = true;
  std::string description;
  std::map<std::string, cplx> record;  // special-function parameters
  std::pair<double, double> domain;    // v interval where the basis is defined

  cplx eval1(double v) const { return phi1(J4(v)).value(); }
  cplx eval2(double v) const { return phi2(J4(v)).value(); }
};

// For G33a the pair is integrated numerically from (1, 0) and (0, 1) at the
// middle of the v range.
SolutionBasis solution_basis(CaseId id, const SolveParams& p);

// Phi1 Phi2' - Phi1' Phi2.
cplx wronskian(const SolutionBasis& b, double v);

// RK solution started from the basis member's value and slope at v0 compared
// with the member itself on [v0, v1]: max |diff| / max(1, |Phi|).
double cross_oracle_deviation(const SolutionBasis& b, const ReducedODE& ode, int member, double v0, double v1,
                              int samples = 41, const sf::OdeConfig& cfg = {});

// Default interval for residual and cross-oracle sweeps.
std::pair<double, double> test_interval(CaseId id);

}  // namespace dskg::integrate
