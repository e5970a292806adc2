#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dskg/cases.hpp"
#include "dskg/jet.hpp"

namespace dskg {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;
// Jet coordinates (xi1, xi2, xi3, lambda) of a probe point.
using Coords = std::array<J4, kSlots>;
// Chart components of a vector field, evaluated as jets.
using VectorField = std::function<std::array<J4, 3>(const Coords&)>;

}  // namespace dskg

namespace dskg::geometry {

inline constexpr double kEta[4] = {1.0, -1.0, -1.0, -1.0};

// x0^2 - x1^2 - x2^2 - x3^2 + 1 (zero on dS3 with unit radius).
double hyperboloid_residual(const Vec4& x);

struct Box {
  Vec3 lo{}, hi{};
  bool contains(const Vec3& p) const;
  // Box shrunk by the given fraction of each side on both ends.
  Box shrunk(double margin) const;
};

struct Chart {
  CaseId id = CaseId::G11;
  int r = 0;
  std::optional<double> parameter_a;
  std::array<std::string, 3> coord_names;
  Box domain;
  std::function<Vec4(const Vec3&)> map;
  std::function<std::array<J4, 4>(const std::array<J4, 3>&)> map_jet;

  // 4 x 3 matrix dx^i / dxi^a (exact, via jets).
  Eigen::Matrix<double, 4, 3> jacobian(const Vec3& p) const;
};

Chart chart_for(CaseId id, std::optional<double> a = std::nullopt);

// Rectified chart-order generators (Table 2 fields) in chart coordinates.
std::vector<VectorField> chart_fields(CaseId id, std::optional<double> a = std::nullopt);

// Ambient vector field sum_k c_k J_k at x, J_ij = x_i d_j - x_j d_i.
Vec4 ambient_field(const Eigen::VectorXd& coeffs, const Vec4& x);

struct PushforwardResult {
  Eigen::Vector3d components = Eigen::Vector3d::Zero();  // chart components of X_A
  double solve_residual = 0.0;  // |J v - X_A(x)|, tangency of X_A to the chart image
  double transverse = 0.0;      // max |u-components|
  double table2_residual = 0.0; // max |q-components - Table 2 formula|
};

// Generator A in chart order (see lie::chart_subalgebra).
PushforwardResult pushforward(CaseId id, int A, const Vec3& point, std::optional<double> a = std::nullopt);

struct MetricSample {
  Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d g_inv = Eigen::Matrix3d::Zero();
  double sqrt_abs_det = 0.0;
  Vec3 point{};
  int positive = 0, negative = 0;
  bool lorentzian() const { return positive == 1 && negative == 2; }
};

MetricSample induced_metric(const Chart& chart, const Vec3& point);
MetricSample induced_metric(CaseId id, const Vec3& point, std::optional<double> a = std::nullopt);

// Induced metric as jets (valid to order 3): g, inverse, sqrt|det g|.
struct MetricJet {
  std::array<std::array<J4, 3>, 3> g, g_inv;
  J4 sqrt_abs_det;
};
MetricJet metric_jet(const Chart& chart, const Coords& xi);

// (L_X g)_ab at a point for a chart vector field, max abs component.
double killing_residual(const Chart& chart, const VectorField& X, const Vec3& point);

// Maximum rank of the n x 4 matrix of generator components over sample points
// of the hyperboloid.
int orbit_rank(CaseId id, int samples = 64, std::uint64_t seed = 7, std::optional<double> a = std::nullopt);

// Scaling and squaring with a truncated Taylor series.
Eigen::Matrix4d matexp(const Eigen::Matrix4d& Y);

// Product exp(-q1 rho_1) ... exp(-qr rho_r) s, the rectification map.
Eigen::Vector4d rectify(const std::vector<Eigen::Matrix4d>& rho, const Eigen::Vector4d& section,
                        const std::vector<double>& q);

// The SO(1,2) worked example: representation matrices in the ordering
// (y1, y2, y3, y0) with y1 = -x0, y2 = x2, y3 = x3, y0 = x1.
std::vector<Eigen::Matrix4d> so12_example_rhos();
Eigen::Vector4d so12_section(double u1t, double u2t);
Vec4 so12_y_to_x(const Eigen::Vector4d& y);
// Rectified coordinates on R^{1,3} (two q's, two u~'s) and, on dS3 after the
// invariant restriction u~1 = cos u, u~2 = sin u - 1.
Vec4 so12_rectified(double q1, double q2, double u1t, double u2t);
Vec4 so12_on_ds3(double q1, double q2, double u);

// Uniform sample inside a box.
template <class Rng>
Vec3 sample_box(const Box& b, Rng& rng) {
  Vec3 p;
  for (int i = 0; i < 3; ++i) {
    std::uniform_real_distribution<double> U(b.lo[i], b.hi[i]);
    p[i] = U(rng);
  }
  return p;
}

}  // namespace dskg::geometry
