#pragma once

#include "quadgrav/metrics.hpp"
#include "quadgrav/tensor.hpp"

namespace qg {

// Curvature pipeline. Sign conventions:
//   R^i_{jkl} = d_k Gamma^i_{lj} - d_l Gamma^i_{kj} + Gamma^i_{ku}Gamma^u_{jl}
//               - Gamma^i_{lu}Gamma^u_{jk},     Ric_{ij} = R^l_{ilj}
// Degrees flow g(c) -> Gamma(c-1) -> Riem(c-2) -> ... ; jets track their own
// caps, so a cap-4 metric yields the A tensor as a point value and a cap-5
// metric yields it with exact first derivatives.

struct CurvatureStack {
    Chart chart = Chart::Cartesian;
    Mat4 g, ginv;
    Tens3 Gamma;   // Gamma^mu[al][be]
    Tens4 Riem;    // R^i[j][k][l]
    Tens4 RiemLow; // R_ijkl = g_ia R^a_jkl
    Mat4 Ric;
    Jet Rs; // scalar curvature
    Mat4 Einstein;
    Tens4 Weyl;    // W^rho[mu][la][nu]
    Tens4 WeylLow; // W_rho mu la nu
};

Mat4 inverse_metric(const Mat4& g); // Gaussian elimination, pivots on constant terms
Tens3 christoffels_of(const Mat4& g, const Mat4& ginv);

CurvatureStack curvature_stack(const Mat4& g, Chart chart);
CurvatureStack curvature_stack(const MetricSpec& spec, const ChartPoint& p, int cap = kDefaultCap);

// covariant derivative of a (0,k) tensor (flat row-major storage); the new
// derivative index comes first
std::vector<Jet> cov_deriv(const std::vector<Jet>& t, int k, const Tens3& Gamma);

Mat4 hessian_scalar(const Jet& f, const CurvatureStack& st);
Jet box_scalar(const Jet& f, const CurvatureStack& st);
Mat4 box_02(const Mat4& t, const CurvatureStack& st);

struct QuadraticInvariants {
    Jet riem2, ric2, r2, weyl2;
    // residual of |Riem|^2 = |W|^2 + 2|Ric|^2 - R^2/3 (space dimension 3)
    double identity_residual() const;
};
QuadraticInvariants quadratic_invariants(const CurvatureStack& st);

Mat4 bach(const CurvatureStack& st);

struct ATensorOptions {
    bool strict = false;       // throw FormMismatch when the two routes disagree
    double route_tol = 1e-9;   // relative tolerance between the two routes
};

struct ATensorResult {
    Mat4 A;            // route via the explicit display
    Mat4 A_einstein;   // route via the Einstein-tensor form
    double scale;      // largest addend magnitude, for relative tolerances
    double route_gap;  // max |A - A_einstein| / scale
};

ATensorResult a_tensor(const CurvatureStack& st, const CouplingPair& c,
                       const ATensorOptions& opt = {});

// g^{mu nu} A_{mu nu}; equals 2(3 alpha + beta) Box R
Jet a_trace(const CurvatureStack& st, const CouplingPair& c);

// (div T)_nu = g^{mu sigma} nabla_sigma T_{mu nu}
Vec4 divergence(const Mat4& t, const CurvatureStack& st);

// convenience: max |A| over sampled points, relative to the term scale
struct FlatnessScan {
    double max_rel_residual = 0.0;
    double max_route_gap = 0.0;
    int points = 0;
};
FlatnessScan scan_a_flatness(const MetricSpec& spec, const CouplingPair& c,
                             const std::vector<ChartPoint>& pts, bool parallel = true);

} // namespace qg
