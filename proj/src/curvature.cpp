#include "quadgrav/curvature.hpp"

#include <cmath>

#include "quadgrav/parallel.hpp"

namespace qg {

Mat4 inverse_metric(const Mat4& g) {
    // solve g X = I by Gaussian elimination; pivot choice on constant terms
    std::array<std::array<Jet, 8>, 4> a;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) a[i][j] = g[i][j];
        for (int j = 0; j < 4; ++j)
            a[i][4 + j] = Jet::constant(i == j ? 1.0 : 0.0, g[i][j].cap(), g[i][j].has_eps());
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col].value()) > std::abs(a[piv][col].value())) piv = r;
        if (std::abs(a[piv][col].value()) < 1e-300)
            throw DegenerateMetric("metric constant block is singular");
        std::swap(a[piv], a[col]);
        Jet inv = a[col][col].reciprocal();
        for (int j = col; j < 8; ++j) a[col][j] = a[col][j] * inv;
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            Jet f = a[r][col];
            if (f.max_abs_coeff() == 0.0) continue;
            for (int j = col; j < 8; ++j) a[r][j] -= f * a[col][j];
        }
    }
    Mat4 x;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) x[i][j] = a[i][4 + j];
    // symmetrize to kill elimination round-off asymmetry
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Jet s = 0.5 * (x[i][j] + x[j][i]);
            x[i][j] = s;
            x[j][i] = s;
        }
    return x;
}

Tens3 christoffels_of(const Mat4& g, const Mat4& ginv) {
    std::array<Mat4, 4> dg; // dg[s][a][b] = d_s g_ab
    for (int s = 0; s < 4; ++s)
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b) {
                dg[s][a][b] = g[a][b].partial(s);
                if (b != a) dg[s][b][a] = dg[s][a][b];
            }
    Tens3 gam;
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            std::array<Jet, 4> lower; // [s] = d_a g_sb + d_b g_sa - d_s g_ab
            for (int s = 0; s < 4; ++s) lower[s] = dg[a][s][b] + dg[b][s][a] - dg[s][a][b];
            for (int mu = 0; mu < 4; ++mu) {
                Jet acc = ginv[mu][0] * lower[0];
                for (int s = 1; s < 4; ++s) acc += ginv[mu][s] * lower[s];
                acc *= 0.5;
                gam[mu][a][b] = acc;
                if (b != a) gam[mu][b][a] = gam[mu][a][b];
            }
        }
    return gam;
}

namespace {

Mat4 raise_both(const Mat4& low, const Mat4& ginv) {
    Mat4 half, up;
    for (int a = 0; a < 4; ++a)
        for (int j = 0; j < 4; ++j) {
            Jet acc = ginv[a][0] * low[0][j];
            for (int b = 1; b < 4; ++b) acc += ginv[a][b] * low[b][j];
            half[a][j] = acc;
        }
    for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) {
            Jet acc = half[a][0] * ginv[c][0];
            for (int b = 1; b < 4; ++b) acc += half[a][b] * ginv[c][b];
            up[a][c] = acc;
        }
    return up;
}

Jet contract2(const Mat4& a, const Mat4& b) {
    Jet acc = a[0][0] * b[0][0];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i || j) acc += a[i][j] * b[i][j];
    return acc;
}

// fully raised copy of a rank-4 lowered tensor, one index at a time
Tens4 raise4(const Tens4& low, const Mat4& ginv) {
    Tens4 t1, t2, t3, t4;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    Jet acc = ginv[a][0] * low[0][b][c][d];
                    for (int e = 1; e < 4; ++e) acc += ginv[a][e] * low[e][b][c][d];
                    t1[a][b][c][d] = acc;
                }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    Jet acc = ginv[b][0] * t1[a][0][c][d];
                    for (int e = 1; e < 4; ++e) acc += ginv[b][e] * t1[a][e][c][d];
                    t2[a][b][c][d] = acc;
                }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    Jet acc = ginv[c][0] * t2[a][b][0][d];
                    for (int e = 1; e < 4; ++e) acc += ginv[c][e] * t2[a][b][e][d];
                    t3[a][b][c][d] = acc;
                }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    Jet acc = ginv[d][0] * t3[a][b][c][0];
                    for (int e = 1; e < 4; ++e) acc += ginv[d][e] * t3[a][b][c][e];
                    t4[a][b][c][d] = acc;
                }
    return t4;
}

Jet contract4(const Tens4& a, const Tens4& b) {
    Jet acc = a[0][0][0][0] * b[0][0][0][0];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    if (i || j || k || l) acc += a[i][j][k][l] * b[i][j][k][l];
    return acc;
}

std::vector<Jet> flatten2(const Mat4& m) {
    std::vector<Jet> v;
    v.reserve(16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) v.push_back(m[i][j]);
    return v;
}

std::vector<Jet> flatten4(const Tens4& t) {
    std::vector<Jet> v;
    v.reserve(256);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) v.push_back(t[a][b][c][d]);
    return v;
}

Mat4 scaled(const Mat4& m, double s) {
    Mat4 r = m;
    for (auto& row : r)
        for (auto& j : row) j *= s;
    return r;
}

} // namespace

CurvatureStack curvature_stack(const Mat4& g, Chart chart) {
    CurvatureStack st;
    st.chart = chart;
    st.g = g;
    st.ginv = inverse_metric(g);
    st.Gamma = christoffels_of(g, st.ginv);

    std::array<Tens3, 4> dGamma; // dGamma[k][i][l][j] = d_k Gamma^i_{lj}
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int l = 0; l < 4; ++l)
                for (int j = l; j < 4; ++j) {
                    dGamma[k][i][l][j] = st.Gamma[i][l][j].partial(k);
                    if (j != l) dGamma[k][i][j][l] = dGamma[k][i][l][j];
                }

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                st.Riem[i][j][k][k] = Jet();
                for (int l = k + 1; l < 4; ++l) {
                    Jet r = dGamma[k][i][l][j] - dGamma[l][i][k][j];
                    for (int u = 0; u < 4; ++u)
                        r += st.Gamma[i][k][u] * st.Gamma[u][j][l] -
                             st.Gamma[i][l][u] * st.Gamma[u][j][k];
                    st.Riem[i][j][k][l] = r;
                    st.Riem[i][j][l][k] = -r;
                }
            }

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                st.RiemLow[i][j][k][k] = Jet();
                for (int l = k + 1; l < 4; ++l) {
                    Jet r = st.g[i][0] * st.Riem[0][j][k][l];
                    for (int a = 1; a < 4; ++a) r += st.g[i][a] * st.Riem[a][j][k][l];
                    st.RiemLow[i][j][k][l] = r;
                    st.RiemLow[i][j][l][k] = -r;
                }
            }

    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            Jet r = st.Riem[0][i][0][j];
            for (int l = 1; l < 4; ++l) r += st.Riem[l][i][l][j];
            st.Ric[i][j] = r;
            if (j != i) st.Ric[j][i] = r;
        }

    st.Rs = contract2(st.ginv, st.Ric);

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) st.Einstein[i][j] = st.Ric[i][j] - 0.5 * (st.Rs * st.g[i][j]);

    // Weyl; constants for space dimension n = 3 (space-time dimension 4)
    Mat4 RicUp; // Ric^rho_la
    for (int r = 0; r < 4; ++r)
        for (int l = 0; l < 4; ++l) {
            Jet acc = st.ginv[r][0] * st.Ric[0][l];
            for (int a = 1; a < 4; ++a) acc += st.ginv[r][a] * st.Ric[a][l];
            RicUp[r][l] = acc;
        }
    Jet Rover6 = st.Rs * (1.0 / 6.0);
    for (int r = 0; r < 4; ++r)
        for (int m = 0; m < 4; ++m)
            for (int l = 0; l < 4; ++l)
                for (int n = 0; n < 4; ++n) {
                    Jet w = st.Riem[r][m][l][n];
                    w -= 0.5 * (RicUp[r][l] * st.g[m][n]);
                    w += 0.5 * (RicUp[r][n] * st.g[m][l]);
                    if (r == l) { w -= 0.5 * st.Ric[m][n]; w += Rover6 * st.g[m][n]; }
                    if (r == n) { w += 0.5 * st.Ric[m][l]; w -= Rover6 * st.g[m][l]; }
                    st.Weyl[r][m][l][n] = w;
                }
    for (int r = 0; r < 4; ++r)
        for (int m = 0; m < 4; ++m)
            for (int l = 0; l < 4; ++l)
                for (int n = 0; n < 4; ++n) {
                    Jet acc = st.g[r][0] * st.Weyl[0][m][l][n];
                    for (int a = 1; a < 4; ++a) acc += st.g[r][a] * st.Weyl[a][m][l][n];
                    st.WeylLow[r][m][l][n] = acc;
                }
    return st;
}

CurvatureStack curvature_stack(const MetricSpec& spec, const ChartPoint& p, int cap) {
    return curvature_stack(eval_metric_jets(spec, p, cap), p.chart);
}

std::vector<Jet> cov_deriv(const std::vector<Jet>& t, int k, const Tens3& Gamma) {
    const std::size_t n = t.size();
    std::vector<Jet> r(4 * n);
    std::array<std::size_t, 8> stride{};
    stride[k - 1] = 1;
    for (int m = k - 2; m >= 0; --m) stride[m] = stride[m + 1] * 4;
    std::vector<int> idx(k);
    for (std::size_t flat = 0; flat < n; ++flat) {
        std::size_t rem = flat;
        for (int m = 0; m < k; ++m) {
            idx[m] = int(rem / stride[m]);
            rem %= stride[m];
        }
        for (int s = 0; s < 4; ++s) {
            Jet acc = t[flat].partial(s);
            for (int m = 0; m < k; ++m) {
                const std::size_t base = flat - std::size_t(idx[m]) * stride[m];
                for (int gidx = 0; gidx < 4; ++gidx) {
                    const Jet& gam = Gamma[gidx][s][idx[m]];
                    if (gam.max_abs_coeff() == 0.0) continue;
                    acc -= gam * t[base + std::size_t(gidx) * stride[m]];
                }
            }
            r[std::size_t(s) * n + flat] = acc;
        }
    }
    return r;
}

Mat4 hessian_scalar(const Jet& f, const CurvatureStack& st) {
    Mat4 h;
    std::array<Jet, 4> df;
    for (int s = 0; s < 4; ++s) df[s] = f.partial(s);
    for (int m = 0; m < 4; ++m)
        for (int n = m; n < 4; ++n) {
            Jet acc = df[n].partial(m);
            for (int gidx = 0; gidx < 4; ++gidx) acc -= st.Gamma[gidx][m][n] * df[gidx];
            h[m][n] = acc;
            if (n != m) h[n][m] = acc;
        }
    return h;
}

Jet box_scalar(const Jet& f, const CurvatureStack& st) {
    return contract2(st.ginv, hessian_scalar(f, st));
}

Mat4 box_02(const Mat4& t, const CurvatureStack& st) {
    auto d1 = cov_deriv(flatten2(t), 2, st.Gamma);
    auto d2 = cov_deriv(d1, 3, st.Gamma); // (a, b, i, j)
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Jet acc = st.ginv[0][0] *
                      d2[std::size_t(i) * 4 + std::size_t(j)];
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    if (!a && !b) continue;
                    acc += st.ginv[a][b] * d2[std::size_t(a) * 256 + std::size_t(b) * 64 +
                                              std::size_t(i) * 4 + std::size_t(j)];
                }
            r[i][j] = acc;
        }
    return r;
}

QuadraticInvariants quadratic_invariants(const CurvatureStack& st) {
    QuadraticInvariants q;
    q.riem2 = contract4(st.RiemLow, raise4(st.RiemLow, st.ginv));
    q.weyl2 = contract4(st.WeylLow, raise4(st.WeylLow, st.ginv));
    q.ric2 = contract2(st.Ric, raise_both(st.Ric, st.ginv));
    q.r2 = st.Rs * st.Rs;
    return q;
}

double QuadraticInvariants::identity_residual() const {
    double lhs = riem2.value();
    double rhs = weyl2.value() + 2.0 * ric2.value() - r2.value() / 3.0;
    double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
    return std::abs(lhs - rhs) / scale;
}

Mat4 bach(const CurvatureStack& st) {
    // Z_{rho mu nu} = nabla^la W_{rho mu la nu}
    auto dW = cov_deriv(flatten4(st.WeylLow), 4, st.Gamma); // (s, rho, mu, la, nu)
    auto wl = [&](int s, int r, int m, int l, int n) -> const Jet& {
        return dW[(((std::size_t(s) * 4 + r) * 4 + m) * 4 + l) * 4 + n];
    };
    std::vector<Jet> Z(64);
    for (int r = 0; r < 4; ++r)
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) {
                Jet acc;
                bool first = true;
                for (int s = 0; s < 4; ++s)
                    for (int l = 0; l < 4; ++l) {
                        Jet t = st.ginv[s][l] * wl(s, r, m, l, n);
                        if (first) { acc = t; first = false; }
                        else acc += t;
                    }
                Z[(std::size_t(r) * 4 + m) * 4 + n] = acc;
            }
    auto dZ = cov_deriv(Z, 3, st.Gamma); // (a, rho, mu, nu)
    Mat4 RicUpUp = raise_both(st.Ric, st.ginv);
    Mat4 B;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            Jet acc;
            bool first = true;
            for (int a = 0; a < 4; ++a)
                for (int r = 0; r < 4; ++r) {
                    Jet t = st.ginv[a][r] * dZ[((std::size_t(a) * 4 + r) * 4 + m) * 4 + n];
                    if (first) { acc = t; first = false; }
                    else acc += t;
                }
            for (int r = 0; r < 4; ++r)
                for (int l = 0; l < 4; ++l) {
                    const Jet& w = st.WeylLow[r][m][l][n];
                    if (w.max_abs_coeff() == 0.0) continue;
                    acc += 0.5 * (RicUpUp[r][l] * w);
                }
            B[m][n] = acc;
        }
    return B;
}

namespace {

// (src . Riem)_{mu nu} = src^{rho la} RiemLow_{rho mu la nu}
Mat4 dot_riem(const CurvatureStack& st, const Mat4& src) {
    Mat4 up = raise_both(src, st.ginv);
    Mat4 out;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            Jet acc;
            bool first = true;
            for (int r = 0; r < 4; ++r)
                for (int l = 0; l < 4; ++l) {
                    const Jet& w = st.RiemLow[r][m][l][n];
                    if (w.max_abs_coeff() == 0.0) continue;
                    Jet t = up[r][l] * w;
                    if (first) { acc = t; first = false; }
                    else acc += t;
                }
            if (first) acc = Jet();
            out[m][n] = acc;
        }
    return out;
}

} // namespace

ATensorResult a_tensor(const CurvatureStack& st, const CouplingPair& c, const ATensorOptions& opt) {
    const double al = c.alpha, be = c.beta;

    Mat4 boxRic = box_02(st.Ric, st);
    Mat4 hessR = hessian_scalar(st.Rs, st);
    Jet boxR = contract2(st.ginv, hessR);
    Mat4 ricRiem = dot_riem(st, st.Ric);
    Jet ric2 = contract2(st.Ric, raise_both(st.Ric, st.ginv));

    // route 1: the explicit display of the gradient
    double scale = 0.0;
    Mat4 A;
    auto add_term = [&](Mat4& acc, const Mat4& term, bool first) {
        scale = std::max(scale, max_abs_value(term));
        if (first) acc = term;
        else acc = add(acc, term);
    };
    {
        Mat4 t = scaled(boxRic, be);
        add_term(A, t, true);
    }
    {
        Jet f = (0.5 * be + 2.0 * al) * boxR;
        Mat4 t;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) t[i][j] = f * st.g[i][j];
        add_term(A, t, false);
    }
    add_term(A, scaled(hessR, -(2.0 * al + be)), false);
    add_term(A, scaled(ricRiem, 2.0 * be), false);
    {
        Mat4 t;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) t[i][j] = (2.0 * al) * (st.Rs * st.Ric[i][j]);
        add_term(A, t, false);
    }
    {
        Jet f = (-0.5 * al) * (st.Rs * st.Rs) - (0.5 * be) * ric2;
        Mat4 t;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) t[i][j] = f * st.g[i][j];
        add_term(A, t, false);
    }

    // route 2: Einstein-tensor form
    Mat4 boxG = box_02(st.Einstein, st);
    Mat4 gRiem = dot_riem(st, st.Einstein);
    Jet gDotRic = contract2(st.Einstein, raise_both(st.Ric, st.ginv));
    Mat4 A2;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Jet b1 = boxG[i][j] + 2.0 * gRiem[i][j] - 0.5 * (gDotRic * st.g[i][j]);
            Jet b2 = hessR[i][j] - boxR * st.g[i][j] - st.Rs * st.Einstein[i][j] -
                     0.25 * (st.Rs * st.Rs * st.g[i][j]);
            A2[i][j] = be * b1 - (2.0 * al + be) * b2;
        }

    ATensorResult res;
    res.A = A;
    res.A_einstein = A2;
    res.scale = std::max(scale, 1e-300);
    double gap = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            gap = std::max(gap, std::abs(A[i][j].value() - A2[i][j].value()));
    res.route_gap = gap / res.scale;
    if (opt.strict && res.route_gap > opt.route_tol)
        throw FormMismatch("A-tensor routes disagree: relative gap " + std::to_string(res.route_gap));
    return res;
}

Jet a_trace(const CurvatureStack& st, const CouplingPair& c) {
    ATensorResult r = a_tensor(st, c);
    return contract2(st.ginv, r.A);
}

Vec4 divergence(const Mat4& t, const CurvatureStack& st) {
    auto dt = cov_deriv(flatten2(t), 2, st.Gamma);
    Vec4 out;
    for (int n = 0; n < 4; ++n) {
        Jet acc;
        bool first = true;
        for (int s = 0; s < 4; ++s)
            for (int m = 0; m < 4; ++m) {
                Jet term = st.ginv[s][m] * dt[std::size_t(s) * 16 + std::size_t(m) * 4 + n];
                if (first) { acc = term; first = false; }
                else acc += term;
            }
        out[n] = acc;
    }
    return out;
}

FlatnessScan scan_a_flatness(const MetricSpec& spec, const CouplingPair& c,
                             const std::vector<ChartPoint>& pts, bool parallel) {
    const int n = int(pts.size());
    std::vector<double> res(n), gap(n);
    par::for_each_index(n, parallel ? par::Mode::OpenMP : par::Mode::Serial, [&](int i) {
        auto st = curvature_stack(spec, pts[i], kDefaultCap);
        auto a = a_tensor(st, c);
        res[i] = max_abs_value(a.A) / a.scale;
        gap[i] = a.route_gap;
    });
    FlatnessScan out;
    out.points = n;
    for (int i = 0; i < n; ++i) {
        out.max_rel_residual = std::max(out.max_rel_residual, res[i]);
        out.max_route_gap = std::max(out.max_route_gap, gap[i]);
    }
    return out;
}

} // namespace qg
