#pragma once

#include <array>
#include <vector>

#include "quadgrav/chart.hpp"
#include "quadgrav/jet.hpp"

namespace qg {

// Fixed-rank aliases used by the curvature kernels. Index convention follows
// the component order of the tensor symbol, e.g. Gamma[mu][al][be].
using Vec4 = std::array<Jet, 4>;
using Mat4 = std::array<std::array<Jet, 4>, 4>;
using Tens3 = std::array<Mat4, 4>;
using Tens4 = std::array<Tens3, 4>;

Mat4 zero_mat4(int cap, bool eps = false);
Vec4 zero_vec4(int cap, bool eps = false);
Mat4 add(const Mat4& a, const Mat4& b);
Mat4 scale(const Mat4& a, double s);
Mat4 eps_part(const Mat4& a);
double max_abs_value(const Mat4& a);

// General-valence tensor of jet components in a fixed chart.
struct TensorJet {
    int contravariant = 0;
    int covariant = 0;
    Chart chart = Chart::Cartesian;
    std::vector<Jet> comp; // row-major over 4^(p+q)

    int rank() const { return contravariant + covariant; }
    static TensorJet zeros(int p, int q, Chart chart, int cap, bool eps = false);

    Jet& at(std::initializer_list<int> idx);
    const Jet& at(std::initializer_list<int> idx) const;

    static TensorJet from_mat(const Mat4& m, int p, int q, Chart chart);
    Mat4 to_mat() const; // rank-2 only
};

} // namespace qg
