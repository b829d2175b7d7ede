#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "quadgrav/errors.hpp"

namespace qg {

// Truncated multivariate Taylor arithmetic in the four space-time coordinates,
// with an optional nilpotent perturbation direction eps (eps^2 = 0).
//
// A Jet of cap c carries every partial derivative of a field up to total
// order c at a point: coeff(m) = (1/m!) d^m f(p). Products truncate above the
// cap, so arithmetic is exact to truncation -- there is no discretisation
// error anywhere in the pipeline. The default cap is 4 (the A tensor consumes
// exactly four metric derivatives); divergence checks of fourth-order
// quantities seed the metric one degree higher.

inline constexpr int kMaxDeg = 5; // largest cap the static tables support
inline constexpr int kDefaultCap = 4;

struct MultiIndex {
    std::array<std::uint8_t, 4> e{0, 0, 0, 0}; // orders in (t, x1, x2, x3)
    std::uint8_t eps = 0;                      // 0 or 1
    int degree() const { return int(e[0]) + e[1] + e[2] + e[3]; }
    bool operator==(const MultiIndex&) const = default;
};

namespace jet_tables {

// number of coordinate monomials of total degree <= deg (4 variables)
int count(int deg);
// monomials sorted by (total degree, lexicographic); prefix property: the
// first count(c) entries are exactly the monomials of degree <= c
const std::vector<std::array<std::uint8_t, 4>>& monomials();
// index of a monomial in the table, -1 if its degree exceeds kMaxDeg
int index_of(const std::array<std::uint8_t, 4>& m);
// index of monomial(i) + e_axis, -1 if beyond kMaxDeg
int shifted_up(int i, int axis);
// product pairs: prod()[k] lists all (i,j) with mono(i)+mono(j) == mono(k)
const std::vector<std::vector<std::pair<std::uint16_t, std::uint16_t>>>& prod();

} // namespace jet_tables

class Jet {
  public:
    // default construction: the exact zero jet (valid at every cap)
    Jet();
    bool is_zero() const;

    static Jet constant(double v, int cap, bool eps = false);
    // constant term = value, unit coefficient on the linear monomial of axis
    static Jet variable(double value, int axis, int cap);
    // base + eps * dir (dir truncated to base's cap)
    static Jet perturbed(const Jet& base, const Jet& dir);

    int cap() const { return cap_; }
    bool has_eps() const { return eps_; }
    int ncoef() const { return jet_tables::count(cap_); }

    double value() const { return c_[0]; }
    double coeff(const MultiIndex& m) const;
    void set_coeff(const MultiIndex& m, double v);

    // raw blocks (real part, eps part); eps block empty unless has_eps()
    const double* real_data() const { return c_.data(); }
    const double* eps_data() const { return eps_ ? c_.data() + ncoef() : nullptr; }

    // the eps coefficients as an eps-free jet (zero if none)
    Jet eps_part() const;
    Jet real_part() const;

    // formal partial derivative; result cap = cap-1
    Jet partial(int axis) const;
    // truncate to a smaller cap (and/or drop the eps block)
    Jet truncated(int cap, bool keep_eps = true) const;

    double max_abs_coeff() const;

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator+=(double s) { c_[0] += s; return *this; }
    Jet& operator-=(double s) { c_[0] -= s; return *this; }
    Jet& operator*=(double s);

    friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
    friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
    friend Jet operator+(Jet a, double s) { a += s; return a; }
    friend Jet operator+(double s, Jet a) { a += s; return a; }
    friend Jet operator-(Jet a, double s) { a -= s; return a; }
    friend Jet operator-(double s, const Jet& a) { Jet r = -a; r += s; return r; }
    friend Jet operator*(Jet a, double s) { a *= s; return a; }
    friend Jet operator*(double s, Jet a) { a *= s; return a; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator/(double s, const Jet& b);
    friend Jet operator/(Jet a, double s) { a *= 1.0 / s; return a; }

    // reciprocal via truncated Neumann series around the constant term
    Jet reciprocal() const;

  private:
    void promote_eps();
    int cap_;
    bool eps_;
    std::vector<double> c_; // [real block | eps block]
    friend Jet compose(const Jet&, const std::array<Jet, 4>&);
};

// elementary functions, truncated composition of the univariate series
Jet sqrt(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet pow(const Jet& a, double q); // non-integer q requires positive constant term
Jet pow(const Jet& a, int n);

// evaluate the Taylor polynomial of p on jet arguments args[axis] (whose
// constant terms are the increments relative to p's expansion point).
// Used by chart transforms.
Jet compose(const Jet& p, const std::array<Jet, 4>& args);

} // namespace qg
