#include "quadgrav/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace qg {
namespace jet_tables {

namespace {

struct Tables {
    std::vector<std::array<std::uint8_t, 4>> monos;
    std::map<std::array<std::uint8_t, 4>, int> index;
    std::vector<std::vector<std::pair<std::uint16_t, std::uint16_t>>> pairs;
    std::vector<std::array<int, 4>> up; // shifted_up per axis
    std::array<int, kMaxDeg + 2> counts{};
};

Tables build() {
    Tables t;
    for (int d = 0; d <= kMaxDeg; ++d) {
        for (int a = d; a >= 0; --a)
            for (int b = d - a; b >= 0; --b)
                for (int c = d - a - b; c >= 0; --c) {
                    int e = d - a - b - c;
                    t.monos.push_back({std::uint8_t(a), std::uint8_t(b),
                                       std::uint8_t(c), std::uint8_t(e)});
                }
        t.counts[d + 1] = int(t.monos.size());
    }
    // lexicographic within each degree block: re-sort each block descending
    // is unnecessary; any fixed order works as long as the prefix property
    // (sorted by degree) holds, which the loop above guarantees.
    for (int i = 0; i < int(t.monos.size()); ++i) t.index[t.monos[i]] = i;

    const int n = int(t.monos.size());
    t.pairs.resize(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::array<std::uint8_t, 4> s;
            int deg = 0;
            for (int a = 0; a < 4; ++a) {
                s[a] = std::uint8_t(t.monos[i][a] + t.monos[j][a]);
                deg += s[a];
            }
            if (deg > kMaxDeg) continue;
            t.pairs[t.index[s]].push_back({std::uint16_t(i), std::uint16_t(j)});
        }

    t.up.resize(n);
    for (int i = 0; i < n; ++i)
        for (int ax = 0; ax < 4; ++ax) {
            auto m = t.monos[i];
            m[ax]++;
            auto it = t.index.find(m);
            t.up[i][ax] = (it == t.index.end()) ? -1 : it->second;
        }
    return t;
}

const Tables& tables() {
    static const Tables t = build();
    return t;
}

} // namespace

int count(int deg) { return tables().counts[std::min(deg, kMaxDeg) + 1]; }
const std::vector<std::array<std::uint8_t, 4>>& monomials() { return tables().monos; }
int index_of(const std::array<std::uint8_t, 4>& m) {
    auto it = tables().index.find(m);
    return it == tables().index.end() ? -1 : it->second;
}
int shifted_up(int i, int axis) { return tables().up[i][axis]; }
const std::vector<std::vector<std::pair<std::uint16_t, std::uint16_t>>>& prod() {
    return tables().pairs;
}

} // namespace jet_tables

Jet::Jet() : cap_(kMaxDeg), eps_(false), c_(std::size_t(jet_tables::count(kMaxDeg)), 0.0) {}

bool Jet::is_zero() const {
    for (double v : c_)
        if (v != 0.0) return false;
    return true;
}

Jet Jet::constant(double v, int cap, bool eps) {
    Jet j;
    j.cap_ = cap;
    j.eps_ = eps;
    j.c_.assign(std::size_t(jet_tables::count(cap)) * (eps ? 2 : 1), 0.0);
    j.c_[0] = v;
    return j;
}

Jet Jet::variable(double value, int axis, int cap) {
    Jet j = constant(value, cap);
    if (cap >= 1) {
        std::array<std::uint8_t, 4> m{0, 0, 0, 0};
        m[axis] = 1;
        j.c_[jet_tables::index_of(m)] = 1.0;
    }
    return j;
}

Jet Jet::perturbed(const Jet& base, const Jet& dir) {
    Jet j = base;
    j.promote_eps();
    const int n = j.ncoef();
    const int nd = std::min(n, dir.ncoef());
    for (int i = 0; i < nd; ++i) j.c_[n + i] += dir.c_[i];
    return j;
}

void Jet::promote_eps() {
    if (eps_) return;
    eps_ = true;
    c_.resize(std::size_t(ncoef()) * 2, 0.0);
}

double Jet::coeff(const MultiIndex& m) const {
    if (m.eps && !eps_) return 0.0;
    std::array<std::uint8_t, 4> key{m.e[0], m.e[1], m.e[2], m.e[3]};
    int i = jet_tables::index_of(key);
    if (i < 0 || i >= ncoef()) return 0.0;
    return c_[std::size_t(i) + (m.eps ? ncoef() : 0)];
}

void Jet::set_coeff(const MultiIndex& m, double v) {
    if (m.eps) promote_eps();
    std::array<std::uint8_t, 4> key{m.e[0], m.e[1], m.e[2], m.e[3]};
    int i = jet_tables::index_of(key);
    if (i < 0 || i >= ncoef()) throw DomainError("set_coeff: index beyond cap");
    c_[std::size_t(i) + (m.eps ? ncoef() : 0)] = v;
}

Jet Jet::eps_part() const {
    Jet r = constant(0.0, cap_);
    if (!eps_) return r;
    const int n = ncoef();
    for (int i = 0; i < n; ++i) r.c_[i] = c_[n + i];
    return r;
}

Jet Jet::real_part() const {
    Jet r = constant(0.0, cap_);
    const int n = ncoef();
    for (int i = 0; i < n; ++i) r.c_[i] = c_[i];
    return r;
}

Jet Jet::partial(int axis) const {
    const int rcap = std::max(cap_ - 1, 0);
    Jet r = constant(0.0, rcap, eps_);
    const int rn = r.ncoef();
    const int n = ncoef();
    const auto& monos = jet_tables::monomials();
    for (int k = 0; k < rn; ++k) {
        int src = jet_tables::shifted_up(k, axis);
        if (src < 0 || src >= n) continue;
        double f = double(monos[k][axis] + 1);
        r.c_[k] = f * c_[src];
        if (eps_) r.c_[rn + k] = f * c_[n + src];
    }
    return r;
}

Jet Jet::truncated(int cap, bool keep_eps) const {
    const int rcap = std::min(cap, cap_);
    const bool reps = eps_ && keep_eps;
    Jet r = constant(0.0, rcap, reps);
    const int rn = r.ncoef();
    const int n = ncoef();
    for (int i = 0; i < rn; ++i) {
        r.c_[i] = c_[i];
        if (reps) r.c_[rn + i] = c_[n + i];
    }
    return r;
}

double Jet::max_abs_coeff() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (double& v : r.c_) v = -v;
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    if (o.is_zero()) return *this; // exact zeros never narrow the cap
    if (is_zero() && !eps_ && cap_ >= o.cap_) { *this = o; return *this; }
    if (o.eps_ && !eps_) promote_eps();
    if (o.cap_ < cap_) *this = truncated(o.cap_);
    const int n = ncoef();
    const int no = o.ncoef();
    const int m = std::min(n, no);
    for (int i = 0; i < m; ++i) c_[i] += o.c_[i];
    if (o.eps_)
        for (int i = 0; i < m; ++i) c_[n + i] += o.c_[no + i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    if (o.is_zero()) return *this;
    if (o.eps_ && !eps_) promote_eps();
    if (o.cap_ < cap_) *this = truncated(o.cap_);
    const int n = ncoef();
    const int no = o.ncoef();
    const int m = std::min(n, no);
    for (int i = 0; i < m; ++i) c_[i] -= o.c_[i];
    if (o.eps_)
        for (int i = 0; i < m; ++i) c_[n + i] -= o.c_[no + i];
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    const int rcap = std::min(a.cap_, b.cap_);
    const bool eps = a.eps_ || b.eps_;
    if (a.is_zero() || b.is_zero()) return Jet::constant(0.0, rcap, eps);
    Jet r = Jet::constant(0.0, rcap, eps);
    const int rn = r.ncoef();
    const int na = a.ncoef(), nb = b.ncoef();
    const double* a0 = a.c_.data();
    const double* b0 = b.c_.data();
    const double* a1 = a.eps_ ? a0 + na : nullptr;
    const double* b1 = b.eps_ ? b0 + nb : nullptr;
    const auto& prod = jet_tables::prod();
    for (int k = 0; k < rn; ++k) {
        double s0 = 0.0, s1 = 0.0;
        for (auto [i, j] : prod[k]) {
            if (i >= na || j >= nb) continue;
            s0 += a0[i] * b0[j];
            if (eps) {
                double t = 0.0;
                if (a1) t += a1[i] * b0[j];
                if (b1) t += a0[i] * b1[j];
                s1 += t;
            }
        }
        r.c_[k] = s0;
        if (eps) r.c_[rn + k] = s1;
    }
    return r;
}

Jet Jet::reciprocal() const {
    const double c0 = c_[0];
    if (c0 == 0.0) throw ZeroConstantTerm("jet reciprocal: zero constant term");
    // 1/(c0 + u) = (1/c0) sum_k (-u/c0)^k, u nilpotent
    Jet u = *this;
    u.c_[0] = 0.0;
    u *= -1.0 / c0;
    Jet acc = Jet::constant(1.0, cap_, eps_);
    Jet term = Jet::constant(1.0, cap_, eps_);
    for (int k = 1; k <= cap_ + 1; ++k) {
        term = term * u;
        acc += term;
    }
    acc *= 1.0 / c0;
    return acc;
}

Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }
Jet operator/(double s, const Jet& b) { Jet r = b.reciprocal(); r *= s; return r; }

namespace {

// f(a0 + u) = sum_k d_k u^k with d_k = f^(k)(a0)/k!
Jet series_apply(const Jet& a, const std::vector<double>& d) {
    Jet u = a;
    {
        MultiIndex zero;
        (void)zero;
    }
    u += -a.value();
    Jet acc = Jet::constant(d[0], a.cap(), a.has_eps());
    Jet term = Jet::constant(1.0, a.cap(), a.has_eps());
    for (std::size_t k = 1; k < d.size(); ++k) {
        term = term * u;
        acc += d[k] * term;
    }
    return acc;
}

int nterms(const Jet& a) { return a.cap() + 2; }

} // namespace

Jet sqrt(const Jet& a) {
    const double a0 = a.value();
    if (a0 <= 0.0) throw DomainError("jet sqrt: constant term must be positive");
    std::vector<double> d(nterms(a));
    double s = std::sqrt(a0);
    d[0] = s;
    // d_k = binom(1/2, k) a0^{1/2-k}
    double coef = 1.0;
    for (int k = 1; k < int(d.size()); ++k) {
        coef *= (0.5 - (k - 1)) / k;
        d[k] = coef * s / std::pow(a0, k);
    }
    return series_apply(a, d);
}

Jet exp(const Jet& a) {
    std::vector<double> d(nterms(a));
    double e = std::exp(a.value());
    double f = 1.0;
    for (int k = 0; k < int(d.size()); ++k) {
        d[k] = e / f;
        f *= (k + 1);
    }
    return series_apply(a, d);
}

Jet log(const Jet& a) {
    const double a0 = a.value();
    if (a0 <= 0.0) throw DomainError("jet log: constant term must be positive");
    std::vector<double> d(nterms(a));
    d[0] = std::log(a0);
    double sign = 1.0;
    for (int k = 1; k < int(d.size()); ++k) {
        d[k] = sign / (k * std::pow(a0, k));
        sign = -sign;
    }
    return series_apply(a, d);
}

Jet sin(const Jet& a) {
    std::vector<double> d(nterms(a));
    const double s = std::sin(a.value()), c = std::cos(a.value());
    double f = 1.0;
    static const double tab[4] = {1, 1, -1, -1}; // cycle: sin, cos, -sin, -cos
    for (int k = 0; k < int(d.size()); ++k) {
        double base = (k % 2 == 0) ? s : c;
        d[k] = tab[k % 4] * base / f;
        f *= (k + 1);
    }
    return series_apply(a, d);
}

Jet cos(const Jet& a) {
    std::vector<double> d(nterms(a));
    const double s = std::sin(a.value()), c = std::cos(a.value());
    double f = 1.0;
    static const double tab[4] = {1, -1, -1, 1}; // cycle: cos, -sin, -cos, sin
    for (int k = 0; k < int(d.size()); ++k) {
        double base = (k % 2 == 0) ? c : s;
        d[k] = tab[k % 4] * base / f;
        f *= (k + 1);
    }
    return series_apply(a, d);
}

Jet pow(const Jet& a, double q) {
    double ip;
    if (std::modf(q, &ip) == 0.0 && std::abs(q) < 64) return pow(a, int(ip));
    const double a0 = a.value();
    if (a0 <= 0.0) throw DomainError("jet pow: non-integer exponent needs positive constant term");
    std::vector<double> d(nterms(a));
    double coef = 1.0;
    for (int k = 0; k < int(d.size()); ++k) {
        d[k] = coef * std::pow(a0, q - k);
        coef *= (q - k) / (k + 1);
    }
    return series_apply(a, d);
}

Jet pow(const Jet& a, int n) {
    if (n == 0) return Jet::constant(1.0, a.cap(), a.has_eps());
    if (n < 0) return pow(a, -n).reciprocal();
    Jet r = a;
    for (int k = 1; k < n; ++k) r = r * a;
    return r;
}

Jet compose(const Jet& p, const std::array<Jet, 4>& args) {
    const int cap = std::min({args[0].cap(), args[1].cap(), args[2].cap(), args[3].cap()});
    // powers of the arguments up to the polynomial degree
    std::array<std::vector<Jet>, 4> pw;
    for (int a = 0; a < 4; ++a) {
        pw[a].push_back(Jet::constant(1.0, cap));
        for (int k = 1; k <= p.cap(); ++k) pw[a].push_back(pw[a][k - 1] * args[a]);
    }
    Jet acc = Jet::constant(0.0, cap);
    Jet acc_eps = Jet::constant(0.0, cap);
    const auto& monos = jet_tables::monomials();
    const int n = p.ncoef();
    for (int i = 0; i < n; ++i) {
        const auto& m = monos[i];
        auto term_of = [&](double c) {
            Jet t = Jet::constant(c, cap);
            for (int a = 0; a < 4; ++a)
                if (m[a]) t = t * pw[a][m[a]];
            return t;
        };
        if (p.c_[i] != 0.0) acc += term_of(p.c_[i]);
        if (p.has_eps() && p.c_[n + i] != 0.0) acc_eps += term_of(p.c_[n + i]);
    }
    if (p.has_eps()) return Jet::perturbed(acc, acc_eps);
    return acc;
}

} // namespace qg
