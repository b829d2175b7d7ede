#include "quadgrav/metrics.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace qg {

Mat4 zero_mat4(int cap, bool eps) {
    Mat4 m;
    for (auto& row : m)
        for (auto& j : row) j = Jet::constant(0.0, cap, eps);
    return m;
}

Vec4 zero_vec4(int cap, bool eps) {
    Vec4 v;
    for (auto& j : v) j = Jet::constant(0.0, cap, eps);
    return v;
}

Mat4 add(const Mat4& a, const Mat4& b) {
    Mat4 r = a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] += b[i][j];
    return r;
}

Mat4 scale(const Mat4& a, double s) {
    Mat4 r = a;
    for (auto& row : r)
        for (auto& j : row) j *= s;
    return r;
}

Mat4 eps_part(const Mat4& a) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[i][j].eps_part();
    return r;
}

double max_abs_value(const Mat4& a) {
    double m = 0.0;
    for (const auto& row : a)
        for (const auto& j : row) m = std::max(m, std::abs(j.value()));
    return m;
}

TensorJet TensorJet::zeros(int p, int q, Chart chart, int cap, bool eps) {
    TensorJet t;
    t.contravariant = p;
    t.covariant = q;
    t.chart = chart;
    t.comp.assign(std::size_t(1) << (2 * (p + q)), Jet::constant(0.0, cap, eps));
    return t;
}

Jet& TensorJet::at(std::initializer_list<int> idx) {
    std::size_t k = 0;
    for (int i : idx) k = 4 * k + std::size_t(i);
    return comp[k];
}

const Jet& TensorJet::at(std::initializer_list<int> idx) const {
    std::size_t k = 0;
    for (int i : idx) k = 4 * k + std::size_t(i);
    return comp[k];
}

TensorJet TensorJet::from_mat(const Mat4& m, int p, int q, Chart chart) {
    TensorJet t;
    t.contravariant = p;
    t.covariant = q;
    t.chart = chart;
    t.comp.reserve(16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t.comp.push_back(m[i][j]);
    return t;
}

Mat4 TensorJet::to_mat() const {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = comp[std::size_t(4 * i + j)];
    return m;
}

double MetricSpec::param(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw BadParams("missing metric parameter: " + key);
    return it->second;
}

double MetricSpec::param_or(const std::string& key, double dflt) const {
    auto it = params.find(key);
    return it == params.end() ? dflt : it->second;
}

MetricSpec MetricSpec::minkowski() { return {Id::Minkowski, {}, {}, nullptr}; }
MetricSpec MetricSpec::schwarzschild(double m) { return {Id::Schwarzschild, {{"m", m}}, {}, nullptr}; }
MetricSpec MetricSpec::sds(double m, double lambda) {
    return {Id::SdS, {{"m", m}, {"lambda", lambda}}, {}, nullptr};
}
MetricSpec MetricSpec::reissner_nordstrom(double r0, double rq) {
    return {Id::ReissnerNordstrom, {{"r0", r0}, {"rq", rq}}, {}, nullptr};
}
MetricSpec MetricSpec::fsmk(double m, double lambda, double mu) {
    return {Id::Fsmk, {{"m", m}, {"lambda", lambda}, {"mu", mu}}, {}, nullptr};
}
MetricSpec MetricSpec::g0_linear(double lambda, double mu) {
    return {Id::G0Linear, {{"lambda", lambda}, {"mu", mu}}, {}, nullptr};
}
MetricSpec MetricSpec::g0_neg(double lambda, double mu) {
    return {Id::G0Neg, {{"lambda", lambda}, {"mu", mu}}, {}, nullptr};
}
MetricSpec MetricSpec::cylindrical() { return {Id::Cylindrical, {}, {}, nullptr}; }
MetricSpec MetricSpec::de_sitter_flat(double lambda) {
    return {Id::DeSitterFlat, {{"lambda", lambda}}, {}, nullptr};
}
MetricSpec MetricSpec::conformal(MetricSpec base, const std::string& omega, double a, double sigma) {
    MetricSpec s{Id::Conformal, {{"a", a}, {"sigma", sigma}}, omega, nullptr};
    s.base = std::make_shared<MetricSpec>(std::move(base));
    return s;
}
MetricSpec MetricSpec::schwarzschild_form(double m, double lambda, double c1, double c2,
                                          double f, double g) {
    return {Id::SchwarzschildForm,
            {{"m", m}, {"lambda", lambda}, {"c1", c1}, {"c2", c2}, {"f", f}, {"g", g}},
            {},
            nullptr};
}
MetricSpec MetricSpec::custom(const std::string& name) {
    return {Id::CustomAnalytic, {}, name, nullptr};
}

Chart MetricSpec::natural_chart() const {
    switch (id) {
        case Id::Minkowski:
        case Id::DeSitterFlat:
        case Id::CustomAnalytic: return Chart::Cartesian;
        case Id::Cylindrical: return Chart::Cylindrical;
        case Id::Conformal: return base->natural_chart();
        default: return Chart::SchwarzschildSpherical;
    }
}

std::string MetricSpec::describe() const {
    std::ostringstream os;
    switch (id) {
        case Id::Minkowski: os << "minkowski"; break;
        case Id::Schwarzschild: os << "schwarzschild"; break;
        case Id::SdS: os << "sds"; break;
        case Id::ReissnerNordstrom: os << "reissner_nordstrom"; break;
        case Id::Fsmk: os << "fsmk"; break;
        case Id::G0Linear: os << "g0_linear"; break;
        case Id::G0Neg: os << "g0_neg"; break;
        case Id::Cylindrical: os << "cylindrical"; break;
        case Id::DeSitterFlat: os << "de_sitter_flat"; break;
        case Id::Conformal: os << "conformal(" << base->describe() << "," << custom_name << ")"; break;
        case Id::SchwarzschildForm: os << "schwarzschild_form"; break;
        case Id::CustomAnalytic: os << "custom:" << custom_name; break;
    }
    for (const auto& [k, v] : params) os << " " << k << "=" << v;
    return os.str();
}

namespace {

// static spherically symmetric metric with g_tt = -F, g_rr = 1/F
Mat4 static_spherical(const Jet& F, const Jet& r, const Jet& th, int cap) {
    Mat4 g = zero_mat4(cap);
    g[0][0] = -F;
    g[1][1] = F.reciprocal();
    Jet r2 = r * r;
    g[2][2] = r2;
    Jet s = sin(th);
    g[3][3] = r2 * s * s;
    return g;
}

Jet radius_jet(const ChartPoint& p, int cap) {
    // |x| as a jet in the cartesian chart
    Jet x = Jet::variable(p.x[1], 1, cap);
    Jet y = Jet::variable(p.x[2], 2, cap);
    Jet z = Jet::variable(p.x[3], 3, cap);
    return sqrt(x * x + y * y + z * z);
}

using Builder = std::function<Mat4(const ChartPoint&, int)>;

// closed-form analytic catalog; everything here is jet-evaluable
const std::map<std::string, Builder>& custom_builders() {
    static const std::map<std::string, Builder> tab = {
        {"polywave",
         [](const ChartPoint& p, int cap) {
             // time-dependent, analytic, not a solution of anything
             Jet t = Jet::variable(p.x[0], 0, cap);
             Jet x = Jet::variable(p.x[1], 1, cap);
             Jet y = Jet::variable(p.x[2], 2, cap);
             Jet z = Jet::variable(p.x[3], 3, cap);
             Jet rho2 = x * x + y * y + z * z;
             Jet damp = exp(rho2 * (-1.0 / 8.0));
             Mat4 g = zero_mat4(cap);
             g[0][0] = -1.0 - 0.3 * damp - 0.05 * sin(t) * damp;
             g[1][1] = 1.0 + 0.2 * damp;
             g[2][2] = 1.0 + 0.1 * cos(x) * damp;
             g[3][3] = 1.0 + 0.15 * damp;
             g[0][1] = g[1][0] = 0.05 * cos(t) * x / (1.0 + rho2);
             g[1][2] = g[2][1] = 0.08 * x * y / (4.0 + rho2);
             g[2][3] = g[3][2] = 0.06 * sin(y) / (2.0 + rho2);
             return g;
         }},
        {"bumpy_static",
         [](const ChartPoint& p, int cap) {
             // static, anisotropic, neither Einstein nor Bach-flat
             Jet x = Jet::variable(p.x[1], 1, cap);
             Jet y = Jet::variable(p.x[2], 2, cap);
             Jet z = Jet::variable(p.x[3], 3, cap);
             Jet rho2 = x * x + y * y + z * z;
             Mat4 g = zero_mat4(cap);
             g[0][0] = -1.0 - 0.3 * exp(rho2 * (-0.1));
             g[1][1] = 1.0 + 0.2 * (x * x) / (1.0 + rho2);
             g[2][2] = 1.0 + 0.1 * exp((x * x + 2.0 * (y * y) + 3.0 * (z * z)) * (-1.0 / 12.0));
             g[3][3] = 1.0 + 0.12 / (1.0 + rho2);
             g[1][2] = g[2][1] = 0.05 * x * y / (2.0 + rho2);
             return g;
         }},
        {"wavepack",
         [](const ChartPoint& p, int cap) {
             // gently curved wave-like metric used by conservation sweeps
             Jet t = Jet::variable(p.x[0], 0, cap);
             Jet x = Jet::variable(p.x[1], 1, cap);
             Jet y = Jet::variable(p.x[2], 2, cap);
             Jet z = Jet::variable(p.x[3], 3, cap);
             Jet rho2 = x * x + y * y + z * z;
             Jet env = 1.0 / (1.0 + 0.25 * rho2);
             Mat4 g = zero_mat4(cap);
             g[0][0] = -1.0 + 0.1 * sin(t - x) * env;
             g[1][1] = 1.0 + 0.1 * sin(t - x) * env;
             g[2][2] = 1.0 + 0.05 * cos(t + y) * env;
             g[3][3] = 1.0 - 0.05 * cos(t + y) * env;
             g[0][2] = g[2][0] = 0.04 * cos(t) * y * env;
             return g;
         }},
    };
    return tab;
}

Jet conformal_factor(const std::string& name, const MetricSpec& s, const ChartPoint& p, int cap) {
    Jet r = (p.chart == Chart::Cartesian) ? radius_jet(p, cap) : Jet::variable(p.x[1], 1, cap);
    if (name == "one_plus_a_over_r") return 1.0 + s.param("a") / r;
    if (name == "one_plus_s_r_sigma") return 1.0 + s.param("a") * pow(r, -s.param("sigma"));
    throw BadParams("unknown conformal factor: " + name);
}

} // namespace

bool lorentzian_signature(const Mat4& g) {
    // Jacobi eigenvalue iteration on the constant block
    double a[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a[i][j] = g[i][j].value();
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        int p = 0, q = 1;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (std::abs(a[i][j]) > off) { off = std::abs(a[i][j]); p = i; q = j; }
        if (off < 1e-14) break;
        double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
        double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < 4; ++k) {
            double akp = a[k][p], akq = a[k][q];
            a[k][p] = c * akp - s * akq;
            a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 4; ++k) {
            double apk = a[p][k], aqk = a[q][k];
            a[p][k] = c * apk - s * aqk;
            a[q][k] = s * apk + c * aqk;
        }
    }
    int neg = 0, pos = 0;
    for (int i = 0; i < 4; ++i) (a[i][i] < 0 ? neg : pos)++;
    return neg == 1 && pos == 3;
}

Mat4 eval_metric_jets(const MetricSpec& spec, const ChartPoint& p, int cap) {
    using Id = MetricSpec::Id;
    p.require_regular();
    Mat4 g;
    switch (spec.id) {
        case Id::Minkowski: {
            g = zero_mat4(cap);
            if (p.chart == Chart::Cartesian) {
                g[0][0] = Jet::constant(-1.0, cap);
                for (int i = 1; i < 4; ++i) g[i][i] = Jet::constant(1.0, cap);
            } else if (p.chart == Chart::SchwarzschildSpherical) {
                Jet r = Jet::variable(p.x[1], 1, cap);
                Jet th = Jet::variable(p.x[2], 2, cap);
                g = static_spherical(Jet::constant(1.0, cap), r, th, cap);
            } else {
                throw BadParams("minkowski: unsupported chart");
            }
            break;
        }
        case Id::Schwarzschild:
        case Id::SdS: {
            if (p.chart != Chart::SchwarzschildSpherical)
                throw BadParams("metric defined in the spherical chart");
            double m = spec.param("m");
            double lam = spec.id == Id::SdS ? spec.param("lambda") : 0.0;
            Jet r = Jet::variable(p.x[1], 1, cap);
            Jet th = Jet::variable(p.x[2], 2, cap);
            Jet F = 1.0 - m / r - (lam / 3.0) * (r * r);
            if (F.value() <= 0.0)
                throw OutsideDomain("lapse-squared not positive at r = " + std::to_string(p.x[1]));
            g = static_spherical(F, r, th, cap);
            break;
        }
        case Id::ReissnerNordstrom: {
            if (p.chart != Chart::SchwarzschildSpherical)
                throw BadParams("metric defined in the spherical chart");
            Jet r = Jet::variable(p.x[1], 1, cap);
            Jet th = Jet::variable(p.x[2], 2, cap);
            Jet F = 1.0 - spec.param("r0") / r - spec.param("rq") / (r * r);
            if (F.value() <= 0.0) throw OutsideDomain("lapse-squared not positive");
            g = static_spherical(F, r, th, cap);
            break;
        }
        case Id::Fsmk: {
            if (p.chart != Chart::SchwarzschildSpherical)
                throw BadParams("metric defined in the spherical chart");
            double m = spec.param("m"), lam = spec.param("lambda"), mu = spec.param("mu");
            Jet r = Jet::variable(p.x[1], 1, cap);
            Jet th = Jet::variable(p.x[2], 2, cap);
            Jet F = 1.0 - 3.0 * m * mu - m / r - mu * (3.0 * m * mu - 2.0) * r -
                    (lam / 3.0) * (r * r);
            if (F.value() <= 0.0) throw OutsideDomain("f(r) not positive");
            g = static_spherical(F, r, th, cap);
            break;
        }
        case Id::G0Linear: {
            double lam = spec.param("lambda"), mu = spec.param("mu");
            Jet r = Jet::variable(p.x[1], 1, cap);
            Jet th = Jet::variable(p.x[2], 2, cap);
            Jet F = 1.0 + 2.0 * mu * r - (lam / 3.0) * (r * r);
            if (F.value() <= 0.0) throw OutsideDomain("N(r) not positive");
            g = static_spherical(F, r, th, cap);
            break;
        }
        case Id::G0Neg: {
            double lam = spec.param("lambda"), mu = spec.param("mu");
            Jet r = Jet::variable(p.x[1], 1, cap);
            Jet th = Jet::variable(p.x[2], 2, cap);
            Jet F = -1.0 - mu * r - (lam / 3.0) * (r * r);
            if (F.value() <= 0.0) throw OutsideDomain("h(r) not positive");
            g = static_spherical(F, r, th, cap);
            break;
        }
        case Id::Cylindrical: {
            if (p.chart != Chart::Cylindrical) throw BadParams("cylindrical chart required");
            Jet x = Jet::variable(p.x[1], 1, cap);
            Jet th = Jet::variable(p.x[2], 2, cap);
            g = zero_mat4(cap);
            Jet cx = cos(x);
            g[0][0] = -(cx * cx);
            g[1][1] = Jet::constant(1.0, cap);
            g[2][2] = Jet::constant(1.0, cap);
            Jet s = sin(th);
            g[3][3] = s * s;
            if (std::abs(std::cos(p.x[1])) < 1e-12) throw OutsideDomain("cos(x) = 0");
            break;
        }
        case Id::DeSitterFlat: {
            if (p.chart != Chart::Cartesian) throw BadParams("cartesian chart required");
            double lam = spec.param("lambda");
            if (lam < 0) throw BadParams("de_sitter_flat needs lambda >= 0");
            double c = std::sqrt(lam / 3.0);
            Jet t = Jet::variable(p.x[0], 0, cap);
            Jet a = exp(2.0 * c * t);
            g = zero_mat4(cap);
            g[0][0] = Jet::constant(-1.0, cap);
            for (int i = 1; i < 4; ++i) g[i][i] = a;
            break;
        }
        case Id::Conformal: {
            Mat4 base = eval_metric_jets(*spec.base, p, cap);
            Jet om = conformal_factor(spec.custom_name, spec, p, cap);
            Jet om2 = om * om;
            g = zero_mat4(cap);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) g[i][j] = om2 * base[i][j];
            break;
        }
        case Id::SchwarzschildForm: {
            if (p.chart != Chart::SchwarzschildSpherical)
                throw BadParams("metric defined in the spherical chart");
            Jet r = Jet::variable(p.x[1], 1, cap);
            Jet th = Jet::variable(p.x[2], 2, cap);
            Jet M = spec.param("m") + (spec.param("lambda") / 3.0) * pow(r, 3);
            double c1 = spec.param("c1"), c2 = spec.param("c2");
            if (spec.params.count("omega")) {
                // complex exponent branch: Re/Im combination at real part 3/2
                double w = spec.param("omega");
                Jet lr = log(r);
                Jet r32 = pow(r, 1.5);
                M += r32 * (c1 * cos(w * lr) + c2 * sin(w * lr));
            } else {
                if (c1 != 0.0) M += c1 * pow(r, spec.param("f"));
                if (c2 != 0.0) M += c2 * pow(r, spec.param("g"));
            }
            Jet F = 1.0 - M / r;
            if (F.value() <= 0.0) throw OutsideDomain("1 - M(r)/r not positive");
            g = static_spherical(F, r, th, cap);
            break;
        }
        case Id::CustomAnalytic: {
            if (p.chart != Chart::Cartesian) throw BadParams("cartesian chart required");
            auto it = custom_builders().find(spec.custom_name);
            if (it == custom_builders().end())
                throw BadParams("unknown custom metric: " + spec.custom_name);
            g = it->second(p, cap);
            break;
        }
    }
    if (!lorentzian_signature(g)) throw OutsideDomain("metric not Lorentzian at the point");
    return g;
}

TensorJet eval_metric(const MetricSpec& spec, const ChartPoint& p, int cap) {
    return TensorJet::from_mat(eval_metric_jets(spec, p, cap), 0, 2, p.chart);
}

bool point_admissible(const MetricSpec& spec, const ChartPoint& p) {
    try {
        (void)eval_metric_jets(spec, p, 1);
        return true;
    } catch (const Error&) {
        return false;
    }
}

std::vector<ChartPoint> sample_points(const MetricSpec& spec, int n, unsigned seed,
                                      double rlo, double rhi) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ur(rlo, rhi);
    std::uniform_real_distribution<double> uth(0.3, M_PI - 0.3);
    std::uniform_real_distribution<double> uph(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> u11(-1.0, 1.0);
    const Chart chart = spec.natural_chart();
    std::vector<ChartPoint> pts;
    int guard = 0;
    while (int(pts.size()) < n) {
        if (++guard > 1000 * n)
            throw OutsideDomain("could not sample admissible points for " + spec.describe());
        ChartPoint p;
        if (chart == Chart::Cartesian) {
            double r = ur(rng), th = uth(rng), ph = uph(rng);
            p = ChartPoint::cartesian(0.3 * u11(rng), r * std::sin(th) * std::cos(ph),
                                      r * std::sin(th) * std::sin(ph), r * std::cos(th));
        } else if (chart == Chart::Cylindrical) {
            p = {Chart::Cylindrical, {u11(rng), 1.2 * u11(rng), uth(rng), uph(rng)}};
        } else {
            p = ChartPoint::spherical(0.0, ur(rng), uth(rng), uph(rng));
        }
        if (point_admissible(spec, p)) pts.push_back(p);
    }
    return pts;
}

std::vector<std::string> custom_metric_names() {
    std::vector<std::string> names;
    for (const auto& [k, v] : custom_builders()) names.push_back(k);
    return names;
}

MetricSpec MetricSpec::by_name(const std::string& name,
                               const std::map<std::string, double>& params) {
    auto get = [&](const std::string& k, double dflt) {
        auto it = params.find(k);
        return it == params.end() ? dflt : it->second;
    };
    if (name.rfind("custom:", 0) == 0) return custom(name.substr(7));
    if (name == "minkowski") return minkowski();
    if (name == "schwarzschild") return schwarzschild(get("m", 1.0));
    if (name == "sds") return sds(get("m", 1.0), get("lambda", 0.1));
    if (name == "reissner_nordstrom") return reissner_nordstrom(get("r0", 1.0), get("rq", 0.5));
    if (name == "fsmk") return fsmk(get("m", 1.0), get("lambda", 0.0), get("mu", 0.2));
    if (name == "g0_linear") return g0_linear(get("lambda", 0.0), get("mu", 1.0));
    if (name == "g0_neg") return g0_neg(get("lambda", 0.0), get("mu", -0.5));
    if (name == "cylindrical") return cylindrical();
    if (name == "de_sitter_flat") return de_sitter_flat(get("lambda", 0.3));
    if (name == "schwarzschild_form")
        return schwarzschild_form(get("m", 1.0), get("lambda", 0.0), get("c1", 0.0),
                                  get("c2", 0.0), get("f", 4.0), get("g", -1.0));
    throw ConfigError("unknown metric name: " + name);
}

std::string chart_name(Chart c) {
    switch (c) {
        case Chart::Cartesian: return "cartesian";
        case Chart::SchwarzschildSpherical: return "schwarzschild_spherical";
        case Chart::Cylindrical: return "cylindrical";
    }
    return "?";
}

} // namespace qg
