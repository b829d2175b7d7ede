#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quadgrav/tensor.hpp"

namespace qg {

// Couplings (alpha, beta) of the quadratic action; derived quantities are
// recomputed on demand, never stored.
struct CouplingPair {
    double alpha = 0.0;
    double beta = 0.0;
    double chi() const { return 2.0 * alpha + beta; }
    bool conformal(double tol = 1e-14) const { return std::abs(3.0 * alpha + beta) <= tol; }
    double discriminant() const {
        return 100.0 * alpha * alpha + 84.0 * alpha * beta + 17.0 * beta * beta;
    }
};

struct MetricSpec {
    enum class Id {
        Minkowski,
        Schwarzschild,      // m
        SdS,                // m, lambda
        ReissnerNordstrom,  // r0, rq
        Fsmk,               // m, lambda, mu
        G0Linear,           // lambda, mu   (m = 0 family, N = 1 + 2 mu r - lambda r^2/3)
        G0Neg,              // lambda, mu   (m = 0 family, h = -lambda r^2/3 - mu r - 1)
        Cylindrical,        // product model metric -cos^2 x dT^2 + dx^2 + g_{S2}
        DeSitterFlat,       // lambda       (flat slicing, -dt^2 + e^{2ct} delta)
        Conformal,          // base spec rescaled by a named conformal factor
        SchwarzschildForm,  // m, lambda, c1, c2 and exponent pair (f, g)
        CustomAnalytic,     // named closed-form builder
    };

    Id id = Id::Minkowski;
    std::map<std::string, double> params;
    std::string custom_name;              // CustomAnalytic builder / Conformal factor name
    std::shared_ptr<MetricSpec> base;     // Conformal only

    double param(const std::string& key) const;
    double param_or(const std::string& key, double dflt) const;

    static MetricSpec minkowski();
    static MetricSpec schwarzschild(double m);
    static MetricSpec sds(double m, double lambda);
    static MetricSpec reissner_nordstrom(double r0, double rq);
    static MetricSpec fsmk(double m, double lambda, double mu);
    static MetricSpec g0_linear(double lambda, double mu);
    static MetricSpec g0_neg(double lambda, double mu);
    static MetricSpec cylindrical();
    static MetricSpec de_sitter_flat(double lambda);
    static MetricSpec conformal(MetricSpec base, const std::string& omega, double a, double sigma);
    static MetricSpec schwarzschild_form(double m, double lambda, double c1, double c2,
                                         double f, double g);
    static MetricSpec custom(const std::string& name);

    // resolve "sds", "custom:polywave", ... with parameters from a key=value map
    static MetricSpec by_name(const std::string& name,
                              const std::map<std::string, double>& params);

    Chart natural_chart() const;
    std::string describe() const;
};

// Evaluate the metric as degree-`cap` jets at p. Checks the admissibility of
// the point (static forms need their lapse-squared positive) and that the
// constant block has Lorentzian signature (-,+,+,+).
Mat4 eval_metric_jets(const MetricSpec& spec, const ChartPoint& p, int cap = kDefaultCap);
TensorJet eval_metric(const MetricSpec& spec, const ChartPoint& p, int cap = kDefaultCap);

bool point_admissible(const MetricSpec& spec, const ChartPoint& p);

// seeded sample points inside the admissible domain (r in [rlo, rhi] for
// spherical charts, |x| <= rhi for cartesian ones)
std::vector<ChartPoint> sample_points(const MetricSpec& spec, int n, unsigned seed,
                                      double rlo = 2.0, double rhi = 12.0);

// signature check helper: eigenvalue signs of the constant block
bool lorentzian_signature(const Mat4& g);

// names of the available custom_analytic builders
std::vector<std::string> custom_metric_names();

} // namespace qg
