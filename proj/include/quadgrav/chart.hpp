#pragma once

#include <array>
#include <cmath>
#include <string>

#include "quadgrav/errors.hpp"

namespace qg {

enum class Chart {
    Cartesian,              // (t, x, y, z)
    SchwarzschildSpherical, // (t, r, theta, phi)
    Cylindrical,            // (T, x, theta, phi) of the product model metric
};

std::string chart_name(Chart c);

struct ChartPoint {
    Chart chart = Chart::Cartesian;
    std::array<double, 4> x{0, 0, 0, 0};

    static ChartPoint cartesian(double t, double x1, double x2, double x3) {
        return {Chart::Cartesian, {t, x1, x2, x3}};
    }
    static ChartPoint spherical(double t, double r, double th, double ph) {
        return {Chart::SchwarzschildSpherical, {t, r, th, ph}};
    }

    double radius() const {
        if (chart == Chart::Cartesian)
            return std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
        return x[1];
    }

    // spherical charts need r > 0 and sin(theta) != 0
    void require_regular() const {
        if (chart == Chart::Cartesian) return;
        if (chart == Chart::SchwarzschildSpherical && x[1] <= 0.0)
            throw OutsideDomain("spherical chart requires r > 0");
        if (std::abs(std::sin(x[2])) < 1e-12)
            throw SingularTransform("chart singular: sin(theta) = 0");
    }
};

} // namespace qg
