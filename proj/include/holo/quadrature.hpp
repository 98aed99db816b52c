// quadrature.hpp — composite Gauss–Legendre rules split at breakpoints

#pragma once

#include "holo/linalg.hpp"

#include <functional>
#include <vector>

namespace holo {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // |Q(2n) − Q(n)|
};

/// 20-point Gauss–Legendre on `panels` equal panels of [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels);

/// Sums panel rules over each [breaks[i], breaks[i+1]]; error from panel doubling.
QuadratureResult integrate_piecewise(const std::function<double(double)>& f, const std::vector<double>& breaks,
                                     int panels_per_segment);

}  // namespace holo
