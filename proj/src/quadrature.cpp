#include "holo/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

namespace holo {

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels) {
    using rule = boost::math::quadrature::gauss<double, 20>;
    const auto& x = rule::abscissa();
    const auto& w = rule::weights();
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        const double half = 0.5 * h;
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            s += x[i] == 0.0 ? w[i] * f(mid) : w[i] * (f(mid + half * x[i]) + f(mid - half * x[i]));
        sum += half * s;
    }
    return sum;
}

QuadratureResult integrate_piecewise(const std::function<double(double)>& f, const std::vector<double>& breaks,
                                     int panels_per_segment) {
    require(breaks.size() >= 2, "integrate_piecewise: need at least two breakpoints");
    require(panels_per_segment >= 1, "integrate_piecewise: panels must be >= 1");
    double coarse = 0.0;
    double fine = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] <= breaks[i]) continue;
        coarse += gauss_legendre(f, breaks[i], breaks[i + 1], panels_per_segment);
        fine += gauss_legendre(f, breaks[i], breaks[i + 1], 2 * panels_per_segment);
    }
    return {fine, std::abs(fine - coarse)};
}

}  // namespace holo
