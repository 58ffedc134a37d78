#include "minsvd/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "minsvd/errors.hpp"

namespace minsvd {

RateParameters predicted_rate(double eta, double gap) {
    if (!(eta >= 0.0 && eta < 1.0))
        throw NumericalError("predicted_rate: eta must lie in [0, 1)");
    if (!(gap > 0.0)) throw NumericalError("predicted_rate: gap must be positive");

    RateParameters r;
    r.eta = eta;
    r.gap = gap;
    r.gamma = eta;
    r.q = eta + (1.0 - eta) / (1.0 + gap);
    r.hypothesis_ok = eta < gap / (2.0 + gap);
    const double den = (1.0 - eta) * gap - 2.0 * eta;
    if (r.hypothesis_ok && den > 0.0)
        r.c = 2.0 * eta / den;
    else {
        r.c = std::numeric_limits<double>::quiet_NaN();
        r.hypothesis_ok = false;
    }
    return r;
}

double gamma_from_spectrum(const Vector& lams) {
    if (lams.empty()) throw DimensionError("gamma_from_spectrum: empty spectrum");
    double lo = lams[0], hi = lams[0];
    for (double l : lams) {
        if (!(l > 0.0)) throw NumericalError("gamma_from_spectrum: spectrum must be positive");
        lo = std::min(lo, l);
        hi = std::max(hi, l);
    }
    return (hi - lo) / (hi + lo);
}

AngleBounds angle_bounds(double av_norm_sq, double sigma_n, double sigma_nm1) {
    const double sn2 = sigma_n * sigma_n;
    const double snm12 = sigma_nm1 * sigma_nm1;
    if (!(av_norm_sq >= sn2) || !(av_norm_sq < snm12))
        throw NumericalError("angle_bounds: ||Av||^2 must lie in [sigma_n^2, sigma_{n-1}^2)");
    AngleBounds b;
    b.sin_bound = std::sqrt((av_norm_sq - sn2) / (snm12 - sn2));
    b.tan_bound = std::sqrt((av_norm_sq - sn2) / (snm12 - av_norm_sq));
    return b;
}

int iteration_estimate(double eta, double gap, double eps) {
    if (!(eps > 0.0 && eps <= 24.0))
        throw NumericalError("iteration_estimate: eps must lie in (0, 24]");
    RateParameters r = predicted_rate(eta, gap);
    if (!r.hypothesis_ok)
        throw NumericalError("iteration_estimate: eta is not below gap/(2+gap)");
    if (2.0 <= eps) return 0;
    // closed-form guess, then settle the boundary exactly
    const double q2 = r.q * r.q;
    int k = static_cast<int>(std::ceil(std::log(2.0 / eps) / -std::log(q2)));
    k = std::max(k - 2, 0);
    while (2.0 * std::pow(q2, k) > eps) ++k;
    return k;
}

} // namespace minsvd
