#pragma once

#include "minsvd/dense.hpp"

namespace minsvd {

// Convergence-theory quantities for a preconditioned iteration whose
// preconditioned squared singular values lie in [1/(1+eta), 1/(1-eta)].
struct RateParameters {
    double eta = 0.0;
    double gap = 0.0;    // (sigma_{n-1}^2 - sigma_n^2) / sigma_n^2
    double gamma = 0.0;  // worst-case contraction parameter of the window, = eta
    double q = 0.0;      // per-iteration rate: eta + (1-eta)/(1+gap)
    double c = 0.0;      // prefactor 2 eta / ((1-eta) gap - 2 eta); NaN if undefined
    bool hypothesis_ok = false; // eta < gap/(2+gap), strictly
};

RateParameters predicted_rate(double eta, double gap);

// (lam_max - lam_min) / (lam_max + lam_min): the minimum over t > 0 of
// max_j |1 - t*lam_j| for a positive spectrum.
double gamma_from_spectrum(const Vector& lams);

struct AngleBounds {
    double sin_bound = 0.0;
    double tan_bound = 0.0;
};

// Bounds on the angle between a unit vector v with ||Av||^2 = av_norm_sq and
// the minimum right singular vector, given the two smallest singular values.
AngleBounds angle_bounds(double av_norm_sq, double sigma_n, double sigma_nm1);

// Smallest k >= 0 with 2 q^{2k} <= eps, q from predicted_rate(eta, gap).
// Requires eps in (0, 24] and the rate hypothesis to hold.
int iteration_estimate(double eta, double gap, double eps);

} // namespace minsvd
