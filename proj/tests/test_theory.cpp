#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "minsvd/errors.hpp"
#include "minsvd/rng.hpp"
#include "minsvd/theory.hpp"

using namespace minsvd;

namespace {

// independent oracle: minimize max_j |1 - t*lam_j| by ternary search on t.
// The objective is a max of convex functions of t, hence convex.
double gamma_search_oracle(const Vector& lams) {
    double lmin = lams[0];
    for (double l : lams) lmin = std::min(lmin, l);
    auto f = [&](double t) {
        double worst = 0.0;
        for (double l : lams) worst = std::max(worst, std::fabs(1.0 - t * l));
        return worst;
    };
    double lo = 0.0, hi = 2.0 / lmin;
    for (int it = 0; it < 200; ++it) {
        double m1 = lo + (hi - lo) / 3.0;
        double m2 = hi - (hi - lo) / 3.0;
        if (f(m1) <= f(m2))
            hi = m2;
        else
            lo = m1;
    }
    return f(0.5 * (lo + hi));
}

// independent oracle: count doublings of q^2 until 2 q^{2k} <= eps
int iteration_count_oracle(double q, double eps) {
    double val = 2.0;
    int k = 0;
    while (val > eps) {
        val *= q * q;
        ++k;
    }
    return k;
}

} // namespace

TEST_CASE("zero distortion rate is pure gap contraction") {
    RateParameters r = predicted_rate(0.0, 1.0);
    CHECK(r.q == 0.5);
    CHECK(r.c == 0.0);
    CHECK(r.gamma == 0.0);
    CHECK(r.hypothesis_ok);
}

TEST_CASE("reference point eta 0.1 gap 1") {
    RateParameters r = predicted_rate(0.1, 1.0);
    CHECK(r.q == doctest::Approx(0.55).epsilon(1e-15));
    CHECK(r.c == doctest::Approx(2.0 / 7.0).epsilon(1e-15));
    CHECK(r.hypothesis_ok); // 0.1 < 1/3
}

TEST_CASE("clamped regime eta one sixth") {
    RateParameters r = predicted_rate(1.0 / 6.0, 1.0);
    CHECK(r.q == doctest::Approx(7.0 / 12.0).epsilon(1e-15));
    CHECK(r.q <= 1.0 - 1.0 / 6.0);
    RateParameters wide = predicted_rate(1.0 / 6.0, 3.0);
    CHECK(wide.q == doctest::Approx(0.375).epsilon(1e-15));
}

TEST_CASE("prefactor is undefined once the hypothesis fails") {
    RateParameters r = predicted_rate(0.4, 1.0); // 0.4 > 1/3
    CHECK(!r.hypothesis_ok);
    CHECK(std::isnan(r.c));
    // exactly at equality counts as violation
    RateParameters edge = predicted_rate(1.0 / 3.0, 1.0);
    CHECK(!edge.hypothesis_ok);
    CHECK(std::isnan(edge.c));
}

TEST_CASE("rate monotonicity in gap and eta") {
    for (double eta : {0.0, 0.05, 0.2, 0.6}) {
        double prev = 2.0;
        for (double gap : {0.1, 0.5, 1.0, 2.0, 8.0}) {
            double q = predicted_rate(eta, gap).q;
            CHECK(q < prev);
            CHECK(q < 1.0);
            prev = q;
        }
    }
    for (double gap : {0.1, 1.0, 4.0}) {
        double prev = -1.0;
        for (double eta : {0.0, 0.1, 0.3, 0.7, 0.95}) {
            double q = predicted_rate(eta, gap).q;
            CHECK(q > prev);
            prev = q;
        }
    }
}

TEST_CASE("rate domain errors") {
    CHECK_THROWS_AS(predicted_rate(-0.1, 1.0), NumericalError);
    CHECK_THROWS_AS(predicted_rate(1.0, 1.0), NumericalError);
    CHECK_THROWS_AS(predicted_rate(0.1, 0.0), NumericalError);
    CHECK_THROWS_AS(predicted_rate(0.1, -2.0), NumericalError);
}

TEST_CASE("gamma closed form") {
    CHECK(gamma_from_spectrum({1.0, 1.0}) == 0.0);
    CHECK(gamma_from_spectrum({1.0, 3.0}) == 0.5);
    CHECK(gamma_from_spectrum({2.0}) == 0.0);
    CHECK_THROWS_AS(gamma_from_spectrum({}), DimensionError);
    CHECK_THROWS_AS(gamma_from_spectrum({1.0, 0.0}), NumericalError);
    CHECK_THROWS_AS(gamma_from_spectrum({1.0, -3.0}), NumericalError);
}

TEST_CASE("gamma equals the search oracle on random spectra") {
    CHECK(gamma_search_oracle({1.0, 3.0}) == doctest::Approx(0.5).epsilon(1e-9));
    SplitMix64 rng(2024);
    for (int t = 0; t < 50; ++t) {
        Vector lams(1 + t % 7);
        for (double& l : lams) l = 0.05 + 3.0 * rng.next_unit();
        CHECK(gamma_from_spectrum(lams) ==
              doctest::Approx(gamma_search_oracle(lams)).epsilon(1e-6));
    }
}

TEST_CASE("distortion window endpoints give gamma equal to eta") {
    for (double eta : {0.05, 0.3, 0.8}) {
        Vector lams = {1.0 / (1.0 + eta), 1.0 / (1.0 - eta)};
        CHECK(gamma_from_spectrum(lams) == doctest::Approx(eta).epsilon(1e-14));
        CHECK(gamma_search_oracle(lams) == doctest::Approx(eta).epsilon(1e-6));
    }
}

TEST_CASE("angle bounds at the floor and a reference point") {
    AngleBounds zero = angle_bounds(1.0, 1.0, 2.0);
    CHECK(zero.sin_bound == 0.0);
    CHECK(zero.tan_bound == 0.0);
    AngleBounds b = angle_bounds(1.25, 1.0, std::sqrt(2.0));
    CHECK(b.sin_bound == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(b.tan_bound == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("sin bound never exceeds tan bound") {
    SplitMix64 rng(77);
    for (int t = 0; t < 200; ++t) {
        double sn = 0.1 + rng.next_unit();
        double snm1 = sn * (1.0 + 0.01 + rng.next_unit());
        double av2 = sn * sn + (snm1 * snm1 - sn * sn) * 0.999 * rng.next_unit();
        AngleBounds b = angle_bounds(av2, sn, snm1);
        CHECK(b.sin_bound <= b.tan_bound + 1e-15);
    }
}

TEST_CASE("angle bounds reject out-of-window inputs") {
    CHECK_THROWS_AS(angle_bounds(0.9, 1.0, 2.0), NumericalError);
    CHECK_THROWS_AS(angle_bounds(4.0, 1.0, 2.0), NumericalError);
    CHECK_THROWS_AS(angle_bounds(4.1, 1.0, 2.0), NumericalError);
}

TEST_CASE("iteration estimate reference values") {
    // gap 1 in the min(gap/3, 1/6) regime: q = 7/12
    CHECK(iteration_estimate(1.0 / 6.0, 1.0, 1e-6) == 14);
    CHECK(iteration_count_oracle(7.0 / 12.0, 1e-6) == 14);
    CHECK(iteration_estimate(1.0 / 6.0, 1.0, 2.0) == 0);
    CHECK(iteration_estimate(1.0 / 6.0, 1.0, 24.0) == 0);
}

TEST_CASE("iteration estimate matches the counting oracle across regimes") {
    for (double gap : {0.2, 0.5, 1.0, 2.0, 6.0}) {
        double eta = std::min(gap / 3.0, 1.0 / 6.0);
        double q = predicted_rate(eta, gap).q;
        for (double eps : {23.9, 2.0, 0.3, 1e-2, 1e-6, 1e-12}) {
            CHECK(iteration_estimate(eta, gap, eps) == iteration_count_oracle(q, eps));
        }
    }
}

TEST_CASE("iteration estimate domain errors") {
    CHECK_THROWS_AS(iteration_estimate(1.0 / 6.0, 1.0, 0.0), NumericalError);
    CHECK_THROWS_AS(iteration_estimate(1.0 / 6.0, 1.0, 25.0), NumericalError);
    CHECK_THROWS_AS(iteration_estimate(1.0 / 6.0, 1.0, -1.0), NumericalError);
    // hypothesis violated: eta too large for the gap
    CHECK_THROWS_AS(iteration_estimate(0.5, 1.0, 1e-3), NumericalError);
}
