#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "minsvd/errors.hpp"
#include "minsvd/rational.hpp"
#include "minsvd/rng.hpp"
#include "minsvd/svd.hpp"

using namespace minsvd;

namespace {

ComplexVector circle_grid(index_t count, double radius, Complex center = {0.0, 0.0}) {
    ComplexVector z;
    z.reserve(static_cast<std::size_t>(count));
    const double tau = 6.28318530717958647692;
    for (index_t i = 0; i < count; ++i) {
        const double t = tau * static_cast<double>(i) / static_cast<double>(count);
        z.push_back(center + radius * Complex(std::cos(t), std::sin(t)));
    }
    return z;
}

ComplexVector chebyshev_grid(index_t count) {
    ComplexVector z;
    z.reserve(static_cast<std::size_t>(count));
    const double pi = 3.14159265358979323846;
    for (index_t i = 0; i < count; ++i)
        z.push_back(Complex(std::cos(pi * static_cast<double>(i) /
                                     static_cast<double>(count - 1)),
                            0.0));
    return z;
}

ComplexVector apply_abs(const ComplexVector& z) {
    ComplexVector f;
    f.reserve(z.size());
    for (const Complex& v : z) f.push_back(Complex(std::fabs(v.real()), 0.0));
    return f;
}

// Interpolating a rational g = n/d of matching type at k support points
// reproduces g exactly when the weights are w_j = d(z_j) / prod_{l != j}
// (z_j - z_l); this classical identity provides an analytic reference.
BarycentricRational exact_reciprocal(const ComplexVector& support, Complex pole) {
    BarycentricRational r;
    r.support = support;
    for (const Complex& zj : support) r.value.push_back(1.0 / (zj - pole));
    for (std::size_t j = 0; j < support.size(); ++j) {
        Complex denom(1.0, 0.0);
        for (std::size_t l = 0; l < support.size(); ++l)
            if (l != j) denom *= support[j] - support[l];
        r.weight.push_back((support[j] - pole) / denom);
    }
    return r;
}

ComplexMatrix random_complex(index_t m, index_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    ComplexMatrix a(m, n);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < m; ++i)
            a(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    return a;
}

struct JacobiSpectrum {
    std::vector<double> values;  // descending
    double final_off = 0.0;
    double scale = 0.0;
};

// Two-sided Jacobi eigenvalue iteration for a Hermitian matrix, kept in
// complex arithmetic throughout so it is independent of the realified path.
JacobiSpectrum hermitian_jacobi(ComplexMatrix g) {
    const index_t n = g.rows();
    JacobiSpectrum out;
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < n; ++i)
            out.scale = std::max(out.scale, std::abs(g(i, j)));
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (index_t p = 0; p < n; ++p)
            for (index_t q = p + 1; q < n; ++q)
                off = std::max(off, std::abs(g(p, q)));
        out.final_off = off;
        if (off <= 1e-14 * out.scale) break;
        for (index_t p = 0; p < n; ++p) {
            for (index_t q = p + 1; q < n; ++q) {
                const double apq = std::abs(g(p, q));
                if (apq <= 1e-300) continue;
                const double phi = std::arg(g(p, q));
                const Complex ephi(std::cos(phi), std::sin(phi));
                const double app = g(p, p).real();
                const double aqq = g(q, q).real();
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // unitary plane transform diag(1, conj(ephi)) * real rotation
                for (index_t i = 0; i < n; ++i) {
                    const Complex gp = g(i, p);
                    const Complex gq = g(i, q);
                    g(i, p) = c * gp - s * std::conj(ephi) * gq;
                    g(i, q) = s * gp + c * std::conj(ephi) * gq;
                }
                for (index_t j = 0; j < n; ++j) {
                    const Complex gp = g(p, j);
                    const Complex gq = g(q, j);
                    g(p, j) = c * gp - s * ephi * gq;
                    g(q, j) = s * gp + c * ephi * gq;
                }
            }
        }
    }
    for (index_t i = 0; i < n; ++i) out.values.push_back(g(i, i).real());
    std::sort(out.values.begin(), out.values.end(), std::greater<double>());
    return out;
}

ComplexMatrix gram(const ComplexMatrix& c) {
    ComplexMatrix g(c.cols(), c.cols());
    for (index_t j = 0; j < c.cols(); ++j)
        for (index_t i = 0; i < c.cols(); ++i) {
            Complex sum(0.0, 0.0);
            for (index_t k = 0; k < c.rows(); ++k)
                sum += std::conj(c(k, i)) * c(k, j);
            g(i, j) = sum;
        }
    return g;
}

}  // namespace

TEST_CASE("barycentric evaluation fundamentals") {
    BarycentricRational r;
    r.support = {Complex(0.7, 0.2)};
    r.value = {Complex(5.0, -1.0)};
    r.weight = {Complex(1.0, 0.0)};

    SUBCASE("a support point returns its stored value exactly") {
        Complex got = eval_barycentric(r, r.support[0]);
        CHECK(got.real() == 5.0);
        CHECK(got.imag() == -1.0);
    }
    SUBCASE("a single support point gives a constant function") {
        for (Complex z : {Complex(3.0, 0.0), Complex(-2.0, 7.0), Complex(0.0, 0.1)})
            CHECK(std::abs(eval_barycentric(r, z) - r.value[0]) <= 1e-14 * 6.0);
    }
    SUBCASE("a zero-weight support point is skipped, not interpolated") {
        BarycentricRational two = r;
        two.support.push_back(Complex(1.5, 0.0));
        two.value.push_back(Complex(100.0, 0.0));
        two.weight.push_back(Complex(0.0, 0.0));
        Complex at_dead_point = eval_barycentric(two, Complex(1.5, 0.0));
        CHECK(std::abs(at_dead_point - r.value[0]) <= 1e-13 * 6.0);
    }
    SUBCASE("degenerate inputs are rejected") {
        BarycentricRational dead = r;
        dead.weight[0] = Complex(0.0, 0.0);
        CHECK_THROWS_AS(eval_barycentric(dead, Complex(0.0, 0.0)), NumericalError);
        BarycentricRational empty;
        CHECK_THROWS_AS(eval_barycentric(empty, Complex(0.0, 0.0)), DimensionError);
        BarycentricRational ragged = r;
        ragged.value.push_back(Complex(1.0, 0.0));
        CHECK_THROWS_AS(eval_barycentric(ragged, Complex(0.0, 0.0)), DimensionError);
    }
}

TEST_CASE("three support points reproduce a simple pole exactly") {
    const Complex pole(2.0, 0.0);
    ComplexVector support = {Complex(0.5, 0.0), Complex(1.2, 0.4), Complex(-0.8, -0.3)};
    BarycentricRational r = exact_reciprocal(support, pole);
    ComplexVector grid = circle_grid(100, 1.5);
    for (const Complex& z : grid) {
        const Complex want = 1.0 / (z - pole);
        CHECK(std::abs(eval_barycentric(r, z) - want) <= 1e-12);
    }
    // interpolation at the support points themselves is bitwise
    for (std::size_t j = 0; j < support.size(); ++j) {
        Complex got = eval_barycentric(r, support[j]);
        CHECK(got.real() == r.value[j].real());
        CHECK(got.imag() == r.value[j].imag());
    }
}

TEST_CASE("greedy fit handles the two degenerate-family cases") {
    SUBCASE("constant data stops at degree zero") {
        ComplexVector z = circle_grid(20, 2.0);
        ComplexVector f(z.size(), Complex(3.0, -1.0));
        BarycentricRational r = aaa_fit(z, f, 5, 1e-13);
        CHECK(r.degree() == 0);
        CHECK(max_error(r, z, f) <= 1e-14 * std::abs(f[0]));
    }
    SUBCASE("the identity is captured exactly at degree one") {
        ComplexVector z = circle_grid(60, 2.0);
        BarycentricRational r = aaa_fit(z, z, 5, 1e-13);
        CHECK(r.degree() == 1);
        CHECK(max_error(r, z, z) <= 1e-13);
    }
}

TEST_CASE("the absolute value sits in its accuracy corridor at degree ten") {
    ComplexVector z = chebyshev_grid(500);
    ComplexVector f = apply_abs(z);
    BarycentricRational r = aaa_fit(z, f, 10, 0.0);
    CHECK(r.degree() == 10);
    const double err = max_error(r, z, f);
    MESSAGE("greedy fit of |x|, degree 10, 500 points: max error ", err);
    CHECK(err < 1e-2);
    CHECK(err > 1e-6);
}

TEST_CASE("fit validation") {
    ComplexVector z = circle_grid(10, 1.0);
    ComplexVector f(z.size(), Complex(1.0, 0.0));
    SUBCASE("sample and value counts must match") {
        ComplexVector fshort(f.begin(), f.end() - 1);
        CHECK_THROWS_AS(aaa_fit(z, fshort, 2, 0.0), DimensionError);
    }
    SUBCASE("enough samples for the requested degree") {
        CHECK_THROWS_AS(aaa_fit(z, f, 10, 0.0), DimensionError);
    }
    SUBCASE("duplicate sample points are rejected") {
        ComplexVector zdup = z;
        zdup[3] = zdup[7];
        CHECK_THROWS_AS(aaa_fit(zdup, f, 2, 0.0), NumericalError);
    }
    SUBCASE("promoting every sample is a degeneracy error") {
        ComplexVector z2 = {Complex(0.0, 0.0), Complex(1.0, 0.0)};
        ComplexVector f2 = {Complex(0.0, 0.0), Complex(1.0, 0.0)};
        CHECK_THROWS_AS(aaa_fit(z2, f2, 1, 0.0), NumericalError);
    }
    SUBCASE("folding an odd-length vector is rejected") {
        CHECK_THROWS_AS(fold_complex(Vector(3, 1.0)), DimensionError);
    }
}

TEST_CASE("the real block form carries each singular value twice") {
    SUBCASE("block layout on a one-by-one matrix") {
        ComplexMatrix one(1, 1);
        one(0, 0) = Complex(2.0, 3.0);
        RealifiedOperator real = realify(one);
        CHECK(real.block.rows() == 2);
        CHECK(real.block.cols() == 2);
        CHECK(real.block(0, 0) == 2.0);
        CHECK(real.block(1, 0) == 3.0);
        CHECK(real.block(0, 1) == -3.0);
        CHECK(real.block(1, 1) == 2.0);
    }

    SUBCASE("matrix-vector products agree with complex arithmetic") {
        ComplexMatrix c = random_complex(5, 3, 21);
        RealifiedOperator real = realify(c);
        SplitMix64 rng(22);
        ComplexVector w(3);
        Vector xy(6);
        for (index_t i = 0; i < 3; ++i) {
            w[i] = Complex(rng.next_gaussian(), rng.next_gaussian());
            xy[i] = w[i].real();
            xy[3 + i] = w[i].imag();
        }
        Vector out = dense_matvec(real.block, xy);
        for (index_t i = 0; i < 5; ++i) {
            Complex want(0.0, 0.0);
            for (index_t j = 0; j < 3; ++j) want += c(i, j) * w[j];
            CHECK(out[i] == doctest::Approx(want.real()).epsilon(1e-13));
            CHECK(out[5 + i] == doctest::Approx(want.imag()).epsilon(1e-13));
        }
    }

    for (auto [m, n, seed] : {std::tuple<index_t, index_t, std::uint64_t>{5, 3, 31},
                              {6, 6, 32},
                              {4, 2, 33}}) {
        CAPTURE(m);
        CAPTURE(n);
        ComplexMatrix c = random_complex(m, n, seed);
        JacobiSpectrum ref = hermitian_jacobi(gram(c));
        REQUIRE(ref.final_off <= 1e-13 * ref.scale);
        SvdResult svd = dense_svd(realify(c).block, false);
        REQUIRE(svd.sigma.size() == static_cast<std::size_t>(2 * n));
        for (index_t i = 0; i < n; ++i) {
            const double want = std::sqrt(std::max(ref.values[i], 0.0));
            CHECK(svd.sigma[2 * i] == doctest::Approx(want).epsilon(1e-12));
            CHECK(svd.sigma[2 * i + 1] == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("an exact rational input is a fixed point of the reweighting") {
    const Complex pole(2.0, 0.0);
    ComplexVector support = {Complex(0.5, 0.0), Complex(1.2, 0.4), Complex(-0.8, -0.3)};
    BarycentricRational r = exact_reciprocal(support, pole);
    ComplexVector z = circle_grid(40, 1.0);
    ComplexVector f;
    for (const Complex& zi : z) f.push_back(eval_barycentric(r, zi));

    LawsonOptions options;
    options.steps = 5;
    LawsonResult res = lawson_refine(r, z, f, options);

    CHECK(res.initial_error == 0.0);
    CHECK(res.best_error == 0.0);
    REQUIRE(res.refined.weight.size() == r.weight.size());
    for (std::size_t j = 0; j < r.weight.size(); ++j) {
        CHECK(res.refined.weight[j].real() == r.weight[j].real());
        CHECK(res.refined.weight[j].imag() == r.weight[j].imag());
    }
    for (double e : res.step_errors) CHECK(e <= 1e-12);
    double sum = 0.0;
    for (double w : res.final_lawson_weights) {
        CHECK(w > 0.0);
        sum += w;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reweighting drives the absolute-value error toward minimax") {
    ComplexVector z = chebyshev_grid(500);
    ComplexVector f = apply_abs(z);
    BarycentricRational r = aaa_fit(z, f, 10, 0.0);
    LawsonOptions options;
    options.steps = 100;
    LawsonResult res = lawson_refine(r, z, f, options);
    MESSAGE("plain fit error ", res.initial_error, ", refined ", res.best_error);
    CHECK(res.best_error <= 0.5 * res.initial_error);
    // best-so-far tracking means refinement can never lose to its input
    CHECK(res.best_error <= res.initial_error);
    double sum = 0.0;
    for (double w : res.final_lawson_weights) {
        CHECK(w > 0.0);
        sum += w;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("both nullspace backends land on the same refined error") {
    ComplexVector z = chebyshev_grid(2000);
    ComplexVector f = apply_abs(z);
    BarycentricRational r = aaa_fit(z, f, 10, 0.0);

    LawsonOptions dense;
    dense.steps = 20;
    dense.backend = NullspaceBackend::dense_svd;
    LawsonResult via_dense = lawson_refine(r, z, f, dense);

    LawsonOptions iterative = dense;
    iterative.backend = NullspaceBackend::rlobpcg;
    LawsonResult via_solver = lawson_refine(r, z, f, iterative);

    MESSAGE("dense ", via_dense.best_error, " vs solver ", via_solver.best_error);
    const double scale = std::max(via_dense.best_error, via_solver.best_error);
    CHECK(std::fabs(via_dense.best_error - via_solver.best_error) <= 1e-8 * scale);
}

TEST_CASE("the twin-circle benchmark is wired end to end") {
    ComplexVector z = twin_circle_points(80);
    REQUIRE(z.size() == 160);
    ComplexVector f;
    for (const Complex& zi : z) {
        CHECK(std::fabs(zi.real()) >= 0.03 - 1e-12);
        f.push_back(signed_identity(zi));
        CHECK(std::abs(f.back() - (zi.real() > 0.0 ? zi : -zi)) == 0.0);
    }
    BarycentricRational r = aaa_fit(z, f, 6, 0.0);
    LawsonResult res = lawson_refine(r, z, f, 15, NullspaceBackend::dense_svd);
    MESSAGE("twin circles: fit ", res.initial_error, ", refined ", res.best_error);
    CHECK(res.initial_error < 1.0);
    CHECK(res.initial_error > 1e-12);
    CHECK(res.best_error <= res.initial_error);
}

TEST_CASE("reweighting validation") {
    ComplexVector z = circle_grid(12, 1.0);
    ComplexVector f;
    for (const Complex& zi : z) f.push_back(1.0 / (zi - Complex(2.0, 0.0)));
    BarycentricRational r = aaa_fit(z, f, 2, 1e-13);

    LawsonOptions zero_steps;
    zero_steps.steps = 0;
    CHECK_THROWS_AS(lawson_refine(r, z, f, zero_steps), NumericalError);

    BarycentricRational dead = r;
    for (Complex& w : dead.weight) w = Complex(0.0, 0.0);
    CHECK_THROWS_AS(lawson_refine(dead, z, f, 3, NullspaceBackend::dense_svd),
                    NumericalError);

    // a sample set consisting solely of support points leaves no rows
    CHECK_THROWS_AS(lawson_refine(r, r.support, r.value, 3, NullspaceBackend::dense_svd),
                    NumericalError);
}
