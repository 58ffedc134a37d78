#include "minsvd/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "minsvd/errors.hpp"
#include "minsvd/operator.hpp"
#include "minsvd/svd.hpp"

namespace minsvd {

namespace {

void require_samples(const ComplexVector& z, const ComplexVector& f) {
    if (z.size() != f.size())
        throw DimensionError("rational: sample point and value counts differ");
    if (z.empty()) throw DimensionError("rational: empty sample set");
}

void require_shape(const BarycentricRational& r) {
    if (r.support.empty())
        throw DimensionError("rational: empty support set");
    if (r.support.size() != r.value.size() || r.support.size() != r.weight.size())
        throw DimensionError("rational: support, value, and weight lengths differ");
}

bool all_weights_zero(const ComplexVector& w) {
    for (const Complex& c : w)
        if (c != Complex(0.0, 0.0)) return false;
    return true;
}

// Smallest right singular vector of a complex matrix via its real block form.
// The bottom singular pair of the block form is two-dimensional (every value
// is doubled), and any vector in that plane folds back to the same rational
// up to a global complex scale, so the last column is always a valid pick.
ComplexVector min_right_vector(const ComplexMatrix& a) {
    RealifiedOperator real = realify(a);
    SvdResult svd = dense_svd(real.block, false);
    return fold_complex(svd.v.col_copy(svd.v.cols() - 1));
}

}  // namespace

Complex eval_barycentric(const BarycentricRational& r, Complex z) {
    require_shape(r);
    if (all_weights_zero(r.weight))
        throw NumericalError("rational: all barycentric weights are zero");
    Complex num(0.0, 0.0);
    Complex den(0.0, 0.0);
    for (std::size_t j = 0; j < r.support.size(); ++j) {
        if (z == r.support[j]) {
            // exact hit: interpolation when the weight participates, else the
            // term vanishes in the limit and the point is an ordinary one
            if (r.weight[j] != Complex(0.0, 0.0)) return r.value[j];
            continue;
        }
        Complex c = r.weight[j] / (z - r.support[j]);
        num += c * r.value[j];
        den += c;
    }
    return num / den;
}

double max_error(const BarycentricRational& r, const ComplexVector& z,
                 const ComplexVector& f) {
    require_samples(z, f);
    double worst = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        worst = std::max(worst, std::abs(f[i] - eval_barycentric(r, z[i])));
    return worst;
}

RealifiedOperator realify(const ComplexMatrix& a) {
    const index_t m = a.rows();
    const index_t n = a.cols();
    RealifiedOperator out;
    out.complex_rows = m;
    out.complex_cols = n;
    out.block = DenseMatrix(2 * m, 2 * n);
    for (index_t j = 0; j < n; ++j) {
        for (index_t i = 0; i < m; ++i) {
            const double re = a(i, j).real();
            const double im = a(i, j).imag();
            out.block(i, j) = re;
            out.block(i + m, j) = im;
            out.block(i, j + n) = -im;
            out.block(i + m, j + n) = re;
        }
    }
    return out;
}

ComplexVector fold_complex(const Vector& xy) {
    if (xy.size() % 2 != 0)
        throw DimensionError("rational: folded vector must have even length");
    const std::size_t n = xy.size() / 2;
    ComplexVector w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = Complex(xy[i], xy[n + i]);
    return w;
}

BarycentricRational aaa_fit(const ComplexVector& z, const ComplexVector& f,
                            index_t max_degree, double tol) {
    require_samples(z, f);
    const index_t m = static_cast<index_t>(z.size());
    if (max_degree < 0) throw NumericalError("aaa: negative degree");
    if (!(tol >= 0.0)) throw NumericalError("aaa: tolerance must be nonnegative");
    if (m < max_degree + 1)
        throw DimensionError("aaa: need at least degree + 1 sample points");
    for (index_t i = 0; i < m; ++i)
        for (index_t j = i + 1; j < m; ++j)
            if (z[i] == z[j])
                throw NumericalError("aaa: sample points must be distinct");

    double fscale = 0.0;
    Complex mean(0.0, 0.0);
    for (const Complex& v : f) {
        fscale = std::max(fscale, std::abs(v));
        mean += v;
    }
    mean /= static_cast<double>(m);

    std::vector<char> used(m, 0);
    ComplexVector resid(f.size());
    for (index_t i = 0; i < m; ++i) resid[i] = f[i] - mean;

    BarycentricRational r;
    for (index_t k = 0; k <= max_degree; ++k) {
        index_t pick = -1;
        double worst = -1.0;
        for (index_t i = 0; i < m; ++i) {
            if (used[i]) continue;
            const double a = std::abs(resid[i]);
            if (a > worst) {
                worst = a;
                pick = i;
            }
        }
        if (pick < 0) throw NumericalError("aaa: no sample points left to promote");
        used[pick] = 1;
        r.support.push_back(z[pick]);
        r.value.push_back(f[pick]);

        const index_t nsupp = k + 1;
        const index_t nrows = m - nsupp;
        if (nrows == 0)
            throw NumericalError("aaa: every sample point became a support point");
        if (nrows < nsupp) {
            // fewer residual rows than weights: the nullspace problem is
            // underdetermined, so keep the last fully determined fit
            r.support.pop_back();
            r.value.pop_back();
            break;
        }

        ComplexMatrix loewner(nrows, nsupp);
        std::vector<index_t> row_index(nrows);
        index_t row = 0;
        for (index_t i = 0; i < m; ++i) {
            if (used[i]) continue;
            row_index[row] = i;
            for (index_t c = 0; c < nsupp; ++c)
                loewner(row, c) = (f[i] - r.value[c]) / (z[i] - r.support[c]);
            ++row;
        }
        r.weight = min_right_vector(loewner);

        double err = 0.0;
        for (index_t rr = 0; rr < nrows; ++rr) {
            const index_t i = row_index[rr];
            Complex num(0.0, 0.0);
            Complex den(0.0, 0.0);
            for (index_t c = 0; c < nsupp; ++c) {
                Complex cauchy = r.weight[c] / (z[i] - r.support[c]);
                num += cauchy * r.value[c];
                den += cauchy;
            }
            resid[i] = f[i] - num / den;
            err = std::max(err, std::abs(resid[i]));
        }
        if (err <= tol * fscale) break;
    }
    return r;
}

namespace {

Vector weighted_min_right(const ComplexMatrix& loewner, const Vector& lambda,
                          const LawsonOptions& options, index_t step) {
    ComplexMatrix wa(loewner.rows(), loewner.cols());
    for (index_t j = 0; j < loewner.cols(); ++j)
        for (index_t i = 0; i < loewner.rows(); ++i)
            wa(i, j) = std::sqrt(lambda[i]) * loewner(i, j);
    RealifiedOperator real = realify(wa);
    // the iterative backend needs a tall block with at least three columns
    // per block vector; tiny problems fall back to the dense factorization
    const bool iterative = options.backend == NullspaceBackend::rlobpcg &&
                           real.block.cols() >= 6 &&
                           real.block.rows() >= real.block.cols();
    if (iterative) {
        DenseOperator op(real.block);
        SolverOptions sopts = options.solver;
        sopts.block_size = 2;
        try {
            SolveResult sol = rlobpcg_block(op, sopts);
            return sol.v.col_copy(0);
        } catch (const Error& err) {
            char buf[192];
            std::snprintf(buf, sizeof(buf), "lawson step %lld: %s",
                          static_cast<long long>(step), err.what());
            throw NumericalError(buf);
        }
    }
    SvdResult svd = dense_svd(real.block, false);
    return svd.v.col_copy(svd.v.cols() - 1);
}

}  // namespace

LawsonResult lawson_refine(const BarycentricRational& r, const ComplexVector& z,
                           const ComplexVector& f, const LawsonOptions& options) {
    require_samples(z, f);
    require_shape(r);
    if (all_weights_zero(r.weight))
        throw NumericalError("lawson: input weights are all zero");
    if (options.steps < 1) throw NumericalError("lawson: need at least one step");

    const index_t m = static_cast<index_t>(z.size());
    const index_t nsupp = static_cast<index_t>(r.support.size());
    std::vector<index_t> rows;
    rows.reserve(m);
    for (index_t i = 0; i < m; ++i) {
        bool is_support = false;
        for (index_t c = 0; c < nsupp && !is_support; ++c)
            is_support = z[i] == r.support[c];
        if (!is_support) rows.push_back(i);
    }
    const index_t p = static_cast<index_t>(rows.size());
    if (p == 0) throw NumericalError("lawson: every sample point is a support point");

    // support points and values stay fixed; only the weights move, so the
    // unweighted Loewner matrix can be assembled once
    ComplexMatrix loewner(p, nsupp);
    for (index_t c = 0; c < nsupp; ++c)
        for (index_t i = 0; i < p; ++i)
            loewner(i, c) = (f[rows[i]] - r.value[c]) / (z[rows[i]] - r.support[c]);

    LawsonResult out;
    out.initial_error = max_error(r, z, f);
    out.best_error = out.initial_error;
    ComplexVector best_w = r.weight;
    BarycentricRational work = r;
    Vector lambda(p, 1.0 / static_cast<double>(p));
    Vector err_at(p);

    for (index_t step = 0; step < options.steps; ++step) {
        work.weight = fold_complex(weighted_min_right(loewner, lambda, options, step));

        double err = 0.0;
        for (index_t i = 0; i < p; ++i) {
            err_at[i] = std::abs(f[rows[i]] - eval_barycentric(work, z[rows[i]]));
            err = std::max(err, err_at[i]);
        }
        out.step_errors.push_back(err);
        if (err < out.best_error) {
            out.best_error = err;
            best_w = work.weight;
        }

        double sum = 0.0;
        for (index_t i = 0; i < p; ++i) {
            lambda[i] = std::max(lambda[i] * err_at[i], 1e-300);
            sum += lambda[i];
        }
        for (index_t i = 0; i < p; ++i) lambda[i] /= sum;
    }

    out.refined = BarycentricRational{r.support, r.value, best_w};
    out.final_lawson_weights = lambda;
    return out;
}

LawsonResult lawson_refine(const BarycentricRational& r, const ComplexVector& z,
                           const ComplexVector& f, index_t steps,
                           NullspaceBackend backend) {
    LawsonOptions options;
    options.steps = steps;
    options.backend = backend;
    return lawson_refine(r, z, f, options);
}

ComplexVector twin_circle_points(index_t per_circle) {
    if (per_circle < 1)
        throw DimensionError("rational: need at least one point per circle");
    const double tau = 6.28318530717958647692;
    ComplexVector z;
    z.reserve(static_cast<std::size_t>(2 * per_circle));
    for (index_t c = 0; c < 2; ++c) {
        const Complex center(c == 0 ? 1.03 : -1.03, 0.0);
        for (index_t i = 0; i < per_circle; ++i) {
            const double t =
                tau * static_cast<double>(i) / static_cast<double>(per_circle);
            z.push_back(center + Complex(std::cos(t), std::sin(t)));
        }
    }
    return z;
}

Complex signed_identity(Complex z) {
    if (z.real() > 0.0) return z;
    if (z.real() < 0.0) return -z;
    return Complex(0.0, 0.0);
}

}  // namespace minsvd
