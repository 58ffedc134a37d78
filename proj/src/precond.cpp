#include "minsvd/precond.hpp"

#include <cmath>
#include <limits>

#include "minsvd/errors.hpp"
#include "minsvd/svd.hpp"

namespace minsvd {

Preconditioner build_preconditioner(const DenseMatrix& sa) {
    const index_t n = sa.cols();
    if (n < 1) throw DimensionError("build_preconditioner: empty sketch");
    if (sa.rows() < n)
        throw DimensionError("build_preconditioner: sketch has fewer rows than columns");

    SvdResult svd = dense_svd(sa, false);

    Preconditioner p;
    p.vtilde = std::move(svd.v);
    p.sigma_tilde = std::move(svd.sigma);
    p.sigma_max_estimate = p.sigma_tilde[0];
    if (p.sigma_max_estimate == 0.0)
        throw NumericalError("build_preconditioner: sketched matrix is exactly zero");

    const double u = std::numeric_limits<double>::epsilon();
    const double floor = std::sqrt(static_cast<double>(n)) * u * p.sigma_max_estimate;
    for (index_t j = 0; j < n; ++j) {
        if (p.sigma_tilde[static_cast<std::size_t>(j)] < floor) {
            p.sigma_tilde[static_cast<std::size_t>(j)] = floor;
            p.floored = true;
            ++p.floor_count;
        }
    }
    return p;
}

Vector precond_apply(const Preconditioner& p, const Vector& r) {
    const index_t n = p.vtilde.cols();
    if (static_cast<index_t>(r.size()) != n)
        throw DimensionError("precond_apply: vector length does not match");
    Vector t = dense_matvec_adjoint(p.vtilde, r);
    for (index_t j = 0; j < n; ++j) {
        const double s = p.sigma_tilde[static_cast<std::size_t>(j)];
        t[static_cast<std::size_t>(j)] /= s * s;
    }
    return dense_matvec(p.vtilde, t);
}

DenseMatrix sketch_and_solve_init(const Preconditioner& p, index_t b) {
    const index_t n = p.vtilde.cols();
    if (b < 1 || b > n)
        throw DimensionError("sketch_and_solve_init: block size out of range");
    DenseMatrix v0(n, b);
    for (index_t j = 0; j < b; ++j) v0.set_col(j, p.vtilde.col_copy(n - b + j));
    return v0;
}

} // namespace minsvd
