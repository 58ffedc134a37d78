#pragma once

#include <memory>

#include "minsvd/csr.hpp"
#include "minsvd/dense.hpp"

namespace minsvd {

/// A real linear map with products against itself and its transpose. The
/// iterative solvers only touch matrices through this interface, so the
/// backing storage can be dense, sparse, or an implicit composition that is
/// never materialized. Implementations must be deterministic: the same input
/// always produces the same output bits.
class LinearOperator {
public:
    virtual ~LinearOperator() = default;

    virtual index_t rows() const = 0;
    virtual index_t cols() const = 0;
    /// Stored nonzeros for cost models; dense-equivalent when implicit.
    virtual index_t nnz() const = 0;

    /// y = A x
    virtual Vector apply(const Vector& x) const = 0;
    /// x = A^T y
    virtual Vector apply_adjoint(const Vector& y) const = 0;

    /// Column-by-column block products; overridden only for instrumentation.
    virtual DenseMatrix apply_block(const DenseMatrix& x) const;
    virtual DenseMatrix apply_adjoint_block(const DenseMatrix& y) const;

    /// Euclidean norms of the columns. The default densifies; concrete
    /// operators override with exact direct formulas.
    virtual Vector column_norms() const;

    /// Materialize. Intended for small problems and test oracles.
    virtual DenseMatrix to_dense() const = 0;
};

class DenseOperator final : public LinearOperator {
public:
    explicit DenseOperator(DenseMatrix a);

    index_t rows() const override { return a_.rows(); }
    index_t cols() const override { return a_.cols(); }
    index_t nnz() const override { return a_.rows() * a_.cols(); }
    Vector apply(const Vector& x) const override { return dense_matvec(a_, x); }
    Vector apply_adjoint(const Vector& y) const override { return dense_matvec_adjoint(a_, y); }
    Vector column_norms() const override;
    DenseMatrix to_dense() const override { return a_; }
    const DenseMatrix& matrix() const { return a_; }

private:
    DenseMatrix a_;
};

class CsrOperator final : public LinearOperator {
public:
    explicit CsrOperator(CsrMatrix a);

    index_t rows() const override { return a_.rows; }
    index_t cols() const override { return a_.cols; }
    index_t nnz() const override { return a_.nnz(); }
    Vector apply(const Vector& x) const override { return a_.matvec(x); }
    Vector apply_adjoint(const Vector& y) const override { return a_.matvec_adjoint(y); }
    Vector column_norms() const override;
    DenseMatrix to_dense() const override { return a_.to_dense(); }
    const CsrMatrix& matrix() const { return a_; }

private:
    CsrMatrix a_;
};

/// A = U diag(sigma) V^T held in factored form. Products are evaluated
/// factor by factor, so the full matrix is never assembled; to_dense exists
/// for small-problem oracles only.
class FactoredSvdOperator final : public LinearOperator {
public:
    FactoredSvdOperator(DenseMatrix u, Vector sigma, DenseMatrix v);

    index_t rows() const override { return u_.rows(); }
    index_t cols() const override { return v_.rows(); }
    index_t nnz() const override { return u_.rows() * v_.rows(); }
    Vector apply(const Vector& x) const override;
    Vector apply_adjoint(const Vector& y) const override;
    Vector column_norms() const override;
    DenseMatrix to_dense() const override;

    const DenseMatrix& u() const { return u_; }
    const Vector& sigma() const { return sigma_; }
    const DenseMatrix& v() const { return v_; }

private:
    DenseMatrix u_; // m x n, orthonormal columns
    Vector sigma_;  // length n
    DenseMatrix v_; // n x n, orthonormal
};

/// Wraps another operator and counts forward and adjoint products. Used by
/// tests that pin down the per-iteration product budget of the solvers.
class CountingOperator final : public LinearOperator {
public:
    explicit CountingOperator(const LinearOperator& inner) : inner_(inner) {}

    index_t rows() const override { return inner_.rows(); }
    index_t cols() const override { return inner_.cols(); }
    index_t nnz() const override { return inner_.nnz(); }
    Vector apply(const Vector& x) const override {
        ++applies_;
        return inner_.apply(x);
    }
    Vector apply_adjoint(const Vector& y) const override {
        ++adjoints_;
        return inner_.apply_adjoint(y);
    }
    Vector column_norms() const override { return inner_.column_norms(); }
    DenseMatrix to_dense() const override { return inner_.to_dense(); }

    long applies() const { return applies_; }
    long adjoints() const { return adjoints_; }
    const LinearOperator& inner() const { return inner_; }

private:
    const LinearOperator& inner_;
    mutable long applies_ = 0;
    mutable long adjoints_ = 0;
};

} // namespace minsvd
