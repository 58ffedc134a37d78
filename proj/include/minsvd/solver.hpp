#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "minsvd/dense.hpp"
#include "minsvd/operator.hpp"
#include "minsvd/precond.hpp"
#include "minsvd/rng.hpp"

namespace minsvd {

/// Which operator multiplies the residual block before the Rayleigh-Ritz
/// expansion. `randomized` is the sketch-based preconditioner P P^T built
/// from an SVD of the sketched matrix; `diagonal` uses inverse squared
/// column norms; `none` passes the residual through unchanged. Every kind
/// still draws its starting block and its stopping scale (the largest
/// sketched singular value) from the same sketch-and-solve step, so runs
/// with different kinds differ only in the search direction.
enum class PrecondKind { none, diagonal, randomized };

struct SolverOptions {
    /// Relative stopping tolerance; iterate until the residual norm drops
    /// below sigma1_estimate^2 * tol (and stagnation agrees). Negative
    /// means "use default_tolerance(cols)". Must lie in [0, 1).
    double tol = -1.0;

    /// Iteration cap. Negative means 200 for single-vector runs and 100
    /// for block runs.
    int max_iter = -1;

    /// Stopping conditions are evaluated when the loop counter is a
    /// multiple of this.
    int check_every = 5;

    /// Slack factor in both stagnation clauses.
    double stagnation_factor = 1.1;

    /// Number of singular triplets sought (trial space is 3x this wide).
    index_t block_size = 1;

    /// Seed for the sketch and for any replacement directions drawn when
    /// a search column degenerates.
    std::uint64_t seed = 0;

    /// Sketch row count. Negative selects the default policy: use
    /// min(4n, m) rows, except that when m <= 4n the sketch is skipped
    /// entirely and the preconditioner is built from a direct SVD of A.
    /// An explicit value always sketches, may exceed m, and must be a
    /// multiple of zeta.
    index_t sketch_dim = -1;

    /// Nonzeros per sketch column.
    int zeta = 4;

    /// When false, stop on the residual tolerance alone (no stagnation
    /// clauses). Useful when chasing fixed accuracy rather than the
    /// roundoff floor.
    bool use_stagnation = true;

    /// When false, the wall_ms column of the record is written as 0 so
    /// repeated runs produce byte-identical output.
    bool record_timing = true;

    /// Re-multiply the current iterate every 25 iterations and compare
    /// with the cached product. Costs extra operator applications (they
    /// are tallied separately and never enter the record); a mismatch
    /// beyond 1e-10 * sigma1_estimate throws NumericalError. The check
    /// never alters the iteration itself.
    bool verify_cached_products = false;

    /// Keep per-iteration copies of the trial basis and of the target
    /// block (for tests and diagnostics).
    bool store_iterates = false;
};

/// Default residual tolerance: 2 sqrt(n) times the double-precision
/// machine epsilon, the level the residual of a fully converged triplet
/// can actually reach.
inline double default_tolerance(index_t n) {
    return 2.0 * std::sqrt(static_cast<double>(n)) * std::numeric_limits<double>::epsilon();
}

/// Reference answer for error columns in the convergence record.
struct GroundTruth {
    double sigma_min = 0.0;  ///< exact smallest singular value
    Vector v_min;            ///< exact right singular vector for it
};

struct RecordRow {
    int iter = 0;           ///< 0 is the state right after initialization
    long matvecs_a = 0;     ///< cumulative forward products
    long matvecs_at = 0;    ///< cumulative adjoint products
    double wall_ms = 0.0;   ///< elapsed wall time when the row was taken
    double theta = 0.0;     ///< smallest Ritz value
    double resid = 0.0;     ///< residual norm (max over block columns)
    double relerr = -1.0;   ///< |theta - sigma_min| / sigma_min, -1 if unknown
    double sin_angle = -1.0;///< sine of angle to the true vector, -1 if unknown
};

struct ConvergenceRecord {
    std::vector<RecordRow> rows;
    bool has_truth = false;

    /// CSV with header iter,matvecs_A,matvecs_At,wall_ms,theta,resid_norm,
    /// singval_relerr,sin_angle. Error columns are left empty when no
    /// ground truth was supplied.
    std::string to_csv() const;
};

enum class SolveStatus { converged, max_iter_reached };

const char* to_string(SolveStatus s);

struct SolveResult {
    DenseMatrix v;             ///< n x b, columns ordered like sigma
    Vector sigma;              ///< Ritz values, ascending from the smallest
    SolveStatus status = SolveStatus::max_iter_reached;
    ConvergenceRecord record;

    Preconditioner precond;    ///< the sketch-and-solve object the run used
    double sigma_max_estimate = 0.0;  ///< largest sketched singular value
    bool sketch_skipped = false;      ///< true when P came from a direct SVD
    index_t sketch_dim = 0;           ///< rows of the sketch (0 if skipped)
    int zeta = 0;
    long verify_count = 0;            ///< operator products spent on cache checks
    double max_cache_drift = 0.0;     ///< worst cache discrepancy observed
    index_t degenerate_replacements = 0;  ///< search columns replaced by random draws

    std::vector<DenseMatrix> trail_t;  ///< per-iteration trial bases (store_iterates)
    std::vector<DenseMatrix> trail_v;  ///< target block after init and each iteration

    index_t iterations() const { return static_cast<index_t>(record.rows.size()) - 1; }
};

/// Stopping logic, separated so it can be tested on synthetic histories.
/// `resid_hist` and `theta_hist` hold one entry per record row (so index
/// i+1 is the freshest value when the loop counter is i); `theta_hist`
/// tracks the largest Ritz value of the target block. Stagnation clauses
/// are false until enough history exists (residual clause needs row i-4,
/// the progress clause row i-9).
struct StopDecision {
    bool tol_ok = false;
    bool resid_stalled = false;
    bool progress_stalled = false;
    bool stop = false;
};

StopDecision check_convergence(const std::vector<double>& resid_hist,
                               const std::vector<double>& theta_hist, int i,
                               double sigma1_estimate, double tol, double factor,
                               bool use_stagnation);

/// Two-pass classical Gram-Schmidt of the columns of `w` against `basis`
/// and against each other, normalizing on the second pass. A column whose
/// remainder is below rows(w) times machine epsilon times the largest
/// original column norm is declared degenerate and replaced by a seeded
/// random direction (orthogonalized the same way). Returns the number of
/// replaced columns.
index_t cgs2(DenseMatrix& w, const DenseMatrix& basis, SplitMix64& rng);

/// One step of preconditioned steepest descent from a unit vector v with
/// cached product av: minimize ||A y|| over unit vectors in
/// span{v, P P^T r}. Falls back to returning v unchanged when the
/// preconditioned residual is (numerically) parallel to v.
struct PsdStep {
    Vector v;
    Vector av;
    double theta = 0.0;
};

PsdStep psd_step(const LinearOperator& a, const Preconditioner& p, const Vector& v,
                 const Vector& av);

/// Shared engine: block LOBPCG on A^T A with the selected preconditioner
/// kind, sketch-and-solve initialization, min-energy Rayleigh-Ritz via an
/// SVD of the tall product block, and the two-clause stagnation stop.
SolveResult lobpcg_solve(const LinearOperator& a, PrecondKind kind,
                         const SolverOptions& opts, const GroundTruth* truth = nullptr);

/// Smallest singular triplet (block size forced to 1).
SolveResult rlobpcg_single(const LinearOperator& a, const SolverOptions& opts,
                           const GroundTruth* truth = nullptr);

/// Smallest opts.block_size triplets with the randomized preconditioner.
SolveResult rlobpcg_block(const LinearOperator& a, const SolverOptions& opts,
                          const GroundTruth* truth = nullptr);

}  // namespace minsvd
