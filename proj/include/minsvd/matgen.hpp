#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "minsvd/dense.hpp"
#include "minsvd/operator.hpp"

namespace minsvd {

/// Families of test spectra. All of them are strictly positive and
/// nonincreasing; each fixes the difficulty of the smallest triplet in a
/// different way.
enum class SpectrumKind {
    easy,            ///< geometric 1 -> 0.1 over the first n-1 values, then 1e-7
    hard,            ///< geometric 1 -> 1e-10 over all n values
    gap_controlled,  ///< geometric 1 -> 1e-9 head, sigma_n = 1e-10, sigma_{n-1}
                     ///< placed so the relative squared gap hits a target
    cond_controlled, ///< geometric 1e-8 -> 1e-10 tail with sigma_1 = kappa * sigma_n
    clustered,       ///< sigma_i = exp(-ln(1e10) ((i-1)/(n-1))^a)
    explicit_list,   ///< caller-provided values
};

struct SpectrumSpec {
    SpectrumKind kind = SpectrumKind::easy;
    index_t n = 0;
    double gap = 0.05;            ///< gap_controlled target for (s_{n-1}^2 - s_n^2)/s_n^2
    double kappa = 1e10;          ///< cond_controlled target for sigma_1/sigma_n
    double cluster_a = 1.0 / 256; ///< clustered exponent
    Vector values;                ///< explicit_list payload
};

Vector spectrum(const SpectrumSpec& spec);

/// Orthonormal columns from the QR factorization of a seeded Gaussian
/// matrix, with the R diagonal forced positive so the result is unique.
DenseMatrix haar_orthonormal(index_t m, index_t n, std::uint64_t seed);

/// A = U diag(sigma) V^T with exact ground truth carried alongside.
struct SyntheticProblem {
    std::unique_ptr<LinearOperator> a;
    Vector sigma;     ///< descending, as constructed
    Vector v_min;     ///< last column of V
    double gap_abs = 0.0;  ///< (sigma_{n-1} - sigma_n) / sigma_1
    double kappa = 0.0;    ///< sigma_1 / sigma_n
    index_t m = 0;
    index_t n = 0;
    std::uint64_t seed = 0;
    bool coherent = false;
    bool factored = false;
};

/// Builds the problem either as an assembled dense matrix or, when
/// `factored` is set, as a composed operator that applies the three factors
/// in turn (for row counts where assembling A is wasteful). The `coherent`
/// flag swaps the Haar right factor for orth(diag(g) + 1e-4 G), which
/// concentrates the right singular vectors near the coordinate axes.
SyntheticProblem synth(const SpectrumSpec& spec, index_t m, std::uint64_t seed,
                       bool coherent = false, bool factored = false);

/// Sidecar ground-truth file: full-precision spectrum and minimum right
/// singular vector, one decimal per line. Lines starting with '#' before
/// the magic line are comments and are skipped by the reader.
struct TruthData {
    Vector sigma;
    Vector v_min;
};

void write_truth_file(const std::string& path, const Vector& sigma, const Vector& v_min,
                      const std::vector<std::string>& comments = {});
TruthData read_truth_file(const std::string& path);

}  // namespace minsvd
