#include "minsvd/matgen.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "minsvd/errors.hpp"
#include "minsvd/io.hpp"
#include "minsvd/rng.hpp"
#include "minsvd/svd.hpp"

namespace minsvd {

namespace {

// stream keys so the factors of one problem never share random draws
constexpr std::uint64_t kLeftFactorKey = 0x55u;
constexpr std::uint64_t kRightFactorKey = 0x56u;
constexpr std::uint64_t kCoherentDiagKey = 0x44u;
constexpr std::uint64_t kCoherentNoiseKey = 0x45u;

DenseMatrix gaussian_matrix(index_t m, index_t n, SplitMix64& rng) {
    DenseMatrix a(m, n);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < m; ++i) a(i, j) = rng.next_gaussian();
    return a;
}

// values from `first` down to `last` in geometric progression, inclusive
void geometric_fill(Vector& s, std::size_t begin, std::size_t count, double first,
                    double last) {
    if (count == 1) {
        s[begin] = first;
        return;
    }
    for (std::size_t i = 0; i < count; ++i)
        s[begin + i] = first * std::pow(last / first, static_cast<double>(i) /
                                                          static_cast<double>(count - 1));
}

void validate_spectrum(const Vector& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(s[i] > 0.0)) throw NumericalError("spectrum: values must be strictly positive");
        if (i > 0 && s[i] > s[i - 1])
            throw NumericalError("spectrum: values must be nonincreasing");
    }
}

DenseMatrix coherent_right_factor(index_t n, std::uint64_t seed) {
    SplitMix64 diag_rng(seed, kCoherentDiagKey);
    SplitMix64 noise_rng(seed, kCoherentNoiseKey);
    DenseMatrix g = gaussian_matrix(n, n, noise_rng);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < n; ++i) g(i, j) *= 1e-4;
    for (index_t i = 0; i < n; ++i) g(i, i) += diag_rng.next_gaussian();
    HouseholderQr qr = householder_qr(g);
    DenseMatrix q = qr_q_economy(qr);
    DenseMatrix r = qr_r(qr);
    for (index_t j = 0; j < n; ++j)
        if (r(j, j) < 0.0) {
            double* c = q.col(j);
            for (index_t i = 0; i < n; ++i) c[i] = -c[i];
        }
    return q;
}

}  // namespace

Vector spectrum(const SpectrumSpec& spec) {
    const index_t n = spec.kind == SpectrumKind::explicit_list
                          ? static_cast<index_t>(spec.values.size())
                          : spec.n;
    if (n < 2) throw DimensionError("spectrum: need at least two values");
    Vector s(static_cast<std::size_t>(n), 0.0);
    switch (spec.kind) {
        case SpectrumKind::easy:
            geometric_fill(s, 0, static_cast<std::size_t>(n - 1), 1.0, 0.1);
            s[static_cast<std::size_t>(n - 1)] = 1e-7;
            break;
        case SpectrumKind::hard:
            geometric_fill(s, 0, static_cast<std::size_t>(n), 1.0, 1e-10);
            break;
        case SpectrumKind::gap_controlled: {
            if (!(spec.gap >= 0.0))
                throw NumericalError("spectrum: gap target must be nonnegative");
            const double sn = 1e-10;
            const double snm1 = sn * std::sqrt(1.0 + spec.gap);
            if (n >= 3) {
                geometric_fill(s, 0, static_cast<std::size_t>(n - 2), 1.0, 1e-9);
                if (snm1 > s[static_cast<std::size_t>(n - 3)])
                    throw NumericalError(
                        "spectrum: gap target pushes sigma_{n-1} above the geometric head");
            }
            s[static_cast<std::size_t>(n - 2)] = snm1;
            s[static_cast<std::size_t>(n - 1)] = sn;
            break;
        }
        case SpectrumKind::cond_controlled: {
            const double sn = 1e-10;
            if (!(spec.kappa * sn >= 1e-8))
                throw NumericalError("spectrum: condition target below the geometric head");
            if (n >= 3)
                geometric_fill(s, 1, static_cast<std::size_t>(n - 1), 1e-8, sn);
            s[static_cast<std::size_t>(n - 1)] = sn;
            s[0] = spec.kappa * sn;
            break;
        }
        case SpectrumKind::clustered: {
            if (!(spec.cluster_a > 0.0))
                throw NumericalError("spectrum: cluster exponent must be positive");
            const double depth = std::log(1e10);
            for (index_t i = 0; i < n; ++i)
                s[static_cast<std::size_t>(i)] = std::exp(
                    -depth * std::pow(static_cast<double>(i) / static_cast<double>(n - 1),
                                      spec.cluster_a));
            break;
        }
        case SpectrumKind::explicit_list:
            s = spec.values;
            break;
    }
    validate_spectrum(s);
    return s;
}

DenseMatrix haar_orthonormal(index_t m, index_t n, std::uint64_t seed) {
    if (m < n) throw DimensionError("haar_orthonormal: need rows >= columns");
    if (n < 1) throw DimensionError("haar_orthonormal: need at least one column");
    SplitMix64 rng(seed);
    HouseholderQr qr = householder_qr(gaussian_matrix(m, n, rng));
    DenseMatrix q = qr_q_economy(qr);
    DenseMatrix r = qr_r(qr);
    for (index_t j = 0; j < n; ++j)
        if (r(j, j) < 0.0) {
            double* c = q.col(j);
            for (index_t i = 0; i < m; ++i) c[i] = -c[i];
        }
    return q;
}

SyntheticProblem synth(const SpectrumSpec& spec, index_t m, std::uint64_t seed,
                       bool coherent, bool factored) {
    Vector sigma = spectrum(spec);
    const index_t n = static_cast<index_t>(sigma.size());
    if (m < n) throw DimensionError("synth: need rows >= columns");

    DenseMatrix u = haar_orthonormal(m, n, SplitMix64(seed, kLeftFactorKey).next_u64());
    DenseMatrix v = coherent
                        ? coherent_right_factor(n, seed)
                        : haar_orthonormal(n, n, SplitMix64(seed, kRightFactorKey).next_u64());

    SyntheticProblem prob;
    prob.sigma = sigma;
    prob.v_min = v.col_copy(n - 1);
    prob.gap_abs = (sigma[static_cast<std::size_t>(n - 2)] -
                    sigma[static_cast<std::size_t>(n - 1)]) /
                   sigma[0];
    prob.kappa = sigma[0] / sigma[static_cast<std::size_t>(n - 1)];
    prob.m = m;
    prob.n = n;
    prob.seed = seed;
    prob.coherent = coherent;
    prob.factored = factored;

    if (factored) {
        prob.a = std::make_unique<FactoredSvdOperator>(std::move(u), sigma, std::move(v));
    } else {
        DenseMatrix scaled = u;
        for (index_t j = 0; j < n; ++j) {
            double* c = scaled.col(j);
            for (index_t i = 0; i < m; ++i) c[i] *= sigma[static_cast<std::size_t>(j)];
        }
        prob.a = std::make_unique<DenseOperator>(matmul(scaled, transpose(v)));
    }
    return prob;
}

void write_truth_file(const std::string& path, const Vector& sigma, const Vector& v_min,
                      const std::vector<std::string>& comments) {
    if (sigma.size() != v_min.size())
        throw DimensionError("write_truth_file: spectrum and vector lengths differ");
    std::ofstream out(path);
    if (!out) throw IoError("write_truth_file: cannot open " + path);
    for (const std::string& line : comments) out << "# " << line << "\n";
    out << "minsvd-truth 1\n";
    out << "n " << sigma.size() << "\n";
    out << "sigma\n";
    for (double s : sigma) out << format_double(s) << "\n";
    out << "v_min\n";
    for (double x : v_min) out << format_double(x) << "\n";
    if (!out) throw IoError("write_truth_file: write failed for " + path);
}

TruthData read_truth_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_truth_file: cannot open " + path);
    in >> std::ws;
    while (in.peek() == '#') {
        std::string comment_line;
        std::getline(in, comment_line);
        in >> std::ws;
    }
    std::string word;
    int version = 0;
    if (!(in >> word >> version) || word != "minsvd-truth" || version != 1)
        throw IoError("read_truth_file: not a truth file: " + path);
    std::size_t n = 0;
    if (!(in >> word >> n) || word != "n" || n == 0)
        throw IoError("read_truth_file: bad length header in " + path);
    TruthData t;
    t.sigma.resize(n);
    t.v_min.resize(n);
    if (!(in >> word) || word != "sigma")
        throw IoError("read_truth_file: missing spectrum block in " + path);
    for (std::size_t i = 0; i < n; ++i)
        if (!(in >> t.sigma[i])) throw IoError("read_truth_file: truncated spectrum in " + path);
    if (!(in >> word) || word != "v_min")
        throw IoError("read_truth_file: missing vector block in " + path);
    for (std::size_t i = 0; i < n; ++i)
        if (!(in >> t.v_min[i])) throw IoError("read_truth_file: truncated vector in " + path);
    return t;
}

}  // namespace minsvd
