#include "minsvd/sketch.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "minsvd/rng.hpp"
#include "minsvd/svd.hpp"

namespace minsvd {

double SparseStackEmbedding::entry_value() const {
    return 1.0 / std::sqrt(static_cast<double>(zeta));
}

void SparseStackEmbedding::validate() const {
    if (d <= 0 || m <= 0) throw DimensionError("SparseStackEmbedding: dimensions must be positive");
    if (zeta <= 0 || zeta > d) throw DimensionError("SparseStackEmbedding: zeta must be in [1, d]");
    if (d % zeta != 0) throw DimensionError("SparseStackEmbedding: zeta must divide d");
    const std::size_t want = static_cast<std::size_t>(m) * static_cast<std::size_t>(zeta);
    if (positions.size() != want || signs.size() != want)
        throw DimensionError("SparseStackEmbedding: nonzero arrays have the wrong length");
    const std::uint32_t block = static_cast<std::uint32_t>(block_rows());
    for (std::uint32_t p : positions)
        if (p >= block) throw DimensionError("SparseStackEmbedding: position outside its block");
    for (std::int8_t s : signs)
        if (s != 1 && s != -1) throw DimensionError("SparseStackEmbedding: sign must be +-1");
}

index_t round_up_to_multiple(index_t d, int zeta) {
    if (zeta <= 0) throw DimensionError("round_up_to_multiple: zeta must be positive");
    const index_t rem = d % zeta;
    return rem == 0 ? d : d + (zeta - rem);
}

SparseStackEmbedding build_sparsestack(index_t d, index_t m, int zeta, std::uint64_t seed) {
    if (d <= 0 || m <= 0) throw DimensionError("build_sparsestack: dimensions must be positive");
    if (zeta <= 0 || zeta > d) throw DimensionError("build_sparsestack: zeta must be in [1, d]");
    if (d % zeta != 0)
        throw DimensionError("build_sparsestack: zeta must divide d; use round_up_to_multiple(d, zeta) = " +
                             std::to_string(round_up_to_multiple(d, zeta)));

    SparseStackEmbedding s;
    s.d = d;
    s.m = m;
    s.zeta = zeta;
    s.seed = seed;
    const std::uint64_t block = static_cast<std::uint64_t>(d / zeta);
    s.positions.resize(static_cast<std::size_t>(m) * zeta);
    s.signs.resize(static_cast<std::size_t>(m) * zeta);
    for (index_t j = 0; j < m; ++j) {
        SplitMix64 stream(seed, static_cast<std::uint64_t>(j));
        for (int k = 0; k < zeta; ++k) {
            const std::size_t at = static_cast<std::size_t>(j) * zeta + k;
            s.positions[at] = static_cast<std::uint32_t>(stream.next_below(block));
            s.signs[at] = (stream.next_u64() >> 63) ? -1 : 1;
        }
    }
    return s;
}

DenseMatrix sparsestack_to_dense(const SparseStackEmbedding& s) {
    s.validate();
    DenseMatrix out(s.d, s.m);
    const double val = s.entry_value();
    const index_t block = s.block_rows();
    for (index_t j = 0; j < s.m; ++j)
        for (int k = 0; k < s.zeta; ++k) {
            const std::size_t at = static_cast<std::size_t>(j) * s.zeta + k;
            out(block * k + s.positions[at], j) = s.signs[at] * val;
        }
    return out;
}

DenseMatrix sketch_apply(const SparseStackEmbedding& s, const DenseMatrix& a) {
    s.validate();
    if (a.rows() != s.m)
        throw DimensionError("sketch_apply: operand has " + std::to_string(a.rows()) +
                             " rows, embedding expects " + std::to_string(s.m));
    DenseMatrix out(s.d, a.cols());
    const double val = s.entry_value();
    const index_t block = s.block_rows();
    for (index_t j = 0; j < a.cols(); ++j) {
        const double* aj = a.col(j);
        double* oj = out.col(j);
        for (index_t r = 0; r < s.m; ++r) {
            const double x = aj[r];
            if (x == 0.0) continue;
            const std::size_t base = static_cast<std::size_t>(r) * s.zeta;
            for (int k = 0; k < s.zeta; ++k)
                oj[block * k + s.positions[base + k]] += s.signs[base + k] * val * x;
        }
    }
    return out;
}

DenseMatrix sketch_apply(const SparseStackEmbedding& s, const CsrMatrix& a) {
    s.validate();
    a.validate();
    if (a.rows != s.m)
        throw DimensionError("sketch_apply: operand has " + std::to_string(a.rows) +
                             " rows, embedding expects " + std::to_string(s.m));
    DenseMatrix out(s.d, a.cols);
    const double val = s.entry_value();
    const index_t block = s.block_rows();
    for (index_t r = 0; r < a.rows; ++r) {
        const std::size_t base = static_cast<std::size_t>(r) * s.zeta;
        for (index_t p = a.row_offsets[static_cast<std::size_t>(r)];
             p < a.row_offsets[static_cast<std::size_t>(r) + 1]; ++p) {
            const index_t j = a.col_indices[static_cast<std::size_t>(p)];
            const double x = a.values[static_cast<std::size_t>(p)] * val;
            double* oj = out.col(j);
            for (int k = 0; k < s.zeta; ++k)
                oj[block * k + s.positions[base + k]] += s.signs[base + k] * x;
        }
    }
    return out;
}

DenseMatrix sketch_apply(const SparseStackEmbedding& s, const LinearOperator& a) {
    if (const auto* counting = dynamic_cast<const CountingOperator*>(&a))
        return sketch_apply(s, counting->inner());
    if (const auto* dense = dynamic_cast<const DenseOperator*>(&a))
        return sketch_apply(s, dense->matrix());
    if (const auto* csr = dynamic_cast<const CsrOperator*>(&a))
        return sketch_apply(s, csr->matrix());
    if (const auto* fac = dynamic_cast<const FactoredSvdOperator*>(&a)) {
        // S (U diag V^T) = ((S U) diag) V^T, avoiding the m x n assembly
        DenseMatrix su = sketch_apply(s, fac->u());
        for (index_t j = 0; j < su.cols(); ++j) {
            double* c = su.col(j);
            const double sig = fac->sigma()[static_cast<std::size_t>(j)];
            for (index_t i = 0; i < su.rows(); ++i) c[i] *= sig;
        }
        return matmul(su, transpose(fac->v()));
    }
    // generic fallback: one forward product per column
    if (a.rows() != s.m)
        throw DimensionError("sketch_apply: operand has " + std::to_string(a.rows()) +
                             " rows, embedding expects " + std::to_string(s.m));
    DenseMatrix out(s.d, a.cols());
    Vector e(static_cast<std::size_t>(a.cols()), 0.0);
    DenseMatrix col(s.m, 1);
    for (index_t j = 0; j < a.cols(); ++j) {
        e[static_cast<std::size_t>(j)] = 1.0;
        col.set_col(0, a.apply(e));
        e[static_cast<std::size_t>(j)] = 0.0;
        DenseMatrix sc = sketch_apply(s, col);
        for (index_t i = 0; i < s.d; ++i) out(i, j) = sc(i, 0);
    }
    return out;
}

DistortionReport empirical_distortion(const SparseStackEmbedding& s, const LinearOperator& a) {
    s.validate();
    if (a.rows() != s.m)
        throw DimensionError("empirical_distortion: operand rows do not match the embedding");
    const DenseMatrix ad = a.to_dense();
    SvdResult svd_a = dense_svd(ad, true);
    const double smax = svd_a.sigma.front();
    const double smin = svd_a.sigma.back();
    const double n = static_cast<double>(ad.cols());
    if (smax == 0.0 || smin <= n * 2.220446049250313e-16 * smax)
        throw NumericalError("empirical_distortion: operand is numerically rank deficient");

    DistortionReport rep;
    if (s.d < ad.cols()) {
        // fewer sketch rows than range dimension: the sketch annihilates part
        // of the range and cannot be an embedding
        DenseMatrix sq = sketch_apply(s, svd_a.u);
        SvdResult wide = dense_svd(transpose(sq), false);
        rep.sigma_min_sq = 0.0;
        rep.sigma_max_sq = wide.sigma.front() * wide.sigma.front();
        rep.eta = std::max(1.0, rep.sigma_max_sq - 1.0);
        rep.is_embedding = false;
        return rep;
    }
    DenseMatrix sq = sketch_apply(s, svd_a.u);
    SvdResult svd_sq = dense_svd(sq, false);
    const double top = svd_sq.sigma.front();
    const double bot = svd_sq.sigma.back();
    rep.sigma_max_sq = top * top;
    rep.sigma_min_sq = bot * bot;
    rep.eta = std::max(rep.sigma_max_sq - 1.0, 1.0 - rep.sigma_min_sq);
    rep.is_embedding = rep.eta < 1.0;
    return rep;
}

namespace {
constexpr char kMagic[9] = "MSVDSSE1";
}

void save_sparsestack(const std::string& path, const SparseStackEmbedding& s) {
    s.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    out.write(kMagic, 8);
    const std::uint64_t hdr[4] = {static_cast<std::uint64_t>(s.d), static_cast<std::uint64_t>(s.m),
                                  static_cast<std::uint64_t>(s.zeta), s.seed};
    out.write(reinterpret_cast<const char*>(hdr), sizeof(hdr));
    if (!out) throw IoError(path + ": write failed");
}

SparseStackEmbedding load_sparsestack(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open for reading");
    char magic[8];
    std::uint64_t hdr[4];
    in.read(magic, 8);
    in.read(reinterpret_cast<char*>(hdr), sizeof(hdr));
    if (!in || std::memcmp(magic, kMagic, 8) != 0)
        throw IoError(path + ": not a sparse embedding header");
    return build_sparsestack(static_cast<index_t>(hdr[0]), static_cast<index_t>(hdr[1]),
                             static_cast<int>(hdr[2]), hdr[3]);
}

} // namespace minsvd
