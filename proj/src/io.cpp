#include "minsvd/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace minsvd {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

[[noreturn]] void bad_line(const std::string& path, long line, const std::string& why) {
    throw IoError(path + ":" + std::to_string(line) + ": " + why);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_value(const std::string& tok, const std::string& path, long line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) bad_line(path, line, "trailing characters in value '" + tok + "'");
        return v;
    } catch (const std::exception&) {
        bad_line(path, line, "cannot parse value '" + tok + "'");
    }
}

long parse_index(const std::string& tok, const std::string& path, long line) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(tok, &pos);
        if (pos != tok.size()) bad_line(path, line, "trailing characters in index '" + tok + "'");
        return v;
    } catch (const std::exception&) {
        bad_line(path, line, "cannot parse index '" + tok + "'");
    }
}

} // namespace

MatrixMarketData read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open for reading");

    std::string line;
    long lineno = 0;

    if (!std::getline(in, line)) bad_line(path, 1, "empty file");
    ++lineno;
    std::istringstream hdr(line);
    std::string banner, object, format, field, symmetry;
    hdr >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket") bad_line(path, lineno, "missing %%MatrixMarket banner");
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix") bad_line(path, lineno, "unsupported object '" + object + "'");
    if (format != "array" && format != "coordinate")
        bad_line(path, lineno, "unsupported format '" + format + "'");
    if (field != "real" && field != "integer" && field != "double")
        bad_line(path, lineno, "unsupported field '" + field + "' (real data required)");
    const bool symmetric = symmetry == "symmetric" || symmetry == "skew-symmetric";
    const bool skew = symmetry == "skew-symmetric";
    if (symmetry != "general" && !symmetric)
        bad_line(path, lineno, "unsupported symmetry '" + symmetry + "'");

    // size line (comments allowed before it)
    std::vector<std::string> toks;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '%') continue;
        std::istringstream ls(line);
        std::string t;
        toks.clear();
        while (ls >> t) toks.push_back(t);
        if (toks.empty()) continue;
        break;
    }
    if (toks.empty()) bad_line(path, lineno, "missing size line");

    MatrixMarketData out;
    if (format == "array") {
        if (toks.size() != 2) bad_line(path, lineno, "array size line needs 2 entries");
        const long m = parse_index(toks[0], path, lineno);
        const long n = parse_index(toks[1], path, lineno);
        if (m < 0 || n < 0) bad_line(path, lineno, "negative dimension");
        if (symmetric && m != n) bad_line(path, lineno, "symmetric array must be square");
        DenseMatrix a(m, n);
        // column-major entry order; symmetric files store the lower triangle
        index_t row = 0, col = 0;
        const long need = symmetric ? (m * (m + 1)) / 2 : m * n;
        long got = 0;
        while (got < need) {
            if (!std::getline(in, line)) bad_line(path, lineno + 1, "unexpected end of file");
            ++lineno;
            if (!line.empty() && line[0] == '%') continue;
            std::istringstream ls(line);
            std::string t;
            while (ls >> t) {
                if (got >= need) bad_line(path, lineno, "more entries than the size line declares");
                const double v = parse_value(t, path, lineno);
                a(row, col) = v;
                if (symmetric && row != col) a(col, row) = skew ? -v : v;
                ++got;
                ++row;
                if (row == m) {
                    ++col;
                    row = symmetric ? col : 0;
                }
            }
        }
        out.is_sparse = false;
        out.dense = std::move(a);
    } else {
        if (toks.size() != 3) bad_line(path, lineno, "coordinate size line needs 3 entries");
        const long m = parse_index(toks[0], path, lineno);
        const long n = parse_index(toks[1], path, lineno);
        const long nnz = parse_index(toks[2], path, lineno);
        if (m < 0 || n < 0 || nnz < 0) bad_line(path, lineno, "negative size entry");
        std::vector<index_t> ti, tj;
        std::vector<double> tv;
        ti.reserve(static_cast<std::size_t>(nnz));
        tj.reserve(static_cast<std::size_t>(nnz));
        tv.reserve(static_cast<std::size_t>(nnz));
        long got = 0;
        while (got < nnz) {
            if (!std::getline(in, line)) bad_line(path, lineno + 1, "unexpected end of file");
            ++lineno;
            if (!line.empty() && line[0] == '%') continue;
            std::istringstream ls(line);
            std::string si, sj, sv;
            if (!(ls >> si)) continue; // blank line
            if (!(ls >> sj >> sv)) bad_line(path, lineno, "coordinate entry needs 'row col value'");
            std::string extra;
            if (ls >> extra) bad_line(path, lineno, "trailing tokens on coordinate entry");
            const long r = parse_index(si, path, lineno);
            const long c = parse_index(sj, path, lineno);
            if (r < 1 || r > m || c < 1 || c > n)
                bad_line(path, lineno, "index out of range (1-based indices required)");
            const double v = parse_value(sv, path, lineno);
            ti.push_back(r - 1);
            tj.push_back(c - 1);
            tv.push_back(v);
            if (symmetric && r != c) {
                ti.push_back(c - 1);
                tj.push_back(r - 1);
                tv.push_back(skew ? -v : v);
            }
            ++got;
        }
        out.is_sparse = true;
        try {
            out.sparse = csr_from_triplets(m, n, std::move(ti), std::move(tj), std::move(tv));
        } catch (const IoError& e) {
            throw IoError(path + ": " + e.what());
        }
    }
    return out;
}

void write_matrix_market_array(const std::string& path, const DenseMatrix& a,
                               const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << "%%MatrixMarket matrix array real general\n";
    if (!comment.empty()) out << "% " << comment << "\n";
    out << a.rows() << " " << a.cols() << "\n";
    for (index_t j = 0; j < a.cols(); ++j)
        for (index_t i = 0; i < a.rows(); ++i) out << format_double(a(i, j)) << "\n";
    if (!out) throw IoError(path + ": write failed");
}

void write_matrix_market_coordinate(const std::string& path, const CsrMatrix& a,
                                    const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << "%%MatrixMarket matrix coordinate real general\n";
    if (!comment.empty()) out << "% " << comment << "\n";
    out << a.rows << " " << a.cols << " " << a.nnz() << "\n";
    for (index_t i = 0; i < a.rows; ++i)
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            out << (i + 1) << " " << (a.col_indices[static_cast<std::size_t>(k)] + 1) << " "
                << format_double(a.values[static_cast<std::size_t>(k)]) << "\n";
    if (!out) throw IoError(path + ": write failed");
}

} // namespace minsvd
