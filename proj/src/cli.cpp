#include "minsvd/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "minsvd/baselines.hpp"
#include "minsvd/errors.hpp"
#include "minsvd/io.hpp"
#include "minsvd/matgen.hpp"
#include "minsvd/operator.hpp"
#include "minsvd/precond.hpp"
#include "minsvd/rational.hpp"
#include "minsvd/solver.hpp"
#include "minsvd/theory.hpp"

namespace minsvd {

const char* const kToolVersion = "minsvd 1.0.0";

namespace {

using nlohmann::ordered_json;

// Configuration mistakes that surface after flag parsing (conflicting or
// missing flags, bad preset parameters, invalid environment overrides).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CliOptions {
    std::string input;
    std::string gen_preset;
    std::string truth;
    std::string out = ".";
    std::string backend = "dense_svd";
    long long m = 0;
    long long n = 0;
    long long block = 1;
    long long max_iter = -1;
    long long sketch_dim = -1;
    long long zeta = 4;
    long long seed = 0;
    long long lawson_steps = 100;
    double tol = -1.0;
    double eta = 0.0;
    double gap = 0.0;
    double eps = 0.0;
    bool has_input = false;
    bool has_gen = false;
    bool has_m = false;
    bool has_n = false;
    bool has_truth = false;
    bool has_tol = false;
    bool has_eps = false;
    bool no_timing = false;
    bool no_stagnation = false;
    bool verify = false;
};

int thread_cap() {
    const char* env = std::getenv("MINSVD_THREADS");
    if (env == nullptr || *env == '\0') return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 65536)
        throw UsageError(std::string("MINSVD_THREADS must be a positive integer, got '") +
                         env + "'");
    return static_cast<int>(v);
}

std::string ensure_outdir(const CliOptions& o) {
    std::error_code ec;
    std::filesystem::create_directories(o.out, ec);
    if (ec)
        throw IoError("cannot create output directory " + o.out + ": " + ec.message());
    return o.out;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

// Single-line reproducibility stamp placed at the top of every artifact:
// tool version plus the full effective configuration, seed included.
std::string stamp(const ordered_json& config) {
    return std::string("tool=") + kToolVersion + " config=" + config.dump();
}

SpectrumSpec preset_from_string(const std::string& text, index_t n) {
    SpectrumSpec spec;
    spec.n = n;
    std::string name = text;
    std::optional<double> param;
    const std::size_t colon = text.find(':');
    if (colon != std::string::npos) {
        name = text.substr(0, colon);
        const std::string ptext = text.substr(colon + 1);
        char* end = nullptr;
        const double v = std::strtod(ptext.c_str(), &end);
        if (end == ptext.c_str() || *end != '\0')
            throw UsageError("bad preset parameter in --gen " + text);
        param = v;
    }
    if (name == "easy") {
        spec.kind = SpectrumKind::easy;
    } else if (name == "hard") {
        spec.kind = SpectrumKind::hard;
    } else if (name == "gap_controlled") {
        spec.kind = SpectrumKind::gap_controlled;
        if (param) spec.gap = *param;
    } else if (name == "cond_controlled") {
        spec.kind = SpectrumKind::cond_controlled;
        if (param) spec.kappa = *param;
    } else if (name == "clustered") {
        spec.kind = SpectrumKind::clustered;
        if (param) spec.cluster_a = *param;
    } else {
        throw UsageError("unknown preset: " + name);
    }
    return spec;
}

SolverOptions solver_options(const CliOptions& o) {
    SolverOptions opts;
    opts.tol = o.has_tol ? o.tol : -1.0;
    opts.max_iter = static_cast<int>(o.max_iter);
    opts.block_size = static_cast<index_t>(o.block);
    opts.seed = static_cast<std::uint64_t>(o.seed);
    opts.sketch_dim = static_cast<index_t>(o.sketch_dim);
    opts.zeta = static_cast<int>(o.zeta);
    opts.use_stagnation = !o.no_stagnation;
    opts.record_timing = !o.no_timing;
    opts.verify_cached_products = o.verify;
    return opts;
}

ordered_json options_json(const CliOptions& o, const SolverOptions& opts, int threads) {
    ordered_json j;
    j["seed"] = opts.seed;
    if (o.has_input) j["input"] = o.input;
    if (o.has_gen) j["gen"] = o.gen_preset;
    if (o.has_m) j["m"] = o.m;
    if (o.has_n) j["n"] = o.n;
    j["block"] = opts.block_size;
    j["tol"] = opts.tol;
    j["max_iter"] = opts.max_iter;
    j["sketch_dim"] = opts.sketch_dim;
    j["zeta"] = opts.zeta;
    j["stagnation"] = opts.use_stagnation;
    j["timing"] = opts.record_timing;
    j["verify"] = opts.verify_cached_products;
    if (o.has_truth) j["truth"] = o.truth;
    j["threads"] = threads;
    return j;
}

// ---------------------------------------------------------------- problems

struct Problem {
    std::unique_ptr<LinearOperator> op;
    index_t m = 0;
    index_t n = 0;
    bool has_truth = false;
    GroundTruth truth;
    std::string source;
};

Problem load_problem(const CliOptions& o) {
    Problem p;
    if (o.has_input && o.has_gen)
        throw UsageError("--input and --gen are mutually exclusive");
    if (o.has_input) {
        MatrixMarketData mm = read_matrix_market(o.input);
        p.m = mm.rows();
        p.n = mm.cols();
        if (mm.is_sparse)
            p.op = std::make_unique<CsrOperator>(std::move(mm.sparse));
        else
            p.op = std::make_unique<DenseOperator>(std::move(mm.dense));
        p.source = o.input;
    } else if (o.has_gen) {
        if (!o.has_m || !o.has_n) throw UsageError("--gen needs --m and --n");
        SpectrumSpec spec = preset_from_string(o.gen_preset, static_cast<index_t>(o.n));
        SyntheticProblem prob = synth(spec, static_cast<index_t>(o.m),
                                      static_cast<std::uint64_t>(o.seed));
        p.m = prob.m;
        p.n = prob.n;
        p.op = std::move(prob.a);
        p.has_truth = true;
        p.truth.sigma_min = prob.sigma.back();
        p.truth.v_min = prob.v_min;
        p.source = "gen:" + o.gen_preset;
    } else {
        throw UsageError("need --input or --gen");
    }
    if (o.has_truth) {
        TruthData t = read_truth_file(o.truth);
        if (static_cast<index_t>(t.v_min.size()) != p.n)
            throw DimensionError("truth sidecar length does not match the matrix");
        p.has_truth = true;
        p.truth.sigma_min = *std::min_element(t.sigma.begin(), t.sigma.end());
        p.truth.v_min = t.v_min;
    }
    return p;
}

// --------------------------------------------------------------------- gen

int cmd_gen(const CliOptions& o, int threads) {
    const index_t m = static_cast<index_t>(o.m);
    const index_t n = static_cast<index_t>(o.n);
    SpectrumSpec spec = preset_from_string(o.gen_preset, n);
    const std::string dir = ensure_outdir(o);

    ordered_json config;
    config["seed"] = o.seed;
    config["gen"] = o.gen_preset;
    config["m"] = m;
    config["n"] = n;
    config["threads"] = threads;

    SyntheticProblem prob = synth(spec, m, static_cast<std::uint64_t>(o.seed));
    const std::string matrix_path = dir + "/matrix.mtx";
    const std::string truth_path = dir + "/truth.txt";
    write_matrix_market_array(matrix_path, prob.a->to_dense(), stamp(config));
    write_truth_file(truth_path, prob.sigma, prob.v_min, {stamp(config)});

    ordered_json summary;
    summary["tool"] = kToolVersion;
    summary["subcommand"] = "gen";
    summary["options"] = config;
    summary["matrix"] = matrix_path;
    summary["truth"] = truth_path;
    summary["sigma_max"] = prob.sigma.front();
    summary["sigma_min"] = prob.sigma.back();
    summary["kappa"] = prob.kappa;
    summary["gap_abs"] = prob.gap_abs;
    write_text(dir + "/gen.json", summary.dump(2) + "\n");

    std::cout << "wrote " << matrix_path << " (" << m << "x" << n << ") and "
              << truth_path << "\n";
    return 0;
}

// ------------------------------------------------------------------- solve

ordered_json solve_summary(const SolveResult& res, const ordered_json& options,
                           const std::string& csv_path) {
    ordered_json summary;
    summary["tool"] = kToolVersion;
    summary["subcommand"] = "solve";
    summary["options"] = options;
    summary["sigma"] = res.sigma;
    summary["sigma_max_estimate"] = res.sigma_max_estimate;
    summary["converged"] = res.status == SolveStatus::converged;
    summary["status"] = to_string(res.status);
    summary["iterations"] = res.iterations();
    summary["matvecs_a"] = res.record.rows.back().matvecs_a;
    summary["matvecs_at"] = res.record.rows.back().matvecs_at;
    ordered_json sketch;
    sketch["skipped"] = res.sketch_skipped;
    sketch["rows"] = res.sketch_dim;
    sketch["zeta"] = res.zeta;
    summary["sketch"] = sketch;
    summary["verify_products"] = res.verify_count;
    summary["degenerate_replacements"] = res.degenerate_replacements;
    summary["record_csv"] = csv_path;
    return summary;
}

int cmd_solve(const CliOptions& o, int threads) {
    SolverOptions opts = solver_options(o);
    Problem p = load_problem(o);
    const std::string dir = ensure_outdir(o);
    const ordered_json options = options_json(o, opts, threads);

    const GroundTruth* truth = p.has_truth ? &p.truth : nullptr;
    SolveResult res = opts.block_size == 1 ? rlobpcg_single(*p.op, opts, truth)
                                           : rlobpcg_block(*p.op, opts, truth);

    const std::string csv_path = dir + "/record.csv";
    write_text(csv_path, "# " + stamp(options) + "\n" + res.record.to_csv());
    write_text(dir + "/summary.json",
               solve_summary(res, options, csv_path).dump(2) + "\n");

    std::cout << "sigma_min ~= " << format_double(res.sigma[0]) << " ("
              << to_string(res.status) << " after " << res.iterations()
              << " iterations)\n";
    return res.status == SolveStatus::converged ? 0 : 4;
}

// ----------------------------------------------------------------- compare

int cmd_compare(const CliOptions& o, int threads) {
    SolverOptions opts = solver_options(o);
    Problem p = load_problem(o);
    const std::string dir = ensure_outdir(o);
    const ordered_json options = options_json(o, opts, threads);
    const GroundTruth* truth = p.has_truth ? &p.truth : nullptr;

    ordered_json summary;
    summary["tool"] = kToolVersion;
    summary["subcommand"] = "compare";
    summary["options"] = options;
    ordered_json methods = ordered_json::object();

    auto describe = [&](const ConvergenceRecord& record, const std::string& name,
                        const std::string& status, double sigma_est) {
        const std::string csv_path = dir + "/" + name + ".csv";
        write_text(csv_path, "# " + stamp(options) + "\n" + record.to_csv());
        const RecordRow& last = record.rows.back();
        ordered_json m;
        m["csv"] = csv_path;
        m["status"] = status;
        m["rows"] = record.rows.size();
        m["sigma_min_estimate"] = sigma_est;
        m["matvecs_a"] = last.matvecs_a;
        m["matvecs_at"] = last.matvecs_at;
        if (record.has_truth) {
            m["final_relerr"] = last.relerr;
            m["final_sin_angle"] = last.sin_angle;
        }
        methods[name] = m;
    };

    // the preconditioned run goes first; its sketch-and-solve object seeds
    // the shared starting vector handed to the Krylov baseline, while the
    // other two runs rebuild the identical sketch from the same seed
    SolveResult randomized = lobpcg_solve(*p.op, PrecondKind::randomized, opts, truth);
    describe(randomized.record, "rlobpcg", to_string(randomized.status),
             randomized.sigma[0]);

    SolveResult plain = lobpcg_solve(*p.op, PrecondKind::none, opts, truth);
    describe(plain.record, "lobpcg", to_string(plain.status), plain.sigma[0]);

    SolveResult diag = lobpcg_solve(*p.op, PrecondKind::diagonal, opts, truth);
    describe(diag.record, "lobpcg_diag", to_string(diag.status), diag.sigma[0]);

    const long long cap = o.max_iter >= 0 ? o.max_iter : 200;
    const index_t lanczos_steps =
        std::max<index_t>(1, std::min<index_t>(p.n, static_cast<index_t>(cap)));
    Vector v0 = sketch_and_solve_init(randomized.precond, 1).col_copy(0);
    LanczosResult lanczos =
        lanczos_gk(*p.op, lanczos_steps, v0, truth, opts.record_timing);
    describe(lanczos.record, "lanczos",
             lanczos.status == LanczosStatus::invariant_subspace ? "invariant_subspace"
                                                                 : "completed",
             lanczos.sigma_min);

    summary["methods"] = methods;
    write_text(dir + "/compare.json", summary.dump(2) + "\n");
    std::cout << "compared 4 methods on " << p.source << ", records in " << dir << "\n";
    return 0;
}

// ----------------------------------------------------------------- predict

int cmd_predict(const CliOptions& o) {
    RateParameters rate = predicted_rate(o.eta, o.gap);
    char line[128];
    std::snprintf(line, sizeof(line), "eta = %g\n", rate.eta);
    std::cout << line;
    std::snprintf(line, sizeof(line), "gap = %g\n", rate.gap);
    std::cout << line;
    std::snprintf(line, sizeof(line), "q = %g\n", rate.q);
    std::cout << line;
    if (rate.hypothesis_ok) {
        std::snprintf(line, sizeof(line), "c = %g\n", rate.c);
        std::cout << line;
        std::cout << "hypothesis = satisfied\n";
    } else {
        std::cout << "c = undefined\n";
        std::cout << "hypothesis = violated (need eta < gap/(2+gap))\n";
    }
    if (o.has_eps) {
        if (rate.hypothesis_ok) {
            std::snprintf(line, sizeof(line), "iterations(eps = %g) = %d\n", o.eps,
                          iteration_estimate(o.eta, o.gap, o.eps));
            std::cout << line;
        } else {
            std::cout << "iterations(eps) = not applicable\n";
        }
    }
    return 0;
}

// --------------------------------------------------------------------- aaa

void load_samples_csv(const std::string& path, ComplexVector& z, ComplexVector& f) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open sample file: " + path);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        double re_z = 0.0, im_z = 0.0, re_f = 0.0, im_f = 0.0;
        if (std::sscanf(line.c_str(), " %lf , %lf , %lf , %lf", &re_z, &im_z, &re_f,
                        &im_f) != 4)
            throw IoError("sample file " + path + ": line " + std::to_string(lineno) +
                          " is not re(z),im(z),re(f),im(f)");
        z.emplace_back(re_z, im_z);
        f.emplace_back(re_f, im_f);
    }
    if (z.empty()) throw IoError("sample file " + path + " holds no samples");
}

int cmd_aaa(const CliOptions& o, int threads) {
    ComplexVector z, f;
    std::string source;
    if (o.has_input) {
        load_samples_csv(o.input, z, f);
        source = o.input;
    } else {
        const long long total = o.has_m ? o.m : 2000;
        if (total < 4 || total % 2 != 0)
            throw UsageError("--m for aaa must be an even sample count >= 4");
        z = twin_circle_points(static_cast<index_t>(total / 2));
        for (const Complex& zi : z) f.push_back(signed_identity(zi));
        source = "twin_circles";
    }

    const index_t degree = static_cast<index_t>(o.has_n ? o.n : 10);
    const double fit_tol = o.has_tol ? o.tol : 1e-13;
    if (o.lawson_steps < 0) throw UsageError("--lawson-steps must be >= 0");

    LawsonOptions lawson;
    lawson.steps = static_cast<index_t>(o.lawson_steps);
    lawson.solver.seed = static_cast<std::uint64_t>(o.seed);
    lawson.solver.use_stagnation = !o.no_stagnation;
    if (o.backend == "dense_svd")
        lawson.backend = NullspaceBackend::dense_svd;
    else if (o.backend == "rlobpcg")
        lawson.backend = NullspaceBackend::rlobpcg;
    else
        throw UsageError("--backend must be dense_svd or rlobpcg");

    const std::string dir = ensure_outdir(o);
    ordered_json config;
    config["seed"] = o.seed;
    config["input"] = source;
    config["samples"] = z.size();
    config["degree"] = degree;
    config["tol"] = fit_tol;
    config["lawson_steps"] = o.lawson_steps;
    config["backend"] = o.backend;
    config["stagnation"] = lawson.solver.use_stagnation;
    config["threads"] = threads;

    BarycentricRational fit = aaa_fit(z, f, degree, fit_tol);
    const double plain_error = max_error(fit, z, f);

    BarycentricRational final_fit = fit;
    double refined_error = plain_error;
    if (o.lawson_steps > 0) {
        LawsonResult res = lawson_refine(fit, z, f, lawson);
        final_fit = res.refined;
        refined_error = res.best_error;
    }

    std::string curve = "# " + stamp(config) + "\nre_z,im_z,abs_error,arg_error\n";
    for (std::size_t i = 0; i < z.size(); ++i) {
        const Complex e = eval_barycentric(final_fit, z[i]) - f[i];
        curve += format_double(z[i].real()) + "," + format_double(z[i].imag()) + "," +
                 format_double(std::abs(e)) + "," + format_double(std::arg(e)) + "\n";
    }
    const std::string curve_path = dir + "/error_curve.csv";
    write_text(curve_path, curve);

    ordered_json summary;
    summary["tool"] = kToolVersion;
    summary["subcommand"] = "aaa";
    summary["options"] = config;
    summary["degree_fitted"] = final_fit.degree();
    summary["support_points"] = final_fit.support.size();
    summary["plain_max_error"] = plain_error;
    summary["refined_max_error"] = refined_error;
    summary["improvement"] = plain_error > 0.0 ? refined_error / plain_error : 1.0;
    summary["error_curve_csv"] = curve_path;
    write_text(dir + "/aaa.json", summary.dump(2) + "\n");

    std::cout << "plain fit error " << format_double(plain_error) << ", refined "
              << format_double(refined_error) << "\n";
    return 0;
}

// ----------------------------------------------------------------- wiring

void add_output_flags(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--out", o.out, "output directory (default .)");
    cmd->add_option("--seed", o.seed, "seed for every random choice (default 0)");
}

void add_problem_flags(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--input", o.input, "Matrix Market input file")
        ->each([&o](const std::string&) { o.has_input = true; });
    cmd->add_option("--gen", o.gen_preset,
                    "synthetic preset: easy | hard | gap_controlled[:target] | "
                    "cond_controlled[:kappa] | clustered[:exponent]")
        ->each([&o](const std::string&) { o.has_gen = true; });
    cmd->add_option("--m", o.m, "rows of the generated matrix")
        ->each([&o](const std::string&) { o.has_m = true; });
    cmd->add_option("--n", o.n, "columns of the generated matrix")
        ->each([&o](const std::string&) { o.has_n = true; });
    cmd->add_option("--truth", o.truth, "ground-truth sidecar enabling error columns")
        ->each([&o](const std::string&) { o.has_truth = true; });
}

void add_solver_flags(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--tol", o.tol, "residual tolerance (default 2 sqrt(n) eps)")
        ->each([&o](const std::string&) { o.has_tol = true; });
    cmd->add_option("--max-iter", o.max_iter,
                    "iteration cap (default 200 single, 100 block)");
    cmd->add_option("--sketch-dim", o.sketch_dim,
                    "sketch rows (default min(4n, m); skipped when m <= 4n)");
    cmd->add_option("--zeta", o.zeta, "nonzeros per sketch column (default 4)");
    cmd->add_flag("--no-timing", o.no_timing,
                  "write wall_ms as 0 for byte-reproducible records");
    cmd->add_flag("--no-stagnation", o.no_stagnation,
                  "stop on the residual tolerance alone");
    cmd->add_flag("--verify", o.verify,
                  "re-check cached operator products every 25 iterations");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CliOptions o;
    CLI::App app{"smallest singular triplets of tall matrices via a sketched "
                 "preconditioner, with baselines, theory oracles, and a rational "
                 "minimax client"};
    app.name("minsvd");
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    app.footer("exit codes: 0 success, 1 usage, 2 file I/O, 3 dimension mismatch,\n"
               "            4 iteration cap reached, 5 internal numerical failure\n"
               "environment: MINSVD_THREADS caps kernel parallelism (positive integer)");

    CLI::App* gen = app.add_subcommand(
        "gen", "write a synthetic matrix (Matrix Market) and its ground-truth sidecar");
    gen->add_option("--gen", o.gen_preset, "spectrum preset, see `solve --help`")
        ->required()
        ->each([&o](const std::string&) { o.has_gen = true; });
    gen->add_option("--m", o.m, "rows")->required();
    gen->add_option("--n", o.n, "columns")->required();
    add_output_flags(gen, o);

    CLI::App* solve =
        app.add_subcommand("solve", "compute the smallest singular triplet(s)");
    add_problem_flags(solve, o);
    solve->add_option("--block", o.block, "number of triplets (default 1)");
    add_solver_flags(solve, o);
    add_output_flags(solve, o);

    CLI::App* compare = app.add_subcommand(
        "compare",
        "run the preconditioned solver and the baselines from one starting vector");
    add_problem_flags(compare, o);
    add_solver_flags(compare, o);
    add_output_flags(compare, o);

    CLI::App* predict = app.add_subcommand(
        "predict", "print convergence-rate parameters for a distortion/gap pair");
    predict->add_option("--eta", o.eta, "measured sketch distortion")->required();
    predict->add_option("--gap", o.gap, "relative squared spectral gap")->required();
    predict->add_option("--eps", o.eps, "also print iterations to this accuracy")
        ->each([&o](const std::string&) { o.has_eps = true; });

    CLI::App* aaa = app.add_subcommand(
        "aaa", "rational minimax fit with reweighted nullspace refinement");
    aaa->add_option("--input", o.input,
                    "sample CSV with columns re(z), im(z), re(f), im(f)")
        ->each([&o](const std::string&) { o.has_input = true; });
    aaa->add_option("--m", o.m, "generated sample count on the twin circles "
                                "(default 2000, even)")
        ->each([&o](const std::string&) { o.has_m = true; });
    aaa->add_option("--n", o.n, "fit degree (default 10)")
        ->each([&o](const std::string&) { o.has_n = true; });
    aaa->add_option("--tol", o.tol, "fit tolerance relative to max|f| (default 1e-13)")
        ->each([&o](const std::string&) { o.has_tol = true; });
    aaa->add_option("--lawson-steps", o.lawson_steps,
                    "reweighting steps (default 100, 0 = plain fit)");
    aaa->add_option("--backend", o.backend, "nullspace backend: dense_svd | rlobpcg");
    aaa->add_flag("--no-stagnation", o.no_stagnation,
                  "iterative backend stops on its residual tolerance alone");
    add_output_flags(aaa, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const int threads = thread_cap();
        if (gen->parsed()) return cmd_gen(o, threads);
        if (solve->parsed()) return cmd_solve(o, threads);
        if (compare->parsed()) return cmd_compare(o, threads);
        if (predict->parsed()) return cmd_predict(o);
        if (aaa->parsed()) return cmd_aaa(o, threads);
        throw UsageError("no subcommand given");
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 5;
    }
}

}  // namespace minsvd
