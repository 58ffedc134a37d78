#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <iomanip>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "minsvd/io.hpp"
#include "minsvd/matgen.hpp"

// End-to-end checks of the command line: every case spawns the real binary
// (path supplied by the MINSVD_CLI environment variable) and inspects exit
// codes, stdout, and the artifacts it leaves behind.

namespace {

std::string cli_binary() {
    const char* env = std::getenv("MINSVD_CLI");
    REQUIRE_MESSAGE(env != nullptr, "MINSVD_CLI must point at the built binary");
    return env;
}

std::filesystem::path scratch_root() {
    static const std::filesystem::path root = [] {
        const auto p = std::filesystem::temp_directory_path() /
                       ("minsvd_cli_test_" + std::to_string(static_cast<long>(getpid())));
        std::filesystem::remove_all(p);
        std::filesystem::create_directories(p);
        return p;
    }();
    return root;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const std::string tag =
        (scratch_root() / ("capture_" + std::to_string(counter++))).string();
    const std::string cmd = env_prefix + "\"" + cli_binary() + "\" " + args + " > \"" +
                            tag + ".out\" 2> \"" + tag + ".err\"";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    r.out = slurp(tag + ".out");
    r.err = slurp(tag + ".err");
    return r;
}

std::string path_of(const std::filesystem::path& dir, const char* name) {
    return (dir / name).string();
}

// last non-empty line of a CSV, split on commas
std::vector<std::string> last_csv_row(const std::string& text) {
    std::istringstream in(text);
    std::string line, last;
    while (std::getline(in, line))
        if (!line.empty()) last = line;
    std::vector<std::string> fields;
    std::istringstream row(last);
    while (std::getline(row, line, ',')) fields.push_back(line);
    return fields;
}

}  // namespace

TEST_CASE("gen writes a parseable matrix, sidecar, and manifest") {
    const auto dir = scratch_root() / "gen_easy";
    RunResult r = run_cli("gen --gen easy --m 60 --n 6 --seed 11 --out \"" +
                          dir.string() + "\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("matrix.mtx") != std::string::npos);

    minsvd::MatrixMarketData mm = minsvd::read_matrix_market(path_of(dir, "matrix.mtx"));
    CHECK(mm.rows() == 60);
    CHECK(mm.cols() == 6);

    minsvd::TruthData truth = minsvd::read_truth_file(path_of(dir, "truth.txt"));
    REQUIRE(truth.sigma.size() == 6);
    REQUIRE(truth.v_min.size() == 6);

    const auto manifest = nlohmann::json::parse(slurp(path_of(dir, "gen.json")));
    CHECK(manifest["sigma_min"].get<double>() ==
          doctest::Approx(truth.sigma.back()).epsilon(1e-15));
    CHECK(manifest["options"]["seed"].get<long long>() == 11);
    CHECK(manifest["kappa"].get<double>() > 1.0);

    // every artifact carries the reproducibility stamp
    CHECK(slurp(path_of(dir, "matrix.mtx")).find("tool=minsvd") != std::string::npos);
    CHECK(slurp(path_of(dir, "truth.txt")).find("tool=minsvd") != std::string::npos);

    // the same seed reproduces the files byte for byte, wherever they land
    const auto again = scratch_root() / "gen_easy_again";
    run_cli("gen --gen easy --m 60 --n 6 --seed 11 --out \"" + again.string() + "\"");
    CHECK(slurp(path_of(dir, "matrix.mtx")) == slurp(path_of(again, "matrix.mtx")));
    CHECK(slurp(path_of(dir, "truth.txt")) == slurp(path_of(again, "truth.txt")));
}

TEST_CASE("solve converges on a generated problem and reports truth-based errors") {
    const auto gen_dir = scratch_root() / "solve_gen";
    REQUIRE(run_cli("gen --gen easy --m 200 --n 20 --seed 3 --out \"" +
                    gen_dir.string() + "\"")
                .exit_code == 0);

    const auto out_dir = scratch_root() / "solve_out";
    RunResult r = run_cli("solve --input \"" + path_of(gen_dir, "matrix.mtx") +
                          "\" --truth \"" + path_of(gen_dir, "truth.txt") +
                          "\" --no-timing --out \"" + out_dir.string() + "\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("sigma_min ~=") != std::string::npos);

    const auto summary = nlohmann::json::parse(slurp(path_of(out_dir, "summary.json")));
    CHECK(summary["converged"].get<bool>());
    CHECK(summary["status"].get<std::string>() == "converged");
    const minsvd::TruthData truth = minsvd::read_truth_file(path_of(gen_dir, "truth.txt"));
    CHECK(summary["sigma"][0].get<double>() ==
          doctest::Approx(truth.sigma.back()).epsilon(1e-6));
    CHECK(summary["matvecs_a"].get<long long>() ==
          summary["iterations"].get<long long>() + 1);

    // the sidecar switches the error columns on: the final row has a real
    // relative error, not the -1 placeholder
    const std::string csv = slurp(path_of(out_dir, "record.csv"));
    CHECK(csv.rfind("# tool=minsvd", 0) == 0);
    const auto row = last_csv_row(csv);
    REQUIRE(row.size() == 8);
    CHECK(std::stod(row[6]) >= 0.0);
    CHECK(std::stod(row[6]) < 1e-6);
}

TEST_CASE("identical configurations reproduce the record byte for byte") {
    const auto a = scratch_root() / "repro_a";
    const auto b = scratch_root() / "repro_b";
    const std::string common =
        "solve --gen gap_controlled:1 --m 300 --n 30 --seed 9 --no-timing --out \"";
    REQUIRE(run_cli(common + a.string() + "\"").exit_code == 0);
    REQUIRE(run_cli(common + b.string() + "\"", "MINSVD_THREADS=1 ").exit_code == 0);
    const std::string rec_a = slurp(path_of(a, "record.csv"));
    CHECK(!rec_a.empty());
    CHECK(rec_a == slurp(path_of(b, "record.csv")));
    // summaries agree on everything but the path of the record they point at
    auto sum_a = nlohmann::json::parse(slurp(path_of(a, "summary.json")));
    auto sum_b = nlohmann::json::parse(slurp(path_of(b, "summary.json")));
    sum_a.erase("record_csv");
    sum_b.erase("record_csv");
    CHECK(sum_a.dump() == sum_b.dump());
}

TEST_CASE("exit codes separate usage, I/O, dimension, and iteration failures") {
    const auto dir = scratch_root() / "exits";
    std::filesystem::create_directories(dir);

    SUBCASE("usage errors exit 1") {
        CHECK(run_cli("").exit_code == 1);
        CHECK(run_cli("frobnicate").exit_code == 1);
        CHECK(run_cli("solve").exit_code == 1);
        CHECK(run_cli("solve --no-such-flag").exit_code == 1);
        CHECK(run_cli("solve --input a.mtx --gen easy --m 4 --n 2").exit_code == 1);
        CHECK(run_cli("gen --gen easy --m 10").exit_code == 1);
        CHECK(run_cli("gen --gen made_up --m 10 --n 5 --out \"" + dir.string() + "\"")
                  .exit_code == 1);
        CHECK(run_cli("gen --gen clustered:oops --m 10 --n 5 --out \"" + dir.string() +
                      "\"")
                  .exit_code == 1);
        CHECK(run_cli("aaa --m 7").exit_code == 1);
        CHECK(run_cli("aaa --backend qr").exit_code == 1);
        CHECK(run_cli("predict --eta 0.1 --gap 1", "MINSVD_THREADS=abc ").exit_code == 1);
        CHECK(run_cli("predict --eta 0.1 --gap 1", "MINSVD_THREADS=0 ").exit_code == 1);
    }

    SUBCASE("missing or malformed files exit 2") {
        CHECK(run_cli("solve --input \"" + path_of(dir, "missing.mtx") + "\"").exit_code ==
              2);
        std::ofstream bad(dir / "bad.mtx");
        bad << "this is not a matrix market file\n";
        bad.close();
        CHECK(run_cli("solve --input \"" + path_of(dir, "bad.mtx") + "\"").exit_code == 2);
    }

    SUBCASE("shape mismatches exit 3") {
        REQUIRE(run_cli("gen --gen easy --m 50 --n 5 --out \"" + dir.string() + "\"")
                    .exit_code == 0);
        CHECK(run_cli("solve --gen easy --m 40 --n 4 --truth \"" +
                      path_of(dir, "truth.txt") + "\" --out \"" + dir.string() + "\"")
                  .exit_code == 3);
    }

    SUBCASE("an exhausted iteration cap exits 4 but still writes the artifacts") {
        const auto out = scratch_root() / "capped";
        RunResult r = run_cli("solve --gen hard --m 600 --n 60 --max-iter 2 "
                              "--no-stagnation --out \"" +
                              out.string() + "\"");
        CHECK(r.exit_code == 4);
        const auto summary = nlohmann::json::parse(slurp(path_of(out, "summary.json")));
        CHECK_FALSE(summary["converged"].get<bool>());
        CHECK(summary["iterations"].get<long long>() == 2);
        CHECK(!slurp(path_of(out, "record.csv")).empty());
    }
}

TEST_CASE("predict prints the documented rate parameters") {
    RunResult r = run_cli("predict --eta 0.1 --gap 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("q = 0.55") != std::string::npos);
    CHECK(r.out.find("hypothesis = satisfied") != std::string::npos);

    RunResult with_eps = run_cli("predict --eta 0.1 --gap 1 --eps 1e-6");
    CHECK(with_eps.out.find("iterations(eps = 1e-06)") != std::string::npos);

    // eta = 0.5 >= gap/(2+gap) = 0.2: no finite envelope constant exists
    RunResult bad = run_cli("predict --eta 0.5 --gap 0.5");
    CHECK(bad.exit_code == 0);
    CHECK(bad.out.find("c = undefined") != std::string::npos);
    CHECK(bad.out.find("hypothesis = violated") != std::string::npos);
}

TEST_CASE("compare writes one record per method plus a manifest") {
    const auto dir = scratch_root() / "compare";
    RunResult r = run_cli("compare --gen easy --m 120 --n 12 --seed 5 --no-timing "
                          "--out \"" +
                          dir.string() + "\"");
    CHECK(r.exit_code == 0);
    for (const char* name : {"rlobpcg.csv", "lobpcg.csv", "lobpcg_diag.csv",
                             "lanczos.csv"})
        CHECK_MESSAGE(std::filesystem::exists(dir / name), name);

    const auto manifest = nlohmann::json::parse(slurp(path_of(dir, "compare.json")));
    const auto& methods = manifest["methods"];
    REQUIRE(methods.size() == 4);
    for (const char* name : {"rlobpcg", "lobpcg", "lobpcg_diag", "lanczos"}) {
        REQUIRE_MESSAGE(methods.contains(name), name);
        CHECK(methods[name]["rows"].get<long long>() >= 1);
        CHECK(methods[name]["matvecs_a"].get<long long>() >= 1);
    }
    // generated problems carry their truth, so the error columns are live
    CHECK(methods["rlobpcg"]["final_relerr"].get<double>() < 1e-6);
    CHECK(methods["rlobpcg"]["status"].get<std::string>() == "converged");
}

TEST_CASE("aaa runs on generated twin-circle samples and on a CSV") {
    const auto dir = scratch_root() / "aaa_twin";
    RunResult r = run_cli("aaa --m 120 --n 7 --lawson-steps 8 --out \"" + dir.string() +
                          "\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("plain fit error") != std::string::npos);

    const auto summary = nlohmann::json::parse(slurp(path_of(dir, "aaa.json")));
    const double plain = summary["plain_max_error"].get<double>();
    const double refined = summary["refined_max_error"].get<double>();
    CHECK(refined <= plain);
    CHECK(plain < 1.0);  // the sign function has |f| = 1, a fit must beat the trivial 0

    // one curve row per sample, after the stamp and the header
    const std::string curve = slurp(path_of(dir, "error_curve.csv"));
    CHECK(static_cast<long>(std::count(curve.begin(), curve.end(), '\n')) == 120 + 2);

    // a rational function of matching degree is reproduced from a sample CSV
    const auto csv_dir = scratch_root() / "aaa_csv";
    std::filesystem::create_directories(csv_dir);
    {
        std::ofstream samples(csv_dir / "samples.csv");
        samples << std::setprecision(17);
        samples << "# f(z) = 1/(z - 0.5) on a circle of radius 2\n";
        for (int i = 0; i < 40; ++i) {
            const double t = 2.0 * 3.14159265358979323846 * i / 40.0;
            const std::complex<double> z(2.0 * std::cos(t), 2.0 * std::sin(t));
            const std::complex<double> f = 1.0 / (z - 0.5);
            samples << z.real() << "," << z.imag() << "," << f.real() << ","
                    << f.imag() << "\n";
        }
    }
    RunResult exact = run_cli("aaa --input \"" + path_of(csv_dir, "samples.csv") +
                              "\" --n 5 --lawson-steps 0 --out \"" + csv_dir.string() +
                              "\"");
    CHECK(exact.exit_code == 0);
    const auto exact_summary =
        nlohmann::json::parse(slurp(path_of(csv_dir, "aaa.json")));
    CHECK(exact_summary["plain_max_error"].get<double>() < 1e-10);
    CHECK(exact_summary["degree_fitted"].get<long long>() <= 5);

    // a malformed sample row is an I/O failure
    {
        std::ofstream broken(csv_dir / "broken.csv");
        broken << "1.0,2.0,three,4.0\n";
    }
    CHECK(run_cli("aaa --input \"" + path_of(csv_dir, "broken.csv") + "\"").exit_code ==
          2);
}
