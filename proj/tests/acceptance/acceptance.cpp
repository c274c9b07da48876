// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here and never calibrated.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzycal/analysis.hpp"
#include "fuzzycal/cli.hpp"
#include "fuzzycal/crisp.hpp"
#include "fuzzycal/fuzzy.hpp"
#include "fuzzycal/io.hpp"
#include "fuzzycal/kernels.hpp"
#include "fuzzycal/synth.hpp"
#include "oracle/brute_force.hpp"
#include "oracle/random_data.hpp"

using namespace fuzzycal;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// Skewed synthetic family for criteria 6 and 7: only skew, K, n and seeds are
// set; the overconfidence gap stays at the generator default.
constexpr double kSkewFamilyGap = GeneratorConfig{}.overconfidence_gap;
constexpr std::size_t kSkewFamilyN = 5000;
constexpr int kSkewFamilySeeds = 10;

// 1. FCE(r = 1) == ECE on 200 random datasets.
Outcome crisp_limit_equivalence() {
    constexpr double kTol = 1e-12;
    constexpr double kMaxSeconds = 10.0;
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::size_t> size(1, 10000);
    double worst = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto ds = testdata::random_dataset(rng, size(rng), {2, 5, 15});
        for (int M : {2, 5, 15}) {
            worst = std::max(worst, std::fabs(fce(ds, FuzzyPartition(M, 1.0)) - ece(ds, M)));
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {worst <= kTol && seconds < kMaxSeconds,
            "max |FCE-ECE| = " + fmt(worst) + " (tol 1e-12), " + fmt(seconds) + " s (limit 10 s)"};
}

// 2. Partition of unity on a 1e5-point grid.
Outcome partition_of_unity() {
    constexpr double kTol = 1e-12;
    constexpr int kGrid = 100000;
    double worst = 0;
    for (int M = 2; M <= 20; ++M) {
        for (double r : {0.1, 0.5, 1.0}) {
            const FuzzyPartition fp(M, r);
            for (int i = 0; i < kGrid; ++i) {
                const double p = static_cast<double>(i) / (kGrid - 1);
                double by_bin = 0, by_vector = 0;
                for (int m = 1; m <= M; ++m) by_bin += fp.membership(p, m);
                for (double v : fp.membership_vector(p)) by_vector += v;
                worst = std::max({worst, std::fabs(by_bin - 1.0), std::fabs(by_vector - 1.0)});
            }
        }
    }
    return {worst <= kTol, "max |sum mu - 1| = " + fmt(worst) + " (tol 1e-12)"};
}

// 3. Literal re-implementations of every formula agree with the library.
Outcome oracle_equivalence() {
    constexpr double kTol = 1e-12;
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::size_t> size(1, 50);
    std::uniform_int_distribution<int> bins(2, 5);
    std::bernoulli_distribution crisp(0.5);
    double worst = 0;
    int absent_mismatch = 0;
    auto track = [&](const std::optional<double>& a, const std::optional<double>& b) {
        if (a.has_value() != b.has_value()) {
            ++absent_mismatch;
        } else if (a) {
            worst = std::max(worst, std::fabs(*a - *b));
        }
    };
    for (int trial = 0; trial < 500; ++trial) {
        const auto ds = testdata::random_dataset(rng, size(rng), {}, 0.55, 4);
        const int M = bins(rng);
        const double r = crisp(rng) ? 1.0 : 0.5;
        const auto rows = oracle::rows_of(ds);
        const FuzzyPartition fp(M, r);

        const auto c_lib = crisp_bin_stats(ds, M);
        const auto c_ref = oracle::crisp_bins(rows, M);
        const auto f_lib = fuzzy_bin_stats(ds, fp);
        const auto f_ref = oracle::fuzzy_bins(rows, M, r);
        for (int m = 0; m < M; ++m) {
            track(c_lib[m].mass, c_ref[m].mass);
            track(c_lib[m].accuracy, c_ref[m].acc);
            track(c_lib[m].mean_confidence, c_ref[m].conf);
            track(f_lib[m].mass, f_ref[m].mass);
            track(f_lib[m].accuracy, f_ref[m].acc);
            track(f_lib[m].mean_confidence, f_ref[m].conf);
        }
        track(ece(ds, M), oracle::ece(rows, M));
        track(fce(ds, fp), oracle::fce(rows, M, r));
        track(overconfidence(ds), oracle::overconfidence(rows));
        track(accuracy(ds), oracle::accuracy(rows));
    }
    return {worst <= kTol && absent_mismatch == 0,
            "max deviation = " + fmt(worst) + " (tol 1e-12), absent mismatches = " +
                std::to_string(absent_mismatch)};
}

// 4. Two-record hand example.
Outcome hand_examples() {
    constexpr double kTol = 1e-12;
    const auto ds = testdata::two_record();
    const double e = ece(ds, 2);
    const double f = fce(ds, FuzzyPartition(2, 0.5));
    const auto of = overconfidence(ds);
    const double acc = accuracy(ds);
    const bool ok = std::fabs(e - 0.275) <= kTol && std::fabs(f - 0.175) <= kTol && of &&
                    std::fabs(*of - 0.45) <= kTol && std::fabs(acc - 0.5) <= kTol;
    return {ok, "ECE " + format_shortest(e) + ", FCE " + format_shortest(f) + ", OF " +
                    (of ? format_shortest(*of) : "absent") + ", accuracy " + format_shortest(acc)};
}

// 5. Calibrated generator yields small errors.
Outcome calibrated_generator() {
    constexpr double kLimit = 0.02;
    GeneratorConfig cfg;
    cfg.n = 100000;
    cfg.num_classes = 2;
    cfg.overconfidence_gap = 0.0;
    cfg.seed = 20240501;
    const auto ds = generate(cfg);
    const double e = ece(ds, 15);
    const double f = fce(ds, FuzzyPartition(15, 0.5));
    return {e < kLimit && f < kLimit,
            "ECE " + fmt(e) + ", FCE " + fmt(f) + " (limit 0.02), skew high, seed 20240501"};
}

GeneratorConfig skew_family(int K, std::uint64_t seed) {
    GeneratorConfig cfg;
    cfg.n = kSkewFamilyN;
    cfg.num_classes = K;
    cfg.skew = SkewShape::high();
    cfg.overconfidence_gap = kSkewFamilyGap;
    cfg.seed = seed;
    return cfg;
}

// 6. Fuzzy bins never cover fewer bins than crisp bins on high-skew data.
Outcome skew_spread() {
    int failures = 0, runs = 0;
    std::string counts;
    for (int K : {2, 4}) {
        for (int s = 0; s < kSkewFamilySeeds; ++s) {
            const auto ds = generate(skew_family(K, static_cast<std::uint64_t>(s)));
            const int crisp = nonzero_mass_bins(crisp_bin_stats(ds, 15));
            const int fuzzy = nonzero_mass_bins(fuzzy_bin_stats(ds, FuzzyPartition(15, 0.5)));
            failures += fuzzy < crisp;
            ++runs;
            if (s == 0) counts += " K=" + std::to_string(K) + ": fuzzy " + std::to_string(fuzzy) +
                                  " vs crisp " + std::to_string(crisp) + ";";
        }
    }
    return {failures == 0, std::to_string(runs - failures) + "/" + std::to_string(runs) +
                               " runs satisfied (seed 0" + counts + ")"};
}

// 7. Delta_FCE <= Delta_ECE in at least 8 of 10 seeds per preset.
Outcome bin_sensitivity() {
    constexpr int kRequired = 8;
    bool ok = true;
    std::string detail;
    for (int K : {2, 4}) {
        int wins = 0;
        double sum_e = 0, sum_f = 0;
        for (int s = 0; s < kSkewFamilySeeds; ++s) {
            const auto ds = generate(skew_family(K, static_cast<std::uint64_t>(s)));
            const double de = *sweep(ds, Metric::kEce, {2, 15}).delta;
            const double df = *sweep(ds, Metric::kFce, {2, 15}).delta;
            wins += df <= de;
            sum_e += de;
            sum_f += df;
        }
        ok = ok && wins >= kRequired;
        detail += "K=" + std::to_string(K) + ": " + std::to_string(wins) + "/10 (mean dECE " +
                  fmt(sum_e / kSkewFamilySeeds) + ", dFCE " + fmt(sum_f / kSkewFamilySeeds) +
                  "); ";
    }
    return {ok, detail + "need >= 8/10"};
}

// 8. CLI outputs and generator round trip are byte-identical across runs.
Outcome determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fuzzycal_acceptance";
    fs::create_directories(dir);
    auto run = [](const std::vector<std::string>& args, std::string& output) {
        std::ostringstream out, err;
        const int code = cli_main(args, out, err);
        output = out.str();
        return code;
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };

    const auto data = (dir / "data.csv").string();
    const auto probvec = (dir / "data.jsonl").string();
    std::string ignored;
    bool ok = run({"generate", "--n", "4000", "--classes", "4", "--skew", "high", "--gap", "0.15",
                   "--seed", "17", "--out", data},
                  ignored) == kExitOk;
    {
        std::ofstream pv(probvec, std::ios::binary);
        pv << "{\"probs\": [0.2, 0.5, 0.3], \"true_label\": 1}\n"
           << "{\"probs\": [0.6, 0.4, 0.0], \"true_label\": 2}\n"
           << "{\"probs\": [0.34, 0.33, 0.33], \"true_label\": 0}\n";
    }

    const std::vector<std::vector<std::string>> commands{
        {"generate", "--n", "1000", "--classes", "3", "--skew", "low", "--gap", "0.2", "--seed", "5"},
        {"eval", "--input", data, "--bins", "15"},
        {"eval", "--input", data, "--bins", "10", "--core-ratio", "0.25", "--report", "text"},
        {"eval", "--input", probvec, "--bins", "3"},
        {"sweep", "--input", data, "--metric", "ece", "--bins", "2..15"},
        {"sweep", "--input", data, "--metric", "fce", "--bins", "2..20", "--core-ratio", "0.75"},
        {"reliability", "--input", data, "--bins", "15", "--mode", "crisp"},
        {"reliability", "--input", data, "--bins", "15", "--mode", "fuzzy"},
    };
    int identical = 0;
    for (const auto& cmd : commands) {
        std::string a, b;
        if (run(cmd, a) == kExitOk && run(cmd, b) == kExitOk && !a.empty() && a == b) ++identical;
    }
    ok = ok && identical == static_cast<int>(commands.size());

    // File outputs through --out as well.
    const auto out1 = (dir / "r1.json").string(), out2 = (dir / "r2.json").string();
    run({"eval", "--input", data, "--out", out1}, ignored);
    run({"eval", "--input", data, "--out", out2}, ignored);
    const bool files_equal = slurp(out1) == slurp(out2) && !slurp(out1).empty();

    // generate -> parse -> re-serialize.
    const auto generated = slurp(data);
    const bool round_trip = to_columns(parse_predictions(fs::path(data))) == generated;

    fs::remove_all(dir);
    return {ok && files_equal && round_trip,
            std::to_string(identical) + "/" + std::to_string(commands.size()) +
                " commands identical, --out files " + (files_equal ? "identical" : "DIFFER") +
                ", round trip " + (round_trip ? "identical" : "DIFFERS")};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"1 crisp-limit equivalence", crisp_limit_equivalence},
        {"2 partition of unity", partition_of_unity},
        {"3 brute-force oracle equivalence", oracle_equivalence},
        {"4 hand examples", hand_examples},
        {"5 calibrated generator soundness", calibrated_generator},
        {"6 skew-spread property", skew_spread},
        {"7 bin-sensitivity trend", bin_sensitivity},
        {"8 determinism", determinism},
    };
    std::printf("kernel backend: %s\n",
                std::string(kernels::to_string(kernels::active_backend())).c_str());
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        const auto outcome = check();
        failed += !outcome.pass;
        std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", name, outcome.detail.c_str());
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
