#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "fuzzycal/cli.hpp"

using namespace fuzzycal;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("fuzzycal_cli_" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    std::string file(const std::string& name, const std::string& contents = {}) const {
        const auto p = path_ / name;
        if (!contents.empty()) std::ofstream(p, std::ios::binary) << contents;
        return p.string();
    }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const char* kTwo = "confidence,predicted_label,true_label\n0.45,0,1\n0.9,1,1\n";

}  // namespace

TEST_CASE("eval on the two-record file") {
    TempDir dir;
    const auto input = dir.file("two.csv", kTwo);
    const auto r = run({"eval", "--input", input, "--bins", "2"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["metrics"]["ece"] == 0.275);
    CHECK(j["metrics"]["fce"] == 0.175);
    CHECK(j["metrics"]["overconfidence"] == 0.45);
    CHECK(j["metrics"]["accuracy"] == 0.5);
    CHECK(j["settings"]["core_ratio"] == 0.5);
    CHECK(j["bins"]["crisp"].size() == 2);
    CHECK(j["bins"]["fuzzy"].size() == 2);

    const auto text = run({"eval", "--input", input, "--bins", "2", "--report", "text"});
    CHECK(text.code == kExitOk);
    CHECK(text.out.find("ECE:             0.275") != std::string::npos);
    CHECK(text.out.find("FCE:             0.175") != std::string::npos);

    const auto out_file = dir.file("report.json");
    CHECK(run({"eval", "--input", input, "--bins", "2", "--out", out_file}).code == kExitOk);
    CHECK(slurp(out_file) == r.out);
}

TEST_CASE("eval defaults to 15 bins") {
    TempDir dir;
    const auto r = run({"eval", "--input", dir.file("two.csv", kTwo)});
    REQUIRE(r.code == kExitOk);
    CHECK(nlohmann::json::parse(r.out)["settings"]["num_bins"] == 15);
}

TEST_CASE("sweep command") {
    TempDir dir;
    const auto input = dir.file("two.csv", kTwo);
    const auto r = run({"sweep", "--input", input, "--metric", "ece", "--bins", "2..3"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["entries"].size() == 2);
    CHECK(j["entries"][0]["num_bins"] == 2);
    CHECK(j["entries"][0]["value"] == 0.275);
    CHECK(j["entries"][1]["num_bins"] == 3);
    CHECK(j["entries"][1]["value"] == 0.275);

    const auto full = run({"sweep", "--input", input, "--metric", "fce"});
    REQUIRE(full.code == kExitOk);
    const auto jf = nlohmann::json::parse(full.out);
    CHECK(jf["entries"].size() == 14);
    CHECK(jf["delta"]["value"].is_number());
    CHECK(jf["core_ratio"] == 0.5);

    const auto custom = run({"sweep", "--input", input, "--metric", "ece", "--bins", "2..6",
                             "--delta-low", "2..3", "--delta-high", "4..6"});
    REQUIRE(custom.code == kExitOk);
    CHECK(nlohmann::json::parse(custom.out)["delta"]["low"] == "2..3");
}

TEST_CASE("reliability command") {
    TempDir dir;
    const auto input = dir.file("two.csv", kTwo);
    const auto r = run({"reliability", "--input", input, "--bins", "2", "--mode", "crisp"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out ==
          "bin_index,lower_edge,upper_edge,mass,mass_fraction,accuracy,mean_confidence,gap\n"
          "1,0,0.5,1,0.5,0,0.45,0.45\n"
          "2,0.5,1,1,0.5,1,0.9,0.1\n");
    const auto f = run({"reliability", "--input", input, "--bins", "2", "--mode", "fuzzy",
                        "--core-ratio", "0.5"});
    CHECK(f.code == kExitOk);
    CHECK(f.out.find("2,0.375,1,1.3,0.65,") != std::string::npos);
}

TEST_CASE("generate command writes reproducible columns files") {
    TempDir dir;
    const auto a = dir.file("a.csv");
    const auto b = dir.file("b.csv");
    CHECK(run({"generate", "--n", "5", "--classes", "2", "--seed", "7", "--out", a}).code == kExitOk);
    CHECK(run({"generate", "--n", "5", "--classes", "2", "--seed", "7", "--out", b}).code == kExitOk);
    const auto text = slurp(a);
    CHECK(text == slurp(b));
    CHECK(text.rfind("confidence,predicted_label,true_label\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);

    const auto skewed = run({"generate", "--n", "100", "--classes", "4", "--skew", "2,5",
                             "--gap", "0.2", "--seed", "1"});
    CHECK(skewed.code == kExitOk);
    CHECK(run({"eval", "--input", a}).code == kExitOk);
}

TEST_CASE("probvec input through the CLI") {
    TempDir dir;
    const auto input = dir.file("p.jsonl",
                                "{\"probs\": [0.55, 0.45], \"true_label\": 1}\n"
                                "{\"probs\": [0.1, 0.9], \"true_label\": 1}\n");
    const auto r = run({"eval", "--input", input, "--bins", "2"});
    REQUIRE(r.code == kExitOk);
    CHECK(nlohmann::json::parse(r.out)["metrics"]["overconfidence"] == 0.55);
    CHECK(run({"eval", "--input", input, "--format", "columns"}).code == kExitData);
}

TEST_CASE("usage errors exit 1 with a reason and help") {
    TempDir dir;
    const auto input = dir.file("two.csv", kTwo);
    const std::vector<std::vector<std::string>> bad{
        {},
        {"frobnicate"},
        {"eval"},
        {"eval", "--input", input, "--bogus"},
        {"eval", "--input", input, "--bins", "1"},
        {"eval", "--input", input, "--bins", "x"},
        {"eval", "--input", input, "--core-ratio", "0"},
        {"eval", "--input", input, "--report", "xml"},
        {"eval", "--input", input, "--format", "tsv"},
        {"sweep", "--input", input, "--metric", "mce"},
        {"sweep", "--input", input, "--metric", "ece", "--bins", "5..2"},
        {"sweep", "--input", input, "--metric", "ece", "--bins", "1..5"},
        {"sweep", "--input", input, "--metric", "ece", "--bins", "2..5", "--delta-low", "2..3"},
        {"reliability", "--input", input, "--mode", "soft"},
        {"generate"},
        {"generate", "--n", "5", "--classes", "1"},
        {"generate", "--n", "5", "--gap", "1"},
        {"generate", "--n", "5", "--skew", "steep"},
    };
    for (const auto& args : bad) {
        const auto r = run(args);
        CAPTURE(args.size());
        CHECK(r.code == kExitUsage);
        CHECK(r.err.rfind("error: ", 0) == 0);
        CHECK(r.err.find("--") != std::string::npos);  // help text follows
    }
}

TEST_CASE("data errors exit 2") {
    TempDir dir;
    CHECK(run({"eval", "--input", dir.file("missing.csv")}).code == kExitData);
    const auto bad = run({"eval", "--input", dir.file("bad.csv", "0.5,0,0\n1.5,0,0\n")});
    CHECK(bad.code == kExitData);
    CHECK(bad.err.find("row 2") != std::string::npos);
    CHECK(run({"eval", "--input", dir.file("empty.csv", "\n")}).code == kExitData);
    CHECK(run({"eval", "--input", dir.file("two.csv", kTwo), "--out", "/nonexistent/x.json"}).code ==
          kExitData);
}

TEST_CASE("help and version exit 0") {
    CHECK(run({"--help"}).code == kExitOk);
    CHECK(run({"eval", "--help"}).out.find("--core-ratio") != std::string::npos);
    CHECK(run({"--version"}).out == "0.1.0\n");
}

TEST_CASE("every command is byte-for-byte deterministic") {
    TempDir dir;
    const auto data = dir.file("gen.csv");
    REQUIRE(run({"generate", "--n", "2000", "--classes", "4", "--gap", "0.1", "--seed", "5",
                 "--out", data})
                .code == kExitOk);
    const std::vector<std::vector<std::string>> commands{
        {"generate", "--n", "300", "--seed", "9"},
        {"eval", "--input", data},
        {"eval", "--input", data, "--report", "text", "--core-ratio", "0.3"},
        {"sweep", "--input", data, "--metric", "ece"},
        {"sweep", "--input", data, "--metric", "fce", "--bins", "2..30"},
        {"reliability", "--input", data, "--mode", "crisp"},
        {"reliability", "--input", data, "--mode", "fuzzy"},
    };
    for (const auto& cmd : commands) {
        const auto a = run(cmd);
        const auto b = run(cmd);
        CHECK(a.code == kExitOk);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}
