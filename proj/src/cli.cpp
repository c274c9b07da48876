#include "fuzzycal/cli.hpp"

#include <algorithm>
#include <ostream>

#include <CLI11.hpp>

#include "fuzzycal/analysis.hpp"
#include "fuzzycal/error.hpp"
#include "fuzzycal/io.hpp"
#include "fuzzycal/report.hpp"
#include "fuzzycal/synth.hpp"

namespace fuzzycal {

namespace {

struct EvalArgs {
    std::string input;
    std::string format = "auto";
    int bins = kDefaultNumBins;
    double core_ratio = kDefaultCoreRatio;
    std::string out = "-";
    std::string report = "json";
};

struct SweepArgs {
    std::string input;
    std::string format = "auto";
    std::string metric;
    std::string bins = "2..15";
    double core_ratio = kDefaultCoreRatio;
    std::string delta_low;
    std::string delta_high;
    std::string out = "-";
};

struct ReliabilityArgs {
    std::string input;
    std::string format = "auto";
    int bins = kDefaultNumBins;
    std::string mode = "crisp";
    double core_ratio = kDefaultCoreRatio;
    std::string out = "-";
};

struct GenerateArgs {
    std::size_t n = 0;
    int classes = 2;
    std::string skew = "high";
    double gap = 0.0;
    std::uint64_t seed = 0;
    std::string out = "-";
};

// Configuration mistakes are usage errors; everything about the data is a data error.
bool is_usage_error(ErrorCode code) {
    return code == ErrorCode::kInvalidConfig || code == ErrorCode::kInvalidRange ||
           code == ErrorCode::kRangeNotCovered;
}

void emit(std::ostream& out, const std::string& path, const std::string& contents) {
    if (path == "-") {
        out << contents;
        out.flush();
        return;
    }
    write_text_file(path, contents);
}

int run_eval(const EvalArgs& a, std::ostream& out) {
    const auto dataset = parse_predictions(a.input, parse_input_format(a.format));
    const auto format = parse_report_format(a.report);
    const auto report =
        make_report(dataset, DatasetDescriptor{a.input, 0, 0}, BinConfig{a.bins, a.core_ratio});
    emit(out, a.out, render_report(report, format));
    return kExitOk;
}

int run_sweep(const SweepArgs& a, std::ostream& out) {
    const Metric metric = a.metric == "ece" ? Metric::kEce : Metric::kFce;
    const BinRange range = parse_bin_range(a.bins);
    SweepOptions options;
    options.core_ratio = a.core_ratio;
    if (!a.delta_low.empty()) options.delta_low = parse_bin_range(a.delta_low);
    if (!a.delta_high.empty()) options.delta_high = parse_bin_range(a.delta_high);
    options.require_delta = !a.delta_low.empty() || !a.delta_high.empty();
    const auto dataset = parse_predictions(a.input, parse_input_format(a.format));
    emit(out, a.out, render_sweep(sweep(dataset, metric, range, options)));
    return kExitOk;
}

int run_reliability(const ReliabilityArgs& a, std::ostream& out) {
    const BinningMode mode = a.mode == "crisp" ? BinningMode::kCrisp : BinningMode::kFuzzy;
    BinConfig{a.bins, a.core_ratio}.validate();
    const auto dataset = parse_predictions(a.input, parse_input_format(a.format));
    emit(out, a.out, render_reliability(reliability_data(dataset, a.bins, mode, a.core_ratio)));
    return kExitOk;
}

int run_generate(const GenerateArgs& a, std::ostream& out) {
    GeneratorConfig config;
    config.n = a.n;
    config.num_classes = a.classes;
    config.skew = parse_skew(a.skew);
    config.overconfidence_gap = a.gap;
    config.seed = a.seed;
    emit(out, a.out, to_columns(generate(config)));
    return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Calibration error estimation with crisp (ECE) and fuzzy (FCE) binning",
                 std::string(kToolName)};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    const auto formats = CLI::IsMember({"auto", "columns", "probvec"});

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Compute accuracy, ECE, FCE, OF and per-bin tables");
    eval->add_option("--input", eval_args.input, "Prediction file")->required();
    eval->add_option("--format", eval_args.format, "Input format")->check(formats)
        ->capture_default_str();
    eval->add_option("--bins", eval_args.bins, "Number of bins M")->capture_default_str();
    eval->add_option("--core-ratio", eval_args.core_ratio, "Fuzzy core ratio r in (0, 1]")
        ->capture_default_str();
    eval->add_option("--out", eval_args.out, "Output file, - for stdout")->capture_default_str();
    eval->add_option("--report", eval_args.report, "Report format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a metric across a range of bin counts");
    sweep_cmd->add_option("--input", sweep_args.input, "Prediction file")->required();
    sweep_cmd->add_option("--format", sweep_args.format, "Input format")->check(formats)
        ->capture_default_str();
    sweep_cmd->add_option("--metric", sweep_args.metric, "ece or fce")
        ->required()
        ->check(CLI::IsMember({"ece", "fce"}));
    sweep_cmd->add_option("--bins", sweep_args.bins, "Bin range LO..HI")->capture_default_str();
    sweep_cmd->add_option("--core-ratio", sweep_args.core_ratio, "Fuzzy core ratio (fce only)")
        ->capture_default_str();
    sweep_cmd->add_option("--delta-low", sweep_args.delta_low, "Few-bins range (default 2..7)");
    sweep_cmd->add_option("--delta-high", sweep_args.delta_high, "Many-bins range (default 8..15)");
    sweep_cmd->add_option("--out", sweep_args.out, "Output file, - for stdout")
        ->capture_default_str();

    ReliabilityArgs rel_args;
    auto* rel = app.add_subcommand("reliability", "Per-bin reliability table as CSV");
    rel->add_option("--input", rel_args.input, "Prediction file")->required();
    rel->add_option("--format", rel_args.format, "Input format")->check(formats)
        ->capture_default_str();
    rel->add_option("--bins", rel_args.bins, "Number of bins M")->capture_default_str();
    rel->add_option("--mode", rel_args.mode, "crisp or fuzzy")
        ->check(CLI::IsMember({"crisp", "fuzzy"}))
        ->capture_default_str();
    rel->add_option("--core-ratio", rel_args.core_ratio, "Fuzzy core ratio (fuzzy only)")
        ->capture_default_str();
    rel->add_option("--out", rel_args.out, "Output file, - for stdout")->capture_default_str();

    GenerateArgs gen_args;
    auto* gen = app.add_subcommand("generate", "Write a synthetic miscalibrated dataset");
    gen->add_option("--n", gen_args.n, "Number of records")->required();
    gen->add_option("--classes", gen_args.classes, "Number of classes K")->capture_default_str();
    gen->add_option("--skew", gen_args.skew, "low, high or A,B (Beta shape)")
        ->capture_default_str();
    gen->add_option("--gap", gen_args.gap, "Overconfidence gap g in [0, 1)")
        ->capture_default_str();
    gen->add_option("--seed", gen_args.seed, "64-bit seed")->capture_default_str();
    gen->add_option("--out", gen_args.out, "Output file, - for stdout")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        const auto* active = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << active->help();
        return kExitUsage;
    }

    try {
        if (eval->parsed()) return run_eval(eval_args, out);
        if (sweep_cmd->parsed()) return run_sweep(sweep_args, out);
        if (rel->parsed()) return run_reliability(rel_args, out);
        return run_generate(gen_args, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        if (is_usage_error(e.code())) {
            const auto subs = app.get_subcommands();
            err << (subs.empty() ? app.help() : subs.front()->help());
            return kExitUsage;
        }
        return kExitData;
    }
}

}  // namespace fuzzycal
