#include "fuzzycal/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "fuzzycal/crisp.hpp"
#include "fuzzycal/error.hpp"
#include "fuzzycal/fuzzy.hpp"
#include "fuzzycal/io.hpp"

namespace fuzzycal {

using Json = nlohmann::ordered_json;

namespace {

Json number(double v) { return round_significant(v); }

Json optional_number(const std::optional<double>& v) {
    return v ? number(*v) : Json(nullptr);
}

Json tool_json() {
    return Json{{"name", std::string(kToolName)}, {"version", std::string(kToolVersion)}};
}

Json bins_json(const std::vector<BinStats>& bins) {
    Json rows = Json::array();
    for (const auto& b : bins) {
        rows.push_back(Json{{"bin_index", b.bin_index},
                            {"lower_edge", number(b.lower_edge)},
                            {"upper_edge", number(b.upper_edge)},
                            {"mass", number(b.mass)},
                            {"accuracy", optional_number(b.accuracy)},
                            {"mean_confidence", optional_number(b.mean_confidence)},
                            {"gap", optional_number(b.gap())}});
    }
    return rows;
}

Json source_json(const DatasetDescriptor& d) {
    if (const auto* path = std::get_if<std::string>(&d.source)) return Json{{"path", *path}};
    const auto& g = std::get<GeneratorConfig>(d.source);
    return Json{{"generator",
                 Json{{"n", g.n},
                      {"num_classes", g.num_classes},
                      {"skew", Json{{"alpha", number(g.skew.alpha)}, {"beta", number(g.skew.beta)}}},
                      {"overconfidence_gap", number(g.overconfidence_gap)},
                      {"seed", g.seed},
                      {"algorithm", std::string(kGeneratorAlgorithm)}}}};
}

Json report_json(const CalibrationReport& r) {
    return Json{
        {"tool", tool_json()},
        {"dataset",
         Json{{"source", source_json(r.dataset)},
              {"n", r.dataset.n},
              {"num_classes", r.dataset.num_classes}}},
        {"settings",
         Json{{"num_bins", r.settings.num_bins},
              {"core_ratio", number(r.settings.core_ratio)},
              {"interval_convention", std::string(kIntervalConvention)}}},
        {"metrics",
         Json{{"accuracy", number(r.accuracy)},
              {"ece", number(r.ece)},
              {"fce", number(r.fce)},
              {"overconfidence", optional_number(r.overconfidence)}}},
        {"bins", Json{{"crisp", bins_json(r.crisp_bins)}, {"fuzzy", bins_json(r.fuzzy_bins)}}},
    };
}

std::string cell(const std::optional<double>& v) {
    return v ? format_significant(*v) : std::string("-");
}

void text_bins(std::ostream& os, const char* title, const std::vector<BinStats>& bins) {
    os << '\n' << title << '\n';
    os << std::left << std::setw(5) << "bin" << std::setw(12) << "lower" << std::setw(12)
       << "upper" << std::setw(12) << "mass" << std::setw(12) << "accuracy" << std::setw(12)
       << "confidence" << "gap\n";
    for (const auto& b : bins) {
        os << std::setw(5) << std::to_string(b.bin_index) << std::setw(12)
           << format_significant(b.lower_edge) << std::setw(12)
           << format_significant(b.upper_edge) << std::setw(12) << format_significant(b.mass)
           << std::setw(12) << cell(b.accuracy) << std::setw(12) << cell(b.mean_confidence)
           << cell(b.gap()) << '\n';
    }
}

std::string report_text(const CalibrationReport& r) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << kToolName << ' ' << kToolVersion << '\n';
    if (const auto* path = std::get_if<std::string>(&r.dataset.source)) {
        os << "source:          " << *path << '\n';
    } else {
        const auto& g = std::get<GeneratorConfig>(r.dataset.source);
        os << "source:          generator (seed " << std::to_string(g.seed) << ", skew "
           << format_significant(g.skew.alpha) << ',' << format_significant(g.skew.beta)
           << ", gap " << format_significant(g.overconfidence_gap) << ")\n";
    }
    os << "samples:         " << std::to_string(r.dataset.n) << '\n'
       << "classes:         " << std::to_string(r.dataset.num_classes) << '\n'
       << "bins:            " << std::to_string(r.settings.num_bins) << '\n'
       << "core ratio:      " << format_significant(r.settings.core_ratio) << '\n'
       << "intervals:       " << kIntervalConvention << "\n\n"
       << "accuracy:        " << format_significant(r.accuracy) << '\n'
       << "ECE:             " << format_significant(r.ece) << '\n'
       << "FCE:             " << format_significant(r.fce) << '\n'
       << "overconfidence:  " << cell(r.overconfidence) << '\n';
    text_bins(os, "crisp bins", r.crisp_bins);
    text_bins(os, "fuzzy bins", r.fuzzy_bins);
    return os.str();
}

}  // namespace

CalibrationReport make_report(const ValidatedDataset& dataset, DatasetDescriptor descriptor,
                              const BinConfig& settings) {
    settings.validate();
    const FuzzyPartition partition(settings.num_bins, settings.core_ratio);
    CalibrationReport r;
    descriptor.n = dataset.size();
    descriptor.num_classes = dataset.num_classes();
    r.dataset = std::move(descriptor);
    r.settings = settings;
    r.accuracy = accuracy(dataset);
    r.crisp_bins = crisp_bin_stats(dataset, settings.num_bins);
    r.fuzzy_bins = fuzzy_bin_stats(dataset, partition);
    r.ece = weighted_gap(r.crisp_bins, static_cast<double>(dataset.size()));
    r.fce = fce(dataset, partition);
    r.overconfidence = overconfidence(dataset);
    return r;
}

ReportFormat parse_report_format(std::string_view text) {
    if (text == "json") return ReportFormat::kJson;
    if (text == "text") return ReportFormat::kText;
    throw Error(ErrorCode::kInvalidConfig, "unknown report format '" + std::string(text) + "'");
}

std::string render_report(const CalibrationReport& report, ReportFormat format) {
    if (format == ReportFormat::kText) return report_text(report);
    return report_json(report).dump(2) + '\n';
}

std::string render_sweep(const SweepResult& result) {
    Json entries = Json::array();
    for (const auto& e : result.entries) {
        entries.push_back(Json{{"num_bins", e.num_bins}, {"value", number(e.value)}});
    }
    const Json out{
        {"tool", tool_json()},
        {"metric", std::string(to_string(result.metric))},
        {"core_ratio", result.core_ratio ? number(*result.core_ratio) : Json(nullptr)},
        {"entries", entries},
        {"delta",
         Json{{"low", to_string(result.delta_low)},
              {"high", to_string(result.delta_high)},
              {"method", result.delta_method == DeltaMethod::kMeanDifference ? "mean_difference"
                                                                             : "pairwise"},
              {"value", optional_number(result.delta)}}},
    };
    return out.dump(2) + '\n';
}

std::string render_reliability(const ReliabilityTable& table) {
    auto field = [](const std::optional<double>& v) {
        return v ? format_significant(*v) : std::string("NA");
    };
    std::string out = "bin_index,lower_edge,upper_edge,mass,mass_fraction,accuracy,mean_confidence,gap\n";
    for (const auto& row : table.rows) {
        out += std::to_string(row.bin_index) + ',' + format_significant(row.lower_edge) + ',' +
               format_significant(row.upper_edge) + ',' + format_significant(row.mass) + ',' +
               format_significant(row.mass_fraction) + ',' + field(row.accuracy) + ',' +
               field(row.mean_confidence) + ',' + field(row.gap) + '\n';
    }
    return out;
}

void write_report(const CalibrationReport& report, ReportFormat format, const std::string& path) {
    write_text_file(path, render_report(report, format));
}

}  // namespace fuzzycal
