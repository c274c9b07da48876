#include "fuzzycal/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "fuzzycal/compensated.hpp"
#include "fuzzycal/error.hpp"

namespace fuzzycal {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return false;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    return ec == std::errc{} && ptr == end;
}

void check_record(const PredictionRecord& r, std::size_t line) {
    if (!(r.confidence >= 0.0 && r.confidence <= 1.0)) {
        throw RowError(ErrorCode::kOutOfRange, line,
                       "confidence " + format_shortest(r.confidence) + " outside [0, 1]");
    }
    if (r.predicted_label < 0 || r.true_label < 0) {
        throw RowError(ErrorCode::kNegativeLabel, line, "labels must be non-negative");
    }
}

PredictionRecord parse_columns_line(std::string_view line, std::size_t line_no) {
    std::string_view fields[3];
    std::size_t count = 0;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        const auto field = line.substr(start, comma == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : comma - start);
        if (count == 3) {
            throw RowError(ErrorCode::kParseError, line_no, "expected 3 fields");
        }
        fields[count++] = field;
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (count != 3) throw RowError(ErrorCode::kParseError, line_no, "expected 3 fields");

    PredictionRecord r;
    if (!parse_number(fields[0], r.confidence)) {
        throw RowError(ErrorCode::kParseError, line_no,
                       "confidence '" + std::string(trim(fields[0])) + "' is not a number");
    }
    if (!parse_number(fields[1], r.predicted_label) || !parse_number(fields[2], r.true_label)) {
        throw RowError(ErrorCode::kParseError, line_no, "labels must be integers");
    }
    check_record(r, line_no);
    return r;
}

PredictionRecord parse_probvec_line(std::string_view line, std::size_t line_no) {
    nlohmann::json obj;
    try {
        obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw RowError(ErrorCode::kParseError, line_no, "invalid JSON");
    }
    if (!obj.is_object() || !obj.contains("probs") || !obj.contains("true_label")) {
        throw RowError(ErrorCode::kParseError, line_no,
                       "expected an object with 'probs' and 'true_label'");
    }
    const auto& probs = obj["probs"];
    const auto& label = obj["true_label"];
    if (!probs.is_array() || probs.empty()) {
        throw RowError(ErrorCode::kParseError, line_no, "'probs' must be a non-empty array");
    }
    if (!label.is_number_integer()) {
        throw RowError(ErrorCode::kParseError, line_no, "'true_label' must be an integer");
    }

    PredictionRecord r;
    CompensatedSum total;
    double best = -1.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (!probs[k].is_number()) {
            throw RowError(ErrorCode::kParseError, line_no, "'probs' entries must be numbers");
        }
        const double v = probs[k].get<double>();
        if (!(v >= 0.0 && v <= 1.0)) {
            throw RowError(ErrorCode::kOutOfRange, line_no,
                           "probability " + format_shortest(v) + " outside [0, 1]");
        }
        total += v;
        if (v > best) {  // strict: ties keep the lowest index
            best = v;
            r.predicted_label = static_cast<std::int64_t>(k);
        }
    }
    if (std::abs(total.value() - 1.0) > kProbSumTolerance) {
        throw RowError(ErrorCode::kProbSumError, line_no,
                       "probabilities sum to " + format_shortest(total.value()));
    }
    r.confidence = best;
    r.true_label = label.get<std::int64_t>();
    check_record(r, line_no);
    return r;
}

}  // namespace

InputFormat parse_input_format(std::string_view text) {
    if (text == "auto") return InputFormat::kAuto;
    if (text == "columns") return InputFormat::kColumns;
    if (text == "probvec") return InputFormat::kProbvec;
    throw Error(ErrorCode::kInvalidConfig, "unknown input format '" + std::string(text) + "'");
}

ValidatedDataset parse_predictions(std::istream& in, InputFormat format) {
    std::vector<PredictionRecord> records;
    std::string raw;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (format == InputFormat::kAuto) {
                format = line.front() == '{' ? InputFormat::kProbvec : InputFormat::kColumns;
            }
            if (format == InputFormat::kColumns && line == kColumnsHeader) continue;
        }
        records.push_back(format == InputFormat::kProbvec ? parse_probvec_line(line, line_no)
                                                          : parse_columns_line(line, line_no));
    }
    if (in.bad()) throw Error(ErrorCode::kIoError, "read failed");
    if (records.empty()) throw Error(ErrorCode::kEmptyInput, "no records in input");
    return validate_records(std::move(records));
}

ValidatedDataset parse_predictions(const std::filesystem::path& path, InputFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
    return parse_predictions(in, format);
}

std::string format_shortest(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string format_significant(double value, int digits) {
    char buf[64];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, digits);
    return std::string(buf, ptr);
}

double round_significant(double value, int digits) {
    const auto text = format_significant(value, digits);
    double out = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), out);
    return out;
}

void write_columns(const ValidatedDataset& dataset, std::ostream& out) {
    out << kColumnsHeader << '\n';
    for (const auto& r : dataset.records()) {
        out << format_shortest(r.confidence) << ',' << std::to_string(r.predicted_label) << ','
            << std::to_string(r.true_label) << '\n';
    }
}

std::string to_columns(const ValidatedDataset& dataset) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    write_columns(dataset, os);
    return os.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
    if (path == "-") {
        std::cout.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        std::cout.flush();
        if (!std::cout) throw Error(ErrorCode::kIoError, "write to stdout failed");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) throw Error(ErrorCode::kIoError, "write to '" + path + "' failed");
}

}  // namespace fuzzycal
