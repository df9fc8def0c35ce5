#pragma once

#include "tfm/grid.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tfm::xlab {

inline constexpr std::string_view version = "0.1.0";

struct ReportRow {
    std::string member;
    nlohmann::json params = nlohmann::json::object(); // series-level parameters
    double scale = 0.0;
    double input_norm = 0.0;
    double output_norm = 0.0;
    std::optional<double> slope;
    std::optional<double> residual;

    double ratio() const { return output_norm / input_norm; }
};

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ExperimentReport {
    std::string experiment;
    nlohmann::json parameters = nlohmann::json::object();
    GridSpec grid{};
    std::uint64_t seed = 0;
    std::vector<ReportRow> rows;
    std::vector<Check> checks;          // gate --check
    std::vector<std::string> notes;     // informational only
    std::vector<std::string> warnings;  // e.g. skipped members

    // Validates positivity/finiteness before appending.
    void add_row(ReportRow row);
    void add_check(std::string name, bool passed, std::string detail);
    bool passed() const;
};

// One CSV line, values as they appear in the file.
struct CsvRecord {
    std::string experiment;
    std::string param_json;
    std::string member;
    double scale = 0.0;
    double input_norm = 0.0;
    double output_norm = 0.0;
    double ratio = 0.0;
    std::optional<double> slope;
    std::optional<double> residual;

    friend bool operator==(const CsvRecord&, const CsvRecord&) = default;
};

struct CsvDocument {
    std::uint64_t seed = 0;
    std::string grid; // "d,n,L"
    std::string version;
    std::vector<CsvRecord> records;

    friend bool operator==(const CsvDocument&, const CsvDocument&) = default;
};

CsvDocument to_csv(std::span<const ExperimentReport> reports);
std::string format_csv(const CsvDocument& doc);
CsvDocument parse_csv(std::string_view text);

// %.17g, the shortest form guaranteed to round-trip a double.
std::string format_number(double v);

void write_report(const ExperimentReport& report, const std::string& path);
void write_reports(std::span<const ExperimentReport> reports, const std::string& path);
CsvDocument read_report(const std::string& path);

} // namespace tfm::xlab
