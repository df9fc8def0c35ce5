#include "tfm/xlab/report.hpp"

#include "tfm/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tfm::xlab {

namespace {

constexpr std::string_view header = "experiment,param_json,member,scale,input_norm,output_norm,ratio,slope,residual";

std::string quote(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos)
        return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    if (quoted)
        throw InvalidArgument("unterminated quoted CSV field");
    return fields;
}

double parse_double(const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw InvalidArgument("bad number '" + s + "' in CSV");
    return v;
}

std::optional<double> parse_optional(const std::string& s) {
    if (s.empty())
        return std::nullopt;
    return parse_double(s);
}

std::string grid_string(const GridSpec& g) {
    std::ostringstream os;
    os << g.dim << "," << g.n << "," << format_number(g.extent);
    return os.str();
}

} // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void ExperimentReport::add_row(ReportRow row) {
    if (!(row.input_norm > 0.0) || !std::isfinite(row.input_norm) || !std::isfinite(row.output_norm) ||
        row.output_norm < 0.0)
        throw InvalidArgument("report row for '" + row.member + "' has a non-positive or non-finite norm");
    rows.push_back(std::move(row));
}

void ExperimentReport::add_check(std::string name, bool ok, std::string detail) {
    checks.push_back({std::move(name), ok, std::move(detail)});
}

bool ExperimentReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed)
            return false;
    return true;
}

CsvDocument to_csv(std::span<const ExperimentReport> reports) {
    CsvDocument doc;
    doc.version = std::string(version);
    if (!reports.empty()) {
        doc.seed = reports.front().seed;
        doc.grid = grid_string(reports.front().grid);
    }
    for (const auto& r : reports)
        for (const auto& row : r.rows) {
            nlohmann::json params = r.parameters;
            for (const auto& [k, v] : row.params.items())
                params[k] = v;
            doc.records.push_back({r.experiment, params.dump(), row.member, row.scale, row.input_norm,
                                   row.output_norm, row.ratio(), row.slope, row.residual});
        }
    // Values pass through the text form so the document equals what a reader sees.
    return parse_csv(format_csv(doc));
}

std::string format_csv(const CsvDocument& doc) {
    std::ostringstream os;
    os << "# seed=" << doc.seed << " grid=" << doc.grid << " version=" << doc.version << "\n";
    os << header << "\n";
    const auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    for (const auto& r : doc.records)
        os << quote(r.experiment) << ',' << quote(r.param_json) << ',' << quote(r.member) << ','
           << format_number(r.scale) << ',' << format_number(r.input_norm) << ','
           << format_number(r.output_norm) << ',' << format_number(r.ratio) << ',' << opt(r.slope) << ','
           << opt(r.residual) << "\n";
    return os.str();
}

CsvDocument parse_csv(std::string_view text) {
    CsvDocument doc;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
        throw InvalidArgument("CSV is missing the metadata comment line");
    {
        std::istringstream meta(line.substr(2));
        std::string tok;
        while (meta >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos)
                continue;
            const auto key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "seed")
                doc.seed = std::stoull(val);
            else if (key == "grid")
                doc.grid = val;
            else if (key == "version")
                doc.version = val;
        }
    }
    if (!std::getline(in, line) || line != header)
        throw InvalidArgument("CSV header does not match the report schema");
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto f = split_line(line);
        if (f.size() != 9)
            throw InvalidArgument("CSV row has " + std::to_string(f.size()) + " fields, expected 9");
        doc.records.push_back({f[0], f[1], f[2], parse_double(f[3]), parse_double(f[4]), parse_double(f[5]),
                               parse_double(f[6]), parse_optional(f[7]), parse_optional(f[8])});
    }
    return doc;
}

void write_reports(std::span<const ExperimentReport> reports, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << format_csv(to_csv(reports));
    if (!out)
        throw std::runtime_error("failed writing '" + path + "'");
}

void write_report(const ExperimentReport& report, const std::string& path) {
    write_reports(std::span<const ExperimentReport>(&report, 1), path);
}

CsvDocument read_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

} // namespace tfm::xlab
