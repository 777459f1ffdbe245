#include "ogtt/csv.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>

#include "ogtt/config.hpp"
#include "ogtt/errors.hpp"

namespace ogtt {

namespace {

constexpr std::array<const char*, kSampleCount> kGlucoseColumns{"g0", "g30", "g60", "g90", "g120"};

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::optional<std::size_t> find_column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    return std::nullopt;
}

}  // namespace

std::string describe(const RowError& e) {
    return "line " + std::to_string(e.line) + ", field '" + e.field + "': " + e.message;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                current += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                current += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += ch;
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

IngestResult parse_csv(std::istream& in, bool strict) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (!line.empty()) {
            header = split_csv_line(line);
            break;
        }
    }
    if (header.empty()) throw SchemaError("CSV input is empty");

    auto require = [&](const std::string& name) {
        const auto idx = find_column(header, name);
        if (!idx) throw SchemaError("CSV header is missing column '" + name + "'");
        return *idx;
    };
    const std::size_t id_col = require("patient_id");
    const std::size_t sex_col = require("sex");
    const std::size_t age_col = require("age");
    std::array<std::size_t, kSampleCount> g_cols{};
    for (std::size_t i = 0; i < kSampleCount; ++i) g_cols[i] = require(kGlucoseColumns[i]);
    const std::optional<std::size_t> seq_col = find_column(header, "seq");

    IngestResult result;
    auto fail = [&](std::size_t at, const std::string& field, const std::string& message) {
        RowError e{at, field, message};
        if (strict) throw InputError(describe(e));
        result.errors.push_back(std::move(e));
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            fail(line_no, "*", "expected " + std::to_string(header.size()) + " fields, found " +
                                   std::to_string(fields.size()));
            continue;
        }

        OgttRecord r;
        r.patient_id = fields[id_col];
        if (r.patient_id.empty()) {
            fail(line_no, "patient_id", "empty patient id");
            continue;
        }
        const std::string& sex = fields[sex_col];
        if (sex == "F" || sex == "f") r.sex = Sex::Female;
        else if (sex == "M" || sex == "m") r.sex = Sex::Male;
        else if (sex.empty() || sex == "U" || sex == "u") r.sex = Sex::Unspecified;
        else {
            fail(line_no, "sex", "expected F, M or empty, got '" + sex + "'");
            continue;
        }

        bool ok = true;
        try {
            if (!fields[age_col].empty()) {
                const auto age = parse_int(fields[age_col], "age");
                if (age < 0 || age > 150) throw InputError("age out of range");
                r.age = static_cast<int>(age);
            }
        } catch (const InputError& e) {
            fail(line_no, "age", e.what());
            ok = false;
        }
        for (std::size_t i = 0; ok && i < kSampleCount; ++i) {
            const std::string name = kGlucoseColumns[i];
            try {
                const double v = parse_double(fields[g_cols[i]], name);
                if (!std::isfinite(v) || v <= 0.0 || v >= kMaxConcentration) {
                    fail(line_no, name, "glucose must be positive and below 1000 mg/dl, got '" + fields[g_cols[i]] + "'");
                    ok = false;
                }
                r.g[i] = v;
            } catch (const InputError& e) {
                fail(line_no, name, e.what());
                ok = false;
            }
        }
        if (ok && seq_col && !fields[*seq_col].empty()) {
            try {
                r.seq = parse_int(fields[*seq_col], "seq");
            } catch (const InputError& e) {
                fail(line_no, "seq", e.what());
                ok = false;
            }
        }
        if (ok) result.records.push_back(std::move(r));
    }
    return result;
}

IngestResult ingest_csv(const std::string& path, bool strict) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    return parse_csv(in, strict);
}

void write_csv(std::ostream& out, const std::vector<OgttRecord>& records) {
    bool with_seq = false;
    for (const auto& r : records) with_seq = with_seq || r.seq.has_value();
    out << "patient_id,sex,age";
    for (const char* g : kGlucoseColumns) out << ',' << g;
    if (with_seq) out << ",seq";
    out << '\n';
    for (const auto& r : records) {
        out << quote_if_needed(r.patient_id) << ',' << to_string(r.sex) << ',';
        if (r.age) out << *r.age;
        for (double v : r.g) out << ',' << format_double(v);
        if (with_seq) {
            out << ',';
            if (r.seq) out << *r.seq;
        }
        out << '\n';
    }
}

std::string to_csv(const std::vector<OgttRecord>& records) {
    std::ostringstream out;
    write_csv(out, records);
    return out.str();
}

}  // namespace ogtt
