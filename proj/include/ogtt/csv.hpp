#pragma once

// Cohort CSV files:
//
//   patient_id,sex,age,g0,g30,g60,g90,g120[,seq]
//
// sex is F, M or empty; age and seq are optional integers; g* are mg/dl.
// Columns are located by header name. Fields may be double-quoted.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ogtt/model.hpp"

namespace ogtt {

struct RowError {
    std::size_t line = 0;  // 1-based line number in the file, header is line 1
    std::string field;
    std::string message;
};

struct IngestResult {
    std::vector<OgttRecord> records;
    std::vector<RowError> errors;
};

std::string describe(const RowError& error);

// Missing required column -> SchemaError. Bad rows are collected in
// `errors`; with `strict` the first one is thrown as InputError instead.
IngestResult parse_csv(std::istream& in, bool strict = false);
IngestResult ingest_csv(const std::string& path, bool strict = false);

// Writes the header and one row per record; the seq column is emitted when
// any record has a sequence key. Values use shortest round-trip decimals.
void write_csv(std::ostream& out, const std::vector<OgttRecord>& records);
std::string to_csv(const std::vector<OgttRecord>& records);

// Splits one CSV line honouring double quotes ("" escapes a quote).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace ogtt
