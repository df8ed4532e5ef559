#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sbridge/datasets.hpp"
#include "sbridge/numerics.hpp"

namespace sbridge {

// Comma-separated numeric tables: '.' decimal point, optional single header
// line, UTF-8 (a leading BOM is tolerated), LF or CRLF line endings. Blank
// lines are skipped. Written files always use LF and end with a newline.

struct CsvDataset {
    Matrix x;
    std::vector<int> labels;  // empty unless a label column was requested
    std::vector<std::string> feature_names;  // empty without a header
};

// Reads `path`; when label_column is given (0-based, counted over the file's
// columns) that column is split off as labels: integer tokens keep their
// value, anything else is factor-encoded in order of first appearance.
// Errors: IoError (unreadable path), ParseError (no data rows), RaggedRows
// (with the offending 1-based line number), NonNumericCell (with line,
// column and token), DimensionError (label column out of range).
CsvDataset load_csv(const std::string& path, bool has_header = true,
                    std::optional<int> label_column = std::nullopt);

// Writes coordinates plus the label column under the header
// "x0,...,x{d-1},label".
void save_dataset_csv(const LabeledDataset& ds, const std::string& path);

// Writes per-point labels under the header "row,label".
void save_labels_csv(std::span<const int> labels, const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace sbridge
