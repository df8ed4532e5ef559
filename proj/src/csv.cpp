#include "sbridge/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string_view>
#include <unordered_map>
#include <utility>

#include "sbridge/format.hpp"

namespace sbridge {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            fields.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return fields;
}

double parse_cell(std::string_view token, std::size_t line_no, std::size_t col) {
    double value = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        throw NonNumericCell("line " + std::to_string(line_no) + ", column " +
                             std::to_string(col + 1) + ": '" + std::string(token) +
                             "' is not a number");
    if (!std::isfinite(value))
        throw NonNumericCell("line " + std::to_string(line_no) + ", column " +
                             std::to_string(col + 1) + ": '" + std::string(token) +
                             "' is not finite");
    return value;
}

// Integer tokens keep their value; any other token stream is factor-encoded
// by first appearance.
std::vector<int> encode_labels(const std::vector<std::string>& tokens) {
    std::vector<int> out;
    out.reserve(tokens.size());
    bool all_int = true;
    for (const auto& t : tokens) {
        int v = 0;
        const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
        if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
            all_int = false;
            break;
        }
        out.push_back(v);
    }
    if (all_int) return out;

    out.clear();
    std::unordered_map<std::string, int> ids;
    for (const auto& t : tokens) {
        auto it = ids.find(t);
        if (it == ids.end()) it = ids.emplace(t, static_cast<int>(ids.size())).first;
        out.push_back(it->second);
    }
    return out;
}

}  // namespace

CsvDataset load_csv(const std::string& path, bool has_header,
                    std::optional<int> label_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string text = std::move(buffer).str();

    std::string_view rest(text);
    if (rest.starts_with("\xEF\xBB\xBF")) rest.remove_prefix(3);

    CsvDataset out;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> label_tokens;
    std::size_t expected_fields = 0;
    std::size_t line_no = 0;
    bool header_pending = has_header;

    while (!rest.empty()) {
        const std::size_t eol = rest.find('\n');
        std::string_view line = rest.substr(0, eol);
        rest = (eol == std::string_view::npos) ? std::string_view{}
                                               : rest.substr(eol + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty()) continue;

        const auto fields = split_fields(line);
        if (expected_fields == 0) {
            expected_fields = fields.size();
            if (label_column &&
                (*label_column < 0 ||
                 static_cast<std::size_t>(*label_column) >= expected_fields))
                throw DimensionError("label column " + std::to_string(*label_column) +
                                     " out of range for " +
                                     std::to_string(expected_fields) + " columns");
        } else if (fields.size() != expected_fields) {
            throw RaggedRows("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(expected_fields) + " fields, got " +
                             std::to_string(fields.size()));
        }

        if (header_pending) {
            header_pending = false;
            for (std::size_t c = 0; c < fields.size(); ++c) {
                if (label_column && c == static_cast<std::size_t>(*label_column))
                    continue;
                out.feature_names.emplace_back(fields[c]);
            }
            continue;
        }

        std::vector<double> row;
        row.reserve(expected_fields);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (label_column && c == static_cast<std::size_t>(*label_column)) {
                label_tokens.emplace_back(fields[c]);
                continue;
            }
            row.push_back(parse_cell(fields[c], line_no, c));
        }
        rows.push_back(std::move(row));
    }

    if (rows.empty()) throw ParseError("'" + path + "': no data rows");
    const std::size_t dims = rows.front().size();
    if (dims == 0) throw ParseError("'" + path + "': no feature columns");

    out.x.resize(static_cast<Eigen::Index>(rows.size()),
                 static_cast<Eigen::Index>(dims));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < dims; ++j)
            out.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j];
    if (label_column) out.labels = encode_labels(label_tokens);
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream outf(path, std::ios::binary);
    if (!outf) throw IoError("cannot write '" + path + "'");
    outf << content;
    if (!outf) throw IoError("failed while writing '" + path + "'");
}

void save_dataset_csv(const LabeledDataset& ds, const std::string& path) {
    if (ds.x.rows() != static_cast<Eigen::Index>(ds.y.size()))
        throw LengthMismatch("save_dataset_csv: labels do not match rows");
    std::string body;
    for (Eigen::Index j = 0; j < ds.x.cols(); ++j) {
        body += "x" + std::to_string(j) + ",";
    }
    body += "label\n";
    for (Eigen::Index i = 0; i < ds.x.rows(); ++i) {
        for (Eigen::Index j = 0; j < ds.x.cols(); ++j) {
            body += format_double(ds.x(i, j));
            body += ',';
        }
        body += std::to_string(ds.y[static_cast<std::size_t>(i)]);
        body += '\n';
    }
    write_text_file(path, body);
}

void save_labels_csv(std::span<const int> labels, const std::string& path) {
    std::string body = "row,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        body += std::to_string(i);
        body += ',';
        body += std::to_string(labels[i]);
        body += '\n';
    }
    write_text_file(path, body);
}

}  // namespace sbridge
