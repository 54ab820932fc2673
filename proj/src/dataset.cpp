#include "adlab/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace adlab {
namespace {

std::vector<std::string> split_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

double parse_numeric(const std::string& cell, std::size_t row, const std::string& col) {
    const std::string v = trim(cell);
    double value = 0.0;
    const auto* begin = v.data();
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || v.empty()) {
        std::ostringstream msg;
        msg << "csv parse error at row " << row << ", column '" << col
            << "': cannot parse '" << v << "' as a number";
        throw std::invalid_argument(msg.str());
    }
    if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << "csv parse error at row " << row << ", column '" << col
            << "': non-finite value";
        throw std::invalid_argument(msg.str());
    }
    return value;
}

} // namespace

std::size_t TabularDataset::feature_index(const std::string& name) const {
    for (std::size_t i = 0; i < feature_names.size(); ++i) {
        if (feature_names[i] == name) return i;
    }
    throw std::invalid_argument("unknown feature: " + name);
}

const std::vector<std::string>& TabularDataset::attribute(const std::string& name) const {
    for (std::size_t i = 0; i < attribute_names.size(); ++i) {
        if (attribute_names[i] == name) return attribute_values[i];
    }
    throw std::invalid_argument("unknown attribute column: " + name);
}

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

TabularDataset parse_csv(const std::string& body, const std::string& label_column,
                         const std::vector<std::string>& attribute_columns) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(body);
    while (std::getline(in, line)) {
        if (!trim(line).empty()) lines.push_back(line);
    }
    if (lines.empty()) throw std::invalid_argument("csv schema error: empty file");

    const auto header = split_record(lines.front());
    std::vector<std::string> names(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) names[i] = trim(header[i]);

    const auto find_col = [&](const std::string& want) -> long {
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == want) return static_cast<long>(i);
        }
        return -1;
    };

    const long label_idx = find_col(label_column);
    if (label_idx < 0) {
        throw std::invalid_argument("csv schema error: missing label column '" +
                                    label_column + "'");
    }
    std::vector<long> attr_idx;
    for (const auto& a : attribute_columns) {
        const long idx = find_col(a);
        if (idx < 0) {
            throw std::invalid_argument("csv schema error: missing attribute column '" +
                                        a + "'");
        }
        attr_idx.push_back(idx);
    }

    TabularDataset ds;
    ds.attribute_names = attribute_columns;
    ds.attribute_values.resize(attribute_columns.size());
    std::vector<long> feature_idx;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const long li = static_cast<long>(i);
        if (li == label_idx) continue;
        if (std::find(attr_idx.begin(), attr_idx.end(), li) != attr_idx.end()) continue;
        feature_idx.push_back(li);
        ds.feature_names.push_back(names[i]);
    }
    {
        auto sorted = ds.feature_names;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument("csv schema error: duplicate feature names");
        }
    }

    const std::size_t n = lines.size() - 1;
    ds.features = RowMatrix(n, feature_idx.size());
    ds.label.resize(n);

    for (std::size_t r = 0; r < n; ++r) {
        const auto fields = split_record(lines[r + 1]);
        if (fields.size() != names.size()) {
            std::ostringstream msg;
            msg << "csv parse error at row " << (r + 1) << ": expected "
                << names.size() << " fields, got " << fields.size();
            throw std::invalid_argument(msg.str());
        }
        const double lv = parse_numeric(fields[label_idx], r + 1, label_column);
        if (lv != 0.0 && lv != 1.0) {
            std::ostringstream msg;
            msg << "csv parse error at row " << (r + 1) << ": label value '"
                << trim(fields[label_idx]) << "' is not binary";
            throw std::invalid_argument(msg.str());
        }
        ds.label[r] = static_cast<int>(lv);
        for (std::size_t a = 0; a < attr_idx.size(); ++a) {
            ds.attribute_values[a].push_back(trim(fields[attr_idx[a]]));
        }
        for (std::size_t f = 0; f < feature_idx.size(); ++f) {
            ds.features.at(r, f) =
                parse_numeric(fields[feature_idx[f]], r + 1, ds.feature_names[f]);
        }
    }
    ds.source_digest = fnv1a_digest(body);
    return ds;
}

TabularDataset load_csv(const std::string& path, const std::string& label_column,
                        const std::vector<std::string>& attribute_columns) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open csv file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), label_column, attribute_columns);
}

} // namespace adlab
