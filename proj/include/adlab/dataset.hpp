#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adlab/matrix.hpp"

namespace adlab {

/// Tabular dataset: numeric feature columns, one binary anomaly label column,
/// optional named categorical attribute columns.
struct TabularDataset {
    std::vector<std::string> feature_names;
    RowMatrix features;
    std::vector<int> label;
    std::vector<std::string> attribute_names;
    std::vector<std::vector<std::string>> attribute_values;  // one vector per attribute
    std::string source_digest;

    std::size_t rows() const { return features.rows; }

    /// Index of a feature column; throws std::invalid_argument when absent.
    std::size_t feature_index(const std::string& name) const;

    /// Values of a named attribute column; throws when absent.
    const std::vector<std::string>& attribute(const std::string& name) const;
};

/// FNV-1a 64-bit digest of a byte string, hex-encoded. Used for dataset and
/// config provenance.
std::string fnv1a_digest(const std::string& bytes);

/// Parse a UTF-8, comma-separated CSV with a header row. Columns listed in
/// attribute_columns are kept as categorical strings, label_column must be
/// binary, and every remaining column is parsed as a numeric feature.
/// Rows with unparseable or non-finite numerics are rejected with a
/// row/column diagnostic (std::invalid_argument). Missing columns raise a
/// schema error naming the column.
TabularDataset load_csv(const std::string& path, const std::string& label_column,
                        const std::vector<std::string>& attribute_columns = {});

/// Same parser over an in-memory CSV body (used by tests and fixtures).
TabularDataset parse_csv(const std::string& body, const std::string& label_column,
                         const std::vector<std::string>& attribute_columns = {});

} // namespace adlab
