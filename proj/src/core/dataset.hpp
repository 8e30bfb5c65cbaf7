#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/linalg.hpp"

namespace fairmax {

// Designates the label/sensitive columns and which of their two values maps
// to 1.
struct ColumnSpec {
  std::string label_col;
  std::string sensitive_col;
  std::string positive_label;
  std::string protected_value;
};

// Parsed but not yet encoded table. Cells stay as text; whether a column is
// numeric is decided at encoding time.
struct RawTable {
  std::vector<std::string> column_names;
  std::vector<std::vector<std::string>> rows;

  std::size_t column_index(const std::string& name) const;  // throws DataError
};

struct Dataset {
  Matrix features;                         // n_samples x n_features
  std::vector<int> labels;                 // 0/1; 1 = positive outcome
  std::vector<int> sensitive;              // 0/1; 1 = protected group
  std::vector<std::string> feature_names;  // length n_features

  std::size_t rows() const { return static_cast<std::size_t>(features.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(features.cols()); }
  void validate() const;  // throws DataError on any violated invariant
  std::uint64_t fingerprint() const;
  std::string fingerprint_hex() const;
};

struct Split {
  Dataset train;
  Dataset test;
  std::uint64_t seed = 0;
};

// RFC-4180-style CSV: header row mandatory, double-quote quoting, UTF-8.
// Validates that the designated columns exist and are binary, that no row is
// ragged, and that no cell is empty (missing values are a hard error).
RawTable load_csv(const std::string& path, const ColumnSpec& spec);

// Numeric columns are standardized to zero mean and unit sample variance over
// the whole table; categorical columns expand to one indicator per distinct
// value; the label/sensitive columns map to {0,1} and are excluded from the
// features. Constant numeric columns become zero columns with a warning.
Dataset one_hot_encode(const RawTable& table, const ColumnSpec& spec,
                       std::vector<std::string>* warnings = nullptr);

// Deterministic shuffle-split; test gets ceil(n * test_fraction) rows. Retries
// the permutation up to 100 times so both parts keep both sensitive groups.
Split split(const Dataset& dataset, double test_fraction, std::uint64_t seed);

// Synthetic binary-classification data with a tunable proxy-encoded bias:
// z ~ Bernoulli(1/2), Gaussian features with z mixed into the first feature,
// and labels thresholded at the median of a latent score that also carries a
// direct z term. bias = 0 is fair; larger bias lowers a plain fit's p% value.
Dataset synth_biased(std::size_t n, double bias, std::size_t n_features, std::uint64_t seed);

// Directory form: features.csv (header = feature names), labels.csv,
// sensitive.csv, meta.txt with seed and provenance.
void save_dataset(const Dataset& ds, const std::string& dir, const std::string& provenance,
                  std::uint64_t seed);
Dataset load_dataset(const std::string& dir);

}  // namespace fairmax
