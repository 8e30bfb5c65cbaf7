#pragma once

#include <string>
#include <vector>

#include "core/dataset.hpp"
#include "core/model.hpp"

namespace fairmax {

struct FairnessReport {
  double statistical_rate = 0.0;         // [0, 100]
  double positive_rate_protected = 0.0;  // P(yhat=1 | z=1)
  double positive_rate_reference = 0.0;  // P(yhat=1 | z=0)
  bool passes_80_rule = false;
  double accuracy = 0.0;
  double adversary_auc = 0.5;
  std::size_t n_samples = 0;
};

// p% value: 100 * min(r1/r0, r0/r1) over the per-group positive-prediction
// rates. Conventions: both rates zero -> 100 (no positives, no disparate
// impact); exactly one rate zero -> 0.
double statistical_rate(const std::vector<int>& predictions, const std::vector<int>& sensitive);

double accuracy(const std::vector<int>& predictions, const std::vector<int>& labels);

// Mann-Whitney AUC with ties counted 1/2, via sort + average ranks.
double roc_auc(const Vector& scores, const std::vector<int>& labels);

// 1 iff score > threshold (strictly).
std::vector<int> threshold_scores(const Vector& scores, double threshold);

FairnessReport evaluate(const ModelParams& clf, const AdversaryParams& adv, const Dataset& ds);

// Flat key = value record.
std::string report_to_text(const FairnessReport& report);
FairnessReport report_from_text(const std::string& text);

}  // namespace fairmax
