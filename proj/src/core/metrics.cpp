#include "core/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "core/errors.hpp"
#include "core/text.hpp"

namespace fairmax {

double statistical_rate(const std::vector<int>& predictions, const std::vector<int>& sensitive) {
  if (predictions.empty() || predictions.size() != sensitive.size())
    throw DataError("predictions and sensitive must be non-empty and equal length");
  std::size_t n1 = 0, n0 = 0, pos1 = 0, pos0 = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (sensitive[i] != 0) {
      ++n1;
      pos1 += predictions[i] != 0;
    } else {
      ++n0;
      pos0 += predictions[i] != 0;
    }
  }
  if (n1 == 0 || n0 == 0) throw DataError("a sensitive group is empty");
  const double r1 = static_cast<double>(pos1) / static_cast<double>(n1);
  const double r0 = static_cast<double>(pos0) / static_cast<double>(n0);
  if (r1 == 0.0 && r0 == 0.0) return 100.0;
  if (r1 == 0.0 || r0 == 0.0) return 0.0;
  return 100.0 * std::min(r1 / r0, r0 / r1);
}

double accuracy(const std::vector<int>& predictions, const std::vector<int>& labels) {
  if (predictions.empty() || predictions.size() != labels.size())
    throw DataError("predictions and labels must be non-empty and equal length");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i)
    hits += (predictions[i] != 0) == (labels[i] != 0);
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

double roc_auc(const Vector& scores, const std::vector<int>& labels) {
  const std::size_t n = labels.size();
  if (n == 0 || static_cast<std::size_t>(scores.size()) != n)
    throw DataError("scores and labels must be non-empty and equal length");
  std::size_t n_pos = 0;
  for (int y : labels) n_pos += y != 0;
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) throw DataError("roc_auc needs both classes present");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[static_cast<Eigen::Index>(a)] < scores[static_cast<Eigen::Index>(b)];
  });

  // rank sum of positives, ties sharing the average rank
  double pos_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[static_cast<Eigen::Index>(order[j + 1])] ==
                            scores[static_cast<Eigen::Index>(order[i])])
      ++j;
    const double avg_rank = 0.5 * static_cast<double>((i + 1) + (j + 1));
    for (std::size_t k = i; k <= j; ++k)
      if (labels[order[k]] != 0) pos_rank_sum += avg_rank;
    i = j + 1;
  }
  const double np = static_cast<double>(n_pos);
  const double nn = static_cast<double>(n_neg);
  return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

std::vector<int> threshold_scores(const Vector& scores, double threshold) {
  std::vector<int> out(static_cast<std::size_t>(scores.size()));
  for (Eigen::Index i = 0; i < scores.size(); ++i)
    out[static_cast<std::size_t>(i)] = scores[i] > threshold ? 1 : 0;
  return out;
}

FairnessReport evaluate(const ModelParams& clf, const AdversaryParams& adv, const Dataset& ds) {
  ds.validate();
  const Vector scores = predict_scores(clf, ds.features);
  const std::vector<int> preds = threshold_scores(scores, 0.5);

  FairnessReport r;
  r.n_samples = ds.rows();
  r.statistical_rate = statistical_rate(preds, ds.sensitive);
  r.passes_80_rule = r.statistical_rate >= 80.0;
  r.accuracy = accuracy(preds, ds.labels);

  std::size_t n1 = 0, n0 = 0, pos1 = 0, pos0 = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (ds.sensitive[i] != 0) {
      ++n1;
      pos1 += preds[i];
    } else {
      ++n0;
      pos0 += preds[i];
    }
  }
  r.positive_rate_protected = static_cast<double>(pos1) / static_cast<double>(n1);
  r.positive_rate_reference = static_cast<double>(pos0) / static_cast<double>(n0);

  const Vector adv_s = adversary_scores(adv, scores);
  r.adversary_auc = roc_auc(adv_s, ds.sensitive);
  return r;
}

std::string report_to_text(const FairnessReport& r) {
  std::string out;
  out += "statistical_rate = " + fmt_double(r.statistical_rate) + "\n";
  out += "positive_rate_protected = " + fmt_double(r.positive_rate_protected) + "\n";
  out += "positive_rate_reference = " + fmt_double(r.positive_rate_reference) + "\n";
  out += std::string("passes_80_rule = ") + (r.passes_80_rule ? "true" : "false") + "\n";
  out += "accuracy = " + fmt_double(r.accuracy) + "\n";
  out += "adversary_auc = " + fmt_double(r.adversary_auc) + "\n";
  out += "n_samples = " + std::to_string(r.n_samples) + "\n";
  return out;
}

FairnessReport report_from_text(const std::string& text) {
  FairnessReport r;
  bool seen_rate = false;
  for (const auto& [key, value] : parse_kv_text(text, "<report>")) {
    if (key == "statistical_rate") {
      seen_rate = parse_double(value, r.statistical_rate);
    } else if (key == "positive_rate_protected") {
      parse_double(value, r.positive_rate_protected);
    } else if (key == "positive_rate_reference") {
      parse_double(value, r.positive_rate_reference);
    } else if (key == "passes_80_rule") {
      parse_bool(value, r.passes_80_rule);
    } else if (key == "accuracy") {
      parse_double(value, r.accuracy);
    } else if (key == "adversary_auc") {
      parse_double(value, r.adversary_auc);
    } else if (key == "n_samples") {
      std::uint64_t n = 0;
      if (parse_u64(value, n)) r.n_samples = n;
    } else {
      throw DataError("unknown report field: " + key);
    }
  }
  if (!seen_rate) throw DataError("report is missing statistical_rate");
  return r;
}

}  // namespace fairmax
