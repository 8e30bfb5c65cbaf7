#include "core/losses.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace fairmax {

namespace {

void check_pair(const Vector& scores, const std::vector<int>& targets) {
  if (scores.size() == 0) throw DataError("empty input");
  if (static_cast<std::size_t>(scores.size()) != targets.size())
    throw DataError("scores and targets differ in length");
}

struct GroupCounts {
  std::size_t n1 = 0;
  std::size_t n0 = 0;
};

GroupCounts count_groups(const std::vector<int>& sensitive) {
  GroupCounts gc;
  for (int z : sensitive) (z != 0 ? gc.n1 : gc.n0)++;
  if (gc.n1 == 0 || gc.n0 == 0) throw DataError("a sensitive group is empty");
  return gc;
}

}  // namespace

LossValue bce(const Vector& scores, const std::vector<int>& targets, double epsilon) {
  check_pair(scores, targets);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < scores.size(); ++i) {
    const double s = std::clamp(scores[i], epsilon, 1.0 - epsilon);
    sum += targets[static_cast<std::size_t>(i)] != 0 ? -std::log(s) : -std::log(1.0 - s);
  }
  const std::size_t n = targets.size();
  return {sum / static_cast<double>(n), n};
}

LossValue adversary_loss(const Vector& adv_scores, const std::vector<int>& sensitive,
                         double epsilon) {
  return bce(adv_scores, sensitive, epsilon);
}

double score_gap(const Vector& clf_scores, const std::vector<int>& sensitive) {
  check_pair(clf_scores, sensitive);
  const GroupCounts gc = count_groups(sensitive);
  double sum1 = 0.0, sum0 = 0.0;
  for (Eigen::Index i = 0; i < clf_scores.size(); ++i) {
    if (sensitive[static_cast<std::size_t>(i)] != 0)
      sum1 += clf_scores[i];
    else
      sum0 += clf_scores[i];
  }
  return sum1 / static_cast<double>(gc.n1) - sum0 / static_cast<double>(gc.n0);
}

LossValue fairness_loss(const Vector& clf_scores, const std::vector<int>& sensitive,
                        const FairRegConfig& cfg, const AdversaryParams& adv) {
  const double gap = score_gap(clf_scores, sensitive);
  const LossValue adv_part =
      adversary_loss(adversary_scores(adv, clf_scores), sensitive, cfg.epsilon);
  return {adv_part.value - cfg.reg_weight * gap * gap, adv_part.n};
}

Eigen::Vector2d adversary_ascent_direction(const Vector& clf_scores,
                                           const std::vector<int>& sensitive,
                                           const AdversaryParams& adv) {
  check_pair(clf_scores, sensitive);
  const Vector a = adversary_scores(adv, clf_scores);
  const double inv_n = 1.0 / static_cast<double>(clf_scores.size());
  double g_w = 0.0, g_b = 0.0;
  for (Eigen::Index i = 0; i < clf_scores.size(); ++i) {
    // d(-bce)/du of a logistic model in u: (z - a) * (input, 1)
    const double resid = static_cast<double>(sensitive[static_cast<std::size_t>(i)]) - a[i];
    g_w += resid * clf_scores[i];
    g_b += resid;
  }
  return {g_w * inv_n, g_b * inv_n};
}

GradientVector grad_classifier_loss(const ModelParams& params, const Matrix& features,
                                    const std::vector<int>& labels) {
  if (features.rows() == 0) throw DataError("empty batch");
  if (static_cast<std::size_t>(features.rows()) != labels.size())
    throw DataError("features and labels differ in length");
  const Vector s = predict_scores(params, features);
  // d(mean bce)/d(pre-sigmoid) = (s - y) / n, the fused stable form
  Vector pre_grad(s.size());
  const double inv_n = 1.0 / static_cast<double>(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    pre_grad[i] = (s[i] - static_cast<double>(labels[static_cast<std::size_t>(i)])) * inv_n;
  return grad_params_pre(params, features, pre_grad);
}

namespace {

// dL/dscore for the adversary cross-entropy term, mean over rows.
Vector adversary_term_score_grad(const Vector& s, const std::vector<int>& sensitive,
                                 const AdversaryParams& adv) {
  const Vector a = adversary_scores(adv, s);
  const double inv_n = 1.0 / static_cast<double>(s.size());
  Vector ds(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    ds[i] = (a[i] - static_cast<double>(sensitive[static_cast<std::size_t>(i)])) *
            adv.score_weight * inv_n;
  return ds;
}

}  // namespace

GradientVector grad_adversary_term(const ModelParams& params, const Matrix& features,
                                   const std::vector<int>& sensitive,
                                   const AdversaryParams& adv) {
  if (features.rows() == 0) throw DataError("empty batch");
  if (static_cast<std::size_t>(features.rows()) != sensitive.size())
    throw DataError("features and sensitive differ in length");
  const Vector s = predict_scores(params, features);
  const Vector ds = adversary_term_score_grad(s, sensitive, adv);
  const Vector pre_grad = (ds.array() * s.array() * (1.0 - s.array())).matrix();
  return grad_params_pre(params, features, pre_grad);
}

GradientVector grad_fairness_loss(const ModelParams& params, const Matrix& features,
                                  const std::vector<int>& sensitive, const AdversaryParams& adv,
                                  const FairRegConfig& cfg) {
  if (features.rows() == 0) throw DataError("empty batch");
  if (static_cast<std::size_t>(features.rows()) != sensitive.size())
    throw DataError("features and sensitive differ in length");
  const GroupCounts gc = count_groups(sensitive);

  const Vector s = predict_scores(params, features);
  const double gap = score_gap(s, sensitive);
  Vector ds = adversary_term_score_grad(s, sensitive, adv);
  // d(-reg * gap^2)/ds_i = -2 reg gap * (z_i/n1 - (1-z_i)/n0)
  const double coef = -2.0 * cfg.reg_weight * gap;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const bool prot = sensitive[static_cast<std::size_t>(i)] != 0;
    ds[i] += coef * (prot ? 1.0 / static_cast<double>(gc.n1)
                          : -1.0 / static_cast<double>(gc.n0));
  }
  const Vector pre_grad = (ds.array() * s.array() * (1.0 - s.array())).matrix();
  return grad_params_pre(params, features, pre_grad);
}

}  // namespace fairmax
