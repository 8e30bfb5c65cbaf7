#pragma once

#include <vector>

#include "core/model.hpp"

namespace fairmax {

struct LossValue {
  double value = 0.0;
  std::size_t n = 0;  // sample count the mean was taken over
};

struct FairRegConfig {
  double reg_weight = 1.0;   // weight of the fairness regularizer inside L_F
  double epsilon = 1e-12;    // clamp for log arguments
};

// Mean binary cross-entropy; scores are clamped to [eps, 1-eps] before the log.
LossValue bce(const Vector& scores, const std::vector<int>& targets, double epsilon = 1e-12);

// Cross-entropy of the adversary's scores against the sensitive attribute.
LossValue adversary_loss(const Vector& adv_scores, const std::vector<int>& sensitive,
                         double epsilon = 1e-12);

// mean(score | z=1) - mean(score | z=0); errors when a group is empty.
double score_gap(const Vector& clf_scores, const std::vector<int>& sensitive);

// Fairness objective: adversary cross-entropy minus reg_weight * gap^2. The
// classifier ascends this in the descent-ascent updates (raising the
// adversary's loss and shrinking the group score gap); the adversary's own
// update direction comes from adversary_ascent_direction below.
LossValue fairness_loss(const Vector& clf_scores, const std::vector<int>& sensitive,
                        const FairRegConfig& cfg, const AdversaryParams& adv);

// u-side update direction: the gradient of the adversary's predictive
// log-likelihood (equivalently, minus the gradient of its cross-entropy).
// Ascending it converges to the adversary's optimum. Components are ordered
// (score weight, intercept). The gap regularizer does not depend on u.
Eigen::Vector2d adversary_ascent_direction(const Vector& clf_scores,
                                           const std::vector<int>& sensitive,
                                           const AdversaryParams& adv);

// Gradient of mean bce(scores, labels) over the classifier parameters.
GradientVector grad_classifier_loss(const ModelParams& params, const Matrix& features,
                                    const std::vector<int>& labels);

// Gradient of fairness_loss over the classifier parameters (the classifier
// reaches the adversary's input and the gap term only through its scores).
GradientVector grad_fairness_loss(const ModelParams& params, const Matrix& features,
                                  const std::vector<int>& sensitive, const AdversaryParams& adv,
                                  const FairRegConfig& cfg);

// Classifier-side gradient of the adversary cross-entropy alone; the
// lambda-coupled objective uses this without the gap regularizer.
GradientVector grad_adversary_term(const ModelParams& params, const Matrix& features,
                                   const std::vector<int>& sensitive, const AdversaryParams& adv);

}  // namespace fairmax
