#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "core/linalg.hpp"

namespace fairmax {

enum class ModelKind { Logistic, Mlp };

std::string model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);  // throws ConfigError

inline constexpr int kMlpHiddenWidth = 32;
inline constexpr int kMlpHiddenLayers = 3;

struct MlpLayer {
  Matrix weights;  // out x in
  Vector bias;     // out
};

// Classifier parameters. Logistic holds w of length n_features+1 with the
// intercept last; the MLP holds an explicit layer stack ending in one output.
struct ModelParams {
  ModelKind kind = ModelKind::Logistic;
  Vector logistic;               // kind == Logistic
  std::vector<MlpLayer> layers;  // kind == Mlp

  std::size_t input_dim() const;
  std::size_t param_count() const;
  Vector flatten() const;
  void set_from_flat(const Vector& flat);
  void validate() const;  // throws DataError on non-finite or mismatched dims

  static ModelParams logistic_zero(std::size_t n_features);
  static ModelParams mlp_init(std::size_t n_features, std::uint64_t seed);
  static ModelParams init(ModelKind kind, std::size_t n_features, std::uint64_t seed);
};

// The adversary is a logistic model over the classifier score plus intercept.
struct AdversaryParams {
  double score_weight = 0.0;
  double intercept = 0.0;
};

// Flat gradient over a parameter object's full dimension.
struct GradientVector {
  ModelKind kind = ModelKind::Logistic;
  Vector values;
};

double sigmoid(double x);

// Per-row probability of the positive class; appends the constant-1 column
// internally for the logistic model. MLP hiddens are ReLU, output sigmoid.
Vector predict_scores(const ModelParams& params, const Matrix& features);

// Gradient of sum_i loss_i over the flattened parameters, where
// per_row_loss_grad[i] = d loss_i / d score_i (derivative taken after the
// output sigmoid). Callers normalize if they want a mean.
GradientVector grad_params(const ModelParams& params, const Matrix& features,
                           const Vector& per_row_loss_grad);

// Same chain rule entered one link later: per_row_pre_grad[i] is the
// derivative with respect to the pre-sigmoid output. Loss gradients use this
// form so saturated scores never divide by s(1-s).
GradientVector grad_params_pre(const ModelParams& params, const Matrix& features,
                               const Vector& per_row_pre_grad);

// sigma(u0 * score + u1) per row; the adversary sees only the score.
Vector adversary_scores(const AdversaryParams& adv, const Vector& clf_scores);

// Snapshot I/O. Versioned text format with hex-float values, so a reload is
// bit-exact.
std::string params_to_text(const ModelParams& clf, const AdversaryParams& adv);
std::pair<ModelParams, AdversaryParams> params_from_text(const std::string& text);
void save_params(const ModelParams& clf, const AdversaryParams& adv, const std::string& path);
std::pair<ModelParams, AdversaryParams> load_params(const std::string& path);

}  // namespace fairmax
