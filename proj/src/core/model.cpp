#include "core/model.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/text.hpp"

namespace fairmax {

std::string model_kind_name(ModelKind kind) {
  return kind == ModelKind::Logistic ? "logistic" : "mlp";
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "logistic") return ModelKind::Logistic;
  if (name == "mlp") return ModelKind::Mlp;
  throw ConfigError("unknown model kind: '" + name + "' (expected logistic or mlp)");
}

double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

std::size_t ModelParams::input_dim() const {
  if (kind == ModelKind::Logistic) {
    return logistic.size() == 0 ? 0 : static_cast<std::size_t>(logistic.size()) - 1;
  }
  return layers.empty() ? 0 : static_cast<std::size_t>(layers.front().weights.cols());
}

std::size_t ModelParams::param_count() const {
  if (kind == ModelKind::Logistic) return static_cast<std::size_t>(logistic.size());
  std::size_t n = 0;
  for (const auto& l : layers) n += static_cast<std::size_t>(l.weights.size() + l.bias.size());
  return n;
}

Vector ModelParams::flatten() const {
  Vector flat(param_count());
  if (kind == ModelKind::Logistic) {
    flat = logistic;
    return flat;
  }
  Eigen::Index at = 0;
  for (const auto& l : layers) {
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) flat[at++] = l.weights(r, c);
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) flat[at++] = l.bias[r];
  }
  return flat;
}

void ModelParams::set_from_flat(const Vector& flat) {
  if (static_cast<std::size_t>(flat.size()) != param_count())
    throw DataError("flat parameter vector has wrong length");
  if (kind == ModelKind::Logistic) {
    logistic = flat;
    return;
  }
  Eigen::Index at = 0;
  for (auto& l : layers) {
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) l.weights(r, c) = flat[at++];
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) l.bias[r] = flat[at++];
  }
}

void ModelParams::validate() const {
  if (kind == ModelKind::Logistic) {
    if (logistic.size() < 2) throw DataError("logistic weight vector too short");
    if (!logistic.allFinite()) throw DataError("non-finite classifier parameter");
    return;
  }
  if (layers.empty()) throw DataError("mlp has no layers");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    if (l.weights.rows() != l.bias.size())
      throw DataError("mlp layer " + std::to_string(i) + ": bias/weight rows mismatch");
    if (i > 0 && l.weights.cols() != layers[i - 1].weights.rows())
      throw DataError("mlp layer " + std::to_string(i) + ": input dim does not chain");
    if (!l.weights.allFinite() || !l.bias.allFinite())
      throw DataError("non-finite classifier parameter in layer " + std::to_string(i));
  }
  if (layers.back().weights.rows() != 1) throw DataError("mlp final output dimension must be 1");
}

ModelParams ModelParams::logistic_zero(std::size_t n_features) {
  ModelParams p;
  p.kind = ModelKind::Logistic;
  p.logistic = Vector::Zero(static_cast<Eigen::Index>(n_features) + 1);
  return p;
}

ModelParams ModelParams::mlp_init(std::size_t n_features, std::uint64_t seed) {
  ModelParams p;
  p.kind = ModelKind::Mlp;
  Rng rng(mix_seed(seed, 0x11));
  std::vector<Eigen::Index> dims;
  dims.push_back(static_cast<Eigen::Index>(n_features));
  for (int i = 0; i < kMlpHiddenLayers; ++i) dims.push_back(kMlpHiddenWidth);
  dims.push_back(1);
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
    MlpLayer layer;
    layer.weights = Matrix(dims[i + 1], dims[i]);
    layer.bias = Vector(dims[i + 1]);
    const double bound = 1.0 / std::sqrt(static_cast<double>(dims[i]));
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c)
        layer.weights(r, c) = rng.uniform(-bound, bound);
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias[r] = rng.uniform(-bound, bound);
    p.layers.push_back(std::move(layer));
  }
  return p;
}

ModelParams ModelParams::init(ModelKind kind, std::size_t n_features, std::uint64_t seed) {
  return kind == ModelKind::Logistic ? logistic_zero(n_features) : mlp_init(n_features, seed);
}

namespace {

struct ForwardTrace {
  // Per layer: input activations (rows x in) and pre-activations (rows x out).
  std::vector<Matrix> inputs;
  std::vector<Matrix> pre;
  Vector scores;
};

ForwardTrace mlp_forward(const ModelParams& params, const Matrix& features) {
  ForwardTrace t;
  Matrix a = features;
  for (std::size_t i = 0; i < params.layers.size(); ++i) {
    const auto& l = params.layers[i];
    t.inputs.push_back(a);
    Matrix z = a * l.weights.transpose();
    z.rowwise() += l.bias.transpose();
    t.pre.push_back(z);
    if (i + 1 < params.layers.size()) {
      a = z.cwiseMax(0.0);  // ReLU
    } else {
      a = z;
    }
  }
  t.scores = Vector(features.rows());
  for (Eigen::Index r = 0; r < a.rows(); ++r) t.scores[r] = sigmoid(a(r, 0));
  return t;
}

}  // namespace

Vector predict_scores(const ModelParams& params, const Matrix& features) {
  if (static_cast<std::size_t>(features.cols()) != params.input_dim())
    throw DataError("feature width " + std::to_string(features.cols()) +
                    " does not match model input dim " + std::to_string(params.input_dim()));
  if (params.kind == ModelKind::Logistic) {
    const Eigen::Index nf = features.cols();
    Vector pre = features * params.logistic.head(nf);
    pre.array() += params.logistic[nf];
    Vector s(pre.size());
    for (Eigen::Index i = 0; i < pre.size(); ++i) s[i] = sigmoid(pre[i]);
    return s;
  }
  return mlp_forward(params, features).scores;
}

GradientVector grad_params_pre(const ModelParams& params, const Matrix& features,
                               const Vector& per_row_pre_grad) {
  if (per_row_pre_grad.size() != features.rows())
    throw DataError("per-row gradient length does not match row count");
  if (static_cast<std::size_t>(features.cols()) != params.input_dim())
    throw DataError("feature width does not match model input dim");

  GradientVector g;
  g.kind = params.kind;

  if (params.kind == ModelKind::Logistic) {
    const Eigen::Index nf = features.cols();
    g.values = Vector(nf + 1);
    g.values.head(nf) = features.transpose() * per_row_pre_grad;
    g.values[nf] = per_row_pre_grad.sum();
    return g;
  }

  const ForwardTrace t = mlp_forward(params, features);
  const std::size_t L = params.layers.size();
  std::vector<Matrix> grad_w(L);
  std::vector<Vector> grad_b(L);

  // delta: rows x out of the current layer, starting at the pre-sigmoid output
  Matrix delta = per_row_pre_grad;
  for (std::size_t ii = 0; ii < L; ++ii) {
    const std::size_t i = L - 1 - ii;
    grad_w[i] = delta.transpose() * t.inputs[i];
    grad_b[i] = delta.colwise().sum().transpose();
    if (i > 0) {
      Matrix back = delta * params.layers[i].weights;
      // ReLU mask of the previous layer's pre-activations
      back = ((t.pre[i - 1].array() > 0.0).cast<double>() * back.array()).matrix();
      delta = std::move(back);
    }
  }

  g.values = Vector(params.param_count());
  Eigen::Index at = 0;
  for (std::size_t i = 0; i < L; ++i) {
    for (Eigen::Index r = 0; r < grad_w[i].rows(); ++r)
      for (Eigen::Index c = 0; c < grad_w[i].cols(); ++c) g.values[at++] = grad_w[i](r, c);
    for (Eigen::Index r = 0; r < grad_b[i].size(); ++r) g.values[at++] = grad_b[i][r];
  }
  return g;
}

GradientVector grad_params(const ModelParams& params, const Matrix& features,
                           const Vector& per_row_loss_grad) {
  if (per_row_loss_grad.size() != features.rows())
    throw DataError("per-row gradient length does not match row count");
  const Vector s = predict_scores(params, features);
  const Vector pre_grad =
      (per_row_loss_grad.array() * s.array() * (1.0 - s.array())).matrix();
  return grad_params_pre(params, features, pre_grad);
}

Vector adversary_scores(const AdversaryParams& adv, const Vector& clf_scores) {
  Vector out(clf_scores.size());
  for (Eigen::Index i = 0; i < clf_scores.size(); ++i)
    out[i] = sigmoid(adv.score_weight * clf_scores[i] + adv.intercept);
  return out;
}

// ---------------------------------------------------------------------------
// Snapshot I/O

namespace {

std::string hexf(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

double parse_hexf(const std::string& s, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw DataError(std::string("bad value in snapshot: ") + what);
  return v;
}

}  // namespace

std::string params_to_text(const ModelParams& clf, const AdversaryParams& adv) {
  std::ostringstream out;
  out << "fairmax-params v1\n";
  out << "model = " << model_kind_name(clf.kind) << "\n";
  if (clf.kind == ModelKind::Logistic) {
    out << "dims = " << clf.input_dim() << "\n";
  } else {
    out << "dims = " << clf.input_dim();
    for (const auto& l : clf.layers) out << " " << l.weights.rows();
    out << "\n";
  }
  const Vector flat = clf.flatten();
  out << "values = " << flat.size() << "\n";
  for (Eigen::Index i = 0; i < flat.size(); ++i) out << hexf(flat[i]) << "\n";
  out << "adversary = 2\n";
  out << hexf(adv.score_weight) << "\n";
  out << hexf(adv.intercept) << "\n";
  return out.str();
}

std::pair<ModelParams, AdversaryParams> params_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next = [&](const char* what) {
    if (!std::getline(in, line)) throw DataError(std::string("snapshot truncated at ") + what);
    return trim(line);
  };
  if (next("header") != "fairmax-params v1") throw DataError("unrecognized snapshot header");

  auto kv = [&](const char* key) {
    const std::string l = next(key);
    const auto eq = l.find('=');
    if (eq == std::string::npos || trim(l.substr(0, eq)) != key)
      throw DataError(std::string("snapshot missing field: ") + key);
    return trim(l.substr(eq + 1));
  };

  ModelParams clf;
  clf.kind = model_kind_from_name(kv("model"));
  const std::vector<std::string> dims_s = split(kv("dims"), ' ');
  std::vector<std::uint64_t> dims;
  for (const auto& d : dims_s) {
    if (trim(d).empty()) continue;
    std::uint64_t v = 0;
    if (!parse_u64(d, v)) throw DataError("bad dims in snapshot");
    dims.push_back(v);
  }
  if (dims.empty()) throw DataError("bad dims in snapshot");

  if (clf.kind == ModelKind::Logistic) {
    clf.logistic = Vector::Zero(static_cast<Eigen::Index>(dims[0]) + 1);
  } else {
    dims.push_back(1);  // dims lists input + hidden widths; output dim is 1
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
      MlpLayer l;
      l.weights = Matrix::Zero(static_cast<Eigen::Index>(dims[i + 1]),
                               static_cast<Eigen::Index>(dims[i]));
      l.bias = Vector::Zero(static_cast<Eigen::Index>(dims[i + 1]));
      clf.layers.push_back(std::move(l));
    }
  }

  std::uint64_t count = 0;
  if (!parse_u64(kv("values"), count) || count != clf.param_count())
    throw DataError("snapshot value count does not match declared dims");
  Vector flat(static_cast<Eigen::Index>(count));
  for (std::uint64_t i = 0; i < count; ++i) flat[static_cast<Eigen::Index>(i)] =
      parse_hexf(next("value"), "parameter");
  clf.set_from_flat(flat);

  std::uint64_t adv_count = 0;
  if (!parse_u64(kv("adversary"), adv_count) || adv_count != 2)
    throw DataError("snapshot adversary block must have 2 values");
  AdversaryParams adv;
  adv.score_weight = parse_hexf(next("adversary value"), "adversary");
  adv.intercept = parse_hexf(next("adversary value"), "adversary");
  return {std::move(clf), adv};
}

void save_params(const ModelParams& clf, const AdversaryParams& adv, const std::string& path) {
  write_file(path, params_to_text(clf, adv));
}

std::pair<ModelParams, AdversaryParams> load_params(const std::string& path) {
  return params_from_text(read_file(path));
}

}  // namespace fairmax
