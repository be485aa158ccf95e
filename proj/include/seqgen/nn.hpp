#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "seqgen/errors.hpp"
#include "seqgen/rng.hpp"

// Minimal dense-network core: affine stacks with ReLU/sigmoid, manual
// backprop, the variational loss, and Adam. Templated on the scalar so
// production runs float while gradient-check oracles run double.
namespace seqgen::nn {

template <typename S>
using MatrixX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using VectorX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

enum class Activation { None, ReLU, Sigmoid };

template <typename S>
MatrixX<S> apply_activation(Activation act, const MatrixX<S>& z) {
  switch (act) {
    case Activation::None:
      return z;
    case Activation::ReLU:
      return z.cwiseMax(S(0));
    case Activation::Sigmoid:
      // exp overflow saturates to inf and the quotient to 0, which is the
      // right limit, so no sign split is needed.
      return (S(1) / (S(1) + (-z.array()).exp())).matrix();
  }
  throw RangeError("invalid activation");
}

template <typename S>
struct Layer {
  MatrixX<S> weight;  // out x in
  VectorX<S> bias;    // out
  Activation activation = Activation::None;

  int in_size() const { return static_cast<int>(weight.cols()); }
  int out_size() const { return static_cast<int>(weight.rows()); }
};

template <typename S>
struct DenseNet {
  std::vector<Layer<S>> layers;

  int input_size() const { return layers.empty() ? 0 : layers.front().in_size(); }
  int output_size() const { return layers.empty() ? 0 : layers.back().out_size(); }

  void validate() const {
    if (layers.empty()) throw ShapeError("network has no layers");
    for (std::size_t k = 0; k < layers.size(); ++k) {
      if (layers[k].bias.size() != layers[k].weight.rows())
        throw ShapeError("layer " + std::to_string(k) + " bias/weight mismatch");
      if (k > 0 && layers[k].in_size() != layers[k - 1].out_size())
        throw ShapeError("layer " + std::to_string(k) + " input size " +
                         std::to_string(layers[k].in_size()) + " != previous output " +
                         std::to_string(layers[k - 1].out_size()));
    }
  }
};

template <typename S>
DenseNet<S> make_mlp(const std::vector<int>& sizes, const std::vector<Activation>& activations) {
  if (sizes.size() < 2 || activations.size() != sizes.size() - 1)
    throw ShapeError("make_mlp needs n+1 sizes for n activations");
  DenseNet<S> net;
  for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
    Layer<S> layer;
    layer.weight = MatrixX<S>::Zero(sizes[k + 1], sizes[k]);
    layer.bias = VectorX<S>::Zero(sizes[k + 1]);
    layer.activation = activations[k];
    net.layers.push_back(std::move(layer));
  }
  return net;
}

// Glorot-uniform weights, zero biases. Draw order is fixed (layer by
// layer, weights row-major) so a seed pins the exact initialization.
template <typename S>
void init_glorot(DenseNet<S>& net, Rng& rng) {
  for (Layer<S>& layer : net.layers) {
    const double fan_in = layer.in_size();
    const double fan_out = layer.out_size();
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    for (int r = 0; r < layer.weight.rows(); ++r)
      for (int c = 0; c < layer.weight.cols(); ++c)
        layer.weight(r, c) = static_cast<S>((2.0 * rng.uniform() - 1.0) * bound);
    layer.bias.setZero();
  }
}

// Activations cached by forward; sufficient for one backward pass over
// the same network.
template <typename S>
struct ForwardCache {
  MatrixX<S> input;
  std::vector<MatrixX<S>> pre;   // z_k = W_k a_{k-1} + b_k
  std::vector<MatrixX<S>> post;  // a_k = act(z_k)
};

// Columns are samples. Returns the final activation; fills `cache` when
// given. Accepts any Eigen expression of the right scalar.
template <typename S, typename Derived>
MatrixX<S> forward(const DenseNet<S>& net, const Eigen::MatrixBase<Derived>& input_expr,
                   ForwardCache<S>* cache = nullptr) {
  static_assert(std::is_same_v<typename Derived::Scalar, S>, "input scalar must match the network");
  net.validate();
  MatrixX<S> a = input_expr;
  if (a.rows() != net.input_size())
    throw ShapeError("input rows " + std::to_string(a.rows()) + " != network input size " +
                     std::to_string(net.input_size()));
  if (cache) {
    cache->input = a;
    cache->pre.clear();
    cache->post.clear();
  }
  for (const Layer<S>& layer : net.layers) {
    MatrixX<S> z = (layer.weight * a).colwise() + layer.bias;
    a = apply_activation(layer.activation, z);
    if (cache) {
      cache->pre.push_back(std::move(z));
      cache->post.push_back(a);
    }
  }
  return a;
}

template <typename S>
struct LayerGrads {
  MatrixX<S> weight;
  VectorX<S> bias;
};

template <typename S>
struct BackwardResult {
  std::vector<LayerGrads<S>> layers;
  MatrixX<S> input;  // dL/d(input)
};

// Reverse pass. `output_grad` is dL/d(output) by default; with
// `grad_at_preactivation` it is dL/d(z_last), which callers use to fuse
// sigmoid with cross-entropy instead of dividing by sigma'(z).
template <typename S, typename Derived>
BackwardResult<S> backward(const DenseNet<S>& net, const ForwardCache<S>& cache,
                           const Eigen::MatrixBase<Derived>& output_grad_expr,
                           bool grad_at_preactivation = false) {
  static_assert(std::is_same_v<typename Derived::Scalar, S>, "gradient scalar must match the network");
  const MatrixX<S> output_grad = output_grad_expr;
  const std::size_t n = net.layers.size();
  if (cache.pre.size() != n || cache.post.size() != n)
    throw CacheError("cache holds " + std::to_string(cache.pre.size()) + " layers, network has " +
                     std::to_string(n));
  if (cache.input.rows() != net.input_size())
    throw CacheError("cache input size does not match network");
  for (std::size_t k = 0; k < n; ++k)
    if (cache.pre[k].rows() != net.layers[k].out_size())
      throw CacheError("cache layer " + std::to_string(k) + " does not match network shape");
  if (output_grad.rows() != net.output_size() || output_grad.cols() != cache.input.cols())
    throw ShapeError("output gradient shape mismatch");

  BackwardResult<S> result;
  result.layers.resize(n);
  MatrixX<S> g = output_grad;
  for (std::size_t k = n; k-- > 0;) {
    const Layer<S>& layer = net.layers[k];
    MatrixX<S> dz;
    if (k == n - 1 && grad_at_preactivation) {
      dz = g;
    } else {
      switch (layer.activation) {
        case Activation::None:
          dz = g;
          break;
        case Activation::ReLU:
          dz = (cache.pre[k].array() > S(0)).template cast<S>() * g.array();
          break;
        case Activation::Sigmoid:
          dz = (cache.post[k].array() * (S(1) - cache.post[k].array())) * g.array();
          break;
      }
    }
    const MatrixX<S>& a_prev = (k == 0) ? cache.input : cache.post[k - 1];
    result.layers[k].weight.noalias() = dz * a_prev.transpose();
    result.layers[k].bias = dz.rowwise().sum();
    if (k == 0) {
      result.input.noalias() = layer.weight.transpose() * dz;
    } else {
      g.noalias() = layer.weight.transpose() * dz;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Variational loss pieces

inline constexpr double kProbClamp = 1e-7;

struct VaeLossTerms {
  double total = 0.0;
  double recon = 0.0;  // summed binary cross-entropy
  double kl = 0.0;     // summed KL against the unit Gaussian
};

// Per-sample loss on column vectors: binary cross-entropy of the
// reconstruction against the one-hot target, summed over elements, plus
// kl_weight times 0.5 * sum(exp(logvar) + mu^2 - 1 - logvar).
template <typename D1, typename D2, typename D3, typename D4>
VaeLossTerms vae_loss(const Eigen::MatrixBase<D1>& reconstruction_expr,
                      const Eigen::MatrixBase<D2>& target_expr, const Eigen::MatrixBase<D3>& mu_expr,
                      const Eigen::MatrixBase<D4>& logvar_expr, double kl_weight) {
  using S = typename D1::Scalar;
  const MatrixX<S> reconstruction = reconstruction_expr;
  const MatrixX<S> target = target_expr;
  const MatrixX<S> mu = mu_expr;
  const MatrixX<S> logvar = logvar_expr;
  if (reconstruction.rows() != target.rows() || reconstruction.cols() != target.cols())
    throw ShapeError("reconstruction/target shape mismatch");
  if (mu.rows() != logvar.rows() || mu.cols() != logvar.cols() || mu.cols() != reconstruction.cols())
    throw ShapeError("mu/logvar shape mismatch");

  const auto batch = static_cast<double>(reconstruction.cols());
  if (!((reconstruction.array() >= S(0)).all() && (reconstruction.array() <= S(1)).all()))
    throw NumericalError("reconstruction entries are not probabilities");

  // Accumulate in double; the elementwise math vectorizes.
  const auto p = reconstruction.template cast<double>().array().max(kProbClamp).min(1.0 - kProbClamp);
  const auto y = target.template cast<double>().array();
  const double recon = -(y * p.log() + (1.0 - y) * (1.0 - p).log()).sum();

  const auto m = mu.template cast<double>().array();
  const auto lv = logvar.template cast<double>().array();
  const double kl = 0.5 * (lv.exp() + m.square() - 1.0 - lv).sum();
  VaeLossTerms terms;
  terms.recon = recon / batch;
  terms.kl = kl / batch;
  terms.total = terms.recon + kl_weight * terms.kl;
  return terms;
}

// z = mu + exp(0.5 * logvar) .* noise
template <typename D1, typename D2, typename D3>
MatrixX<typename D1::Scalar> reparameterize(const Eigen::MatrixBase<D1>& mu_expr,
                                            const Eigen::MatrixBase<D2>& logvar_expr,
                                            const Eigen::MatrixBase<D3>& noise_expr) {
  using S = typename D1::Scalar;
  const MatrixX<S> mu = mu_expr;
  const MatrixX<S> logvar = logvar_expr;
  const MatrixX<S> noise = noise_expr;
  if (mu.rows() != logvar.rows() || mu.cols() != logvar.cols() || mu.rows() != noise.rows() ||
      mu.cols() != noise.cols())
    throw ShapeError("reparameterize arguments must share shape");
  return mu.array() + (logvar.array() * S(0.5)).exp() * noise.array();
}

// ---------------------------------------------------------------------------
// Adam

template <typename S>
struct AdamState {
  struct Moments {
    MatrixX<S> m_weight, v_weight;
    VectorX<S> m_bias, v_bias;
  };
  std::vector<Moments> layers;
  long long step = 0;
  S beta1 = S(0.9);
  S beta2 = S(0.999);
  S epsilon = S(1e-8);

  static AdamState for_net(const DenseNet<S>& net) {
    AdamState state;
    for (const Layer<S>& layer : net.layers) {
      Moments m;
      m.m_weight = MatrixX<S>::Zero(layer.weight.rows(), layer.weight.cols());
      m.v_weight = MatrixX<S>::Zero(layer.weight.rows(), layer.weight.cols());
      m.m_bias = VectorX<S>::Zero(layer.bias.size());
      m.v_bias = VectorX<S>::Zero(layer.bias.size());
      state.layers.push_back(std::move(m));
    }
    return state;
  }
};

template <typename S>
void adam_step(DenseNet<S>& net, const BackwardResult<S>& grads, AdamState<S>& state, S lr) {
  if (grads.layers.size() != net.layers.size() || state.layers.size() != net.layers.size())
    throw ShapeError("adam_step: gradient/state layer count mismatch");
  state.step += 1;
  const S bc1 = S(1) - static_cast<S>(std::pow(static_cast<double>(state.beta1), state.step));
  const S bc2 = S(1) - static_cast<S>(std::pow(static_cast<double>(state.beta2), state.step));

  for (std::size_t k = 0; k < net.layers.size(); ++k) {
    const auto& gw = grads.layers[k].weight;
    const auto& gb = grads.layers[k].bias;
    if (!gw.allFinite())
      throw NumericalError("non-finite weight gradient in layer " + std::to_string(k));
    if (!gb.allFinite())
      throw NumericalError("non-finite bias gradient in layer " + std::to_string(k));
    auto& mom = state.layers[k];
    mom.m_weight = state.beta1 * mom.m_weight + (S(1) - state.beta1) * gw;
    mom.v_weight = state.beta2 * mom.v_weight.array() + (S(1) - state.beta2) * gw.array().square();
    mom.m_bias = state.beta1 * mom.m_bias + (S(1) - state.beta1) * gb;
    mom.v_bias = state.beta2 * mom.v_bias.array() + (S(1) - state.beta2) * gb.array().square();

    net.layers[k].weight.array() -=
        lr * (mom.m_weight.array() / bc1) / ((mom.v_weight.array() / bc2).sqrt() + state.epsilon);
    net.layers[k].bias.array() -=
        lr * (mom.m_bias.array() / bc1) / ((mom.v_bias.array() / bc2).sqrt() + state.epsilon);
  }
}

// ---------------------------------------------------------------------------
// Learning-rate decay and KL annealing

struct Schedule {
  double base_lr = 1e-3;
  double decay_factor = 0.1;
  int decay_every = 2500;
  int kl_anneal_epochs = 2500;
  int total_epochs = 10000;

  static Schedule paper() { return Schedule{}; }

  // Same shape compressed to a different run length: decay and annealing
  // keep the paper's 1/4 proportions.
  static Schedule scaled(int total) {
    if (total < 4) throw RangeError("schedule needs at least 4 epochs");
    Schedule s;
    s.total_epochs = total;
    s.decay_every = total / 4;
    s.kl_anneal_epochs = total / 4;
    return s;
  }

  static Schedule desk() { return scaled(2000); }

  void validate() const {
    if (base_lr <= 0 || decay_factor <= 0 || decay_every <= 0 || kl_anneal_epochs <= 0 ||
        total_epochs <= 0)
      throw RangeError("schedule fields must be positive");
  }
};

struct ScheduleValue {
  double lr = 0.0;
  double kl_weight = 0.0;
};

inline ScheduleValue schedule_at(const Schedule& schedule, int epoch) {
  schedule.validate();
  if (epoch < 0 || epoch >= schedule.total_epochs)
    throw RangeError("epoch " + std::to_string(epoch) + " outside [0, " +
                     std::to_string(schedule.total_epochs) + ")");
  ScheduleValue v;
  v.lr = schedule.base_lr * std::pow(schedule.decay_factor, epoch / schedule.decay_every);
  v.kl_weight = std::min(1.0, static_cast<double>(epoch) / schedule.kl_anneal_epochs);
  return v;
}

}  // namespace seqgen::nn
