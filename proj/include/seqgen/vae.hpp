#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "seqgen/corpus.hpp"
#include "seqgen/model_iface.hpp"
#include "seqgen/nn.hpp"

namespace seqgen {

struct VaeTrainConfig {
  nn::Schedule schedule = nn::Schedule::paper();
  std::vector<int> hidden = {1024, 512, 256};  // encoder trunk; decoder mirrors it
  int latent_dim = 128;
  int batch_size = 64;
  std::uint64_t seed = 0;

  std::string to_json() const;
  static VaeTrainConfig from_json(const std::string& text);
};

// Trained sequential-segment model. The encoder's final layer emits the
// concatenated posterior mean and log-variance; the decoder ends in a
// sigmoid over the one-hot layout of the vocabulary.
struct VaeModel {
  nn::DenseNet<float> encoder;
  nn::DenseNet<float> decoder;
  int latent_dim = 128;
  TileVocabulary vocab;
  std::string manifest_json;  // hyperparameters and seed used for training
};

struct EpochStats {
  int epoch = 0;
  double recon = 0.0;  // mean per-sample summed BCE
  double kl = 0.0;     // mean per-sample summed KL
  double lr = 0.0;
  double kl_weight = 0.0;
  double wall_ms = 0.0;
};

struct TrainReport {
  std::uint64_t seed = 0;
  std::vector<EpochStats> epochs;

  std::string to_json() const;
};

// Trains on (current -> follower) pairs: the loss compares the decoder
// output with the follower's one-hot, never with the encoded segment.
std::pair<VaeModel, TrainReport> train_vae(const std::vector<TrainingPair>& pairs,
                                           const TileVocabulary& vocab, const VaeTrainConfig& config);

// Posterior mean of a segment; deterministic.
Eigen::VectorXf encode(const VaeModel& model, const Segment& segment);
// Mean and log-variance, for callers that sample.
std::pair<Eigen::VectorXf, Eigen::VectorXf> encode_distribution(const VaeModel& model,
                                                                const Segment& segment);
// Arg-max decoding of a latent vector into a discrete segment.
Segment decode(const VaeModel& model, const Eigen::VectorXf& z);

// `latent_dim` independent standard-normal draws, reproducible per seed.
Eigen::VectorXf sample_prior(int latent_dim, std::uint64_t seed);

// (1-t)*a + t*b for t in [0, 1].
Eigen::VectorXf interpolate(const Eigen::VectorXf& a, const Eigen::VectorXf& b, double t);

// Adapts a trained model to the generation-loop interface. The default
// mean-encoding path is deterministic; `sample_latents` draws the latent
// through the reparameterization instead (diversity studies).
class VaeSequencer final : public SegmentModel {
 public:
  explicit VaeSequencer(const VaeModel& model, bool sample_latents = false,
                        std::uint64_t sample_seed = 0);

  Segment follower(const Segment& current) const override;
  Segment from_prior(std::uint64_t seed) const override;

 private:
  const VaeModel& model_;
  bool sample_latents_;
  mutable Rng rng_;
};

}  // namespace seqgen
