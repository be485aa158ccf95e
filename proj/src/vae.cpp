#include "seqgen/vae.hpp"

#include <chrono>
#include <nlohmann/json.hpp>
#include <numeric>

#include "seqgen/errors.hpp"

namespace seqgen {

using nlohmann::json;
using Matrix = nn::MatrixX<float>;
using Vector = nn::VectorX<float>;

std::string VaeTrainConfig::to_json() const {
  json j;
  j["schedule"] = {{"base_lr", schedule.base_lr},
                   {"decay_factor", schedule.decay_factor},
                   {"decay_every", schedule.decay_every},
                   {"kl_anneal_epochs", schedule.kl_anneal_epochs},
                   {"total_epochs", schedule.total_epochs}};
  j["hidden"] = hidden;
  j["latent_dim"] = latent_dim;
  j["batch_size"] = batch_size;
  j["seed"] = seed;
  j["init"] = "glorot_uniform";
  j["loss"] = "bce_sum + kl_weight * kl_sum, batch mean";
  return j.dump();
}

VaeTrainConfig VaeTrainConfig::from_json(const std::string& text) {
  json j = json::parse(text);
  VaeTrainConfig c;
  const json& s = j.at("schedule");
  c.schedule.base_lr = s.at("base_lr").get<double>();
  c.schedule.decay_factor = s.at("decay_factor").get<double>();
  c.schedule.decay_every = s.at("decay_every").get<int>();
  c.schedule.kl_anneal_epochs = s.at("kl_anneal_epochs").get<int>();
  c.schedule.total_epochs = s.at("total_epochs").get<int>();
  c.hidden = j.at("hidden").get<std::vector<int>>();
  c.latent_dim = j.at("latent_dim").get<int>();
  c.batch_size = j.at("batch_size").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

std::string TrainReport::to_json() const {
  json j;
  j["seed"] = seed;
  json rows = json::array();
  for (const EpochStats& e : epochs)
    rows.push_back({{"epoch", e.epoch},
                    {"recon", e.recon},
                    {"kl", e.kl},
                    {"lr", e.lr},
                    {"kl_weight", e.kl_weight},
                    {"wall_ms", e.wall_ms}});
  j["epochs"] = std::move(rows);
  return j.dump();
}

namespace {

Matrix gather_columns(const Matrix& all, const std::vector<std::size_t>& order, std::size_t begin,
                      std::size_t end) {
  Matrix out(all.rows(), static_cast<Eigen::Index>(end - begin));
  for (std::size_t i = begin; i < end; ++i)
    out.col(static_cast<Eigen::Index>(i - begin)) = all.col(static_cast<Eigen::Index>(order[i]));
  return out;
}

}  // namespace

std::pair<VaeModel, TrainReport> train_vae(const std::vector<TrainingPair>& pairs,
                                           const TileVocabulary& vocab,
                                           const VaeTrainConfig& config) {
  if (pairs.empty()) throw EmptyCorpusError("cannot train a VAE on zero pairs");
  config.schedule.validate();
  if (config.latent_dim < 1 || config.batch_size < 1)
    throw RangeError("latent_dim and batch_size must be positive");

  const int in = one_hot_length(vocab);
  const int latent = config.latent_dim;
  const std::size_t n = pairs.size();

  VaeModel model;
  model.vocab = vocab;
  model.latent_dim = latent;
  {
    std::vector<int> enc_sizes = {in};
    enc_sizes.insert(enc_sizes.end(), config.hidden.begin(), config.hidden.end());
    enc_sizes.push_back(2 * latent);
    std::vector<nn::Activation> enc_acts(enc_sizes.size() - 1, nn::Activation::ReLU);
    enc_acts.back() = nn::Activation::None;
    model.encoder = nn::make_mlp<float>(enc_sizes, enc_acts);

    std::vector<int> dec_sizes = {latent};
    dec_sizes.insert(dec_sizes.end(), config.hidden.rbegin(), config.hidden.rend());
    dec_sizes.push_back(in);
    std::vector<nn::Activation> dec_acts(dec_sizes.size() - 1, nn::Activation::ReLU);
    dec_acts.back() = nn::Activation::Sigmoid;
    model.decoder = nn::make_mlp<float>(dec_sizes, dec_acts);
  }
  Rng init_rng(Rng::derive(config.seed, 0));
  nn::init_glorot(model.encoder, init_rng);
  nn::init_glorot(model.decoder, init_rng);
  model.manifest_json = config.to_json();

  // Encode the whole corpus once; columns are samples.
  Matrix inputs(in, static_cast<Eigen::Index>(n));
  Matrix targets(in, static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto cur = one_hot(pairs[i].current, vocab);
    const auto fol = one_hot(pairs[i].follower, vocab);
    inputs.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Vector>(cur.data(), in);
    targets.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Vector>(fol.data(), in);
  }

  auto enc_state = nn::AdamState<float>::for_net(model.encoder);
  auto dec_state = nn::AdamState<float>::for_net(model.decoder);
  Rng shuffle_rng(Rng::derive(config.seed, 1));
  Rng noise_rng(Rng::derive(config.seed, 2));

  TrainReport report;
  report.seed = config.seed;
  report.epochs.reserve(static_cast<std::size_t>(config.schedule.total_epochs));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (int epoch = 0; epoch < config.schedule.total_epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    const nn::ScheduleValue sched = nn::schedule_at(config.schedule, epoch);
    shuffle_rng.shuffle(order);

    double recon_sum = 0.0;
    double kl_sum = 0.0;
    for (std::size_t begin = 0; begin < n; begin += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t end = std::min(n, begin + static_cast<std::size_t>(config.batch_size));
      const auto batch = static_cast<Eigen::Index>(end - begin);
      const Matrix x = gather_columns(inputs, order, begin, end);
      const Matrix y = gather_columns(targets, order, begin, end);

      nn::ForwardCache<float> enc_cache;
      const Matrix h = nn::forward(model.encoder, x, &enc_cache);
      const Matrix mu = h.topRows(latent);
      const Matrix logvar = h.bottomRows(latent);

      Matrix noise(latent, batch);
      for (Eigen::Index c = 0; c < batch; ++c)
        for (Eigen::Index r = 0; r < latent; ++r) noise(r, c) = static_cast<float>(noise_rng.normal());

      const Matrix z = nn::reparameterize(mu, logvar, noise);
      nn::ForwardCache<float> dec_cache;
      const Matrix p = nn::forward(model.decoder, z, &dec_cache);

      const nn::VaeLossTerms terms = nn::vae_loss(p, y, mu, logvar, sched.kl_weight);
      if (!std::isfinite(terms.total))
        throw NumericalError("loss became non-finite at epoch " + std::to_string(epoch) +
                             ", batch starting at sample " + std::to_string(begin));
      recon_sum += terms.recon * static_cast<double>(batch);
      kl_sum += terms.kl * static_cast<double>(batch);

      const float inv_batch = 1.0f / static_cast<float>(batch);
      // Sigmoid output fused with cross-entropy: the gradient at the final
      // pre-activation is (p - y) / batch.
      const Matrix dz_out = (p - y) * inv_batch;
      const auto dec_grads = nn::backward(model.decoder, dec_cache, dz_out, true);

      const Matrix& dz = dec_grads.input;
      const Matrix sigma = (logvar.array() * 0.5f).exp();
      const float klw = static_cast<float>(sched.kl_weight) * inv_batch;
      Matrix dhead(2 * latent, batch);
      dhead.topRows(latent) = dz + klw * mu;
      dhead.bottomRows(latent) =
          (dz.array() * noise.array() * sigma.array() * 0.5f).matrix() +
          (klw * 0.5f * (logvar.array().exp() - 1.0f)).matrix();
      const auto enc_grads = nn::backward(model.encoder, enc_cache, dhead);

      const float lr = static_cast<float>(sched.lr);
      nn::adam_step(model.encoder, enc_grads, enc_state, lr);
      nn::adam_step(model.decoder, dec_grads, dec_state, lr);
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.recon = recon_sum / static_cast<double>(n);
    stats.kl = kl_sum / static_cast<double>(n);
    stats.lr = sched.lr;
    stats.kl_weight = sched.kl_weight;
    stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    report.epochs.push_back(stats);
  }
  return {std::move(model), std::move(report)};
}

std::pair<Eigen::VectorXf, Eigen::VectorXf> encode_distribution(const VaeModel& model,
                                                                const Segment& segment) {
  const auto vec = one_hot(segment, model.vocab);  // VocabularyError on foreign channels
  const Matrix x = Eigen::Map<const Vector>(vec.data(), static_cast<Eigen::Index>(vec.size()));
  const Matrix h = nn::forward(model.encoder, x);
  return {h.topRows(model.latent_dim).col(0), h.bottomRows(model.latent_dim).col(0)};
}

Eigen::VectorXf encode(const VaeModel& model, const Segment& segment) {
  return encode_distribution(model, segment).first;
}

Segment decode(const VaeModel& model, const Eigen::VectorXf& z) {
  if (z.size() != model.latent_dim)
    throw ShapeError("latent vector has length " + std::to_string(z.size()) + ", expected " +
                     std::to_string(model.latent_dim));
  const Matrix p = nn::forward(model.decoder, Matrix(z));
  std::vector<float> scores(p.data(), p.data() + p.size());
  return arg_max_decode(scores, model.vocab);
}

Eigen::VectorXf sample_prior(int latent_dim, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXf z(latent_dim);
  for (int i = 0; i < latent_dim; ++i) z(i) = static_cast<float>(rng.normal());
  return z;
}

Eigen::VectorXf interpolate(const Eigen::VectorXf& a, const Eigen::VectorXf& b, double t) {
  if (a.size() != b.size()) throw ShapeError("interpolation endpoints must share length");
  if (t < 0.0 || t > 1.0) throw RangeError("interpolation t=" + std::to_string(t) + " outside [0,1]");
  return (1.0f - static_cast<float>(t)) * a + static_cast<float>(t) * b;
}

VaeSequencer::VaeSequencer(const VaeModel& model, bool sample_latents, std::uint64_t sample_seed)
    : model_(model), sample_latents_(sample_latents), rng_(sample_seed) {}

Segment VaeSequencer::follower(const Segment& current) const {
  if (!sample_latents_) return decode(model_, encode(model_, current));
  const auto [mu, logvar] = encode_distribution(model_, current);
  Eigen::VectorXf noise(model_.latent_dim);
  for (int i = 0; i < model_.latent_dim; ++i) noise(i) = static_cast<float>(rng_.normal());
  const Matrix z = nn::reparameterize(mu, logvar, noise);
  return decode(model_, z.col(0));
}

Segment VaeSequencer::from_prior(std::uint64_t seed) const {
  return decode(model_, sample_prior(model_.latent_dim, seed));
}

}  // namespace seqgen
