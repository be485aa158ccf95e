#include "seqgen/archive.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>
#include <zlib.h>

#include "seqgen/errors.hpp"

namespace seqgen {

using nlohmann::json;

namespace {

constexpr char kMagic[4] = {'S', 'Q', 'G', 'M'};
constexpr std::uint8_t kKindVae = 1;
constexpr std::uint8_t kKindForest = 2;

enum class Dtype : std::uint8_t { F32 = 0, I32 = 1, U32 = 2 };

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f32(std::string& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

class Writer {
 public:
  Writer(std::uint8_t kind, const std::string& manifest) {
    buffer_.append(kMagic, 4);
    put_u16(buffer_, kArchiveVersion);
    buffer_.push_back(static_cast<char>(kind));
    buffer_.push_back(0);
    put_u32(buffer_, static_cast<std::uint32_t>(manifest.size()));
    buffer_ += manifest;
    block_count_offset_ = buffer_.size();
    put_u32(buffer_, 0);  // patched by finish()
  }

  void begin_block(const std::string& name, Dtype dtype, const std::vector<std::uint32_t>& dims) {
    put_u16(buffer_, static_cast<std::uint16_t>(name.size()));
    buffer_ += name;
    buffer_.push_back(static_cast<char>(dtype));
    buffer_.push_back(static_cast<char>(dims.size()));
    for (const std::uint32_t d : dims) put_u32(buffer_, d);
    ++blocks_;
  }

  void put(float v) { put_f32(buffer_, v); }
  void put(std::uint32_t v) { put_u32(buffer_, v); }
  void put(std::int32_t v) { put_u32(buffer_, static_cast<std::uint32_t>(v)); }

  void write(const std::string& path) {
    std::uint32_t count = blocks_;
    for (int i = 0; i < 4; ++i)
      buffer_[block_count_offset_ + static_cast<std::size_t>(i)] =
          static_cast<char>((count >> (8 * i)) & 0xff);
    const auto crc = static_cast<std::uint32_t>(
        ::crc32(0, reinterpret_cast<const Bytef*>(buffer_.data()), static_cast<uInt>(buffer_.size())));
    put_u32(buffer_, crc);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    if (!out) throw IoError("failed writing " + path);
  }

 private:
  std::string buffer_;
  std::size_t block_count_offset_ = 0;
  std::uint32_t blocks_ = 0;
};

class Reader {
 public:
  Reader(std::string bytes, const std::string& path) : bytes_(std::move(bytes)) {
    if (bytes_.size() < 16) throw FormatError(path + ": too short to be a model archive");
    const std::size_t body = bytes_.size() - 4;
    std::uint32_t stored = 0;
    std::memcpy(&stored, bytes_.data() + body, 4);
    if constexpr (std::endian::native == std::endian::big) stored = __builtin_bswap32(stored);
    const auto computed = static_cast<std::uint32_t>(
        ::crc32(0, reinterpret_cast<const Bytef*>(bytes_.data()), static_cast<uInt>(body)));
    if (stored != computed)
      throw FormatError(path + ": checksum mismatch (file corrupt or truncated)");
    end_ = body;
    if (std::memcmp(bytes_.data(), kMagic, 4) != 0)
      throw FormatError(path + ": not a seqgen model archive");
    pos_ = 4;
    const std::uint16_t version = take_u16();
    if (version != kArchiveVersion)
      throw FormatError(path + ": archive version " + std::to_string(version) +
                        " unsupported (expected " + std::to_string(kArchiveVersion) + ")");
    kind_ = take_u8();
    take_u8();
    const std::uint32_t manifest_len = take_u32();
    manifest_ = take_bytes(manifest_len);
    blocks_ = take_u32();
  }

  std::uint8_t kind() const { return kind_; }
  const std::string& manifest() const { return manifest_; }
  std::uint32_t blocks() const { return blocks_; }

  struct BlockHeader {
    std::string name;
    Dtype dtype;
    std::vector<std::uint32_t> dims;
    std::size_t elements;
  };

  BlockHeader next_block() {
    BlockHeader h;
    h.name = take_bytes(take_u16());
    h.dtype = static_cast<Dtype>(take_u8());
    const int rank = take_u8();
    h.elements = 1;
    for (int i = 0; i < rank; ++i) {
      h.dims.push_back(take_u32());
      h.elements *= h.dims.back();
    }
    return h;
  }

  float take_f32() { return std::bit_cast<float>(take_u32()); }
  std::int32_t take_i32() { return static_cast<std::int32_t>(take_u32()); }

  std::uint32_t take_u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + static_cast<std::size_t>(i)]))
           << (8 * i);
    pos_ += 4;
    return v;
  }

 private:
  std::uint8_t take_u8() {
    need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }

  std::uint16_t take_u16() {
    need(2);
    const auto lo = static_cast<unsigned char>(bytes_[pos_]);
    const auto hi = static_cast<unsigned char>(bytes_[pos_ + 1]);
    pos_ += 2;
    return static_cast<std::uint16_t>(lo | (hi << 8));
  }

  std::string take_bytes(std::size_t n) {
    need(n);
    std::string out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  void need(std::size_t n) const {
    if (pos_ + n > end_) throw FormatError("archive ends unexpectedly");
  }

  std::string bytes_;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
  std::uint8_t kind_ = 0;
  std::string manifest_;
  std::uint32_t blocks_ = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return bytes;
}

json vocab_manifest(const TileVocabulary& vocab) {
  const KeyValueFile kv = vocab.to_config();
  json j;
  for (const auto& [key, value] : kv.entries()) j[key] = value;
  return j;
}

TileVocabulary vocab_from_manifest(const json& j) {
  KeyValueFile kv;
  for (const auto& [key, value] : j.items()) kv.set(key, value.get<std::string>());
  return TileVocabulary::from_config(kv);
}

const char* activation_name(nn::Activation a) {
  switch (a) {
    case nn::Activation::None: return "none";
    case nn::Activation::ReLU: return "relu";
    case nn::Activation::Sigmoid: return "sigmoid";
  }
  throw RangeError("invalid activation");
}

nn::Activation activation_from(const std::string& name) {
  if (name == "none") return nn::Activation::None;
  if (name == "relu") return nn::Activation::ReLU;
  if (name == "sigmoid") return nn::Activation::Sigmoid;
  throw FormatError("unknown activation '" + name + "'");
}

json net_manifest(const nn::DenseNet<float>& net) {
  json layers = json::array();
  for (const auto& layer : net.layers)
    layers.push_back({{"in", layer.in_size()},
                      {"out", layer.out_size()},
                      {"activation", activation_name(layer.activation)}});
  return layers;
}

void write_net_blocks(Writer& w, const std::string& prefix, const nn::DenseNet<float>& net) {
  for (std::size_t k = 0; k < net.layers.size(); ++k) {
    const auto& layer = net.layers[k];
    w.begin_block(prefix + "." + std::to_string(k) + ".weight", Dtype::F32,
                  {static_cast<std::uint32_t>(layer.weight.rows()),
                   static_cast<std::uint32_t>(layer.weight.cols())});
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) w.put(layer.weight(r, c));
    w.begin_block(prefix + "." + std::to_string(k) + ".bias", Dtype::F32,
                  {static_cast<std::uint32_t>(layer.bias.size())});
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) w.put(layer.bias(r));
  }
}

nn::DenseNet<float> read_net(Reader& r, const json& layers_manifest) {
  nn::DenseNet<float> net;
  for (const json& jl : layers_manifest) {
    nn::Layer<float> layer;
    const int out = jl.at("out").get<int>();
    const int in = jl.at("in").get<int>();
    layer.activation = activation_from(jl.at("activation").get<std::string>());

    const auto wh = r.next_block();
    if (wh.dtype != Dtype::F32 || wh.dims.size() != 2 || wh.dims[0] != static_cast<std::uint32_t>(out) ||
        wh.dims[1] != static_cast<std::uint32_t>(in))
      throw FormatError("weight block '" + wh.name + "' does not match manifest");
    layer.weight.resize(out, in);
    for (int rr = 0; rr < out; ++rr)
      for (int cc = 0; cc < in; ++cc) layer.weight(rr, cc) = r.take_f32();

    const auto bh = r.next_block();
    if (bh.dtype != Dtype::F32 || bh.dims.size() != 1 || bh.dims[0] != static_cast<std::uint32_t>(out))
      throw FormatError("bias block '" + bh.name + "' does not match manifest");
    layer.bias.resize(out);
    for (int rr = 0; rr < out; ++rr) layer.bias(rr) = r.take_f32();

    net.layers.push_back(std::move(layer));
  }
  net.validate();
  return net;
}

}  // namespace

void save_vae(const VaeModel& model, const std::string& path) {
  json manifest;
  manifest["kind"] = "vae";
  manifest["latent_dim"] = model.latent_dim;
  manifest["train"] = model.manifest_json.empty() ? json() : json::parse(model.manifest_json);
  manifest["vocab"] = vocab_manifest(model.vocab);
  manifest["encoder"] = net_manifest(model.encoder);
  manifest["decoder"] = net_manifest(model.decoder);

  Writer w(kKindVae, manifest.dump());
  write_net_blocks(w, "encoder", model.encoder);
  write_net_blocks(w, "decoder", model.decoder);
  w.write(path);
}

VaeModel load_vae(const std::string& path) {
  Reader r(read_file(path), path);
  if (r.kind() != kKindVae) throw FormatError(path + ": not a VAE archive");
  const json manifest = json::parse(r.manifest());
  VaeModel model;
  model.latent_dim = manifest.at("latent_dim").get<int>();
  model.vocab = vocab_from_manifest(manifest.at("vocab"));
  if (!manifest.at("train").is_null()) model.manifest_json = manifest.at("train").dump();
  model.encoder = read_net(r, manifest.at("encoder"));
  model.decoder = read_net(r, manifest.at("decoder"));
  if (model.decoder.output_size() != one_hot_length(model.vocab))
    throw FormatError(path + ": decoder output does not match the vocabulary one-hot length");
  return model;
}

void save_forest(const ForestModel& model, const TileVocabulary& vocab, const std::string& path) {
  json manifest;
  manifest["kind"] = "forest";
  manifest["train"] = model.manifest_json.empty() ? json() : json::parse(model.manifest_json);
  manifest["vocab"] = vocab_manifest(vocab);
  manifest["encoding"] = model.encoding == FeatureEncoding::TileIndex ? "tile_index" : "one_hot";
  manifest["feature_count"] = model.feature_count;
  manifest["degenerate_classes"] = model.degenerate_classes;
  manifest["tree_count"] = model.trees.size();

  Writer w(kKindForest, manifest.dump());
  std::vector<std::uint32_t> offsets;
  offsets.push_back(0);
  for (const DecisionTree& tree : model.trees)
    offsets.push_back(offsets.back() + static_cast<std::uint32_t>(tree.nodes.size()));
  w.begin_block("tree_offsets", Dtype::U32, {static_cast<std::uint32_t>(offsets.size())});
  for (const std::uint32_t o : offsets) w.put(o);

  const std::uint32_t total = offsets.back();
  w.begin_block("node_feature", Dtype::I32, {total});
  for (const DecisionTree& t : model.trees)
    for (const TreeNode& n : t.nodes) w.put(static_cast<std::int32_t>(n.feature));
  w.begin_block("node_threshold", Dtype::F32, {total});
  for (const DecisionTree& t : model.trees)
    for (const TreeNode& n : t.nodes) w.put(n.threshold);
  w.begin_block("node_left", Dtype::I32, {total});
  for (const DecisionTree& t : model.trees)
    for (const TreeNode& n : t.nodes) w.put(n.left);
  w.begin_block("node_right", Dtype::I32, {total});
  for (const DecisionTree& t : model.trees)
    for (const TreeNode& n : t.nodes) w.put(n.right);
  w.begin_block("node_counts", Dtype::U32, {total, 4});
  for (const DecisionTree& t : model.trees)
    for (const TreeNode& n : t.nodes)
      for (const std::uint32_t c : n.counts) w.put(c);
  w.write(path);
}

ForestArchive load_forest(const std::string& path) {
  Reader r(read_file(path), path);
  if (r.kind() != kKindForest) throw FormatError(path + ": not a forest archive");
  const json manifest = json::parse(r.manifest());

  ForestArchive archive;
  archive.vocab = vocab_from_manifest(manifest.at("vocab"));
  archive.model.encoding = manifest.at("encoding").get<std::string>() == "one_hot"
                               ? FeatureEncoding::OneHot
                               : FeatureEncoding::TileIndex;
  archive.model.feature_count = manifest.at("feature_count").get<int>();
  archive.model.degenerate_classes = manifest.at("degenerate_classes").get<bool>();
  if (!manifest.at("train").is_null()) archive.model.manifest_json = manifest.at("train").dump();

  const auto oh = r.next_block();
  if (oh.name != "tree_offsets" || oh.dtype != Dtype::U32)
    throw FormatError(path + ": missing tree_offsets block");
  std::vector<std::uint32_t> offsets(oh.elements);
  for (auto& o : offsets) o = r.take_u32();
  if (offsets.empty() || offsets.front() != 0) throw FormatError(path + ": bad tree offsets");

  const std::uint32_t total = offsets.back();
  std::vector<std::int32_t> feature(total), left(total), right(total);
  std::vector<float> threshold(total);
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(total) * 4);

  auto read_block = [&](const char* name, Dtype dtype, std::size_t elements, auto fill) {
    const auto h = r.next_block();
    if (h.name != name || h.dtype != dtype || h.elements != elements)
      throw FormatError(path + ": malformed block '" + std::string(name) + "'");
    fill();
  };
  read_block("node_feature", Dtype::I32, total, [&] {
    for (auto& v : feature) v = r.take_i32();
  });
  read_block("node_threshold", Dtype::F32, total, [&] {
    for (auto& v : threshold) v = r.take_f32();
  });
  read_block("node_left", Dtype::I32, total, [&] {
    for (auto& v : left) v = r.take_i32();
  });
  read_block("node_right", Dtype::I32, total, [&] {
    for (auto& v : right) v = r.take_i32();
  });
  read_block("node_counts", Dtype::U32, static_cast<std::size_t>(total) * 4, [&] {
    for (auto& v : counts) v = r.take_u32();
  });

  for (std::size_t t = 0; t + 1 < offsets.size(); ++t) {
    DecisionTree tree;
    for (std::uint32_t i = offsets[t]; i < offsets[t + 1]; ++i) {
      TreeNode node;
      node.feature = static_cast<std::int16_t>(feature[i]);
      node.threshold = threshold[i];
      node.left = left[i];
      node.right = right[i];
      for (int c = 0; c < 4; ++c)
        node.counts[static_cast<std::size_t>(c)] = counts[static_cast<std::size_t>(i) * 4 +
                                                          static_cast<std::size_t>(c)];
      tree.nodes.push_back(node);
    }
    if (tree.nodes.empty()) throw FormatError(path + ": empty tree in archive");
    archive.model.trees.push_back(std::move(tree));
  }
  return archive;
}

ArchiveInfo inspect_archive(const std::string& path) {
  Reader r(read_file(path), path);
  ArchiveInfo info;
  info.kind = r.kind() == kKindVae ? "vae" : r.kind() == kKindForest ? "forest" : "unknown";
  info.manifest_json = r.manifest();
  return info;
}

std::uint32_t file_crc32(const std::string& path) {
  const std::string bytes = read_file(path);
  return static_cast<std::uint32_t>(
      ::crc32(0, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size())));
}

}  // namespace seqgen
