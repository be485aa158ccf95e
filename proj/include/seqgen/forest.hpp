#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seqgen/corpus.hpp"
#include "seqgen/model_iface.hpp"

namespace seqgen {

struct DirectionSample {
  Segment segment;
  Direction dir = Direction::Right;
};

// How segments are presented to the trees. Tile indices are the default;
// one-hot is kept behind a flag for ablation.
enum class FeatureEncoding { TileIndex, OneHot };

struct ForestTrainParams {
  int tree_count = 100;
  int max_depth = 0;           // 0 = unlimited
  int features_per_split = 0;  // 0 = floor(sqrt(feature_count))
  int min_samples_split = 2;
  bool bootstrap = true;
  FeatureEncoding encoding = FeatureEncoding::TileIndex;
  int channels = 0;  // required for one-hot encoding
};

struct TreeNode {
  std::int16_t feature = -1;  // -1 marks a leaf
  float threshold = 0.0f;
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::array<std::uint32_t, kDirectionCount> counts{};  // leaf histogram
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // node 0 is the root

  const TreeNode& leaf_for(const Segment& segment, FeatureEncoding encoding) const;
};

class ForestModel final : public DirectionModel {
 public:
  std::vector<DecisionTree> trees;
  FeatureEncoding encoding = FeatureEncoding::TileIndex;
  int feature_count = Segment::kTiles;
  bool degenerate_classes = false;  // training saw a single class
  std::string manifest_json;

  std::array<double, kDirectionCount> direction_proba(const Segment& segment) const override;
};

// Balances class counts up to the majority class by cyclically repeating
// existing rows of each minority class.
std::vector<DirectionSample> oversample(const std::vector<DirectionSample>& data);

// Bootstrap-aggregated CART trees with Gini splits; deterministic per
// seed (per-tree streams derived from it).
ForestModel train_forest(const std::vector<DirectionSample>& data, const ForestTrainParams& params,
                         std::uint64_t seed);

// Mean of the per-tree leaf distributions; sums to 1.
std::array<double, kDirectionCount> predict_proba(const ForestModel& model, const Segment& segment);

// Arg-max of predict_proba, falling back to the second-highest class when
// the arg-max is the forbidden direction. Ties break by enum order
// (Up < Down < Left < Right).
Direction predict_direction(const ForestModel& model, const Segment& segment,
                            std::optional<Direction> forbidden = std::nullopt);

// Seeded shuffle, first `train_fraction` of rows for training.
std::pair<std::vector<DirectionSample>, std::vector<DirectionSample>> train_test_split(
    const std::vector<DirectionSample>& data, double train_fraction, std::uint64_t seed);

struct ForestEvaluation {
  int total = 0;
  int correct = 0;
  // confusion[actual][predicted]
  std::array<std::array<int, kDirectionCount>, kDirectionCount> confusion{};

  double accuracy() const { return total == 0 ? 0.0 : static_cast<double>(correct) / total; }
  std::string to_table() const;  // confusion matrix + per-class precision/recall
};

ForestEvaluation evaluate_forest(const ForestModel& model, const std::vector<DirectionSample>& rows);

}  // namespace seqgen
