#include "seqgen/forest.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <sstream>

#include "seqgen/errors.hpp"
#include "seqgen/rng.hpp"

namespace seqgen {

namespace {

using Counts = std::array<std::uint32_t, kDirectionCount>;

inline float feature_value(const Segment& seg, int feature, FeatureEncoding encoding) {
  if (encoding == FeatureEncoding::TileIndex)
    return static_cast<float>(seg.tiles[static_cast<std::size_t>(feature)]);
  const int channel = feature / Segment::kTiles;
  const int tile = feature % Segment::kTiles;
  return seg.tiles[static_cast<std::size_t>(tile)] == channel ? 1.0f : 0.0f;
}

double gini(const Counts& counts, double n) {
  if (n <= 0.0) return 0.0;
  double sum_sq = 0.0;
  for (const std::uint32_t c : counts) {
    const double p = static_cast<double>(c) / n;
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

struct TreeBuilder {
  const std::vector<DirectionSample>& data;
  const ForestTrainParams& params;
  FeatureEncoding encoding;
  int feature_count;
  Rng& rng;
  std::vector<int> feature_pool;  // permutation of all features, reused per node
  DecisionTree tree;

  TreeBuilder(const std::vector<DirectionSample>& data_, const ForestTrainParams& params_,
              int feature_count_, Rng& rng_)
      : data(data_), params(params_), encoding(params_.encoding), feature_count(feature_count_),
        rng(rng_) {
    feature_pool.resize(static_cast<std::size_t>(feature_count));
    std::iota(feature_pool.begin(), feature_pool.end(), 0);
  }

  Counts count_classes(const std::vector<std::uint32_t>& rows) const {
    Counts counts{};
    for (const std::uint32_t r : rows) ++counts[static_cast<std::size_t>(data[r].dir)];
    return counts;
  }

  std::int32_t make_leaf(const Counts& counts) {
    TreeNode node;
    node.counts = counts;
    tree.nodes.push_back(node);
    return static_cast<std::int32_t>(tree.nodes.size() - 1);
  }

  // Grows the subtree over `rows`; returns its node index.
  std::int32_t grow(std::vector<std::uint32_t>& rows, int depth) {
    const Counts counts = count_classes(rows);
    const double n = static_cast<double>(rows.size());
    const double node_gini = gini(counts, n);

    const bool pure = node_gini == 0.0;
    const bool too_small = rows.size() < static_cast<std::size_t>(params.min_samples_split);
    const bool too_deep = params.max_depth > 0 && depth >= params.max_depth;
    if (pure || too_small || too_deep) return make_leaf(counts);

    const int mtry = params.features_per_split > 0
                         ? std::min(params.features_per_split, feature_count)
                         : static_cast<int>(std::sqrt(static_cast<double>(feature_count)));

    int best_feature = -1;
    float best_threshold = 0.0f;
    double best_impurity = node_gini;  // must strictly improve

    // mtry random candidates; if none of them yields a valid split, keep
    // drawing features (same rule scikit-learn applies) so a lone
    // informative tile still gets found.
    std::vector<std::pair<float, std::uint32_t>> sorted;
    sorted.reserve(rows.size());
    for (int j = 0; j < feature_count; ++j) {
      if (j >= mtry && best_feature >= 0) break;
      const std::size_t pick =
          static_cast<std::size_t>(j) + rng.uniform_int(static_cast<std::uint64_t>(feature_count - j));
      std::swap(feature_pool[static_cast<std::size_t>(j)], feature_pool[pick]);
      const int feature = feature_pool[static_cast<std::size_t>(j)];

      sorted.clear();
      for (const std::uint32_t r : rows) sorted.emplace_back(feature_value(data[r].segment, feature, encoding), r);
      std::sort(sorted.begin(), sorted.end());
      if (sorted.front().first == sorted.back().first) continue;  // constant feature

      Counts left{};
      Counts right = counts;
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        const std::size_t cls = static_cast<std::size_t>(data[sorted[i].second].dir);
        ++left[cls];
        --right[cls];
        if (sorted[i].first == sorted[i + 1].first) continue;
        const double nl = static_cast<double>(i + 1);
        const double nr = n - nl;
        const double impurity = (nl * gini(left, nl) + nr * gini(right, nr)) / n;
        if (impurity < best_impurity - 1e-12) {
          best_impurity = impurity;
          best_feature = feature;
          best_threshold = 0.5f * (sorted[i].first + sorted[i + 1].first);
        }
      }
    }
    if (best_feature < 0) return make_leaf(counts);

    std::vector<std::uint32_t> left_rows, right_rows;
    left_rows.reserve(rows.size());
    right_rows.reserve(rows.size());
    for (const std::uint32_t r : rows) {
      if (feature_value(data[r].segment, best_feature, encoding) <= best_threshold)
        left_rows.push_back(r);
      else
        right_rows.push_back(r);
    }

    TreeNode node;
    node.feature = static_cast<std::int16_t>(best_feature);
    node.threshold = best_threshold;
    tree.nodes.push_back(node);
    const auto index = static_cast<std::int32_t>(tree.nodes.size() - 1);
    rows.clear();
    rows.shrink_to_fit();
    const std::int32_t left_index = grow(left_rows, depth + 1);
    const std::int32_t right_index = grow(right_rows, depth + 1);
    tree.nodes[static_cast<std::size_t>(index)].left = left_index;
    tree.nodes[static_cast<std::size_t>(index)].right = right_index;
    return index;
  }
};

}  // namespace

const TreeNode& DecisionTree::leaf_for(const Segment& segment, FeatureEncoding encoding) const {
  const TreeNode* node = &nodes.front();
  while (node->feature >= 0) {
    const float v = feature_value(segment, node->feature, encoding);
    node = &nodes[static_cast<std::size_t>(v <= node->threshold ? node->left : node->right)];
  }
  return *node;
}

std::vector<DirectionSample> oversample(const std::vector<DirectionSample>& data) {
  if (data.empty()) throw EmptyCorpusError("cannot oversample an empty sample set");
  std::array<std::vector<std::uint32_t>, kDirectionCount> by_class;
  for (std::uint32_t i = 0; i < data.size(); ++i)
    by_class[static_cast<std::size_t>(data[i].dir)].push_back(i);
  std::size_t majority = 0;
  for (const auto& rows : by_class) majority = std::max(majority, rows.size());

  std::vector<DirectionSample> out = data;
  for (int cls = 0; cls < kDirectionCount; ++cls) {
    const auto& rows = by_class[static_cast<std::size_t>(cls)];
    if (rows.empty()) continue;
    for (std::size_t need = rows.size(); need < majority; ++need)
      out.push_back(data[rows[(need - rows.size()) % rows.size()]]);
  }
  return out;
}

ForestModel train_forest(const std::vector<DirectionSample>& data, const ForestTrainParams& params,
                         std::uint64_t seed) {
  if (data.empty()) throw EmptyCorpusError("forest training needs samples");
  if (params.tree_count < 1) throw RangeError("tree_count must be positive");
  if (params.encoding == FeatureEncoding::OneHot && params.channels < 1)
    throw RangeError("one-hot features need the channel count");

  ForestModel model;
  model.encoding = params.encoding;
  model.feature_count = params.encoding == FeatureEncoding::TileIndex
                            ? Segment::kTiles
                            : Segment::kTiles * params.channels;

  Counts class_counts{};
  for (const DirectionSample& s : data) ++class_counts[static_cast<std::size_t>(s.dir)];
  int present = 0;
  for (const std::uint32_t c : class_counts) present += c > 0 ? 1 : 0;
  model.degenerate_classes = present < 2;

  model.trees.reserve(static_cast<std::size_t>(params.tree_count));
  for (int t = 0; t < params.tree_count; ++t) {
    Rng tree_rng(Rng::derive(seed, static_cast<std::uint64_t>(t)));
    std::vector<std::uint32_t> rows;
    rows.reserve(data.size());
    if (params.bootstrap) {
      for (std::size_t i = 0; i < data.size(); ++i)
        rows.push_back(static_cast<std::uint32_t>(tree_rng.uniform_int(data.size())));
    } else {
      rows.resize(data.size());
      std::iota(rows.begin(), rows.end(), 0u);
    }
    TreeBuilder builder(data, params, model.feature_count, tree_rng);
    builder.grow(rows, 0);
    model.trees.push_back(std::move(builder.tree));
  }

  nlohmann::json manifest;
  manifest["trees"] = params.tree_count;
  manifest["max_depth"] = params.max_depth;
  manifest["features_per_split"] =
      params.features_per_split > 0 ? params.features_per_split
                                    : static_cast<int>(std::sqrt(static_cast<double>(model.feature_count)));
  manifest["min_samples_split"] = params.min_samples_split;
  manifest["bootstrap"] = params.bootstrap;
  manifest["encoding"] = params.encoding == FeatureEncoding::TileIndex ? "tile_index" : "one_hot";
  manifest["seed"] = seed;
  manifest["criterion"] = "gini";
  manifest["degenerate_classes"] = model.degenerate_classes;
  model.manifest_json = manifest.dump();
  return model;
}

std::array<double, kDirectionCount> predict_proba(const ForestModel& model, const Segment& segment) {
  if (model.trees.empty()) throw ShapeError("forest has no trees");
  std::array<double, kDirectionCount> proba{};
  for (const DecisionTree& tree : model.trees) {
    const TreeNode& leaf = tree.leaf_for(segment, model.encoding);
    double total = 0.0;
    for (const std::uint32_t c : leaf.counts) total += c;
    if (total <= 0.0) continue;
    for (int k = 0; k < kDirectionCount; ++k)
      proba[static_cast<std::size_t>(k)] += leaf.counts[static_cast<std::size_t>(k)] / total;
  }
  double sum = 0.0;
  for (const double p : proba) sum += p;
  if (sum > 0.0)
    for (double& p : proba) p /= sum;
  return proba;
}

std::array<double, kDirectionCount> ForestModel::direction_proba(const Segment& segment) const {
  return predict_proba(*this, segment);
}

Direction predict_direction(const ForestModel& model, const Segment& segment,
                            std::optional<Direction> forbidden) {
  const auto proba = predict_proba(model, segment);
  int best = -1;
  for (int k = 0; k < kDirectionCount; ++k) {
    if (forbidden && static_cast<Direction>(k) == *forbidden) continue;
    if (best < 0 || proba[static_cast<std::size_t>(k)] > proba[static_cast<std::size_t>(best)]) best = k;
  }
  if (forbidden) {
    // The forbidden class only loses the top spot to the runner-up; when it
    // is not the arg-max the plain prediction stands.
    int overall = 0;
    for (int k = 1; k < kDirectionCount; ++k)
      if (proba[static_cast<std::size_t>(k)] > proba[static_cast<std::size_t>(overall)]) overall = k;
    if (static_cast<Direction>(overall) != *forbidden) best = overall;
  }
  return static_cast<Direction>(best);
}

std::pair<std::vector<DirectionSample>, std::vector<DirectionSample>> train_test_split(
    const std::vector<DirectionSample>& data, double train_fraction, std::uint64_t seed) {
  if (train_fraction <= 0.0 || train_fraction >= 1.0)
    throw RangeError("train fraction must be in (0,1)");
  std::vector<std::uint32_t> order(data.size());
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(seed);
  rng.shuffle(order);
  const auto cut = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(data.size())));
  std::vector<DirectionSample> train, test;
  for (std::size_t i = 0; i < order.size(); ++i)
    (i < cut ? train : test).push_back(data[order[i]]);
  return {std::move(train), std::move(test)};
}

ForestEvaluation evaluate_forest(const ForestModel& model, const std::vector<DirectionSample>& rows) {
  ForestEvaluation eval;
  for (const DirectionSample& row : rows) {
    const Direction predicted = predict_direction(model, row.segment);
    ++eval.total;
    if (predicted == row.dir) ++eval.correct;
    ++eval.confusion[static_cast<std::size_t>(row.dir)][static_cast<std::size_t>(predicted)];
  }
  return eval;
}

std::string ForestEvaluation::to_table() const {
  std::ostringstream out;
  out << "accuracy " << accuracy() << " (" << correct << "/" << total << ")\n";
  out << "confusion (rows = actual, cols = predicted)\n";
  out << "            up    down    left   right  recall\n";
  for (int a = 0; a < kDirectionCount; ++a) {
    int row_total = 0;
    for (int p = 0; p < kDirectionCount; ++p) row_total += confusion[a][p];
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-8s %6d %7d %7d %7d", direction_name(static_cast<Direction>(a)),
                  confusion[a][0], confusion[a][1], confusion[a][2], confusion[a][3]);
    out << buf;
    if (row_total > 0)
      out << "  " << static_cast<double>(confusion[a][a]) / row_total;
    else
      out << "  -";
    out << '\n';
  }
  out << "precision";
  for (int p = 0; p < kDirectionCount; ++p) {
    int col_total = 0;
    for (int a = 0; a < kDirectionCount; ++a) col_total += confusion[a][p];
    if (col_total > 0)
      out << ' ' << static_cast<double>(confusion[p][p]) / col_total;
    else
      out << " -";
  }
  out << '\n';
  return out.str();
}

}  // namespace seqgen
