#include "seqgen/metrics.hpp"

#include <cmath>

#include "seqgen/errors.hpp"

namespace seqgen {

namespace {

double category_fraction(const Segment& seg, const TileVocabulary& vocab, TileCategory cat) {
  const std::vector<bool> mask = vocab.category_mask(cat);
  int count = 0;
  for (const std::uint8_t t : seg.tiles) count += mask[t] ? 1 : 0;
  return static_cast<double>(count) / Segment::kTiles;
}

// Path-tile indices along the edge line of `seg` facing direction `dir`.
std::vector<int> edge_path_positions(const Segment& seg, Direction dir, int path_channel) {
  std::vector<int> out;
  for (int i = 0; i < Segment::kSize; ++i) {
    std::uint8_t tile = 0;
    switch (dir) {
      case Direction::Right: tile = seg.at(i, Segment::kSize - 1); break;
      case Direction::Left: tile = seg.at(i, 0); break;
      case Direction::Up: tile = seg.at(0, i); break;
      case Direction::Down: tile = seg.at(Segment::kSize - 1, i); break;
    }
    if (tile == path_channel) out.push_back(i);
  }
  return out;
}

}  // namespace

double density(const Segment& seg, const TileVocabulary& vocab) {
  return category_fraction(seg, vocab, TileCategory::Standable);
}

double non_linearity(const Segment& seg, const TileVocabulary& vocab) {
  const std::vector<bool> standable = vocab.category_mask(TileCategory::Standable);
  std::vector<double> xs, ys;
  for (int c = 0; c < Segment::kSize; ++c) {
    for (int r = 0; r < Segment::kSize; ++r) {
      if (standable[seg.at(r, c)]) {
        xs.push_back(static_cast<double>(c));
        ys.push_back(static_cast<double>(Segment::kSize - 1 - r));  // height above the bottom row
        break;                                                      // topmost only
      }
    }
  }
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;

  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  const double intercept = mean_y - slope * mean_x;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (slope * xs[i] + intercept);
    sse += r * r;
  }
  return sse / static_cast<double>(n);
}

double leniency(const Segment& seg, const TileVocabulary& vocab) {
  return 1.0 - category_fraction(seg, vocab, TileCategory::HazardOrEnemy);
}

double interestingness(const Segment& seg, const TileVocabulary& vocab) {
  return category_fraction(seg, vocab, TileCategory::Interactable);
}

double path_proportion(const Segment& seg, const TileVocabulary& vocab) {
  return category_fraction(seg, vocab, TileCategory::Path);
}

double discontinuity(const Segment& a, const Segment& b, Direction dir, const TileVocabulary& vocab) {
  const int path = vocab.path_channel();
  const std::vector<int> from = edge_path_positions(a, dir, path);
  const std::vector<int> to = edge_path_positions(b, opposite(dir), path);
  if (from.empty() || to.empty()) return 16.0;  // no crossing at all
  int best = Segment::kSize;
  for (const int i : from)
    for (const int j : to) best = std::min(best, std::abs(i - j));
  return static_cast<double>(best);
}

MetricVector tile_metrics(const Segment& seg, const TileVocabulary& vocab) {
  MetricVector m;
  m.density = density(seg, vocab);
  m.non_linearity = non_linearity(seg, vocab);
  m.leniency = leniency(seg, vocab);
  m.interestingness = interestingness(seg, vocab);
  m.path_prop = path_proportion(seg, vocab);
  return m;
}

double layout_discontinuity(const LevelLayout& layout, const TileVocabulary& vocab) {
  if (layout.placements.size() < 2) return 0.0;
  double sum = 0.0;
  int pairs = 0;
  for (std::size_t k = 1; k < layout.placements.size(); ++k) {
    const Placement& prev = layout.placements[k - 1];
    const Placement& cur = layout.placements[k];
    sum += discontinuity(prev.segment, cur.segment, *cur.arrival, vocab);
    ++pairs;
  }
  return sum / pairs;
}

}  // namespace seqgen
