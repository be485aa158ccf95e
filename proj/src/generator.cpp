#include "seqgen/generator.hpp"

#include <algorithm>
#include <set>

#include "seqgen/errors.hpp"
#include "seqgen/rng.hpp"

namespace seqgen {

bool LevelLayout::occupies(Cell cell) const {
  return std::any_of(placements.begin(), placements.end(),
                     [&](const Placement& p) { return p.cell == cell; });
}

std::vector<Segment> generate_level(const SegmentModel& model, const Segment& init, int n) {
  if (n < 1) throw RangeError("generate_level needs n >= 1");
  std::vector<Segment> level;
  level.reserve(static_cast<std::size_t>(n) + 1);
  level.push_back(init);
  for (int i = 0; i < n; ++i) level.push_back(model.follower(level.back()));
  return level;
}

LevelLayout place_segments(const std::vector<Segment>& segments, const DirectionModel& directions) {
  LevelLayout layout;
  if (segments.empty()) return layout;

  std::set<Cell> occupied;
  Cell cursor{0, 0};
  layout.placements.push_back({segments.front(), cursor, std::nullopt});
  occupied.insert(cursor);

  for (std::size_t k = 1; k < segments.size(); ++k) {
    const auto proba = directions.direction_proba(layout.placements.back().segment);
    // Directions by falling probability, enum order breaking ties. The
    // forbidden direction (back onto the previous segment) is the arrival's
    // opposite; its cell is occupied, so the scan can never pick it.
    std::array<int, kDirectionCount> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return proba[static_cast<std::size_t>(a)] > proba[static_cast<std::size_t>(b)];
    });
    std::optional<Direction> chosen;
    for (const int d : order) {
      const CellOffset step = cell_step(static_cast<Direction>(d));
      const Cell target{cursor.x + step.dx, cursor.y + step.dy};
      if (!occupied.count(target)) {
        chosen = static_cast<Direction>(d);
        break;
      }
    }
    if (!chosen) {
      layout.truncated = true;
      break;
    }
    const CellOffset step = cell_step(*chosen);
    cursor = {cursor.x + step.dx, cursor.y + step.dy};
    layout.placements.push_back({segments[k], cursor, *chosen});
    occupied.insert(cursor);
  }
  return layout;
}

LevelLayout generate_level_with_dirs(const SegmentModel& model, const DirectionModel& directions,
                                     const Segment& init, int n) {
  return place_segments(generate_level(model, init, n), directions);
}

LevelLayout generate_independent(const SegmentModel& model, const DirectionModel& directions,
                                 int count, std::uint64_t seed) {
  if (count < 1) throw RangeError("generate_independent needs count >= 1");
  return generate_independent_from(model, directions, model.from_prior(Rng::derive(seed, 0)), count,
                                   seed);
}

LevelLayout generate_independent_from(const SegmentModel& model, const DirectionModel& directions,
                                      const Segment& init, int count, std::uint64_t seed) {
  if (count < 1) throw RangeError("generate_independent needs count >= 1");
  std::vector<Segment> segments;
  segments.reserve(static_cast<std::size_t>(count));
  segments.push_back(init);
  for (int k = 1; k < count; ++k)
    segments.push_back(model.from_prior(Rng::derive(seed, static_cast<std::uint64_t>(k))));
  return place_segments(segments, directions);
}

StitchResult stitch(const LevelLayout& layout, const TileVocabulary& vocab) {
  if (layout.placements.empty()) throw EmptyInputError("cannot stitch an empty layout");
  int min_x = layout.placements.front().cell.x, max_x = min_x;
  int min_y = layout.placements.front().cell.y, max_y = min_y;
  for (const Placement& p : layout.placements) {
    min_x = std::min(min_x, p.cell.x);
    max_x = std::max(max_x, p.cell.x);
    min_y = std::min(min_y, p.cell.y);
    max_y = std::max(max_y, p.cell.y);
  }

  StitchResult result;
  const int height = (max_y - min_y + 1) * Segment::kSize;
  const int width = (max_x - min_x + 1) * Segment::kSize;
  result.grid.rows.assign(static_cast<std::size_t>(height),
                          std::string(static_cast<std::size_t>(width), vocab.background()));

  for (const Placement& p : layout.placements) {
    // y grows Up, text rows grow down.
    const int row0 = (max_y - p.cell.y) * Segment::kSize;
    const int col0 = (p.cell.x - min_x) * Segment::kSize;
    for (int r = 0; r < Segment::kSize; ++r)
      for (int c = 0; c < Segment::kSize; ++c)
        result.grid.rows[static_cast<std::size_t>(row0 + r)][static_cast<std::size_t>(col0 + c)] =
            vocab.symbol_at(p.segment.at(r, c));
    result.cell_map.push_back({row0, col0});
  }
  return result;
}

}  // namespace seqgen
