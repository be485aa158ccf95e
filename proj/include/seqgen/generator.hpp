#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqgen/model_iface.hpp"

namespace seqgen {

// Layout-grid coordinate of one 16x16 segment; x grows Right, y grows Up.
struct Cell {
  int x = 0;
  int y = 0;
  auto operator<=>(const Cell&) const = default;
};

struct Placement {
  Segment segment;
  Cell cell;
  std::optional<Direction> arrival;  // direction this segment was entered by
};

struct LevelLayout {
  std::string game;
  std::vector<Placement> placements;
  // True when placement stopped early because all four neighbouring cells
  // of the last segment were occupied.
  bool truncated = false;

  bool occupies(Cell cell) const;
};

// Algorithm 1: iterated encode/decode from the initial segment. Returns
// n+1 segments, output[0] = init.
std::vector<Segment> generate_level(const SegmentModel& model, const Segment& init, int n);

// Places an already-generated segment stream on the cell grid. The next
// cell is the highest-probability direction whose cell is free (skipping
// the step back onto the previous segment, which is always occupied);
// enum order breaks probability ties. Runs out of free neighbours ->
// truncated. Both generation modes funnel through this one path.
LevelLayout place_segments(const std::vector<Segment>& segments, const DirectionModel& directions);

// Algorithm 2: generate a chain, then classify and place it.
LevelLayout generate_level_with_dirs(const SegmentModel& model, const DirectionModel& directions,
                                     const Segment& init, int n);

// Baseline: `count` segments decoded from independently sampled latent
// vectors (sub-seed k for segment k), placed exactly like the sequential
// mode.
LevelLayout generate_independent(const SegmentModel& model, const DirectionModel& directions,
                                 int count, std::uint64_t seed);

// Same, but with a supplied first segment; used by the paired experiment
// design where both conditions share the initial segment.
LevelLayout generate_independent_from(const SegmentModel& model, const DirectionModel& directions,
                                      const Segment& init, int count, std::uint64_t seed);

// Renders the layout into one minimal bounding grid, background-filled.
// cell_map[i] is the pixel (row, col) origin of placements[i].
struct StitchResult {
  LevelGrid grid;
  std::vector<RowCol> cell_map;
};
StitchResult stitch(const LevelLayout& layout, const TileVocabulary& vocab);

}  // namespace seqgen
