#pragma once

#include <vector>

#include "seqgen/corpus.hpp"
#include "seqgen/generator.hpp"

namespace seqgen {

// Per-segment tile metrics. The proportion metrics count tiles out of
// 256; non-linearity is the residual MSE of a least-squares line through
// the column skyline; discontinuity measures path misalignment across
// the shared edge of two adjacent segments.

// Fraction of tiles the player can stand on.
double density(const Segment& seg, const TileVocabulary& vocab);

// Residual mean squared error of a line fitted to (column, topmost
// standable height measured from the bottom) over columns that have a
// standable tile; 0 when fewer than two such columns exist.
double non_linearity(const Segment& seg, const TileVocabulary& vocab);

// 1 - fraction of enemy/hazard tiles.
double leniency(const Segment& seg, const TileVocabulary& vocab);

// Fraction of interactable tiles (collectables, powerups, doors).
double interestingness(const Segment& seg, const TileVocabulary& vocab);

// Fraction of path tiles.
double path_proportion(const Segment& seg, const TileVocabulary& vocab);

// Minimum |index difference| between path tiles on the adjoining edge
// lines of a and b, where b sits in direction `dir` from a; 16 when
// either edge line carries no path tile.
double discontinuity(const Segment& a, const Segment& b, Direction dir, const TileVocabulary& vocab);

struct MetricVector {
  double density = 0.0;
  double non_linearity = 0.0;
  double leniency = 0.0;
  double interestingness = 0.0;
  double path_prop = 0.0;
};
MetricVector tile_metrics(const Segment& seg, const TileVocabulary& vocab);

// Mean discontinuity across a layout's consecutive placements. Layouts
// with fewer than two placements have no adjoining edges and yield 0.
double layout_discontinuity(const LevelLayout& layout, const TileVocabulary& vocab);

}  // namespace seqgen
