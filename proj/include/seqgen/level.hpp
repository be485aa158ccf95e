#pragma once

#include <string>
#include <vector>

#include "seqgen/tiles.hpp"

namespace seqgen {

// One straight stretch of a level's progression. (row0, col0) is the
// tile-grid origin (top-left corner) of the run's first 16x16 window;
// later windows slide one stride at a time in `dir`. `span` is the total
// number of tile columns/rows the run covers along the slide axis,
// including the first window's 16.
struct ProgressionRun {
  Direction dir = Direction::Right;
  int row0 = 0;
  int col0 = 0;
  int span = 0;

  int window_count(int stride) const {
    return span < 16 ? 0 : (span - 16) / stride + 1;
  }
};

// A parsed, padded level: rectangular character rows plus the ordered
// progression runs windows are cut from.
struct LevelGrid {
  std::vector<std::string> rows;
  std::vector<ProgressionRun> runs;
  std::string name;

  int height() const { return static_cast<int>(rows.size()); }
  int width() const { return rows.empty() ? 0 : static_cast<int>(rows.front().size()); }
  char at(int row, int col) const { return rows[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]; }
};

// Parses one VGLC-style text level. Rows must be equal length and every
// character must be in the vocabulary. Horizontal levels shorter than 16
// rows are padded with background rows on top (ground stays at the
// bottom); vertical levels must be exactly 16 wide. Multi-directional
// levels pass through unpadded when taller than 16 and get no default
// runs; attach annotated runs afterwards.
LevelGrid parse_level(const std::string& text, const TileVocabulary& vocab);

// Parses a progression annotation: one run per line,
// "<direction> <row> <col> <span>", validated against the grid.
std::vector<ProgressionRun> parse_runs(const std::string& text, const LevelGrid& grid);

std::string format_runs(const std::vector<ProgressionRun>& runs);

}  // namespace seqgen
