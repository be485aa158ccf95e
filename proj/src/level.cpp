#include "seqgen/level.hpp"

#include <sstream>

#include "seqgen/errors.hpp"

namespace seqgen {

namespace {

// Rectangle of tiles a run covers, as [row_begin,row_end) x [col_begin,col_end).
struct Strip {
  int r0, r1, c0, c1;
};

Strip run_strip(const ProgressionRun& run) {
  switch (run.dir) {
    case Direction::Right: return {run.row0, run.row0 + 16, run.col0, run.col0 + run.span};
    case Direction::Left: return {run.row0, run.row0 + 16, run.col0 + 16 - run.span, run.col0 + 16};
    case Direction::Down: return {run.row0, run.row0 + run.span, run.col0, run.col0 + 16};
    case Direction::Up: return {run.row0 + 16 - run.span, run.row0 + 16, run.col0, run.col0 + 16};
  }
  throw RangeError("invalid direction");
}

void validate_run(const ProgressionRun& run, const LevelGrid& grid) {
  if (run.span < 1) throw ParseError("run span must be positive");
  const Strip s = run_strip(run);
  if (s.r0 < 0 || s.c0 < 0 || s.r1 > grid.height() || s.c1 > grid.width())
    throw ParseError("run exceeds level bounds (origin " + std::to_string(run.row0) + "," +
                     std::to_string(run.col0) + " span " + std::to_string(run.span) + " dir " +
                     direction_name(run.dir) + ")");
}

}  // namespace

LevelGrid parse_level(const std::string& text, const TileVocabulary& vocab) {
  if (text.empty()) throw ParseError("level file is empty");

  LevelGrid grid;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    if (line.empty()) {
      if (in.peek() == EOF) break;  // tolerate one trailing blank line
      throw ParseError("blank line " + std::to_string(lineno) + " inside level");
    }
    grid.rows.push_back(line);
  }
  if (grid.rows.empty()) throw ParseError("level file contains no rows");

  const std::size_t width = grid.rows.front().size();
  for (std::size_t r = 0; r < grid.rows.size(); ++r) {
    if (grid.rows[r].size() != width)
      throw ParseError("ragged rows: row " + std::to_string(r + 1) + " has width " +
                       std::to_string(grid.rows[r].size()) + ", expected " + std::to_string(width));
    for (std::size_t c = 0; c < width; ++c) {
      const char ch = grid.rows[r][c];
      if (!vocab.contains(ch))
        throw UnknownTileError("character '" + std::string(1, ch) + "' at row " + std::to_string(r + 1) +
                               ", column " + std::to_string(c + 1) + " not in " + vocab.game() +
                               " vocabulary");
    }
  }

  const Orientation orient = vocab.orientation();
  if (orient == Orientation::Horizontal || orient == Orientation::Multi) {
    // VGLC horizontal levels come 14 (SMB) or 15 (MM) rows high; pad to 16
    // with background rows on top so the ground stays at the bottom.
    if (grid.height() < 16) {
      const std::vector<std::string> body = std::move(grid.rows);
      grid.rows.assign(static_cast<std::size_t>(16 - static_cast<int>(body.size())),
                       std::string(width, vocab.background()));
      grid.rows.insert(grid.rows.end(), body.begin(), body.end());
    }
    if (orient == Orientation::Horizontal) {
      if (grid.height() != 16)
        throw ParseError("horizontal level is " + std::to_string(grid.height()) +
                         " rows high; expected at most 16");
      if (grid.width() >= 16)
        grid.runs.push_back({Direction::Right, 0, 0, grid.width()});
    }
    // Multi-directional levels get runs from an annotation file, except for
    // plain horizontal strips which default like a horizontal level.
    if (orient == Orientation::Multi && grid.height() == 16 && grid.width() >= 16)
      grid.runs.push_back({Direction::Right, 0, 0, grid.width()});
  } else {
    if (grid.width() != 16)
      throw ParseError("vertical level is " + std::to_string(grid.width()) + " wide; expected 16");
    if (grid.height() >= 16)
      grid.runs.push_back({Direction::Up, grid.height() - 16, 0, grid.height()});
  }
  return grid;
}

std::vector<ProgressionRun> parse_runs(const std::string& text, const LevelGrid& grid) {
  std::vector<ProgressionRun> runs;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string dir_name;
    if (!(fields >> dir_name)) continue;  // blank / comment line
    const auto dir = direction_from_name(dir_name);
    if (!dir)
      throw ParseError("line " + std::to_string(lineno) + ": unknown direction '" + dir_name + "'");
    ProgressionRun run;
    run.dir = *dir;
    if (!(fields >> run.row0 >> run.col0 >> run.span))
      throw ParseError("line " + std::to_string(lineno) + ": expected '<dir> <row> <col> <span>'");
    std::string extra;
    if (fields >> extra)
      throw ParseError("line " + std::to_string(lineno) + ": trailing token '" + extra + "'");
    validate_run(run, grid);
    runs.push_back(run);
  }
  if (runs.empty()) throw ParseError("annotation contains no runs");
  return runs;
}

std::string format_runs(const std::vector<ProgressionRun>& runs) {
  std::ostringstream out;
  for (const ProgressionRun& run : runs)
    out << direction_name(run.dir) << ' ' << run.row0 << ' ' << run.col0 << ' ' << run.span << '\n';
  return out.str();
}

}  // namespace seqgen
