#include "support/fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "seqgen/errors.hpp"
#include "seqgen/level.hpp"
#include "seqgen/rng.hpp"

#ifndef SEQGEN_SOURCE_DIR
#error "SEQGEN_SOURCE_DIR must point at the repository root"
#endif

namespace seqgen::fixtures {

namespace {

struct Canvas {
  std::vector<std::string> rows;

  Canvas(int height, int width, char bg)
      : rows(static_cast<std::size_t>(height), std::string(static_cast<std::size_t>(width), bg)) {}

  int height() const { return static_cast<int>(rows.size()); }
  int width() const { return static_cast<int>(rows.front().size()); }
  char& at(int r, int c) { return rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
  char get(int r, int c) const { return rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }

  std::string text() const {
    std::string out;
    for (const std::string& row : rows) {
      out += row;
      out += '\n';
    }
    return out;
  }
};

int walk_step(Rng& rng, int value, int lo, int hi) {
  const int delta = static_cast<int>(rng.uniform_int(3)) - 1;
  return std::clamp(value + delta, lo, hi);
}

// Marks the path cell closest to `want` that is still background.
void mark_path_in_row(Canvas& canvas, int row, int want, int col_lo, int col_hi) {
  for (int offset = 0; offset <= col_hi - col_lo; ++offset) {
    for (const int c : {want + offset, want - offset}) {
      if (c < col_lo || c > col_hi) continue;
      if (canvas.get(row, c) == '-') {
        canvas.at(row, c) = 'x';
        return;
      }
    }
  }
}

void mark_path_in_col(Canvas& canvas, int col, int want, int row_lo, int row_hi) {
  for (int offset = 0; offset <= row_hi - row_lo; ++offset) {
    for (const int r : {want - offset, want + offset}) {  // prefer climbing up
      if (r < row_lo || r > row_hi) continue;
      if (canvas.get(r, col) == '-') {
        canvas.at(r, col) = 'x';
        return;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// SMB-style horizontal terrain in rows [row_top, row_bottom): two ground
// rows with gaps, floating platforms, pipes, enemies, coins and a
// continuous path annotation.

void fill_smb_strip(Canvas& canvas, int row_top, int row_bottom, int col0, int col1, Rng& rng) {
  const int ground_top = row_bottom - 2;
  int path_row = ground_top - 2;
  int gap_left = 0;
  int cooldown = 0;

  for (int c = col0; c < col1; ++c) {
    const bool in_gap = gap_left > 0;
    if (in_gap) {
      --gap_left;
    } else {
      canvas.at(ground_top, c) = 'X';
      canvas.at(ground_top + 1, c) = 'X';
      if (cooldown == 0 && c > col0 + 4 && c < col1 - 6 && rng.uniform() < 0.05) {
        gap_left = 2 + static_cast<int>(rng.uniform_int(2));
        cooldown = 10;
      }
      if (cooldown > 0) --cooldown;

      if (rng.uniform() < 0.05 && c + 4 < col1 - 1) {
        const int prow = ground_top - 6 + static_cast<int>(rng.uniform_int(4));
        const int len = 3 + static_cast<int>(rng.uniform_int(3));
        const char tile = rng.uniform() < 0.3 ? '?' : 'S';
        for (int k = 0; k < len && c + k < col1; ++k) canvas.at(prow, c + k) = tile;
        if (rng.uniform() < 0.5 && canvas.get(prow - 2, c + 1) == '-') canvas.at(prow - 2, c + 1) = 'o';
        if (rng.uniform() < 0.3) canvas.at(prow, c) = 'Q';
      }
      if (rng.uniform() < 0.03 && c + 1 < col1 - 1 && canvas.get(ground_top - 1, c) == '-' &&
          canvas.get(ground_top - 1, c + 1) == '-' && canvas.get(ground_top - 2, c) == '-' &&
          canvas.get(ground_top - 2, c + 1) == '-') {
        canvas.at(ground_top - 2, c) = '<';
        canvas.at(ground_top - 2, c + 1) = '>';
        canvas.at(ground_top - 1, c) = '[';
        canvas.at(ground_top - 1, c + 1) = ']';
      }
      if (rng.uniform() < 0.025 && canvas.get(ground_top - 1, c) == '-')
        canvas.at(ground_top - 1, c) = 'E';
      if (rng.uniform() < 0.012 && canvas.get(ground_top - 1, c) == '-' &&
          canvas.get(ground_top - 2, c) == '-') {
        canvas.at(ground_top - 2, c) = 'B';
        canvas.at(ground_top - 1, c) = 'b';
      }
      if (rng.uniform() < 0.04 && canvas.get(ground_top - 4, c) == '-')
        canvas.at(ground_top - 4, c) = 'o';
    }

    // Persistent path height: long flat stretches with occasional steps,
    // like a jump-arc annotation, not per-column jitter.
    if (rng.uniform() < 0.3) path_row = walk_step(rng, path_row, row_top + 4, ground_top - 1);
    mark_path_in_col(canvas, c, path_row, row_top, ground_top - 1);
  }
}

// ---------------------------------------------------------------------------
// KI: 16-wide vertical shaft with ledges every few rows, short wall
// sections, hazards, doors and a path walking bottom-to-top.

void fill_ki_shaft(Canvas& canvas, int row0, int row1, Rng& rng) {
  int next_platform = row1 - 4;
  for (int r = row1 - 1; r >= row0; --r) {
    if (r == next_platform && r > row0 + 1) {
      const int len = 4 + static_cast<int>(rng.uniform_int(6));
      const int start = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(14 - len)));
      const double kind = rng.uniform();
      const char tile = kind < 0.2 ? 'T' : (kind < 0.32 ? 'M' : '#');
      for (int k = 0; k < len; ++k) canvas.at(r, start + k) = tile;
      if (rng.uniform() < 0.25 && canvas.get(r - 1, start + len / 2) == '-')
        canvas.at(r - 1, start + len / 2) = 'H';
      if (rng.uniform() < 0.08 && canvas.get(r - 1, start) == '-') canvas.at(r - 1, start) = 'D';
      next_platform = r - 3 - static_cast<int>(rng.uniform_int(3));
    }
    if (rng.uniform() < 0.35) canvas.at(r, 0) = '#';
    if (rng.uniform() < 0.35) canvas.at(r, 15) = '#';
  }

  int path_col = 4 + static_cast<int>(rng.uniform_int(8));
  for (int r = row1 - 1; r >= row0; --r) {
    path_col = walk_step(rng, path_col, 1, 14);
    mark_path_in_row(canvas, r, path_col, 1, 14);
  }
}

// ---------------------------------------------------------------------------
// MM strips. Horizontal strips resemble SMB terrain in the MM alphabet;
// upward shafts carry a continuous ladder, downward shafts are open
// drops with wall spikes. The ladder asymmetry keeps up and down
// distinguishable for the classifier, as in the real levels.

void fill_mm_horizontal(Canvas& canvas, int row_top, int row_bottom, int col0, int col1, Rng& rng) {
  const int ground_top = row_bottom - 2;
  int path_row = ground_top - 2;
  int gap_left = 0;
  for (int c = col0; c < col1; ++c) {
    if (gap_left > 0) {
      --gap_left;
      if (rng.uniform() < 0.5) canvas.at(ground_top + 1, c) = 'W';
    } else {
      canvas.at(ground_top, c) = '#';
      canvas.at(ground_top + 1, c) = '#';
      if (c > col0 + 4 && c < col1 - 6 && rng.uniform() < 0.04)
        gap_left = 2 + static_cast<int>(rng.uniform_int(2));
      if (rng.uniform() < 0.05 && c + 3 < col1) {
        const int prow = ground_top - 6 + static_cast<int>(rng.uniform_int(4));
        const double kind = rng.uniform();
        const char tile = kind < 0.3 ? 'M' : (kind < 0.45 ? 'P' : '#');
        for (int k = 0; k < 3; ++k) canvas.at(prow, c + k) = tile;
      }
      if (rng.uniform() < 0.03 && canvas.get(ground_top - 1, c) == '-')
        canvas.at(ground_top - 1, c) = 'H';
      if (rng.uniform() < 0.02 && canvas.get(ground_top - 1, c) == '-')
        canvas.at(ground_top - 1, c) = '*';
    }
    path_row = walk_step(rng, path_row, row_top + 4, ground_top - 1);
    mark_path_in_col(canvas, c, path_row, row_top, ground_top - 1);
  }
}

void fill_mm_shaft(Canvas& canvas, int row0, int row1, int col0, bool upward, Rng& rng) {
  for (int r = row0; r < row1; ++r) {
    if (canvas.get(r, col0) == '-') canvas.at(r, col0) = '#';
    if (canvas.get(r, col0 + 15) == '-') canvas.at(r, col0 + 15) = '#';
  }
  if (upward) {
    const int ladder_col = col0 + 5 + static_cast<int>(rng.uniform_int(6));
    for (int r = row0; r < row1; ++r)
      if (canvas.get(r, ladder_col) == '-') canvas.at(r, ladder_col) = 'C';
    int platform_row = row1 - 4;
    while (platform_row > row0 + 2) {
      const int len = 3 + static_cast<int>(rng.uniform_int(4));
      const int start = std::clamp(ladder_col - 1 - static_cast<int>(rng.uniform_int(4)), col0 + 1,
                                   col0 + 15 - len);
      for (int k = 0; k < len; ++k)
        if (start + k != ladder_col && canvas.get(platform_row, start + k) == '-')
          canvas.at(platform_row, start + k) = '#';
      platform_row -= 3 + static_cast<int>(rng.uniform_int(2));
    }
    for (int r = row0; r < row1; ++r) mark_path_in_row(canvas, r, ladder_col + 1, col0 + 1, col0 + 14);
  } else {
    int path_col = col0 + 6 + static_cast<int>(rng.uniform_int(4));
    for (int r = row0; r < row1; ++r) {
      if (rng.uniform() < 0.2 && canvas.get(r, col0 + 1) == '-') canvas.at(r, col0 + 1) = 'H';
      if (rng.uniform() < 0.2 && canvas.get(r, col0 + 14) == '-') canvas.at(r, col0 + 14) = 'H';
      if (rng.uniform() < 0.06 && canvas.get(r, col0 + 4) == '-') canvas.at(r, col0 + 4) = 'W';
      path_col = walk_step(rng, path_col, col0 + 2, col0 + 13);
      mark_path_in_row(canvas, r, path_col, col0 + 1, col0 + 14);
    }
  }
}

struct MmPlan {
  // right `a` tiles, then a shaft of height `h` (up or down), then right
  // `c` tiles; a == 0 means a plain horizontal level of width `c`.
  int a = 0;
  int h = 0;
  int c = 0;
  bool upward = true;
};

LevelFile build_mm_level(const std::string& name, const MmPlan& plan, Rng& rng) {
  LevelFile file;
  file.name = name;
  if (plan.a == 0) {
    Canvas canvas(15, plan.c, '-');  // horizontal MM levels come 15 rows high
    fill_mm_horizontal(canvas, 0, 15, 0, plan.c, rng);
    file.text = canvas.text();
    // After top padding to 16 rows the run origin stays at row 0.
    file.runs_text = "right 0 0 " + std::to_string(plan.c) + "\n";
    return file;
  }
  const int height = plan.h;
  const int shaft_col = plan.a - 16;
  const int width = std::max(plan.a, shaft_col + plan.c);
  Canvas canvas(height, width, '-');
  std::vector<ProgressionRun> runs;
  if (plan.upward) {
    fill_mm_horizontal(canvas, height - 16, height, 0, plan.a, rng);
    fill_mm_shaft(canvas, 0, height - 16, shaft_col, true, rng);
    fill_mm_horizontal(canvas, 0, 16, shaft_col, shaft_col + plan.c, rng);
    runs.push_back({Direction::Right, height - 16, 0, plan.a});
    runs.push_back({Direction::Up, height - 16, shaft_col, height});
    runs.push_back({Direction::Right, 0, shaft_col, plan.c});
  } else {
    fill_mm_horizontal(canvas, 0, 16, 0, plan.a, rng);
    fill_mm_shaft(canvas, 16, height - 16, shaft_col, false, rng);
    fill_mm_horizontal(canvas, height - 16, height, shaft_col, shaft_col + plan.c, rng);
    runs.push_back({Direction::Right, 0, 0, plan.a});
    runs.push_back({Direction::Down, 0, shaft_col, height});
    runs.push_back({Direction::Right, height - 16, shaft_col, plan.c});
  }
  file.text = canvas.text();
  file.runs_text = format_runs(runs);
  return file;
}

TileVocabulary load_vocab(const char* name) {
  return TileVocabulary::load(config_dir() + "/" + name);
}

}  // namespace

const std::vector<int>& corpus_smb_widths() {
  static const std::vector<int> widths = {202, 158, 166, 150, 190, 174, 186, 162,
                                          172, 180, 198, 154, 184, 170, 237};  // sum 2683
  return widths;
}

const std::vector<int>& corpus_ki_heights() {
  static const std::vector<int> heights = {208, 176, 192, 168, 200, 192};  // sum 1136
  return heights;
}

std::vector<LevelFile> make_smb_levels(const std::vector<int>& widths, std::uint64_t seed) {
  std::vector<LevelFile> files;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    Rng rng(Rng::derive(seed, i));
    Canvas canvas(14, widths[i], '-');  // VGLC SMB levels are 14 rows high
    fill_smb_strip(canvas, 0, 14, 0, widths[i], rng);
    LevelFile file;
    file.name = "smb_" + std::to_string(i + 1);
    file.text = canvas.text();
    files.push_back(std::move(file));
  }
  return files;
}

std::vector<LevelFile> make_ki_levels(const std::vector<int>& heights, std::uint64_t seed) {
  std::vector<LevelFile> files;
  for (std::size_t i = 0; i < heights.size(); ++i) {
    Rng rng(Rng::derive(seed, 1000 + i));
    Canvas canvas(heights[i], 16, '-');
    fill_ki_shaft(canvas, 0, heights[i], rng);
    LevelFile file;
    file.name = "ki_" + std::to_string(i + 1);
    file.text = canvas.text();
    files.push_back(std::move(file));
  }
  return files;
}

std::vector<LevelFile> make_mm_levels(bool corpus_scale, std::uint64_t seed) {
  // Window counts: horizontal w -> w-15; shaft level (a,h,c) ->
  // (a-15)+(h-15)+(c-15). The corpus-scale plans total 1572.
  std::vector<MmPlan> plans;
  if (corpus_scale) {
    plans = {
        {0, 0, 128, true},   {0, 0, 144, true},   {0, 0, 136, true},  {0, 0, 152, true},
        {0, 0, 133, true},   {0, 0, 135, true},   {64, 48, 48, true}, {80, 64, 48, true},
        {64, 64, 64, true},  {64, 48, 64, false}, {80, 48, 48, false}, {64, 64, 80, false},
    };
  } else {
    plans = {{0, 0, 64, true}, {64, 48, 48, true}, {64, 48, 48, false}};
  }
  std::vector<LevelFile> files;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    Rng rng(Rng::derive(seed, 2000 + i));
    files.push_back(build_mm_level("mm_" + std::to_string(i + 1), plans[i], rng));
  }
  return files;
}

std::string config_dir() { return std::string(SEQGEN_SOURCE_DIR) + "/configs"; }

TileVocabulary smb_vocab() { return load_vocab("smb.vocab"); }
TileVocabulary ki_vocab() { return load_vocab("ki.vocab"); }
TileVocabulary mm_vocab() { return load_vocab("mm.vocab"); }
TileVocabulary blend_vocab() { return load_vocab("smb-ki.vocab"); }

void write_level_files(const std::string& dir, const std::vector<LevelFile>& files) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  for (const LevelFile& file : files) {
    std::ofstream out(dir + "/" + file.name + ".txt", std::ios::binary);
    if (!out) throw IoError("cannot write fixture level " + file.name);
    out << file.text;
    if (!file.runs_text.empty()) {
      std::ofstream runs(dir + "/" + file.name + ".runs", std::ios::binary);
      runs << file.runs_text;
    }
  }
}

}  // namespace seqgen::fixtures
