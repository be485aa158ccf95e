#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "seqgen/level.hpp"
#include "seqgen/tiles.hpp"

namespace seqgen {

// A 16x16 window of tile channel indices; the atomic unit of training,
// generation and placement.
struct Segment {
  static constexpr int kSize = 16;
  static constexpr int kTiles = kSize * kSize;

  std::array<std::uint8_t, kTiles> tiles{};

  std::uint8_t at(int row, int col) const { return tiles[static_cast<std::size_t>(row * kSize + col)]; }
  std::uint8_t& at(int row, int col) { return tiles[static_cast<std::size_t>(row * kSize + col)]; }

  bool operator==(const Segment&) const = default;
};

// Renders a segment as 16 rows of vocabulary characters / parses it back.
std::vector<std::string> segment_rows(const Segment& seg, const TileVocabulary& vocab);
Segment segment_from_rows(const std::vector<std::string>& rows, const TileVocabulary& vocab);

struct TrainingPair {
  Segment current;
  Segment follower;
  Direction dir = Direction::Right;
};

// A window cut from a level, with enough provenance for reports and for
// picking interpolation endpoints.
struct SegmentRecord {
  Segment segment;
  std::string level;   // level name
  std::string source;  // source game (differs from corpus game in blends)
  int row = 0;
  int col = 0;
  Direction run_dir = Direction::Right;
};

struct LevelSummary {
  std::string name;
  int height = 0;
  int width = 0;
  int windows = 0;
  int pairs = 0;
  bool empty_segmentation = false;  // some run was shorter than one window
};

// Cuts every stride-aligned 16x16 window along each progression run, in
// progression order. A width-W horizontal run with stride 1 yields
// W - 16 + 1 windows; runs shorter than 16 yield none.
std::vector<SegmentRecord> segment_level(const LevelGrid& level, const TileVocabulary& vocab,
                                         int stride);

// Builds (current, follower, direction) pairs: the follower window sits
// `follower_offset` tiles further along the run; windows whose follower
// would leave the run are dropped.
std::vector<TrainingPair> make_training_pairs(const LevelGrid& level, const TileVocabulary& vocab,
                                              int stride, int follower_offset);

// One-hot encoding, channel-major: element [ch*256 + row*16 + col] is 1
// exactly when tiles[row][col] == ch. Length 256 * |symbols|.
std::vector<float> one_hot(const Segment& seg, const TileVocabulary& vocab);
int one_hot_length(const TileVocabulary& vocab);
// Inverse of one_hot for any per-tile score vector: arg-max across
// channels per position, lowest channel wins ties.
Segment arg_max_decode(const std::vector<float>& scores, const TileVocabulary& vocab);

// The ingested training corpus for one domain, as persisted to disk.
struct Corpus {
  static constexpr int kFormatVersion = 1;

  TileVocabulary vocab;
  int stride = 1;
  int follower_offset = 16;
  std::vector<LevelSummary> levels;
  std::vector<SegmentRecord> segments;
  std::vector<TrainingPair> pairs;
  // Segment counts per source game, before and after blend doubling.
  std::vector<std::pair<std::string, int>> source_counts;

  std::string to_json() const;
  static Corpus from_json(const std::string& text);
  void save(const std::string& path) const;
  static Corpus load(const std::string& path);
};

// Ingests one game's level files (already read into memory, one string
// per level) into a corpus. Multi-orientation levels use the annotation
// matching their file name; others derive a default run.
struct LevelFile {
  std::string name;
  std::string text;
  std::string runs_text;  // empty when no annotation supplied
};
Corpus ingest(const std::vector<LevelFile>& files, const TileVocabulary& vocab, int stride,
              int follower_offset);

// Blended-domain corpus: SMB pairs followed by the KI pairs twice (the KI
// set is doubled to balance the two games). Both inputs must share the
// unified alphabet.
Corpus build_blend_corpus(const Corpus& smb, const Corpus& ki);

}  // namespace seqgen
