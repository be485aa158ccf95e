#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "seqgen/keyval.hpp"

namespace seqgen {

// Placement / progression direction. The enumerator order is the fixed
// tie-break order used by the direction classifier.
enum class Direction : std::uint8_t { Up = 0, Down = 1, Left = 2, Right = 3 };

constexpr int kDirectionCount = 4;

Direction opposite(Direction d);
const char* direction_name(Direction d);
std::optional<Direction> direction_from_name(const std::string& name);

// Offset of one step in tile-grid space (row 0 is the top row).
struct RowCol {
  int row = 0;
  int col = 0;
};
RowCol grid_step(Direction d);

// Offset of one step in layout-cell space (x grows Right, y grows Up).
struct CellOffset {
  int dx = 0;
  int dy = 0;
};
CellOffset cell_step(Direction d);

enum class Orientation { Horizontal, Vertical, Multi };

enum class TileCategory { Standable, HazardOrEnemy, Interactable, Path, Background };

// Per-game tile alphabet plus the category sets the metrics consume.
// Loaded from editable key/value config files; symbol order in the config
// fixes the one-hot channel order.
class TileVocabulary {
 public:
  static TileVocabulary from_config(const KeyValueFile& kv);
  static TileVocabulary load(const std::string& path);

  const std::string& game() const { return game_; }
  Orientation orientation() const { return orientation_; }
  const std::string& symbols() const { return symbols_; }
  int size() const { return static_cast<int>(symbols_.size()); }

  bool contains(char c) const { return index_.count(c) > 0; }
  int index_of(char c) const;  // UnknownTileError if absent
  char symbol_at(int channel) const;

  char background() const { return background_; }
  char path() const { return path_; }
  int background_channel() const { return index_of(background_); }
  int path_channel() const { return index_of(path_); }

  const std::set<char>& category(TileCategory cat) const;
  // Channel-indexed membership mask for fast per-tile tests.
  std::vector<bool> category_mask(TileCategory cat) const;

  bool same_alphabet(const TileVocabulary& other) const;

  KeyValueFile to_config() const;

 private:
  std::string game_;
  Orientation orientation_ = Orientation::Horizontal;
  std::string symbols_;                 // channel -> character
  std::map<char, int> index_;           // character -> channel
  char background_ = '-';
  char path_ = 'x';
  std::map<TileCategory, std::set<char>> categories_;
};

}  // namespace seqgen
