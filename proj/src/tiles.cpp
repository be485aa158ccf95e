#include "seqgen/tiles.hpp"

#include "seqgen/errors.hpp"

namespace seqgen {

Direction opposite(Direction d) {
  switch (d) {
    case Direction::Up: return Direction::Down;
    case Direction::Down: return Direction::Up;
    case Direction::Left: return Direction::Right;
    case Direction::Right: return Direction::Left;
  }
  throw RangeError("invalid direction");
}

const char* direction_name(Direction d) {
  switch (d) {
    case Direction::Up: return "up";
    case Direction::Down: return "down";
    case Direction::Left: return "left";
    case Direction::Right: return "right";
  }
  throw RangeError("invalid direction");
}

std::optional<Direction> direction_from_name(const std::string& name) {
  if (name == "up") return Direction::Up;
  if (name == "down") return Direction::Down;
  if (name == "left") return Direction::Left;
  if (name == "right") return Direction::Right;
  return std::nullopt;
}

RowCol grid_step(Direction d) {
  switch (d) {
    case Direction::Up: return {-1, 0};
    case Direction::Down: return {1, 0};
    case Direction::Left: return {0, -1};
    case Direction::Right: return {0, 1};
  }
  throw RangeError("invalid direction");
}

CellOffset cell_step(Direction d) {
  switch (d) {
    case Direction::Up: return {0, 1};
    case Direction::Down: return {0, -1};
    case Direction::Left: return {-1, 0};
    case Direction::Right: return {1, 0};
  }
  throw RangeError("invalid direction");
}

namespace {

std::set<char> parse_char_set(const KeyValueFile& kv, const std::string& key) {
  std::set<char> out;
  if (!kv.has(key)) return out;
  for (const std::string& tok : kv.get_list(key)) {
    if (tok.size() != 1)
      throw ParseError("key '" + key + "': tile symbols must be single characters, got '" + tok + "'");
    out.insert(tok[0]);
  }
  return out;
}

char parse_single_char(const KeyValueFile& kv, const std::string& key) {
  const std::string& v = kv.get(key);
  if (v.size() != 1) throw ParseError("key '" + key + "' must be a single character, got '" + v + "'");
  return v[0];
}

std::string category_key(TileCategory cat) {
  switch (cat) {
    case TileCategory::Standable: return "standable";
    case TileCategory::HazardOrEnemy: return "hazard";
    case TileCategory::Interactable: return "interactable";
    case TileCategory::Path: return "path";
    case TileCategory::Background: return "background";
  }
  throw RangeError("invalid category");
}

}  // namespace

TileVocabulary TileVocabulary::from_config(const KeyValueFile& kv) {
  TileVocabulary v;
  v.game_ = kv.get("game");

  const std::string orient = kv.get("orientation");
  if (orient == "horizontal") {
    v.orientation_ = Orientation::Horizontal;
  } else if (orient == "vertical") {
    v.orientation_ = Orientation::Vertical;
  } else if (orient == "multi") {
    v.orientation_ = Orientation::Multi;
  } else {
    throw ParseError("orientation must be horizontal|vertical|multi, got '" + orient + "'");
  }

  for (const std::string& tok : kv.get_list("symbols")) {
    if (tok.size() != 1) throw ParseError("symbols must be single characters, got '" + tok + "'");
    const char c = tok[0];
    if (v.index_.count(c)) throw ParseError(std::string("duplicate symbol '") + c + "'");
    v.index_[c] = static_cast<int>(v.symbols_.size());
    v.symbols_.push_back(c);
  }
  if (v.symbols_.empty()) throw ParseError("symbols list is empty");

  v.background_ = parse_single_char(kv, "background");
  v.path_ = parse_single_char(kv, "path");
  if (!v.contains(v.background_)) throw ParseError("background symbol not in symbols");
  if (!v.contains(v.path_)) throw ParseError("path symbol not in symbols");

  v.categories_[TileCategory::Standable] = parse_char_set(kv, "standable");
  v.categories_[TileCategory::HazardOrEnemy] = parse_char_set(kv, "hazard");
  v.categories_[TileCategory::Interactable] = parse_char_set(kv, "interactable");
  v.categories_[TileCategory::Path] = {v.path_};
  v.categories_[TileCategory::Background] = {v.background_};

  for (const auto& [cat, chars] : v.categories_) {
    for (char c : chars) {
      if (!v.contains(c))
        throw ParseError("category '" + category_key(cat) + "' uses symbol '" + std::string(1, c) +
                         "' that is not in symbols");
    }
  }
  return v;
}

TileVocabulary TileVocabulary::load(const std::string& path) {
  return from_config(KeyValueFile::load(path));
}

int TileVocabulary::index_of(char c) const {
  const auto it = index_.find(c);
  if (it == index_.end())
    throw UnknownTileError("character '" + std::string(1, c) + "' not in " + game_ + " vocabulary");
  return it->second;
}

char TileVocabulary::symbol_at(int channel) const {
  if (channel < 0 || channel >= size()) throw RangeError("channel out of range");
  return symbols_[static_cast<std::size_t>(channel)];
}

const std::set<char>& TileVocabulary::category(TileCategory cat) const {
  return categories_.at(cat);
}

std::vector<bool> TileVocabulary::category_mask(TileCategory cat) const {
  std::vector<bool> mask(static_cast<std::size_t>(size()), false);
  for (char c : categories_.at(cat)) mask[static_cast<std::size_t>(index_of(c))] = true;
  return mask;
}

bool TileVocabulary::same_alphabet(const TileVocabulary& other) const {
  return symbols_ == other.symbols_ && background_ == other.background_ && path_ == other.path_;
}

KeyValueFile TileVocabulary::to_config() const {
  KeyValueFile kv;
  kv.set("game", game_);
  switch (orientation_) {
    case Orientation::Horizontal: kv.set("orientation", "horizontal"); break;
    case Orientation::Vertical: kv.set("orientation", "vertical"); break;
    case Orientation::Multi: kv.set("orientation", "multi"); break;
  }
  auto join = [](const auto& chars) {
    std::string out;
    for (char c : chars) {
      if (!out.empty()) out.push_back(' ');
      out.push_back(c);
    }
    return out;
  };
  kv.set("symbols", join(symbols_));
  kv.set("background", std::string(1, background_));
  kv.set("path", std::string(1, path_));
  kv.set("standable", join(categories_.at(TileCategory::Standable)));
  kv.set("hazard", join(categories_.at(TileCategory::HazardOrEnemy)));
  kv.set("interactable", join(categories_.at(TileCategory::Interactable)));
  return kv;
}

}  // namespace seqgen
