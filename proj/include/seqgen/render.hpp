#pragma once

#include <string>

#include "seqgen/generator.hpp"

namespace seqgen {

// Layout text record: a header (format line, game, count, truncated flag)
// followed by one "placement <i> cell <x> <y> arrival <dir|none>" line and
// 16 rows of vocabulary characters per segment.
std::string layout_to_text(const LevelLayout& layout, const TileVocabulary& vocab);
LevelLayout layout_from_text(const std::string& text, const TileVocabulary& vocab);

// Stitched plain-text level, rows joined with newlines.
std::string render_text(const LevelLayout& layout, const TileVocabulary& vocab);
std::string render_text(const LevelGrid& grid);

// Uncompressed 24-bit bitmap of colored tile cells, `scale` pixels per
// tile. Colors derive from the tile categories (path, hazard, standable,
// interactable) with a hash fallback for uncategorized symbols.
void write_bmp(const std::string& path, const LevelGrid& grid, const TileVocabulary& vocab,
               int scale = 8);

}  // namespace seqgen
