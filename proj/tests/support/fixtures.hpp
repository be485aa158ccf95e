#pragma once

// Synthetic level corpora shaped like the VGLC data: same tile alphabets,
// same file dimensions, continuous path annotations and plausible terrain.
// Used wherever tests need level files without shipping the real corpus.

#include <cstdint>
#include <string>
#include <vector>

#include "seqgen/corpus.hpp"

namespace seqgen::fixtures {

// Level widths/heights matching the corpus totals: SMB widths sum to
// 2683 (2458 windows), KI heights to 1136 (1046 windows); the MM plan
// set yields 1572 windows.
const std::vector<int>& corpus_smb_widths();
const std::vector<int>& corpus_ki_heights();

std::vector<LevelFile> make_smb_levels(const std::vector<int>& widths, std::uint64_t seed);
std::vector<LevelFile> make_ki_levels(const std::vector<int>& heights, std::uint64_t seed);

// Multi-directional levels: horizontal strips plus up/down shafts, with
// .runs annotations attached. `corpus_scale` = true builds the full
// 12-level set (1572 windows); false builds a small 3-level set.
std::vector<LevelFile> make_mm_levels(bool corpus_scale, std::uint64_t seed);

// Path to the repo's configs/ directory (via build definition).
std::string config_dir();

TileVocabulary smb_vocab();
TileVocabulary ki_vocab();
TileVocabulary mm_vocab();
TileVocabulary blend_vocab();

// Writes files into dir (created if needed) and returns it; annotations
// land next to the level files.
void write_level_files(const std::string& dir, const std::vector<LevelFile>& files);

}  // namespace seqgen::fixtures
