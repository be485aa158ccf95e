#pragma once

#include <cstdint>
#include <string>

#include "seqgen/forest.hpp"
#include "seqgen/vae.hpp"

namespace seqgen {

// Portable binary model container:
//
//   magic "SQGM", u16 version, u8 kind (1 = vae, 2 = forest), u8 zero
//   u32 manifest length, manifest JSON (hyperparameters, seed, vocabulary)
//   u32 block count, then per block:
//     u16 name length, name, u8 dtype (0 f32, 1 i32, 2 u32),
//     u8 rank, u32 dims[rank], payload
//   u32 CRC-32 of everything before it
//
// All integers and floats little-endian; float arrays row-major. Loading
// verifies magic, version and checksum before touching the payload, so a
// round trip reproduces bit-identical predictions or fails loudly.

inline constexpr std::uint16_t kArchiveVersion = 1;

void save_vae(const VaeModel& model, const std::string& path);
VaeModel load_vae(const std::string& path);

struct ForestArchive {
  ForestModel model;
  TileVocabulary vocab;
};

void save_forest(const ForestModel& model, const TileVocabulary& vocab, const std::string& path);
ForestArchive load_forest(const std::string& path);

// Manifest JSON of either kind of archive, for `inspect`.
struct ArchiveInfo {
  std::string kind;
  std::string manifest_json;
};
ArchiveInfo inspect_archive(const std::string& path);

// CRC-32 of a file's bytes; used for provenance manifests in reports.
std::uint32_t file_crc32(const std::string& path);

}  // namespace seqgen
