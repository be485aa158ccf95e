#include "seqgen/render.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "seqgen/errors.hpp"

namespace seqgen {

std::string layout_to_text(const LevelLayout& layout, const TileVocabulary& vocab) {
  std::ostringstream out;
  out << "seqgen-layout 1\n";
  out << "game " << vocab.game() << '\n';
  out << "count " << layout.placements.size() << '\n';
  out << "truncated " << (layout.truncated ? 1 : 0) << '\n';
  for (std::size_t i = 0; i < layout.placements.size(); ++i) {
    const Placement& p = layout.placements[i];
    out << "placement " << i << " cell " << p.cell.x << ' ' << p.cell.y << " arrival "
        << (p.arrival ? direction_name(*p.arrival) : "none") << '\n';
    for (const std::string& row : segment_rows(p.segment, vocab)) out << row << '\n';
  }
  return out.str();
}

LevelLayout layout_from_text(const std::string& text, const TileVocabulary& vocab) {
  std::istringstream in(text);
  std::string line;

  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) throw FormatError(std::string("layout ends before ") + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  if (next_line("header") != "seqgen-layout 1")
    throw FormatError("not a seqgen layout (or unsupported version)");

  LevelLayout layout;
  std::size_t count = 0;
  {
    std::istringstream f(next_line("game"));
    std::string key;
    f >> key >> layout.game;
    if (key != "game") throw FormatError("expected 'game' line");
    if (layout.game != vocab.game())
      throw VocabularyError("layout is for game '" + layout.game + "', vocabulary is '" +
                            vocab.game() + "'");
  }
  {
    std::istringstream f(next_line("count"));
    std::string key;
    f >> key >> count;
    if (key != "count") throw FormatError("expected 'count' line");
  }
  {
    std::istringstream f(next_line("truncated"));
    std::string key;
    int flag = 0;
    f >> key >> flag;
    if (key != "truncated") throw FormatError("expected 'truncated' line");
    layout.truncated = flag != 0;
  }

  for (std::size_t i = 0; i < count; ++i) {
    Placement p;
    {
      std::istringstream f(next_line("placement header"));
      std::string key, cell_key, arrival_key, arrival;
      std::size_t index = 0;
      f >> key >> index >> cell_key >> p.cell.x >> p.cell.y >> arrival_key >> arrival;
      if (key != "placement" || cell_key != "cell" || arrival_key != "arrival" || index != i)
        throw FormatError("malformed placement header for segment " + std::to_string(i));
      if (arrival != "none") {
        const auto dir = direction_from_name(arrival);
        if (!dir) throw FormatError("unknown arrival direction '" + arrival + "'");
        p.arrival = *dir;
      }
    }
    std::vector<std::string> rows;
    for (int r = 0; r < Segment::kSize; ++r) rows.push_back(next_line("segment row"));
    p.segment = segment_from_rows(rows, vocab);
    layout.placements.push_back(std::move(p));
  }
  return layout;
}

std::string render_text(const LevelGrid& grid) {
  std::string out;
  for (const std::string& row : grid.rows) {
    out += row;
    out += '\n';
  }
  return out;
}

std::string render_text(const LevelLayout& layout, const TileVocabulary& vocab) {
  return render_text(stitch(layout, vocab).grid);
}

namespace {

struct Rgb {
  std::uint8_t r, g, b;
};

Rgb tile_color(char c, const TileVocabulary& vocab) {
  if (c == vocab.path()) return {235, 60, 60};
  if (vocab.category(TileCategory::HazardOrEnemy).count(c)) return {160, 30, 160};
  if (vocab.category(TileCategory::Interactable).count(c)) return {240, 200, 60};
  if (vocab.category(TileCategory::Standable).count(c)) return {110, 80, 40};
  if (c == vocab.background()) return {208, 228, 248};
  // uncategorized: stable hash -> muted color
  const auto h = static_cast<std::uint32_t>(c) * 2654435761u;
  return {static_cast<std::uint8_t>(96 + (h & 0x3f)), static_cast<std::uint8_t>(96 + ((h >> 8) & 0x3f)),
          static_cast<std::uint8_t>(96 + ((h >> 16) & 0x3f))};
}

}  // namespace

void write_bmp(const std::string& path, const LevelGrid& grid, const TileVocabulary& vocab,
               int scale) {
  if (grid.rows.empty()) throw EmptyInputError("cannot render an empty grid");
  if (scale < 1) throw RangeError("bmp scale must be positive");
  const int width = grid.width() * scale;
  const int height = grid.height() * scale;
  const int row_bytes = (width * 3 + 3) / 4 * 4;
  const std::uint32_t pixel_bytes = static_cast<std::uint32_t>(row_bytes) * static_cast<std::uint32_t>(height);
  const std::uint32_t file_size = 54 + pixel_bytes;

  std::string bytes;
  bytes.reserve(file_size);
  auto put_u16 = [&](std::uint16_t v) {
    bytes.push_back(static_cast<char>(v & 0xff));
    bytes.push_back(static_cast<char>(v >> 8));
  };
  auto put_u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  bytes += "BM";
  put_u32(file_size);
  put_u32(0);
  put_u32(54);
  put_u32(40);  // BITMAPINFOHEADER
  put_u32(static_cast<std::uint32_t>(width));
  put_u32(static_cast<std::uint32_t>(height));
  put_u16(1);
  put_u16(24);
  put_u32(0);
  put_u32(pixel_bytes);
  put_u32(2835);
  put_u32(2835);
  put_u32(0);
  put_u32(0);

  for (int y = height - 1; y >= 0; --y) {  // BMP rows run bottom-up
    const int grid_row = y / scale;
    std::size_t written = 0;
    for (int x = 0; x < width; ++x) {
      const Rgb color = tile_color(grid.at(grid_row, x / scale), vocab);
      bytes.push_back(static_cast<char>(color.b));
      bytes.push_back(static_cast<char>(color.g));
      bytes.push_back(static_cast<char>(color.r));
      written += 3;
    }
    while (written++ % 4 != 0) bytes.push_back(0);
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace seqgen
