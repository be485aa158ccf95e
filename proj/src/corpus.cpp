#include "seqgen/corpus.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "seqgen/errors.hpp"

namespace seqgen {

using nlohmann::json;

std::vector<std::string> segment_rows(const Segment& seg, const TileVocabulary& vocab) {
  std::vector<std::string> rows(Segment::kSize);
  for (int r = 0; r < Segment::kSize; ++r) {
    std::string& row = rows[static_cast<std::size_t>(r)];
    row.resize(Segment::kSize);
    for (int c = 0; c < Segment::kSize; ++c) row[static_cast<std::size_t>(c)] = vocab.symbol_at(seg.at(r, c));
  }
  return rows;
}

Segment segment_from_rows(const std::vector<std::string>& rows, const TileVocabulary& vocab) {
  if (rows.size() != Segment::kSize) throw ShapeError("segment needs 16 rows");
  Segment seg;
  for (int r = 0; r < Segment::kSize; ++r) {
    const std::string& row = rows[static_cast<std::size_t>(r)];
    if (row.size() != Segment::kSize) throw ShapeError("segment rows must be 16 characters");
    for (int c = 0; c < Segment::kSize; ++c)
      seg.at(r, c) = static_cast<std::uint8_t>(vocab.index_of(row[static_cast<std::size_t>(c)]));
  }
  return seg;
}

namespace {

Segment cut_window(const LevelGrid& level, const TileVocabulary& vocab, int row0, int col0) {
  Segment seg;
  for (int r = 0; r < Segment::kSize; ++r)
    for (int c = 0; c < Segment::kSize; ++c)
      seg.at(r, c) = static_cast<std::uint8_t>(vocab.index_of(level.at(row0 + r, col0 + c)));
  return seg;
}

}  // namespace

std::vector<SegmentRecord> segment_level(const LevelGrid& level, const TileVocabulary& vocab,
                                         int stride) {
  if (stride < 1) throw RangeError("stride must be positive");
  std::vector<SegmentRecord> out;
  for (const ProgressionRun& run : level.runs) {
    const RowCol step = grid_step(run.dir);
    const int count = run.window_count(stride);
    for (int i = 0; i < count; ++i) {
      SegmentRecord rec;
      rec.row = run.row0 + step.row * stride * i;
      rec.col = run.col0 + step.col * stride * i;
      rec.segment = cut_window(level, vocab, rec.row, rec.col);
      rec.level = level.name;
      rec.source = vocab.game();
      rec.run_dir = run.dir;
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<TrainingPair> make_training_pairs(const LevelGrid& level, const TileVocabulary& vocab,
                                              int stride, int follower_offset) {
  if (stride < 1) throw RangeError("stride must be positive");
  if (follower_offset < 1) throw RangeError("follower offset must be positive");
  std::vector<TrainingPair> out;
  for (const ProgressionRun& run : level.runs) {
    const RowCol step = grid_step(run.dir);
    const int count = run.window_count(stride);
    for (int i = 0; i < count; ++i) {
      // Slide offsets in tiles from the run start; the follower window must
      // stay inside the run.
      const int slide = stride * i;
      if (slide + follower_offset > run.span - 16) continue;
      TrainingPair pair;
      const int cur_row = run.row0 + step.row * slide;
      const int cur_col = run.col0 + step.col * slide;
      pair.current = cut_window(level, vocab, cur_row, cur_col);
      pair.follower = cut_window(level, vocab, cur_row + step.row * follower_offset,
                                 cur_col + step.col * follower_offset);
      pair.dir = run.dir;
      out.push_back(std::move(pair));
    }
  }
  return out;
}

int one_hot_length(const TileVocabulary& vocab) { return Segment::kTiles * vocab.size(); }

std::vector<float> one_hot(const Segment& seg, const TileVocabulary& vocab) {
  const int channels = vocab.size();
  std::vector<float> vec(static_cast<std::size_t>(one_hot_length(vocab)), 0.0f);
  for (int t = 0; t < Segment::kTiles; ++t) {
    const int ch = seg.tiles[static_cast<std::size_t>(t)];
    if (ch >= channels) throw VocabularyError("segment channel out of range for vocabulary");
    vec[static_cast<std::size_t>(ch * Segment::kTiles + t)] = 1.0f;
  }
  return vec;
}

Segment arg_max_decode(const std::vector<float>& scores, const TileVocabulary& vocab) {
  const int channels = vocab.size();
  if (scores.size() != static_cast<std::size_t>(one_hot_length(vocab)))
    throw ShapeError("score vector length " + std::to_string(scores.size()) + " != " +
                     std::to_string(one_hot_length(vocab)));
  Segment seg;
  for (int t = 0; t < Segment::kTiles; ++t) {
    int best = 0;
    float best_score = scores[static_cast<std::size_t>(t)];
    for (int ch = 1; ch < channels; ++ch) {
      const float s = scores[static_cast<std::size_t>(ch * Segment::kTiles + t)];
      if (s > best_score) {  // strict: lowest channel wins ties
        best_score = s;
        best = ch;
      }
    }
    seg.tiles[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(best);
  }
  return seg;
}

Corpus ingest(const std::vector<LevelFile>& files, const TileVocabulary& vocab, int stride,
              int follower_offset) {
  if (files.empty()) throw EmptyCorpusError("no level files supplied");
  Corpus corpus;
  corpus.vocab = vocab;
  corpus.stride = stride;
  corpus.follower_offset = follower_offset;
  int total_windows = 0;
  for (const LevelFile& file : files) {
    LevelGrid grid;
    try {
      grid = parse_level(file.text, vocab);
    } catch (const Error& e) {
      throw ParseError(file.name + ": " + e.what());
    }
    grid.name = file.name;
    if (!file.runs_text.empty()) grid.runs = parse_runs(file.runs_text, grid);
    if (vocab.orientation() == Orientation::Multi && grid.runs.empty())
      throw ParseError(file.name + ": multi-directional level needs a progression annotation");

    LevelSummary summary;
    summary.name = file.name;
    summary.height = grid.height();
    summary.width = grid.width();
    summary.empty_segmentation = grid.runs.empty();
    for (const ProgressionRun& run : grid.runs)
      if (run.window_count(stride) == 0) summary.empty_segmentation = true;

    auto segments = segment_level(grid, vocab, stride);
    auto pairs = make_training_pairs(grid, vocab, stride, follower_offset);
    summary.windows = static_cast<int>(segments.size());
    summary.pairs = static_cast<int>(pairs.size());
    total_windows += summary.windows;

    corpus.levels.push_back(std::move(summary));
    corpus.segments.insert(corpus.segments.end(), segments.begin(), segments.end());
    corpus.pairs.insert(corpus.pairs.end(), pairs.begin(), pairs.end());
  }
  corpus.source_counts.emplace_back(vocab.game(), total_windows);
  return corpus;
}

Corpus build_blend_corpus(const Corpus& smb, const Corpus& ki) {
  if (!smb.vocab.same_alphabet(ki.vocab))
    throw VocabularyError("blend inputs use different alphabets (" + smb.vocab.game() + " vs " +
                          ki.vocab.game() + ")");
  Corpus blend;
  blend.vocab = smb.vocab;
  blend.stride = smb.stride;
  blend.follower_offset = smb.follower_offset;
  blend.levels = smb.levels;
  blend.levels.insert(blend.levels.end(), ki.levels.begin(), ki.levels.end());
  blend.segments = smb.segments;
  blend.segments.insert(blend.segments.end(), ki.segments.begin(), ki.segments.end());

  blend.pairs = smb.pairs;
  // KI contributes every pair twice to balance the two games.
  blend.pairs.insert(blend.pairs.end(), ki.pairs.begin(), ki.pairs.end());
  blend.pairs.insert(blend.pairs.end(), ki.pairs.begin(), ki.pairs.end());

  int smb_windows = 0, ki_windows = 0;
  for (const LevelSummary& s : smb.levels) smb_windows += s.windows;
  for (const LevelSummary& s : ki.levels) ki_windows += s.windows;
  blend.source_counts.emplace_back(smb.vocab.game(), smb_windows);
  blend.source_counts.emplace_back(ki.vocab.game() + " x2", 2 * ki_windows);
  return blend;
}

namespace {

json vocab_to_json(const TileVocabulary& vocab) {
  const KeyValueFile kv = vocab.to_config();
  json j;
  for (const auto& [key, value] : kv.entries()) j[key] = value;
  return j;
}

TileVocabulary vocab_from_json(const json& j) {
  KeyValueFile kv;
  for (const auto& [key, value] : j.items()) kv.set(key, value.get<std::string>());
  return TileVocabulary::from_config(kv);
}

json segment_to_json(const Segment& seg, const TileVocabulary& vocab) {
  return json(segment_rows(seg, vocab));
}

Segment segment_from_json(const json& j, const TileVocabulary& vocab) {
  return segment_from_rows(j.get<std::vector<std::string>>(), vocab);
}

}  // namespace

std::string Corpus::to_json() const {
  json j;
  j["format"] = "seqgen-corpus";
  j["version"] = kFormatVersion;
  j["vocab"] = vocab_to_json(vocab);
  j["stride"] = stride;
  j["follower_offset"] = follower_offset;

  json jlevels = json::array();
  for (const LevelSummary& s : levels) {
    jlevels.push_back({{"name", s.name},
                       {"height", s.height},
                       {"width", s.width},
                       {"windows", s.windows},
                       {"pairs", s.pairs},
                       {"empty_segmentation", s.empty_segmentation}});
  }
  j["levels"] = std::move(jlevels);

  json jsegments = json::array();
  for (const SegmentRecord& rec : segments) {
    jsegments.push_back({{"rows", segment_to_json(rec.segment, vocab)},
                         {"level", rec.level},
                         {"source", rec.source},
                         {"row", rec.row},
                         {"col", rec.col},
                         {"run_dir", direction_name(rec.run_dir)}});
  }
  j["segments"] = std::move(jsegments);

  json jpairs = json::array();
  for (const TrainingPair& p : pairs) {
    jpairs.push_back({{"current", segment_to_json(p.current, vocab)},
                      {"follower", segment_to_json(p.follower, vocab)},
                      {"dir", direction_name(p.dir)}});
  }
  j["pairs"] = std::move(jpairs);

  json jcounts = json::array();
  for (const auto& [source, count] : source_counts) jcounts.push_back({{"source", source}, {"count", count}});
  j["source_counts"] = std::move(jcounts);
  return j.dump();
}

Corpus Corpus::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("corpus JSON: ") + e.what());
  }
  if (j.value("format", "") != "seqgen-corpus") throw FormatError("not a seqgen corpus file");
  if (j.value("version", -1) != kFormatVersion)
    throw FormatError("corpus format version " + j["version"].dump() + " unsupported (expected " +
                      std::to_string(kFormatVersion) + ")");
  Corpus corpus;
  corpus.vocab = vocab_from_json(j.at("vocab"));
  corpus.stride = j.at("stride").get<int>();
  corpus.follower_offset = j.at("follower_offset").get<int>();
  for (const json& js : j.at("levels")) {
    LevelSummary s;
    s.name = js.at("name").get<std::string>();
    s.height = js.at("height").get<int>();
    s.width = js.at("width").get<int>();
    s.windows = js.at("windows").get<int>();
    s.pairs = js.at("pairs").get<int>();
    s.empty_segmentation = js.at("empty_segmentation").get<bool>();
    corpus.levels.push_back(std::move(s));
  }
  for (const json& js : j.at("segments")) {
    SegmentRecord rec;
    rec.segment = segment_from_json(js.at("rows"), corpus.vocab);
    rec.level = js.at("level").get<std::string>();
    rec.source = js.at("source").get<std::string>();
    rec.row = js.at("row").get<int>();
    rec.col = js.at("col").get<int>();
    const auto dir = direction_from_name(js.at("run_dir").get<std::string>());
    if (!dir) throw FormatError("bad run_dir in corpus");
    rec.run_dir = *dir;
    corpus.segments.push_back(std::move(rec));
  }
  for (const json& js : j.at("pairs")) {
    TrainingPair p;
    p.current = segment_from_json(js.at("current"), corpus.vocab);
    p.follower = segment_from_json(js.at("follower"), corpus.vocab);
    const auto dir = direction_from_name(js.at("dir").get<std::string>());
    if (!dir) throw FormatError("bad dir in corpus pair");
    p.dir = *dir;
    corpus.pairs.push_back(std::move(p));
  }
  for (const json& js : j.at("source_counts"))
    corpus.source_counts.emplace_back(js.at("source").get<std::string>(), js.at("count").get<int>());
  return corpus;
}

void Corpus::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << to_json();
  if (!out) throw IoError("failed writing " + path);
}

Corpus Corpus::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

}  // namespace seqgen
