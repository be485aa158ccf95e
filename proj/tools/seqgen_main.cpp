// seqgen: sequential segment-based level generation pipeline.
//
// Subcommands: ingest, train-vae, train-forest, generate,
// eval-discontinuity, eval-blend, eval-progression, render, inspect.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "seqgen/archive.hpp"
#include "seqgen/corpus.hpp"
#include "seqgen/errors.hpp"
#include "seqgen/experiments.hpp"
#include "seqgen/forest.hpp"
#include "seqgen/generator.hpp"
#include "seqgen/metrics.hpp"
#include "seqgen/render.hpp"
#include "seqgen/vae.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace seqgen;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("failed writing " + path);
}

TileVocabulary vocab_variant(const TileVocabulary& base, const std::string& game,
                             const std::string& orientation) {
  KeyValueFile kv = base.to_config();
  kv.set("game", game);
  kv.set("orientation", orientation);
  return TileVocabulary::from_config(kv);
}

std::vector<LevelFile> collect_levels(const std::string& dir, const std::string& annotations_dir) {
  if (!fs::is_directory(dir)) throw IoError("level directory not found: " + dir);
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt") paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw EmptyCorpusError("no .txt level files in " + dir);

  std::vector<LevelFile> files;
  for (const fs::path& path : paths) {
    LevelFile file;
    file.name = path.stem().string();
    file.text = slurp(path.string());
    const fs::path runs =
        fs::path(annotations_dir.empty() ? dir : annotations_dir) / (file.name + ".runs");
    if (fs::exists(runs)) file.runs_text = slurp(runs.string());
    files.push_back(std::move(file));
  }
  return files;
}

json provenance_entry(const std::string& path) {
  return {{"path", path}, {"crc32", file_crc32(path)}};
}

struct LoadedModels {
  VaeModel vae;
  ForestModel forest;
  std::string provenance;  // JSON with both file hashes
};

LoadedModels load_models(const std::string& vae_path, const std::string& forest_path,
                         std::uint64_t seed) {
  LoadedModels m;
  m.vae = load_vae(vae_path);
  ForestArchive fa = load_forest(forest_path);
  m.forest = std::move(fa.model);
  if (!fa.vocab.same_alphabet(m.vae.vocab))
    throw VocabularyError("VAE and forest were trained on different alphabets");
  json prov;
  prov["vae"] = provenance_entry(vae_path);
  prov["forest"] = provenance_entry(forest_path);
  prov["seed"] = seed;
  m.provenance = prov.dump();
  return m;
}

// ---------------------------------------------------------------------------

int cmd_ingest(const std::string& vocab_path, const std::string& levels_dir,
               const std::string& annotations_dir, const std::string& smb_dir,
               const std::string& ki_dir, int stride, int offset, const std::string& out_path) {
  const TileVocabulary vocab = TileVocabulary::load(vocab_path);
  Corpus corpus;
  if (!smb_dir.empty() || !ki_dir.empty()) {
    if (smb_dir.empty() || ki_dir.empty())
      throw ParseError("blended ingest needs both --smb-levels and --ki-levels");
    const TileVocabulary smb_vocab = vocab_variant(vocab, "SMB", "horizontal");
    const TileVocabulary ki_vocab = vocab_variant(vocab, "KI", "vertical");
    const Corpus smb = ingest(collect_levels(smb_dir, annotations_dir), smb_vocab, stride, offset);
    const Corpus ki = ingest(collect_levels(ki_dir, annotations_dir), ki_vocab, stride, offset);
    corpus = build_blend_corpus(smb, ki);
    corpus.vocab = vocab;  // restore the blend identity and orientation
  } else {
    if (levels_dir.empty()) throw ParseError("ingest needs --levels (or --smb-levels/--ki-levels)");
    corpus = ingest(collect_levels(levels_dir, annotations_dir), vocab, stride, offset);
  }
  corpus.save(out_path);

  std::cout << "game " << corpus.vocab.game() << ", stride " << corpus.stride << ", offset "
            << corpus.follower_offset << "\n";
  for (const auto& [source, count] : corpus.source_counts)
    std::cout << "segments[" << source << "] = " << count << "\n";
  std::cout << "levels " << corpus.levels.size() << ", segments " << corpus.segments.size()
            << ", pairs " << corpus.pairs.size() << "\n";
  for (const LevelSummary& s : corpus.levels)
    if (s.empty_segmentation)
      std::cout << "warning: " << s.name << " has a run shorter than one window\n";
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_train_vae(const std::string& corpus_path, const std::string& out_path,
                  const std::string& profile, int epochs, int batch, const std::string& hidden_csv,
                  std::uint64_t seed, const std::string& report_path) {
  const Corpus corpus = Corpus::load(corpus_path);
  VaeTrainConfig config;
  if (profile == "paper") {
    config.schedule = nn::Schedule::paper();
  } else if (profile == "desk") {
    config.schedule = nn::Schedule::desk();
  } else {
    throw ParseError("profile must be paper|desk");
  }
  if (epochs > 0) config.schedule = nn::Schedule::scaled(epochs);
  if (batch > 0) config.batch_size = batch;
  if (!hidden_csv.empty()) {
    config.hidden.clear();
    std::istringstream in(hidden_csv);
    std::string tok;
    while (std::getline(in, tok, ',')) config.hidden.push_back(std::stoi(tok));
  }
  config.seed = seed;

  auto [model, report] = train_vae(corpus.pairs, corpus.vocab, config);
  save_vae(model, out_path);
  if (!report_path.empty()) spill(report_path, report.to_json());

  const EpochStats& first = report.epochs.front();
  const EpochStats& last = report.epochs.back();
  std::cout << "trained " << report.epochs.size() << " epochs on " << corpus.pairs.size()
            << " pairs (one-hot length " << one_hot_length(corpus.vocab) << ")\n";
  std::cout << "recon " << first.recon << " -> " << last.recon << ", kl " << first.kl << " -> "
            << last.kl << "\n";
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_train_forest(const std::string& corpus_path, const std::string& out_path, int trees,
                     int max_depth, bool do_oversample, double holdout, std::uint64_t seed,
                     const std::string& report_path) {
  const Corpus corpus = Corpus::load(corpus_path);
  std::vector<DirectionSample> rows;
  rows.reserve(corpus.pairs.size());
  for (const TrainingPair& p : corpus.pairs) rows.push_back({p.current, p.dir});
  if (rows.empty()) throw EmptyCorpusError("corpus has no training pairs");

  auto [train_rows, test_rows] = train_test_split(rows, 1.0 - holdout, seed);
  if (do_oversample) train_rows = oversample(train_rows);

  ForestTrainParams params;
  params.tree_count = trees;
  params.max_depth = max_depth;
  const ForestModel model = train_forest(train_rows, params, seed);
  save_forest(model, corpus.vocab, out_path);

  std::ostringstream summary;
  summary << "train rows " << train_rows.size() << (do_oversample ? " (oversampled)" : "")
          << ", held-out rows " << test_rows.size() << "\n";
  if (!test_rows.empty()) {
    const ForestEvaluation eval = evaluate_forest(model, test_rows);
    summary << eval.to_table();
  }
  if (model.degenerate_classes)
    summary << "warning: single-class training data (DegenerateClasses)\n";
  std::cout << summary.str();
  if (!report_path.empty()) spill(report_path, summary.str());
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_generate(const std::string& vae_path, const std::string& forest_path,
                 const std::string& mode, int segments, std::uint64_t seed,
                 const std::string& corpus_path, int init_index, bool sample_latents,
                 const std::string& out_path) {
  if (segments < 1) throw RangeError("--segments must be positive");
  const LoadedModels models = load_models(vae_path, forest_path, seed);
  const VaeSequencer sequencer(models.vae, sample_latents, Rng::derive(seed, 101));

  std::optional<Segment> init;
  if (init_index >= 0) {
    if (corpus_path.empty()) throw ParseError("--init-index needs --corpus");
    const Corpus corpus = Corpus::load(corpus_path);
    if (static_cast<std::size_t>(init_index) >= corpus.segments.size())
      throw RangeError("--init-index beyond corpus segment count");
    init = corpus.segments[static_cast<std::size_t>(init_index)].segment;
  }

  LevelLayout layout;
  if (mode == "sequential") {
    const Segment start = init ? *init : sequencer.from_prior(Rng::derive(seed, 0));
    layout = generate_level_with_dirs(sequencer, models.forest, start, segments - 1);
  } else if (mode == "independent") {
    layout = init ? generate_independent_from(sequencer, models.forest, *init, segments, seed)
                  : generate_independent(sequencer, models.forest, segments, seed);
  } else {
    throw ParseError("mode must be sequential|independent");
  }
  layout.game = models.vae.vocab.game();

  spill(out_path, layout_to_text(layout, models.vae.vocab));
  std::cout << "placed " << layout.placements.size() << " segments"
            << (layout.truncated ? " (truncated)" : "") << ", wrote " << out_path << "\n";
  return 0;
}

int cmd_render(const std::string& layout_path, const std::string& vocab_path,
               const std::string& out_path, const std::string& bmp_path, int scale) {
  const TileVocabulary vocab = TileVocabulary::load(vocab_path);
  const LevelLayout layout = layout_from_text(slurp(layout_path), vocab);
  const std::string text = render_text(layout, vocab);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    spill(out_path, text);
    std::cout << "wrote " << out_path << "\n";
  }
  if (!bmp_path.empty()) {
    write_bmp(bmp_path, stitch(layout, vocab).grid, vocab, scale);
    std::cout << "wrote " << bmp_path << "\n";
  }
  return 0;
}

int cmd_eval_discontinuity(const std::string& vae_path, const std::string& forest_path, int levels,
                           int segments, std::uint64_t seed, const std::string& out_prefix) {
  const LoadedModels models = load_models(vae_path, forest_path, seed);
  const VaeSequencer sequencer(models.vae);

  ExperimentConfig config;
  config.domain = models.vae.vocab.game();
  config.level_count = levels;
  config.segments_per_level = segments;
  config.seed = seed;
  config.provenance_json = models.provenance;

  const DiscontinuityReport report =
      run_discontinuity_experiment(sequencer, models.forest, models.vae.vocab, config);
  spill(out_prefix + ".json", report.to_json());
  spill(out_prefix + ".txt", report.to_table());
  std::cout << report.to_table();
  std::cout << "wrote " << out_prefix << ".json, " << out_prefix << ".txt\n";
  return 0;
}

int cmd_eval_blend(const std::string& vae_path, const std::string& forest_path,
                   const std::string& corpus_path, int levels, int segments, std::uint64_t seed,
                   int ki_endpoint, int smb_endpoint, const std::string& out_prefix) {
  const LoadedModels models = load_models(vae_path, forest_path, seed);
  const Corpus corpus = Corpus::load(corpus_path);

  ExperimentConfig config;
  config.domain = models.vae.vocab.game();
  config.level_count = levels;
  config.segments_per_level = segments;
  config.seed = seed;
  {
    json prov = json::parse(models.provenance);
    prov["corpus"] = provenance_entry(corpus_path);
    config.provenance_json = prov.dump();
  }

  auto [ki_seg, smb_seg] = default_blend_endpoints(corpus, "KI", "SMB");
  if (ki_endpoint >= 0) ki_seg = corpus.segments.at(static_cast<std::size_t>(ki_endpoint)).segment;
  if (smb_endpoint >= 0) smb_seg = corpus.segments.at(static_cast<std::size_t>(smb_endpoint)).segment;

  const BlendReport report =
      run_blend_experiment(models.vae, models.forest, corpus, config, ki_seg, smb_seg);
  spill(out_prefix + ".json", report.to_json());
  spill(out_prefix + ".txt", report.to_table());
  std::cout << report.to_table();
  std::cout << "wrote " << out_prefix << ".json, " << out_prefix << ".txt\n";
  return 0;
}

int cmd_eval_progression(const std::string& vae_path, const std::string& forest_path, int levels,
                         int segments, int groups, std::uint64_t seed, bool plot_data,
                         const std::string& out_prefix) {
  const LoadedModels models = load_models(vae_path, forest_path, seed);
  const VaeSequencer sequencer(models.vae);

  ExperimentConfig config;
  config.domain = models.vae.vocab.game();
  config.level_count = levels;
  config.segments_per_level = segments;
  config.groups = groups;
  config.seed = seed;
  config.provenance_json = models.provenance;

  const ProgressionReport report =
      run_progression_experiment(sequencer, models.forest, models.vae.vocab, config);
  spill(out_prefix + ".json", report.to_json());
  spill(out_prefix + ".txt", report.to_table());
  if (plot_data) spill(out_prefix + ".tsv", report.to_plot_data());
  std::cout << report.to_table();
  std::cout << "wrote " << out_prefix << ".json, " << out_prefix << ".txt"
            << (plot_data ? ", " + out_prefix + ".tsv" : "") << "\n";
  return 0;
}

int cmd_inspect(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char head[16] = {};
  in.read(head, sizeof head);
  const std::string prefix(head, static_cast<std::size_t>(in.gcount()));

  if (prefix.rfind("SQGM", 0) == 0) {
    const ArchiveInfo info = inspect_archive(path);
    std::cout << "kind: " << info.kind << "\n";
    std::cout << json::parse(info.manifest_json).dump(2) << "\n";
    return 0;
  }
  if (prefix.rfind("seqgen-layout", 0) == 0) {
    std::istringstream text(slurp(path));
    std::string line;
    for (int i = 0; i < 4 && std::getline(text, line); ++i) std::cout << line << "\n";
    return 0;
  }
  if (!prefix.empty() && prefix.front() == '{') {
    const Corpus corpus = Corpus::load(path);
    std::cout << "kind: corpus\n";
    std::cout << "game: " << corpus.vocab.game() << "\n";
    std::cout << "stride: " << corpus.stride << ", follower_offset: " << corpus.follower_offset
              << "\n";
    for (const auto& [source, count] : corpus.source_counts)
      std::cout << "segments[" << source << "]: " << count << "\n";
    std::cout << "levels: " << corpus.levels.size() << ", segments: " << corpus.segments.size()
              << ", pairs: " << corpus.pairs.size() << "\n";
    return 0;
  }
  throw FormatError(path + ": unrecognized artifact");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sequential segment-based level generation and blending"};
  app.require_subcommand(1);

  // Defaults may come from a flat key/value config file; explicit flags win.
  std::string config_path;
  app.add_option("--config", config_path, "key/value config file with per-section defaults");
  KeyValueFile cfg;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") {
      try {
        cfg = KeyValueFile::load(argv[i + 1]);
      } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
    }
  const auto cfg_str = [&](const std::string& key, const std::string& fallback) {
    return cfg.get_or(key, fallback);
  };
  const auto cfg_int = [&](const std::string& key, long fallback) {
    return cfg.has(key) ? cfg.get_int(key) : fallback;
  };

  // ingest
  auto* ingest_cmd = app.add_subcommand("ingest", "parse level files into a corpus archive");
  std::string in_vocab = cfg_str("corpus.vocab", ""), in_levels = cfg_str("corpus.levels", "");
  std::string in_annotations = cfg_str("corpus.annotations", "");
  std::string in_smb = cfg_str("corpus.smb_levels", ""), in_ki = cfg_str("corpus.ki_levels", "");
  int in_stride = static_cast<int>(cfg_int("corpus.stride", 1));
  int in_offset = static_cast<int>(cfg_int("corpus.follower_offset", 16));
  std::string in_out = "corpus.json";
  ingest_cmd->add_option("--vocab", in_vocab, "tile vocabulary config")->required();
  ingest_cmd->add_option("--levels", in_levels, "directory of .txt level files");
  ingest_cmd->add_option("--annotations", in_annotations,
                         "directory of .runs progression annotations (default: level dir)");
  ingest_cmd->add_option("--smb-levels", in_smb, "SMB level directory (blended domain)");
  ingest_cmd->add_option("--ki-levels", in_ki, "KI level directory (blended domain)");
  ingest_cmd->add_option("--stride", in_stride, "sliding window stride (default 1)");
  ingest_cmd->add_option("--offset", in_offset, "follower offset in tiles (default 16)");
  ingest_cmd->add_option("--out", in_out, "output corpus path")->required();

  // train-vae
  auto* tv_cmd = app.add_subcommand("train-vae", "train the sequential-segment VAE");
  std::string tv_corpus, tv_out = "model.vae";
  std::string tv_profile = cfg_str("vae.profile", "paper");
  int tv_epochs = static_cast<int>(cfg_int("vae.epochs", 0));
  int tv_batch = static_cast<int>(cfg_int("vae.batch", 0));
  std::string tv_hidden = cfg_str("vae.hidden", "");
  std::uint64_t tv_seed = static_cast<std::uint64_t>(cfg_int("vae.seed", 0));
  std::string tv_report;
  tv_cmd->add_option("--corpus", tv_corpus)->required();
  tv_cmd->add_option("--out", tv_out)->required();
  tv_cmd->add_option("--profile", tv_profile, "paper (10000 epochs) or desk (2000)");
  tv_cmd->add_option("--epochs", tv_epochs, "override epoch count (schedule scales with it)");
  tv_cmd->add_option("--batch", tv_batch, "batch size (default 64)");
  tv_cmd->add_option("--hidden", tv_hidden, "encoder trunk widths, e.g. 1024,512,256");
  tv_cmd->add_option("--seed", tv_seed);
  tv_cmd->add_option("--report", tv_report, "write the per-epoch training report JSON here");

  // train-forest
  auto* tf_cmd = app.add_subcommand("train-forest", "train the placement direction classifier");
  std::string tf_corpus, tf_out = "model.rf", tf_report;
  int tf_trees = static_cast<int>(cfg_int("forest.trees", 100));
  int tf_depth = static_cast<int>(cfg_int("forest.max_depth", 0));
  double tf_holdout = 0.3;
  bool tf_oversample = false;
  std::uint64_t tf_seed = static_cast<std::uint64_t>(cfg_int("forest.seed", 0));
  tf_cmd->add_option("--corpus", tf_corpus)->required();
  tf_cmd->add_option("--out", tf_out)->required();
  tf_cmd->add_option("--trees", tf_trees);
  tf_cmd->add_option("--max-depth", tf_depth, "0 = unlimited");
  tf_cmd->add_option("--holdout", tf_holdout, "held-out fraction for the accuracy report");
  tf_cmd->add_flag("--oversample", tf_oversample, "balance direction classes (used for MM)");
  tf_cmd->add_option("--seed", tf_seed);
  tf_cmd->add_option("--report", tf_report, "write the evaluation table here");

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "generate one level layout");
  std::string g_vae, g_forest, g_mode = "sequential", g_corpus, g_out = "layout.txt";
  int g_segments = static_cast<int>(cfg_int("generate.segments", 12));
  int g_init_index = -1;
  bool g_sample = false;
  std::uint64_t g_seed = 0;
  gen_cmd->add_option("--vae", g_vae)->required();
  gen_cmd->add_option("--forest", g_forest)->required();
  gen_cmd->add_option("--mode", g_mode, "sequential | independent");
  gen_cmd->add_option("--segments", g_segments, "total segments to place");
  gen_cmd->add_option("--seed", g_seed);
  gen_cmd->add_option("--corpus", g_corpus, "corpus for --init-index");
  gen_cmd->add_option("--init-index", g_init_index, "start from this corpus segment");
  gen_cmd->add_flag("--sample-latents", g_sample, "sample the encoder posterior instead of its mean");
  gen_cmd->add_option("--out", g_out);

  // render
  auto* render_cmd = app.add_subcommand("render", "stitch a layout into a text grid");
  std::string r_layout, r_vocab, r_out, r_bmp;
  int r_scale = 8;
  render_cmd->add_option("layout", r_layout, "layout file")->required();
  render_cmd->add_option("--vocab", r_vocab, "tile vocabulary config")->required();
  render_cmd->add_option("--out", r_out, "output path (default: stdout)");
  render_cmd->add_option("--bmp", r_bmp, "also write a bitmap here");
  render_cmd->add_option("--scale", r_scale, "bitmap pixels per tile");

  // eval-discontinuity
  auto* ed_cmd = app.add_subcommand("eval-discontinuity", "sequential vs independent comparison");
  std::string ed_vae, ed_forest, ed_prefix = "discontinuity";
  int ed_levels = static_cast<int>(cfg_int("experiment.levels", 100));
  int ed_segments = static_cast<int>(cfg_int("experiment.segments", 12));
  std::uint64_t ed_seed = 0;
  ed_cmd->add_option("--vae", ed_vae)->required();
  ed_cmd->add_option("--forest", ed_forest)->required();
  ed_cmd->add_option("--levels", ed_levels);
  ed_cmd->add_option("--segments", ed_segments);
  ed_cmd->add_option("--seed", ed_seed);
  ed_cmd->add_option("--out-prefix", ed_prefix);

  // eval-blend
  auto* eb_cmd = app.add_subcommand("eval-blend", "blended-domain study (SMB-KI)");
  std::string eb_vae, eb_forest, eb_corpus, eb_prefix = "blend";
  int eb_levels = static_cast<int>(cfg_int("experiment.levels", 100));
  int eb_segments = static_cast<int>(cfg_int("experiment.segments", 12));
  int eb_ki = -1, eb_smb = -1;
  std::uint64_t eb_seed = 0;
  eb_cmd->add_option("--vae", eb_vae)->required();
  eb_cmd->add_option("--forest", eb_forest)->required();
  eb_cmd->add_option("--corpus", eb_corpus, "blend corpus (endpoints + baselines)")->required();
  eb_cmd->add_option("--levels", eb_levels);
  eb_cmd->add_option("--segments", eb_segments);
  eb_cmd->add_option("--seed", eb_seed);
  eb_cmd->add_option("--ki-endpoint", eb_ki, "corpus segment index for the KI endpoint");
  eb_cmd->add_option("--smb-endpoint", eb_smb, "corpus segment index for the SMB endpoint");
  eb_cmd->add_option("--out-prefix", eb_prefix);

  // eval-progression
  auto* ep_cmd = app.add_subcommand("eval-progression", "long-level sub-level study");
  std::string ep_vae, ep_forest, ep_prefix = "progression";
  int ep_levels = static_cast<int>(cfg_int("experiment.levels", 100));
  int ep_segments = static_cast<int>(cfg_int("experiment.long_segments", 120));
  int ep_groups = 10;
  bool ep_plot = false;
  std::uint64_t ep_seed = 0;
  ep_cmd->add_option("--vae", ep_vae)->required();
  ep_cmd->add_option("--forest", ep_forest)->required();
  ep_cmd->add_option("--levels", ep_levels);
  ep_cmd->add_option("--segments", ep_segments, "segments per level (120, or 160 for MM)");
  ep_cmd->add_option("--groups", ep_groups);
  ep_cmd->add_option("--seed", ep_seed);
  ep_cmd->add_flag("--plot-data", ep_plot, "also write x/y series as TSV");
  ep_cmd->add_option("--out-prefix", ep_prefix);

  // inspect
  auto* ins_cmd = app.add_subcommand("inspect", "print an artifact's manifest");
  std::string ins_path;
  ins_cmd->add_option("file", ins_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return 2;
  }

  try {
    if (*ingest_cmd)
      return cmd_ingest(in_vocab, in_levels, in_annotations, in_smb, in_ki, in_stride, in_offset,
                        in_out);
    if (*tv_cmd)
      return cmd_train_vae(tv_corpus, tv_out, tv_profile, tv_epochs, tv_batch, tv_hidden, tv_seed,
                           tv_report);
    if (*tf_cmd)
      return cmd_train_forest(tf_corpus, tf_out, tf_trees, tf_depth, tf_oversample, tf_holdout,
                              tf_seed, tf_report);
    if (*gen_cmd)
      return cmd_generate(g_vae, g_forest, g_mode, g_segments, g_seed, g_corpus, g_init_index,
                          g_sample, g_out);
    if (*render_cmd) return cmd_render(r_layout, r_vocab, r_out, r_bmp, r_scale);
    if (*ed_cmd)
      return cmd_eval_discontinuity(ed_vae, ed_forest, ed_levels, ed_segments, ed_seed, ed_prefix);
    if (*eb_cmd)
      return cmd_eval_blend(eb_vae, eb_forest, eb_corpus, eb_levels, eb_segments, eb_seed, eb_ki,
                            eb_smb, eb_prefix);
    if (*ep_cmd)
      return cmd_eval_progression(ep_vae, ep_forest, ep_levels, ep_segments, ep_groups, ep_seed,
                                  ep_plot, ep_prefix);
    if (*ins_cmd) return cmd_inspect(ins_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
