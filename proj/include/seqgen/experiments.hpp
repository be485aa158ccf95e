#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqgen/corpus.hpp"
#include "seqgen/generator.hpp"
#include "seqgen/metrics.hpp"
#include "seqgen/stats.hpp"
#include "seqgen/vae.hpp"

namespace seqgen {

struct ExperimentConfig {
  std::string domain;
  int level_count = 100;
  int segments_per_level = 12;  // 16 for MM
  int groups = 10;              // progression study sub-levels
  std::uint64_t seed = 0;
  std::string provenance_json;  // model/corpus hashes and config echo, embedded verbatim
};

// ---------------------------------------------------------------------------
// Discontinuity: sequential vs independent, paired on initial segments.

struct ConditionSummary {
  std::vector<double> per_level;  // mean discontinuity of each kept level
  MeanSd stats;
  int truncated = 0;
};

struct DiscontinuityReport {
  ExperimentConfig config;
  ConditionSummary sequential;
  ConditionSummary independent;
  RankSumResult test;
  int excluded_pairs = 0;  // levels dropped because either condition truncated

  std::string to_json() const;
  std::string to_table() const;
};

DiscontinuityReport run_discontinuity_experiment(const SegmentModel& model,
                                                 const DirectionModel& directions,
                                                 const TileVocabulary& vocab,
                                                 const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Blending: six sets of levels whose initial segments walk the latent
// interpolation from a KI segment to an SMB segment.

struct BlendSetResult {
  std::string label;
  MeanSd density, non_linearity, leniency, interestingness, path_prop;
  // Normalized (min-max over every segment population in the report)
  // means, matching the paper's 0..1 plots.
  double norm_density = 0.0, norm_non_linearity = 0.0, norm_leniency = 0.0,
         norm_interestingness = 0.0, norm_path_prop = 0.0;
  // Directional classification of generated segments as a game proxy.
  double pct_right = 0.0;  // SMB-like
  double pct_up = 0.0;     // KI-like
  double pct_other = 0.0;
  int segments = 0;
  int truncated_levels = 0;
};

struct BlendReport {
  ExperimentConfig config;
  std::vector<BlendSetResult> sets;      // Random, SMB-0 .. SMB-100
  std::vector<BlendSetResult> baselines; // original SMB / KI corpora (metrics only)

  std::string to_json() const;
  std::string to_table() const;
};

// The generation loop samples the encoder posterior (seeded per level):
// interpolated sets share one initial segment, so deterministic mean
// encoding would collapse each set to one level repeated.
BlendReport run_blend_experiment(const VaeModel& model, const DirectionModel& directions,
                                 const Corpus& corpus, const ExperimentConfig& config,
                                 const Segment& ki_endpoint, const Segment& smb_endpoint);

// Picks the default interpolation endpoints: the first ingested segment
// of each source game.
std::pair<Segment, Segment> default_blend_endpoints(const Corpus& corpus,
                                                    const std::string& ki_source,
                                                    const std::string& smb_source);

// ---------------------------------------------------------------------------
// Progression: long levels partitioned into sub-level groups.

struct GroupStats {
  MeanSd density, non_linearity, leniency, interestingness, path_prop, discontinuity;
};

struct ProgressionReport {
  ExperimentConfig config;
  std::vector<GroupStats> groups;  // exactly config.groups entries
  int truncated_levels = 0;        // generated short; excluded from stats

  std::string to_json() const;
  std::string to_table() const;
  std::string to_plot_data() const;  // TSV: metric, group, mean, sd
};

ProgressionReport run_progression_experiment(const SegmentModel& model,
                                             const DirectionModel& directions,
                                             const TileVocabulary& vocab,
                                             const ExperimentConfig& config);

}  // namespace seqgen
