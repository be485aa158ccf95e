#include "seqgen/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "seqgen/errors.hpp"
#include "seqgen/rng.hpp"

namespace seqgen {

using nlohmann::json;

namespace {

json config_json(const ExperimentConfig& config) {
  json j;
  j["domain"] = config.domain;
  j["level_count"] = config.level_count;
  j["segments_per_level"] = config.segments_per_level;
  j["groups"] = config.groups;
  j["seed"] = config.seed;
  j["provenance"] = config.provenance_json.empty() ? json() : json::parse(config.provenance_json);
  return j;
}

json mean_sd_json(const MeanSd& m) { return {{"mean", m.mean}, {"sd", m.sd}, {"n", m.n}}; }

void validate_config(const ExperimentConfig& config) {
  if (config.level_count < 1 || config.segments_per_level < 1)
    throw RangeError("experiment needs positive level and segment counts");
}

int arg_max_direction(const std::array<double, kDirectionCount>& proba) {
  int best = 0;
  for (int k = 1; k < kDirectionCount; ++k)
    if (proba[static_cast<std::size_t>(k)] > proba[static_cast<std::size_t>(best)]) best = k;
  return best;
}

}  // namespace

DiscontinuityReport run_discontinuity_experiment(const SegmentModel& model,
                                                 const DirectionModel& directions,
                                                 const TileVocabulary& vocab,
                                                 const ExperimentConfig& config) {
  validate_config(config);
  DiscontinuityReport report;
  report.config = config;

  for (int i = 0; i < config.level_count; ++i) {
    const std::uint64_t level_seed = Rng::derive(config.seed, static_cast<std::uint64_t>(i));
    const Segment init = model.from_prior(Rng::derive(level_seed, 0));

    const LevelLayout seq =
        generate_level_with_dirs(model, directions, init, config.segments_per_level - 1);
    const LevelLayout ind = generate_independent_from(model, directions, init,
                                                      config.segments_per_level, level_seed);
    if (seq.truncated) ++report.sequential.truncated;
    if (ind.truncated) ++report.independent.truncated;
    if (seq.truncated || ind.truncated) {
      ++report.excluded_pairs;  // keep the design paired
      continue;
    }
    report.sequential.per_level.push_back(layout_discontinuity(seq, vocab));
    report.independent.per_level.push_back(layout_discontinuity(ind, vocab));
  }

  report.sequential.stats = mean_sd(report.sequential.per_level);
  report.independent.stats = mean_sd(report.independent.per_level);
  if (!report.sequential.per_level.empty())
    report.test = wilcoxon_rank_sum(report.sequential.per_level, report.independent.per_level);
  return report;
}

std::string DiscontinuityReport::to_json() const {
  json j;
  j["report"] = "discontinuity";
  j["config"] = config_json(config);
  j["sequential"] = {{"stats", mean_sd_json(sequential.stats)},
                     {"truncated", sequential.truncated},
                     {"per_level", sequential.per_level}};
  j["independent"] = {{"stats", mean_sd_json(independent.stats)},
                      {"truncated", independent.truncated},
                      {"per_level", independent.per_level}};
  j["wilcoxon"] = {{"statistic", test.statistic}, {"p_value", test.p_value}, {"exact", test.exact}};
  j["excluded_pairs"] = excluded_pairs;
  return j.dump(2);
}

std::string DiscontinuityReport::to_table() const {
  std::ostringstream out;
  out << "discontinuity: " << config.domain << ", " << config.level_count << " levels x "
      << config.segments_per_level << " segments, seed " << config.seed << "\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-12s %8s %8s %6s %10s\n", "condition", "mean", "sd", "n",
                "truncated");
  out << buf;
  std::snprintf(buf, sizeof buf, "%-12s %8.3f %8.3f %6d %10d\n", "sequential", sequential.stats.mean,
                sequential.stats.sd, sequential.stats.n, sequential.truncated);
  out << buf;
  std::snprintf(buf, sizeof buf, "%-12s %8.3f %8.3f %6d %10d\n", "independent",
                independent.stats.mean, independent.stats.sd, independent.stats.n,
                independent.truncated);
  out << buf;
  std::snprintf(buf, sizeof buf, "wilcoxon rank-sum W=%.1f, two-sided p=%.6g (%s)\n", test.statistic,
                test.p_value, test.exact ? "exact" : "normal approximation");
  out << buf;
  out << "excluded truncated pairs: " << excluded_pairs << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------

std::pair<Segment, Segment> default_blend_endpoints(const Corpus& corpus,
                                                    const std::string& ki_source,
                                                    const std::string& smb_source) {
  const Segment* ki = nullptr;
  const Segment* smb = nullptr;
  for (const SegmentRecord& rec : corpus.segments) {
    if (!ki && rec.source == ki_source) ki = &rec.segment;
    if (!smb && rec.source == smb_source) smb = &rec.segment;
    if (ki && smb) break;
  }
  if (!ki || !smb)
    throw EmptyCorpusError("corpus lacks segments from '" + ki_source + "' and '" + smb_source +
                           "' for interpolation endpoints");
  return {*ki, *smb};
}

namespace {

struct MetricSamples {
  std::vector<double> density, non_linearity, leniency, interestingness, path_prop;

  void add(const MetricVector& m) {
    density.push_back(m.density);
    non_linearity.push_back(m.non_linearity);
    leniency.push_back(m.leniency);
    interestingness.push_back(m.interestingness);
    path_prop.push_back(m.path_prop);
  }
};

void fill_stats(BlendSetResult& result, const MetricSamples& samples) {
  result.density = mean_sd(samples.density);
  result.non_linearity = mean_sd(samples.non_linearity);
  result.leniency = mean_sd(samples.leniency);
  result.interestingness = mean_sd(samples.interestingness);
  result.path_prop = mean_sd(samples.path_prop);
}

// Means of each population after a min-max shared across all populations.
void normalize_across(std::vector<BlendSetResult*>& results,
                      const std::vector<const MetricSamples*>& samples,
                      std::vector<double> MetricSamples::*member, double BlendSetResult::*out) {
  std::vector<double> pooled;
  for (const MetricSamples* s : samples) {
    const auto& v = s->*member;
    pooled.insert(pooled.end(), v.begin(), v.end());
  }
  if (pooled.empty()) return;
  const std::vector<double> normalized = normalize_min_max(pooled);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::size_t n = (samples[i]->*member).size();
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += normalized[offset + k];
    results[i]->*out = n > 0 ? sum / static_cast<double>(n) : 0.0;
    offset += n;
  }
}

json blend_set_json(const BlendSetResult& s) {
  return {{"label", s.label},
          {"density", mean_sd_json(s.density)},
          {"non_linearity", mean_sd_json(s.non_linearity)},
          {"leniency", mean_sd_json(s.leniency)},
          {"interestingness", mean_sd_json(s.interestingness)},
          {"path_prop", mean_sd_json(s.path_prop)},
          {"normalized",
           {{"density", s.norm_density},
            {"non_linearity", s.norm_non_linearity},
            {"leniency", s.norm_leniency},
            {"interestingness", s.norm_interestingness},
            {"path_prop", s.norm_path_prop}}},
          {"pct_right_smb_like", s.pct_right},
          {"pct_up_ki_like", s.pct_up},
          {"pct_other", s.pct_other},
          {"segments", s.segments},
          {"truncated_levels", s.truncated_levels}};
}

}  // namespace

BlendReport run_blend_experiment(const VaeModel& model, const DirectionModel& directions,
                                 const Corpus& corpus, const ExperimentConfig& config,
                                 const Segment& ki_endpoint, const Segment& smb_endpoint) {
  validate_config(config);
  BlendReport report;
  report.config = config;

  const Eigen::VectorXf z_ki = encode(model, ki_endpoint);
  const Eigen::VectorXf z_smb = encode(model, smb_endpoint);

  struct SetSpec {
    std::string label;
    bool random;
    double t;  // interpolation distance from the KI endpoint
  };
  const std::vector<SetSpec> specs = {{"Random Blend", true, 0.0}, {"SMB-0", false, 0.0},
                                      {"SMB-25", false, 0.25},    {"SMB-50", false, 0.5},
                                      {"SMB-75", false, 0.75},    {"SMB-100", false, 1.0}};

  std::vector<MetricSamples> set_samples(specs.size());
  for (std::size_t si = 0; si < specs.size(); ++si) {
    const SetSpec& spec = specs[si];
    BlendSetResult result;
    result.label = spec.label;
    int right = 0, up = 0, other = 0;

    const std::uint64_t set_seed = Rng::derive(config.seed, si);
    const Segment interpolated_init =
        spec.random ? Segment{} : decode(model, interpolate(z_ki, z_smb, spec.t));
    for (int i = 0; i < config.level_count; ++i) {
      const std::uint64_t level_seed = Rng::derive(set_seed, static_cast<std::uint64_t>(i));
      const Segment init =
          spec.random ? decode(model, sample_prior(model.latent_dim, Rng::derive(level_seed, 0)))
                      : interpolated_init;
      // Sampled latents give the set its variety; the interpolated sets
      // share one initial segment by construction.
      VaeSequencer sequencer(model, true, Rng::derive(level_seed, 1));
      const LevelLayout layout =
          generate_level_with_dirs(sequencer, directions, init, config.segments_per_level - 1);
      if (layout.truncated) ++result.truncated_levels;
      for (const Placement& p : layout.placements) {
        set_samples[si].add(tile_metrics(p.segment, model.vocab));
        ++result.segments;
        const int dir = arg_max_direction(directions.direction_proba(p.segment));
        if (dir == static_cast<int>(Direction::Right))
          ++right;
        else if (dir == static_cast<int>(Direction::Up))
          ++up;
        else
          ++other;
      }
    }
    if (result.segments > 0) {
      result.pct_right = 100.0 * right / result.segments;
      result.pct_up = 100.0 * up / result.segments;
      result.pct_other = 100.0 * other / result.segments;
    }
    fill_stats(result, set_samples[si]);
    report.sets.push_back(std::move(result));
  }

  // Original-game baselines from the ingested corpus.
  std::vector<MetricSamples> baseline_samples;
  {
    std::vector<std::string> sources;
    for (const SegmentRecord& rec : corpus.segments)
      if (std::find(sources.begin(), sources.end(), rec.source) == sources.end())
        sources.push_back(rec.source);
    for (const std::string& source : sources) {
      BlendSetResult result;
      result.label = "original " + source;
      MetricSamples samples;
      for (const SegmentRecord& rec : corpus.segments)
        if (rec.source == source) samples.add(tile_metrics(rec.segment, corpus.vocab));
      result.segments = static_cast<int>(samples.density.size());
      fill_stats(result, samples);
      baseline_samples.push_back(std::move(samples));
      report.baselines.push_back(std::move(result));
    }
  }

  // Shared-scale normalization across every population in the report.
  std::vector<BlendSetResult*> all_results;
  std::vector<const MetricSamples*> all_samples;
  for (std::size_t i = 0; i < report.sets.size(); ++i) {
    all_results.push_back(&report.sets[i]);
    all_samples.push_back(&set_samples[i]);
  }
  for (std::size_t i = 0; i < report.baselines.size(); ++i) {
    all_results.push_back(&report.baselines[i]);
    all_samples.push_back(&baseline_samples[i]);
  }
  normalize_across(all_results, all_samples, &MetricSamples::density, &BlendSetResult::norm_density);
  normalize_across(all_results, all_samples, &MetricSamples::non_linearity,
                   &BlendSetResult::norm_non_linearity);
  normalize_across(all_results, all_samples, &MetricSamples::leniency, &BlendSetResult::norm_leniency);
  normalize_across(all_results, all_samples, &MetricSamples::interestingness,
                   &BlendSetResult::norm_interestingness);
  normalize_across(all_results, all_samples, &MetricSamples::path_prop,
                   &BlendSetResult::norm_path_prop);
  return report;
}

std::string BlendReport::to_json() const {
  json j;
  j["report"] = "blend";
  j["config"] = config_json(config);
  json sets_json = json::array();
  for (const BlendSetResult& s : sets) sets_json.push_back(blend_set_json(s));
  j["sets"] = std::move(sets_json);
  json base_json = json::array();
  for (const BlendSetResult& s : baselines) base_json.push_back(blend_set_json(s));
  j["baselines"] = std::move(base_json);
  return j.dump(2);
}

std::string BlendReport::to_table() const {
  std::ostringstream out;
  out << "blend: " << config.domain << ", " << config.level_count << " levels x "
      << config.segments_per_level << " segments per set, seed " << config.seed << "\n\n";
  char buf[200];
  out << "tile metrics (mean +/- sd per segment)\n";
  std::snprintf(buf, sizeof buf, "%-16s %16s %16s %16s %16s %16s\n", "set", "density",
                "non-linearity", "leniency", "interestingness", "path-prop");
  out << buf;
  auto row = [&](const BlendSetResult& s) {
    std::snprintf(buf, sizeof buf, "%-16s %7.3f +- %5.3f %7.3f +- %5.3f %7.3f +- %5.3f %7.3f +- %5.3f %7.3f +- %5.3f\n",
                  s.label.c_str(), s.density.mean, s.density.sd, s.non_linearity.mean,
                  s.non_linearity.sd, s.leniency.mean, s.leniency.sd, s.interestingness.mean,
                  s.interestingness.sd, s.path_prop.mean, s.path_prop.sd);
    out << buf;
  };
  for (const BlendSetResult& s : baselines) row(s);
  for (const BlendSetResult& s : sets) row(s);

  out << "\ndirection classification (% of generated segments)\n";
  std::snprintf(buf, sizeof buf, "%-16s %12s %12s %8s %10s %10s\n", "set", "SMB-like", "KI-like",
                "other", "segments", "truncated");
  out << buf;
  for (const BlendSetResult& s : sets) {
    std::snprintf(buf, sizeof buf, "%-16s %12.1f %12.1f %8.1f %10d %10d\n", s.label.c_str(),
                  s.pct_right, s.pct_up, s.pct_other, s.segments, s.truncated_levels);
    out << buf;
  }
  return out.str();
}

// ---------------------------------------------------------------------------

ProgressionReport run_progression_experiment(const SegmentModel& model,
                                             const DirectionModel& directions,
                                             const TileVocabulary& vocab,
                                             const ExperimentConfig& config) {
  validate_config(config);
  if (config.groups < 1 || config.segments_per_level % config.groups != 0)
    throw RangeError("segments_per_level must divide into " + std::to_string(config.groups) +
                     " groups");
  const int group_size = config.segments_per_level / config.groups;

  ProgressionReport report;
  report.config = config;
  // per group, per metric, one value per kept level
  std::vector<MetricSamples> group_samples(static_cast<std::size_t>(config.groups));
  std::vector<std::vector<double>> group_discontinuity(static_cast<std::size_t>(config.groups));

  for (int i = 0; i < config.level_count; ++i) {
    const std::uint64_t level_seed = Rng::derive(config.seed, static_cast<std::uint64_t>(i));
    const Segment init = model.from_prior(Rng::derive(level_seed, 0));
    const LevelLayout layout =
        generate_level_with_dirs(model, directions, init, config.segments_per_level - 1);
    if (layout.truncated ||
        layout.placements.size() != static_cast<std::size_t>(config.segments_per_level)) {
      ++report.truncated_levels;
      continue;
    }
    for (int g = 0; g < config.groups; ++g) {
      const int begin = g * group_size;
      const int end = begin + group_size;
      MetricVector sums;
      for (int k = begin; k < end; ++k) {
        const MetricVector m = tile_metrics(layout.placements[static_cast<std::size_t>(k)].segment, vocab);
        sums.density += m.density;
        sums.non_linearity += m.non_linearity;
        sums.leniency += m.leniency;
        sums.interestingness += m.interestingness;
        sums.path_prop += m.path_prop;
      }
      MetricVector means;
      means.density = sums.density / group_size;
      means.non_linearity = sums.non_linearity / group_size;
      means.leniency = sums.leniency / group_size;
      means.interestingness = sums.interestingness / group_size;
      means.path_prop = sums.path_prop / group_size;
      group_samples[static_cast<std::size_t>(g)].add(means);

      // Adjoining edges whose second segment falls in this group.
      double disc_sum = 0.0;
      int disc_n = 0;
      for (int k = std::max(begin, 1); k < end; ++k) {
        const Placement& prev = layout.placements[static_cast<std::size_t>(k - 1)];
        const Placement& cur = layout.placements[static_cast<std::size_t>(k)];
        disc_sum += discontinuity(prev.segment, cur.segment, *cur.arrival, vocab);
        ++disc_n;
      }
      group_discontinuity[static_cast<std::size_t>(g)].push_back(disc_n > 0 ? disc_sum / disc_n : 0.0);
    }
  }

  for (int g = 0; g < config.groups; ++g) {
    GroupStats stats;
    const MetricSamples& s = group_samples[static_cast<std::size_t>(g)];
    stats.density = mean_sd(s.density);
    stats.non_linearity = mean_sd(s.non_linearity);
    stats.leniency = mean_sd(s.leniency);
    stats.interestingness = mean_sd(s.interestingness);
    stats.path_prop = mean_sd(s.path_prop);
    stats.discontinuity = mean_sd(group_discontinuity[static_cast<std::size_t>(g)]);
    report.groups.push_back(stats);
  }
  return report;
}

namespace {

void plot_rows(std::ostringstream& out, const char* metric, const std::vector<GroupStats>& groups,
               MeanSd GroupStats::*member) {
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const MeanSd& m = groups[g].*member;
    out << metric << '\t' << (g + 1) << '\t' << m.mean << '\t' << m.sd << '\n';
  }
}

}  // namespace

std::string ProgressionReport::to_json() const {
  json j;
  j["report"] = "progression";
  j["config"] = config_json(config);
  json groups_json = json::array();
  for (const GroupStats& g : groups)
    groups_json.push_back({{"density", mean_sd_json(g.density)},
                           {"non_linearity", mean_sd_json(g.non_linearity)},
                           {"leniency", mean_sd_json(g.leniency)},
                           {"interestingness", mean_sd_json(g.interestingness)},
                           {"path_prop", mean_sd_json(g.path_prop)},
                           {"discontinuity", mean_sd_json(g.discontinuity)}});
  j["groups"] = std::move(groups_json);
  j["truncated_levels"] = truncated_levels;
  return j.dump(2);
}

std::string ProgressionReport::to_table() const {
  std::ostringstream out;
  out << "progression: " << config.domain << ", " << config.level_count << " levels x "
      << config.segments_per_level << " segments in " << config.groups << " groups, seed "
      << config.seed << "\n";
  out << "truncated levels excluded: " << truncated_levels << "\n";
  char buf[200];
  std::snprintf(buf, sizeof buf, "%5s %10s %14s %10s %16s %10s %14s\n", "group", "density",
                "non-linearity", "leniency", "interestingness", "path-prop", "discontinuity");
  out << buf;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const GroupStats& s = groups[g];
    std::snprintf(buf, sizeof buf, "%5zu %10.4f %14.4f %10.4f %16.4f %10.4f %14.4f\n", g + 1,
                  s.density.mean, s.non_linearity.mean, s.leniency.mean, s.interestingness.mean,
                  s.path_prop.mean, s.discontinuity.mean);
    out << buf;
  }
  return out.str();
}

std::string ProgressionReport::to_plot_data() const {
  std::ostringstream out;
  out << "metric\tgroup\tmean\tsd\n";
  plot_rows(out, "density", groups, &GroupStats::density);
  plot_rows(out, "non_linearity", groups, &GroupStats::non_linearity);
  plot_rows(out, "leniency", groups, &GroupStats::leniency);
  plot_rows(out, "interestingness", groups, &GroupStats::interestingness);
  plot_rows(out, "path_prop", groups, &GroupStats::path_prop);
  plot_rows(out, "discontinuity", groups, &GroupStats::discontinuity);
  return out.str();
}

}  // namespace seqgen
