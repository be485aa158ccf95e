#pragma once

#include <array>
#include <cstdint>

#include "seqgen/corpus.hpp"

namespace seqgen {

// What the generation loop needs from the trained VAE. Kept abstract so
// experiments and property tests can inject stub models.
class SegmentModel {
 public:
  virtual ~SegmentModel() = default;
  // One step of the sequential chain: decode(encode(current)).
  virtual Segment follower(const Segment& current) const = 0;
  // An independently generated segment: decode(sample_prior(seed)).
  virtual Segment from_prior(std::uint64_t seed) const = 0;
};

// What placement needs from the direction classifier.
class DirectionModel {
 public:
  virtual ~DirectionModel() = default;
  // Probability per Direction, indexed by the Direction enum; sums to 1.
  virtual std::array<double, kDirectionCount> direction_proba(const Segment& segment) const = 0;
};

}  // namespace seqgen
