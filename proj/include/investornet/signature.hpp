#pragma once

#include <optional>
#include <span>
#include <vector>

#include "investornet/pipeline.hpp"
#include "investornet/synth.hpp"

namespace investornet {

// Spearman rank correlation (average ranks for ties). nullopt for fewer than
// two points or a constant input.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

// Qualitative bubble signatures of one synthetic run:
//  - herding_trend: Spearman(window index, household L_max) over windows
//    ending before the tipping day;
//  - polarization_drop: mean household L_min over windows ending before the
//    contrarian onset minus the minimum household L_min over the first three
//    windows starting on or after it;
//  - institution_trend: Spearman(window index, FI L_max) over all windows.
struct BubbleSignature {
  std::optional<double> herding_trend;
  std::optional<double> polarization_drop;
  std::optional<double> institution_trend;
  std::size_t pre_tipping_windows = 0;
  std::size_t pre_onset_windows = 0;
};

BubbleSignature measure_bubble_signature(const PipelineResult& result, const SynthConfig& config);

}  // namespace investornet
