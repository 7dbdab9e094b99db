#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ktz/initcond.hpp"
#include "ktz/integrator.hpp"
#include "ktz/morphology.hpp"

namespace ktz {

struct LayerProfile {
  double z_m = 0.0;
  double nu1_factor = 1.0;
  double q_factor = 1.0;
  double humidity = 1.0;
};

struct LayerResult {
  double z_m = 0.0;
  Params params;
  RunOutcome outcome;
  std::optional<MorphologyReport> morphology;  // NP velocity column
  double zone_area_m2 = 0.0;
};

struct ColumnReport {
  std::vector<LayerResult> per_layer;  // ordered by z
  std::optional<double> top_of_vortex_m;
};

/// Throws InvalidArgument on an empty list, non-increasing heights or
/// non-positive factors.
void validate_profiles(std::span<const LayerProfile> profiles);

/// Parameters and initial field for layer `index`: nu1 and q scaled by the
/// layer factors, humidity replaced by the layer's, seed offset by index.
Params layer_params(const Params& base, const LayerProfile& layer);
VelocityField layer_initial(const GridSpec& grid, const Params& layer,
                            const LayerProfile& profile, SpiralSpec spiral,
                            std::size_t index);

LayerResult run_layer(const GridSpec& grid, const Params& base,
                      const RunConfig& cfg, const LayerProfile& profile,
                      const SpiralSpec& spiral, std::size_t index);

/// Runs every layer independently. `order`, when given, is the evaluation
/// order (a permutation of layer indices); results are always stored by z.
ColumnReport run_stack(const GridSpec& grid, const Params& base,
                       const RunConfig& cfg,
                       std::span<const LayerProfile> profiles,
                       const SpiralSpec& spiral,
                       std::span<const std::size_t> order = {});

}  // namespace ktz
