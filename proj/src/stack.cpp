#include "ktz/stack.hpp"

#include <algorithm>
#include <numeric>

#include "ktz/error.hpp"
#include "ktz/thermo.hpp"

namespace ktz {

void validate_profiles(std::span<const LayerProfile> profiles) {
  if (profiles.empty()) {
    throw Error(ErrorCode::InvalidArgument, "stack needs at least one layer");
  }
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    const LayerProfile& p = profiles[k];
    if (!(p.nu1_factor > 0.0) || !(p.q_factor > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "layer factors must be positive");
    }
    if (!(p.humidity >= 0.0 && p.humidity <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "layer humidity must be in [0, 1]");
    }
    if (k > 0 && !(p.z_m > profiles[k - 1].z_m)) {
      throw Error(ErrorCode::InvalidArgument,
                  "layer heights must be strictly increasing");
    }
  }
}

Params layer_params(const Params& base, const LayerProfile& layer) {
  Params p = base;
  p.nu1 *= layer.nu1_factor;
  p.q *= layer.q_factor;
  return p;
}

VelocityField layer_initial(const GridSpec& grid, const Params& layer,
                            const LayerProfile& profile, SpiralSpec spiral,
                            std::size_t index) {
  spiral.humidity = profile.humidity;
  spiral.seed += index;
  return make_spiral(grid, with_defaults(spiral, layer, grid));
}

LayerResult run_layer(const GridSpec& grid, const Params& base,
                      const RunConfig& cfg, const LayerProfile& profile,
                      const SpiralSpec& spiral, std::size_t index) {
  LayerResult res;
  res.z_m = profile.z_m;
  res.params = layer_params(base, profile);
  const VelocityField init = layer_initial(grid, res.params, profile, spiral, index);
  res.outcome = run(init, res.params, cfg);
  const VelocityField& last = res.outcome.snapshots.back();
  if (res.outcome.status != RunStatus::Diverged && last.all_finite()) {
    res.zone_area_m2 = res.outcome.series.back().zone_area_m2;
    res.morphology = analyze_morphology(last, res.params, cfg.zone_floor).front();
  }
  return res;
}

ColumnReport run_stack(const GridSpec& grid, const Params& base,
                       const RunConfig& cfg,
                       std::span<const LayerProfile> profiles,
                       const SpiralSpec& spiral,
                       std::span<const std::size_t> order) {
  validate_profiles(profiles);
  std::vector<std::size_t> seq(profiles.size());
  std::iota(seq.begin(), seq.end(), std::size_t{0});
  if (!order.empty()) {
    std::vector<std::size_t> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted != seq) {
      throw Error(ErrorCode::InvalidArgument,
                  "evaluation order must permute the layer indices");
    }
    seq.assign(order.begin(), order.end());
  }

  ColumnReport col;
  col.per_layer.resize(profiles.size());
  for (std::size_t idx : seq) {
    col.per_layer[idx] = run_layer(grid, base, cfg, profiles[idx], spiral, idx);
  }
  for (const LayerResult& l : col.per_layer) {
    if (l.zone_area_m2 > 0.0) col.top_of_vortex_m = l.z_m;
  }
  return col;
}

}  // namespace ktz
