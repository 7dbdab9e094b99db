#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ktz/integrator.hpp"
#include "ktz/morphology.hpp"
#include "ktz/stack.hpp"
#include "ktz/thermo.hpp"

namespace ktz {

// Snapshot layout, little-endian:
//   "KTZ1" | u32 n | f64 physical_size | f64 time | u8 boundary |
//   n*n pairs of f64 (re, im), row-major
std::string encode_snapshot(const VelocityField& field);
/// Throws Error(Format) on a bad magic, size mismatch or invalid header.
VelocityField decode_snapshot(std::string_view bytes);
void write_snapshot(const std::string& path, const VelocityField& field);
VelocityField read_snapshot(const std::string& path);

/// Header t,max_amp,zone_area_m2,zone_diameter_m,s_dot_total and one row per
/// sample with %.17g values.
std::string format_series_csv(std::span<const DiagnosticSample> series);

/// Binary P6 rasters. Image rows run from the top of the domain (largest y)
/// down. Amplitude is grey, scaled by max |Phi|; s_dot is blue below zero,
/// white at zero and red above, scaled symmetrically by max |s_dot|.
std::string render_amplitude_ppm(const VelocityField& field);
std::string render_sdot_ppm(const EntropyFields& ef);

/// Three-column table with the characteristic rows of a tornado snapshot.
std::string format_report(std::span<const MorphologyReport> reports, double time);
std::string format_column(const ColumnReport& column);

void write_text(const std::string& path, std::string_view data);
std::string read_text(const std::string& path);

/// "snap_000012.ktz" style names.
std::string numbered(std::string_view prefix, std::size_t index,
                     std::string_view ext);

}  // namespace ktz
