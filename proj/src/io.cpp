#include "ktz/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ktz/error.hpp"

namespace ktz {

namespace {

constexpr char kMagic[4] = {'K', 'T', 'Z', '1'};
constexpr std::size_t kHeader = 4 + 4 + 8 + 8 + 1;

void put_u32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xffu));
}

void put_f64(std::string& out, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xffu));
}

std::uint64_t get_le(const char* p, int bytes) {
  std::uint64_t v = 0;
  for (int b = 0; b < bytes; ++b) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[b])) << (8 * b);
  }
  return v;
}

double get_f64(const char* p) { return std::bit_cast<double>(get_le(p, 8)); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

unsigned char to_byte(double v) {
  return static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

std::string ppm_header(int n) {
  return "P6\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
}

}  // namespace

std::string encode_snapshot(const VelocityField& field) {
  const GridSpec& g = field.grid;
  std::string out;
  out.reserve(kHeader + g.cells() * 16);
  out.append(kMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(g.n));
  put_f64(out, g.physical_size);
  put_f64(out, field.time);
  out.push_back(static_cast<char>(g.boundary));
  for (std::size_t k = 0; k < g.cells(); ++k) {
    put_f64(out, field.re[k]);
    put_f64(out, field.im[k]);
  }
  return out;
}

VelocityField decode_snapshot(std::string_view bytes) {
  if (bytes.size() < kHeader || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::Format, "not a KTZ1 snapshot");
  }
  const char* p = bytes.data();
  const auto n = get_le(p + 4, 4);
  GridSpec g;
  g.physical_size = get_f64(p + 8);
  const double time = get_f64(p + 16);
  const auto boundary = static_cast<unsigned char>(p[24]);
  if (boundary > 1) throw Error(ErrorCode::Format, "snapshot boundary flag invalid");
  if (n == 0 || n > 65536) throw Error(ErrorCode::Format, "snapshot size invalid");
  g.n = static_cast<int>(n);
  g.boundary = static_cast<Boundary>(boundary);
  if (bytes.size() != kHeader + g.cells() * 16) {
    throw Error(ErrorCode::Format, "snapshot length does not match its header");
  }
  try {
    g.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::Format, std::string("snapshot grid: ") + e.what());
  }
  VelocityField f = VelocityField::zeros(g, time);
  const char* d = p + kHeader;
  for (std::size_t k = 0; k < g.cells(); ++k) {
    f.re[k] = get_f64(d + 16 * k);
    f.im[k] = get_f64(d + 16 * k + 8);
  }
  return f;
}

void write_text(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_snapshot(const std::string& path, const VelocityField& field) {
  write_text(path, encode_snapshot(field));
}

VelocityField read_snapshot(const std::string& path) {
  return decode_snapshot(read_text(path));
}

std::string format_series_csv(std::span<const DiagnosticSample> series) {
  std::string out = "t,max_amp,zone_area_m2,zone_diameter_m,s_dot_total\n";
  for (const auto& s : series) {
    out += fmt("%.17g", s.t) + "," + fmt("%.17g", s.max_amp) + "," +
           fmt("%.17g", s.zone_area_m2) + "," + fmt("%.17g", s.zone_diameter_m) +
           "," + fmt("%.17g", s.s_dot_total) + "\n";
  }
  return out;
}

std::string render_amplitude_ppm(const VelocityField& field) {
  const GridSpec& g = field.grid;
  const double top = field.max_amplitude();
  std::string out = ppm_header(g.n);
  for (int j = g.n - 1; j >= 0; --j) {
    for (int i = 0; i < g.n; ++i) {
      const double v = top > 0.0 ? std::abs(field.at(i, j)) / top : 0.0;
      const char c = static_cast<char>(to_byte(v));
      out.append(3, c);
    }
  }
  return out;
}

std::string render_sdot_ppm(const EntropyFields& ef) {
  const GridSpec& g = ef.grid;
  double top = 0.0;
  for (double s : ef.s_dot) top = std::max(top, std::abs(s));
  std::string out = ppm_header(g.n);
  for (int j = g.n - 1; j >= 0; --j) {
    for (int i = 0; i < g.n; ++i) {
      const double t = top > 0.0 ? ef.s_dot[g.index(i, j)] / top : 0.0;
      unsigned char rgb[3];
      if (t < 0.0) {
        rgb[0] = rgb[1] = to_byte(1.0 + t);
        rgb[2] = 255;
      } else {
        rgb[0] = 255;
        rgb[1] = rgb[2] = to_byte(1.0 - t);
      }
      out.append(reinterpret_cast<const char*>(rgb), 3);
    }
  }
  return out;
}

std::string format_report(std::span<const MorphologyReport> reports, double time) {
  constexpr int kLabel = 66;
  auto row = [&](const std::string& label, auto cell) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-*s", kLabel, label.c_str());
    std::string line = buf;
    for (const auto& r : reports) {
      std::snprintf(buf, sizeof buf, "%12s", cell(r).c_str());
      line += buf;
    }
    return line + "\n";
  };
  auto num = [](const std::optional<double>& v) {
    return v ? fmt("%.1f", *v) : std::string("-");
  };

  std::string out = "time " + fmt("%.17g", time) + "\n";
  out += row("Flow type", [](const MorphologyReport& r) {
    return std::string(r.mode == ReportMode::PPressure ? "P" : "NP");
  });
  out += row("Characteristics", [](const MorphologyReport& r) {
    return std::string(r.mode == ReportMode::NpVelocity ? "velocity" : "grad p");
  });
  out += row("Self-organization zone diameter d, m",
             [&](const MorphologyReport& r) { return num(r.zone_diameter_m); });
  out += row("Inner core diameter, m",
             [&](const MorphologyReport& r) { return num(r.inner_core_diameter_m); });
  out += row("Outer core diameter, m",
             [&](const MorphologyReport& r) { return num(r.outer_core_diameter_m); });
  out += row("Width of the pressure equalization ring to atmospheric pressure, m",
             [&](const MorphologyReport& r) { return num(r.pressure_ring_width_m); });
  out += row("Topological charge", [](const MorphologyReport& r) {
    return r.charge ? std::to_string(*r.charge) : std::string("-");
  });
  out += row("Core centre x, m", [&](const MorphologyReport& r) {
    return num(r.core_center ? std::optional<double>(r.core_center->x) : std::nullopt);
  });
  out += row("Core centre y, m", [&](const MorphologyReport& r) {
    return num(r.core_center ? std::optional<double>(r.core_center->y) : std::nullopt);
  });
  return out;
}

std::string format_column(const ColumnReport& column) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%10s %10s %16s %12s %10s %10s %7s\n", "z_m",
                "status", "zone_area_m2", "zone_d_m", "inner_m", "outer_m", "charge");
  out += buf;
  for (const LayerResult& l : column.per_layer) {
    auto num = [](const std::optional<double>& v) {
      return v ? fmt("%.1f", *v) : std::string("-");
    };
    const MorphologyReport* m = l.morphology ? &*l.morphology : nullptr;
    std::snprintf(buf, sizeof buf, "%10.1f %10s %16.1f %12s %10s %10s %7s\n", l.z_m,
                  to_string(l.outcome.status), l.zone_area_m2,
                  num(m ? m->zone_diameter_m : std::nullopt).c_str(),
                  num(m ? m->inner_core_diameter_m : std::nullopt).c_str(),
                  num(m ? m->outer_core_diameter_m : std::nullopt).c_str(),
                  m && m->charge ? std::to_string(*m->charge).c_str() : "-");
    out += buf;
  }
  out += "top_of_vortex_m " +
         (column.top_of_vortex_m ? fmt("%.1f", *column.top_of_vortex_m) : "none") + "\n";
  return out;
}

std::string numbered(std::string_view prefix, std::size_t index,
                     std::string_view ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06zu", index);
  return std::string(prefix) + buf + std::string(ext);
}

}  // namespace ktz
