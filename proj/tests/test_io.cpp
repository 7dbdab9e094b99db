#include <doctest.h>

#include <cstring>
#include <filesystem>

#include "helpers.hpp"
#include "ktz/app.hpp"
#include "ktz/config.hpp"
#include "ktz/error.hpp"
#include "ktz/io.hpp"

using namespace ktz;

namespace {

const char* kMinimal = R"(
[grid]
n = 32
[params]
q = 1
alpha1 = 1
)";

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("minimal config takes documented defaults") {
  const Config c = parse_config(kMinimal);
  CHECK(c.grid.n == 32);
  CHECK(c.grid.physical_size == 1000.0);
  CHECK(c.grid.boundary == Boundary::NoFlux);
  CHECK(c.params.nu1 == 1.0);
  CHECK(c.params.basin == BasinProfile::Uniform);
  CHECK_FALSE(c.run.dt.has_value());
  CHECK(c.run.t_end == 10.0);
  CHECK(c.run.threads == 1);
  CHECK(c.spiral.m == 1);
  CHECK(c.layers.empty());
  CHECK(c.output.snapshots);
  CHECK_FALSE(c.output.ppm);
}

TEST_CASE("config values and comments") {
  const Config c = parse_config(R"(
# full example
[grid]
n = 64          # cells per side
size = 2000
boundary = periodic
[params]
q = 0.5
alpha1 = 2
nu1 = 3
c1 = -1
c2 = 0.25
l0 = 800
basin = disk
a2 = 0.1
[run]
dt = 0.01
t_end = 3
snapshot_every = 0.5
blowup_threshold = auto
seed = 42
threads = 4
zone_floor = 0
[spiral]
m = -2
amplitude = 0.3
core_width = auto
humidity = 0.5
noise_eps = 1e-3
[output]
dir = "some dir"
ppm = true
report = false
)");
  CHECK(c.grid.boundary == Boundary::Periodic);
  CHECK(c.params.c1 == -1.0);
  CHECK(c.params.basin == BasinProfile::Disk);
  CHECK(*c.a2 == 0.1);
  CHECK(*c.run.dt == 0.01);
  CHECK_FALSE(c.run.blowup_threshold.has_value());
  CHECK(c.run.seed == 42);
  CHECK(c.spiral.seed == 42);
  CHECK(c.spiral.m == -2);
  CHECK(*c.spiral.amplitude == 0.3);
  CHECK_FALSE(c.spiral.core_width.has_value());
  CHECK(c.output.dir == "some dir");
  CHECK(c.output.ppm);
  CHECK_FALSE(c.output.report);
}

TEST_CASE("config errors") {
  auto bad = [](const std::string& extra) {
    return code_of([&] { parse_config(std::string(kMinimal) + extra); });
  };
  CHECK(bad("[params2]\n") == ErrorCode::Config);
  CHECK(bad("[run]\nt_ned = 3\n") == ErrorCode::Config);
  CHECK(bad("[run]\nt_end = abc\n") == ErrorCode::Config);
  CHECK(bad("[run]\nthreads = 0\n") == ErrorCode::Config);
  CHECK(bad("[grid]\n") == ErrorCode::Config);
  CHECK(bad("[run]\nseed = -3\n") == ErrorCode::Config);
  CHECK(bad("[output]\nppm = maybe\n") == ErrorCode::Config);
  CHECK(bad("[spiral]\nhumidity = 2\n") == ErrorCode::Config);
  CHECK(bad("[[layer]]\nnu1_factor = 2\n") == ErrorCode::Config);
  CHECK(bad("[stack]\nlayers = 2\n[[layer]]\nz = 0\n") == ErrorCode::Config);
  CHECK(bad("stray line\n") == ErrorCode::Config);

  CHECK(code_of([] { parse_config("[params]\nq = 1\nalpha1 = 1\n"); }) == ErrorCode::Config);
  CHECK(code_of([] { parse_config("[grid]\nn = 32\n[params]\nalpha1 = 1\n"); }) == ErrorCode::Config);
  CHECK(code_of([] { parse_config("[grid]\nn = 32\n[params]\nq = 1\n"); }) == ErrorCode::Config);
  CHECK(code_of([] { load_config("/nonexistent/ktz.ini"); }) == ErrorCode::Io);

  try {
    parse_config(std::string(kMinimal) + "[run]\nbogus = 1\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("run.bogus") != std::string::npos);
    CHECK(std::string(e.what()).find("line 8") != std::string::npos);
  }
}

TEST_CASE("stack section generates a ramp") {
  const Config c = parse_config(std::string(kMinimal) + R"(
[stack]
layers = 4
z0 = 100
dz = 700
nu1_ramp = 2
humidity = 0.8
ground_humidity = 0
)");
  REQUIRE(c.layers.size() == 4);
  CHECK(c.layers[0].z_m == 100.0);
  CHECK(c.layers[3].z_m == 2200.0);
  CHECK(c.layers[3].nu1_factor == 8.0);
  CHECK(c.layers[0].humidity == 0.0);
  CHECK(c.layers[1].humidity == 0.8);

  const Config d = parse_config(std::string(kMinimal) + R"(
[[layer]]
z = 0
humidity = 0.2
[[layer]]
z = 500
nu1_factor = 3
)");
  REQUIRE(d.layers.size() == 2);
  CHECK(d.layers[0].humidity == 0.2);
  CHECK(d.layers[1].nu1_factor == 3.0);
}

TEST_CASE("snapshot round trip is byte identical") {
  const GridSpec g{32, 123.5, Boundary::Periodic};
  auto f = ktz::test::tanh_vortex(g, 9.0, -2);
  f.time = 3.75;
  f.re[7] = -0.0;
  const std::string bytes = encode_snapshot(f);
  CHECK(bytes.size() == 25 + 32 * 32 * 16);
  CHECK(bytes.substr(0, 4) == "KTZ1");
  CHECK(static_cast<unsigned char>(bytes[4]) == 32);
  CHECK(bytes[24] == 1);
  const VelocityField back = decode_snapshot(bytes);
  CHECK(back.grid == g);
  CHECK(ktz::test::bit_equal(back, f));
  CHECK(encode_snapshot(back) == bytes);

  const std::string dir = ktz::test::scratch_dir("snap");
  const std::string path = dir + "/a.ktz";
  write_snapshot(path, f);
  CHECK(read_text(path) == bytes);
}

TEST_CASE("snapshot decoding rejects malformed input") {
  const GridSpec g{16, 10.0};
  const std::string good = encode_snapshot(VelocityField::zeros(g));
  CHECK(code_of([&] { decode_snapshot(good.substr(0, good.size() - 1)); }) == ErrorCode::Format);
  std::string magic = good;
  magic[0] = 'X';
  CHECK(code_of([&] { decode_snapshot(magic); }) == ErrorCode::Format);
  std::string boundary = good;
  boundary[24] = 7;
  CHECK(code_of([&] { decode_snapshot(boundary); }) == ErrorCode::Format);
  CHECK(code_of([&] { decode_snapshot("KT"); }) == ErrorCode::Format);
}

TEST_CASE("series csv") {
  std::vector<DiagnosticSample> s{{0.0, 1.0, 2.5, 0.1, -3.0}, {0.5, 0.1, 0.0, 0.0, 1e-300}};
  const std::string csv = format_series_csv(s);
  CHECK(csv.rfind("t,max_amp,zone_area_m2,zone_diameter_m,s_dot_total\n", 0) == 0);
  CHECK(csv.find("\n0,1,2.5,0.10000000000000001,-3\n") != std::string::npos);
  CHECK(csv.find("\n0.5,0.10000000000000001,0,0,1e-300\n") != std::string::npos);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == 3);
}

TEST_CASE("rasters are P6 with fixed palettes") {
  const GridSpec g{16, 16.0};
  const auto f = ktz::test::tanh_vortex(g, 3.0);
  const std::string amp = render_amplitude_ppm(f);
  const std::string header = "P6\n16 16\n255\n";
  CHECK(amp.rfind(header, 0) == 0);
  CHECK(amp.size() == header.size() + 16 * 16 * 3);
  CHECK(render_amplitude_ppm(f) == amp);

  EntropyFields ef;
  ef.grid = g;
  ef.s_dot.assign(g.cells(), 0.0);
  ef.s_dot[g.index(0, 15)] = -2.0;  // top-left pixel
  ef.s_dot[g.index(1, 15)] = 2.0;
  ef.s_dot[g.index(2, 15)] = -1.0;
  const std::string sd = render_sdot_ppm(ef);
  auto px = [&](int col) { return sd.substr(header.size() + 3 * col, 3); };
  CHECK(px(0) == std::string("\x00\x00\xff", 3));
  CHECK(px(1) == std::string("\xff\x00\x00", 3));
  CHECK(px(2) == std::string("\x80\x80\xff", 3));
  CHECK(px(3) == std::string("\xff\xff\xff", 3));
}

TEST_CASE("report mirrors the characteristic rows") {
  MorphologyReport a, b, c;
  a.mode = ReportMode::NpVelocity;
  a.zone_diameter_m = 439.0;
  a.inner_core_diameter_m = 11.0;
  a.outer_core_diameter_m = 20.0;
  a.pressure_ring_width_m = 30.0;
  a.charge = 1;
  b.mode = ReportMode::NpPressure;
  c.mode = ReportMode::PPressure;
  const std::vector<MorphologyReport> r{a, b, c};
  const std::string text = format_report(r, 20.0);
  for (const char* label :
       {"Self-organization zone diameter d, m", "Inner core diameter, m",
        "Outer core diameter, m",
        "Width of the pressure equalization ring to atmospheric pressure, m"}) {
    CHECK(text.find(label) != std::string::npos);
  }
  CHECK(text.find("439.0") != std::string::npos);
  CHECK(text.rfind("time 20\n", 0) == 0);
}

TEST_CASE("run then analyze gives identical reports") {
  Config c = parse_config(R"(
[grid]
n = 32
[params]
q = 1
alpha1 = 1
nu1 = 400
c1 = 1
c2 = 0.5
basin = disk
[run]
t_end = 1
snapshot_every = 0.5
[spiral]
noise_eps = 1e-3
[output]
ppm = true
)");
  const std::string dir = ktz::test::scratch_dir("run");
  const RunSummary s = run_command(c, dir);
  CHECK(s.status == RunStatus::Completed);
  CHECK(s.snapshots == 3);
  const auto snaps = list_snapshots(dir);
  REQUIRE(snaps.size() == 3);
  CHECK(std::filesystem::exists(dir + "/series.csv"));
  CHECK(std::filesystem::exists(dir + "/amp_000002.ppm"));
  CHECK(std::filesystem::exists(dir + "/sdot_000000.ppm"));

  const std::string again = ktz::test::scratch_dir("analyze");
  const std::string latest = analyze_command(c, dir, again);
  CHECK(latest == read_text(dir + "/report.txt"));
  CHECK(read_text(again + "/report_000002.txt") == latest);

  CHECK(render_command(c, dir, again) == 6);

  c.grid.n = 64;
  CHECK(code_of([&] { analyze_command(c, dir, again); }) == ErrorCode::Config);
  CHECK(code_of([&] { analyze_command(c, again + "/none", again); }) == ErrorCode::Io);
}

TEST_CASE("classify command text") {
  Config c = parse_config(std::string(kMinimal) + "[spiral]\nm = -1\n");
  const std::string text = classify_command(c);
  CHECK(text.find("StableVortex") != std::string::npos);
  CHECK(text.find("twist left") != std::string::npos);
}
