#include "ktz/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ktz/error.hpp"

namespace ktz {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(ErrorCode::Config, "config line " + std::to_string(line) + ": " + msg);
}

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

double to_double(const Entry& e, const std::string& key) {
  double v = 0.0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  auto [ptr, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    fail(e.line, key + ": expected a number, got '" + e.value + "'");
  }
  return v;
}

template <typename T>
T to_int(const Entry& e, const std::string& key) {
  T v{};
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  auto [ptr, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || ptr != end) {
    fail(e.line, key + ": expected an integer, got '" + e.value + "'");
  }
  return v;
}

bool to_bool(const Entry& e, const std::string& key) {
  if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  fail(e.line, key + ": expected true or false, got '" + e.value + "'");
}

std::optional<double> to_auto_double(const Entry& e, const std::string& key) {
  if (e.value == "auto") return std::nullopt;
  return to_double(e, key);
}

std::string unquote(const std::string& v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    return v.substr(1, v.size() - 2);
  }
  return v;
}

// Reads each known key out of a section; whatever is left is unknown.
class Reader {
 public:
  Reader(Section s, std::string name) : s_(std::move(s)), name_(std::move(name)) {}

  template <typename F>
  void get(const std::string& key, F&& apply) {
    auto it = s_.find(key);
    if (it == s_.end()) return;
    apply(it->second, name_ + "." + key);
    s_.erase(it);
  }

  bool has(const std::string& key) const { return s_.count(key) != 0; }

  void finish() const {
    if (!s_.empty()) {
      const auto& [k, e] = *s_.begin();
      fail(e.line, "unknown key '" + name_ + "." + k + "'");
    }
  }

 private:
  Section s_;
  std::string name_;
};

struct Parsed {
  std::map<std::string, Section> sections;
  std::map<std::string, int> section_line;
  std::vector<Section> layers;
  std::vector<int> layer_line;
};

const char* const kSections[] = {"grid", "params", "run", "spiral", "stack", "output"};

Parsed tokenize(std::string_view text) {
  Parsed out;
  Section* current = nullptr;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.starts_with("[[")) {
      if (!line.ends_with("]]")) fail(line_no, "malformed table header");
      const std::string name(trim(line.substr(2, line.size() - 4)));
      if (name != "layer") fail(line_no, "unknown array table '" + name + "'");
      out.layers.emplace_back();
      out.layer_line.push_back(line_no);
      current = &out.layers.back();
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "malformed section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      bool known = false;
      for (const char* s : kSections) known = known || name == s;
      if (!known) fail(line_no, "unknown section '" + name + "'");
      if (out.sections.count(name)) fail(line_no, "duplicate section '" + name + "'");
      out.section_line[name] = line_no;
      current = &out.sections[name];
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value = unquote(std::string(trim(line.substr(eq + 1))));
    if (key.empty()) fail(line_no, "empty key");
    if (current == nullptr) fail(line_no, "key '" + key + "' outside a section");
    if (current->count(key)) fail(line_no, "duplicate key '" + key + "'");
    (*current)[key] = Entry{value, line_no};
  }
  return out;
}

}  // namespace

Config parse_config(std::string_view text) {
  Parsed parsed = tokenize(text);
  Config cfg;

  auto section = [&](const std::string& name) {
    auto it = parsed.sections.find(name);
    return Reader(it == parsed.sections.end() ? Section{} : it->second, name);
  };

  bool have_n = false, have_q = false, have_alpha = false;

  Reader grid = section("grid");
  grid.get("n", [&](const Entry& e, const std::string& k) {
    cfg.grid.n = to_int<int>(e, k);
    have_n = true;
  });
  grid.get("size", [&](const Entry& e, const std::string& k) {
    cfg.grid.physical_size = to_double(e, k);
  });
  grid.get("boundary", [&](const Entry& e, const std::string& k) {
    if (e.value == "noflux") cfg.grid.boundary = Boundary::NoFlux;
    else if (e.value == "periodic") cfg.grid.boundary = Boundary::Periodic;
    else fail(e.line, k + ": expected noflux or periodic");
  });
  grid.finish();

  Reader params = section("params");
  params.get("q", [&](const Entry& e, const std::string& k) {
    cfg.params.q = to_double(e, k);
    have_q = true;
  });
  params.get("alpha1", [&](const Entry& e, const std::string& k) {
    cfg.params.alpha1 = to_double(e, k);
    have_alpha = true;
  });
  params.get("nu1", [&](const Entry& e, const std::string& k) { cfg.params.nu1 = to_double(e, k); });
  params.get("c1", [&](const Entry& e, const std::string& k) { cfg.params.c1 = to_double(e, k); });
  params.get("c2", [&](const Entry& e, const std::string& k) { cfg.params.c2 = to_double(e, k); });
  params.get("l0", [&](const Entry& e, const std::string& k) { cfg.params.l0 = to_double(e, k); });
  params.get("a2", [&](const Entry& e, const std::string& k) { cfg.a2 = to_double(e, k); });
  params.get("basin", [&](const Entry& e, const std::string& k) {
    if (e.value == "uniform") cfg.params.basin = BasinProfile::Uniform;
    else if (e.value == "disk") cfg.params.basin = BasinProfile::Disk;
    else fail(e.line, k + ": expected uniform or disk");
  });
  params.finish();

  Reader run = section("run");
  run.get("dt", [&](const Entry& e, const std::string& k) { cfg.run.dt = to_auto_double(e, k); });
  run.get("t_end", [&](const Entry& e, const std::string& k) { cfg.run.t_end = to_double(e, k); });
  run.get("snapshot_every", [&](const Entry& e, const std::string& k) {
    cfg.run.snapshot_every = to_double(e, k);
  });
  run.get("blowup_threshold", [&](const Entry& e, const std::string& k) {
    cfg.run.blowup_threshold = to_auto_double(e, k);
  });
  run.get("seed", [&](const Entry& e, const std::string& k) {
    cfg.run.seed = to_int<std::uint64_t>(e, k);
  });
  run.get("threads", [&](const Entry& e, const std::string& k) { cfg.run.threads = to_int<int>(e, k); });
  run.get("zone_floor", [&](const Entry& e, const std::string& k) { cfg.run.zone_floor = to_double(e, k); });
  run.finish();

  bool spiral_seed = false;
  Reader spiral = section("spiral");
  spiral.get("m", [&](const Entry& e, const std::string& k) { cfg.spiral.m = to_int<int>(e, k); });
  spiral.get("amplitude", [&](const Entry& e, const std::string& k) {
    cfg.spiral.amplitude = to_auto_double(e, k);
  });
  spiral.get("core_width", [&](const Entry& e, const std::string& k) {
    cfg.spiral.core_width = to_auto_double(e, k);
  });
  spiral.get("humidity", [&](const Entry& e, const std::string& k) { cfg.spiral.humidity = to_double(e, k); });
  spiral.get("noise_eps", [&](const Entry& e, const std::string& k) { cfg.spiral.noise_eps = to_double(e, k); });
  spiral.get("seed", [&](const Entry& e, const std::string& k) {
    cfg.spiral.seed = to_int<std::uint64_t>(e, k);
    spiral_seed = true;
  });
  spiral.finish();
  // a single seed in [run] drives the noise unless the spiral has its own
  if (!spiral_seed) cfg.spiral.seed = cfg.run.seed;

  Reader stack = section("stack");
  const bool generated = parsed.sections.count("stack") != 0;
  if (generated && !parsed.layers.empty()) {
    fail(parsed.section_line["stack"], "use either [stack] or [[layer]] blocks, not both");
  }
  int count = 0;
  double z0 = 0.0, dz = 500.0, nu_ramp = 1.0, q_ramp = 1.0, humidity = 1.0;
  std::optional<double> ground;
  stack.get("layers", [&](const Entry& e, const std::string& k) { count = to_int<int>(e, k); });
  stack.get("z0", [&](const Entry& e, const std::string& k) { z0 = to_double(e, k); });
  stack.get("dz", [&](const Entry& e, const std::string& k) { dz = to_double(e, k); });
  stack.get("nu1_ramp", [&](const Entry& e, const std::string& k) { nu_ramp = to_double(e, k); });
  stack.get("q_ramp", [&](const Entry& e, const std::string& k) { q_ramp = to_double(e, k); });
  stack.get("humidity", [&](const Entry& e, const std::string& k) { humidity = to_double(e, k); });
  stack.get("ground_humidity", [&](const Entry& e, const std::string& k) { ground = to_double(e, k); });
  stack.finish();
  if (generated) {
    if (count < 1) fail(parsed.section_line["stack"], "stack.layers must be at least 1");
    double nf = 1.0, qf = 1.0;
    for (int k = 0; k < count; ++k) {
      LayerProfile lp;
      lp.z_m = z0 + dz * k;
      lp.nu1_factor = nf;
      lp.q_factor = qf;
      lp.humidity = (k == 0 && ground) ? *ground : humidity;
      cfg.layers.push_back(lp);
      nf *= nu_ramp;
      qf *= q_ramp;
    }
  }

  for (std::size_t k = 0; k < parsed.layers.size(); ++k) {
    Reader layer(parsed.layers[k], "layer");
    LayerProfile lp;
    bool have_z = false;
    layer.get("z", [&](const Entry& e, const std::string& key) {
      lp.z_m = to_double(e, key);
      have_z = true;
    });
    layer.get("nu1_factor", [&](const Entry& e, const std::string& key) { lp.nu1_factor = to_double(e, key); });
    layer.get("q_factor", [&](const Entry& e, const std::string& key) { lp.q_factor = to_double(e, key); });
    layer.get("humidity", [&](const Entry& e, const std::string& key) { lp.humidity = to_double(e, key); });
    layer.finish();
    if (!have_z) fail(parsed.layer_line[k], "layer.z is required");
    cfg.layers.push_back(lp);
  }

  Reader output = section("output");
  output.get("dir", [&](const Entry& e, const std::string&) { cfg.output.dir = e.value; });
  output.get("snapshots", [&](const Entry& e, const std::string& k) { cfg.output.snapshots = to_bool(e, k); });
  output.get("ppm", [&](const Entry& e, const std::string& k) { cfg.output.ppm = to_bool(e, k); });
  output.get("report", [&](const Entry& e, const std::string& k) { cfg.output.report = to_bool(e, k); });
  output.finish();

  if (!have_n) throw Error(ErrorCode::Config, "missing required key grid.n");
  if (!have_q) throw Error(ErrorCode::Config, "missing required key params.q");
  if (!have_alpha) throw Error(ErrorCode::Config, "missing required key params.alpha1");

  try {
    cfg.grid.validate();
    cfg.params.validate(cfg.grid);
    cfg.spiral.validate();
    if (!cfg.layers.empty()) validate_profiles(cfg.layers);
  } catch (const Error& e) {
    throw Error(ErrorCode::Config, e.what());
  }
  if (!(cfg.run.t_end >= 0.0)) throw Error(ErrorCode::Config, "run.t_end must be non-negative");
  if (!(cfg.run.snapshot_every > 0.0)) {
    throw Error(ErrorCode::Config, "run.snapshot_every must be positive");
  }
  if (cfg.run.dt && !(*cfg.run.dt > 0.0)) throw Error(ErrorCode::Config, "run.dt must be positive");
  if (cfg.run.threads < 1) throw Error(ErrorCode::Config, "run.threads must be at least 1");
  if (!(cfg.run.zone_floor >= 0.0)) throw Error(ErrorCode::Config, "run.zone_floor must be non-negative");
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace ktz
