#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace {

std::string scratch_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() /
                 ("ktz_cli_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p.string();
}

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome ktz_cli(const std::string& args) {
  const std::string cmd = std::string(KTZ_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Outcome o;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), got);
  const int rc = ::pclose(pipe);
  o.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string write_config(const std::string& dir, const std::string& name, const std::string& body) {
  const std::string path = dir + "/" + name;
  std::ofstream(path) << body;
  return path;
}

const char* kSmall = R"(
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
seed = 4
[spiral]
noise_eps = 0.01
)";

}  // namespace

TEST_CASE("cli classify") {
  const std::string dir = scratch_dir("cli_classify");
  const std::string cfg = write_config(dir, "c.ini", "[grid]\nn = 16\n[params]\nq = 1\nalpha1 = 1\nc1 = 2\nc2 = -1\n");
  const Outcome o = ktz_cli("classify --config " + cfg);
  CHECK(o.code == 0);
  CHECK(o.out.find("Unstable") != std::string::npos);
}

TEST_CASE("cli input errors exit with 1") {
  const std::string dir = scratch_dir("cli_errors");
  const std::string cfg = write_config(dir, "bad.ini", std::string(kSmall) + "[run]\nbogus = 1\n");
  CHECK(ktz_cli("run --config " + cfg + " --out-dir " + dir).code == 1);
  CHECK(ktz_cli("run --config " + dir + "/missing.ini").code == 1);
  CHECK(ktz_cli("").code == 1);
  CHECK(ktz_cli("analyze --config " + write_config(dir, "ok.ini", kSmall) + " --in-dir " + dir + "/empty").code == 1);
}

TEST_CASE("cli run and analyze agree") {
  const std::string dir = scratch_dir("cli_run");
  const std::string cfg = write_config(dir, "s.ini", kSmall);
  const Outcome r = ktz_cli("run --config " + cfg + " --out-dir " + dir + "/a");
  CHECK(r.code == 0);
  CHECK(r.out == "status Completed\n");
  CHECK(std::filesystem::exists(dir + "/a/snap_000002.ktz"));

  const Outcome a = ktz_cli("analyze --config " + cfg + " --in-dir " + dir + "/a --out-dir " + dir + "/b");
  CHECK(a.code == 0);
  CHECK(a.out == slurp(dir + "/a/report.txt"));

  const Outcome img = ktz_cli("render --config " + cfg + " --in-dir " + dir + "/a --out-dir " + dir + "/c");
  CHECK(img.code == 0);
  CHECK(img.out == "images 6\n");
}

TEST_CASE("cli seed override and output directory from the environment") {
  const std::string dir = scratch_dir("cli_seed");
  const std::string cfg = write_config(dir, "s.ini", kSmall);
  CHECK(ktz_cli("run --config " + cfg + " --out-dir " + dir + "/s4").code == 0);
  CHECK(ktz_cli("run --config " + cfg + " --seed 9 --out-dir " + dir + "/s9").code == 0);
  CHECK(slurp(dir + "/s4/snap_000000.ktz") != slurp(dir + "/s9/snap_000000.ktz"));

  const std::string env = dir + "/env";
  const std::string cmd = "KTZ_OUT_DIR=" + env + " " + std::string(KTZ_CLI) + " run --config " + cfg +
                          " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  CHECK(WIFEXITED(rc));
  CHECK(WEXITSTATUS(rc) == 0);
  CHECK(slurp(env + "/snap_000000.ktz") == slurp(dir + "/s4/snap_000000.ktz"));
}

TEST_CASE("cli divergence exits with 2") {
  const std::string dir = scratch_dir("cli_diverge");
  const std::string cfg = write_config(dir, "d.ini", R"(
[grid]
n = 16
size = 16
boundary = periodic
[params]
q = 1
alpha1 = -1
[run]
dt = 0.01
t_end = 5
blowup_threshold = 1e300
[spiral]
m = 0
amplitude = 1
core_width = 0.01
)");
  const Outcome o = ktz_cli("run --config " + cfg + " --out-dir " + dir + "/o");
  CHECK(o.code == 2);
  CHECK(o.out == "status Diverged\n");
}
