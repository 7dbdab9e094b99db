#include "ktz/ktz.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "ktz/app.hpp"
#include "ktz/error.hpp"
#include "ktz/io.hpp"

struct ktz_config {
  ktz::Config cfg;
};

struct ktz_field {
  ktz::VelocityField field;
};

namespace {

thread_local std::string g_last_error;

ktz_status map(ktz::ErrorCode code) {
  using ktz::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return KTZ_ERR_INVALID_ARGUMENT;
    case ErrorCode::Config: return KTZ_ERR_CONFIG;
    case ErrorCode::Io: return KTZ_ERR_IO;
    case ErrorCode::Format: return KTZ_ERR_FORMAT;
    case ErrorCode::StepUnstable: return KTZ_ERR_STEP_UNSTABLE;
    case ErrorCode::NonPeriodicGrid: return KTZ_ERR_NON_PERIODIC_GRID;
    case ErrorCode::SingularLoop: return KTZ_ERR_SINGULAR_LOOP;
    case ErrorCode::EmptyZone: return KTZ_ERR_EMPTY_ZONE;
    case ErrorCode::AmbiguousCore: return KTZ_ERR_AMBIGUOUS_CORE;
    case ErrorCode::NoPlateau: return KTZ_ERR_NO_PLATEAU;
    case ErrorCode::SolverFail: return KTZ_ERR_SOLVER_FAIL;
    case ErrorCode::NoDepression: return KTZ_ERR_NO_DEPRESSION;
  }
  return KTZ_ERR_INTERNAL;
}

template <typename F>
ktz_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return KTZ_OK;
  } catch (const ktz::Error& e) {
    g_last_error = e.what();
    return map(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return KTZ_ERR_INTERNAL;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (p == nullptr) {
    throw ktz::Error(ktz::ErrorCode::InvalidArgument, std::string(what) + " is null");
  }
}

ktz_run_status map(ktz::RunStatus s) {
  switch (s) {
    case ktz::RunStatus::Completed: return KTZ_RUN_COMPLETED;
    case ktz::RunStatus::BlowUp: return KTZ_RUN_BLOWUP;
    case ktz::RunStatus::Diverged: return KTZ_RUN_DIVERGED;
  }
  return KTZ_RUN_DIVERGED;
}

}  // namespace

extern "C" {

const char* ktz_last_error_message(void) { return g_last_error.c_str(); }

const char* ktz_status_name(ktz_status status) {
  switch (status) {
    case KTZ_OK: return "Ok";
    case KTZ_ERR_INTERNAL: return "Internal";
    default: break;
  }
  if (status > KTZ_OK && status < KTZ_ERR_INTERNAL) {
    return ktz::to_string(static_cast<ktz::ErrorCode>(status - 1));
  }
  return "Unknown";
}

const char* ktz_run_status_name(ktz_run_status status) {
  switch (status) {
    case KTZ_RUN_COMPLETED: return "Completed";
    case KTZ_RUN_BLOWUP: return "BlowUp";
    case KTZ_RUN_DIVERGED: return "Diverged";
  }
  return "Unknown";
}

void ktz_string_free(char* s) { std::free(s); }

ktz_status ktz_config_load(const char* path, ktz_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new ktz_config{ktz::load_config(path)};
  });
}

ktz_status ktz_config_parse(const char* text, ktz_config** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new ktz_config{ktz::parse_config(text)};
  });
}

void ktz_config_free(ktz_config* cfg) { delete cfg; }

ktz_status ktz_config_set_seed(ktz_config* cfg, uint64_t seed) {
  return guarded([&] {
    require(cfg, "config");
    cfg->cfg.run.seed = seed;
    cfg->cfg.spiral.seed = seed;
  });
}

ktz_status ktz_config_set_threads(ktz_config* cfg, int threads) {
  return guarded([&] {
    require(cfg, "config");
    if (threads < 1) {
      throw ktz::Error(ktz::ErrorCode::InvalidArgument, "threads must be at least 1");
    }
    cfg->cfg.run.threads = threads;
  });
}

ktz_status ktz_config_set_snapshot_every(ktz_config* cfg, double every) {
  return guarded([&] {
    require(cfg, "config");
    if (!(every > 0.0)) {
      throw ktz::Error(ktz::ErrorCode::InvalidArgument, "snapshot interval must be positive");
    }
    cfg->cfg.run.snapshot_every = every;
  });
}

const char* ktz_config_output_dir(const ktz_config* cfg) {
  if (cfg == nullptr || cfg->cfg.output.dir.empty()) return nullptr;
  return cfg->cfg.output.dir.c_str();
}

ktz_status ktz_classify(const ktz_config* cfg, char** text) {
  return guarded([&] {
    require(cfg, "config");
    require(text, "text");
    *text = dup(ktz::classify_command(cfg->cfg));
  });
}

ktz_status ktz_run(const ktz_config* cfg, const char* out_dir,
                   ktz_run_status* run_status) {
  return guarded([&] {
    require(cfg, "config");
    require(out_dir, "out_dir");
    const auto summary = ktz::run_command(cfg->cfg, out_dir);
    if (run_status) *run_status = map(summary.status);
  });
}

ktz_status ktz_stack(const ktz_config* cfg, const char* out_dir, size_t* diverged,
                     char** column) {
  return guarded([&] {
    require(cfg, "config");
    require(out_dir, "out_dir");
    const auto col = ktz::stack_command(cfg->cfg, out_dir);
    std::size_t bad = 0;
    for (const auto& l : col.per_layer) {
      bad += l.outcome.status == ktz::RunStatus::Diverged ? 1 : 0;
    }
    if (diverged) *diverged = bad;
    if (column) *column = dup(ktz::format_column(col));
  });
}

ktz_status ktz_analyze(const ktz_config* cfg, const char* in_dir,
                       const char* out_dir, char** report) {
  return guarded([&] {
    require(cfg, "config");
    require(in_dir, "in_dir");
    require(out_dir, "out_dir");
    const std::string latest = ktz::analyze_command(cfg->cfg, in_dir, out_dir);
    if (report) *report = dup(latest);
  });
}

ktz_status ktz_render(const ktz_config* cfg, const char* in_dir,
                      const char* out_dir, size_t* images) {
  return guarded([&] {
    require(cfg, "config");
    require(in_dir, "in_dir");
    require(out_dir, "out_dir");
    const std::size_t count = ktz::render_command(cfg->cfg, in_dir, out_dir);
    if (images) *images = count;
  });
}

ktz_status ktz_field_read(const char* path, ktz_field** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new ktz_field{ktz::read_snapshot(path)};
  });
}

ktz_status ktz_field_write(const ktz_field* field, const char* path) {
  return guarded([&] {
    require(field, "field");
    require(path, "path");
    ktz::write_snapshot(path, field->field);
  });
}

void ktz_field_free(ktz_field* field) { delete field; }

int ktz_field_n(const ktz_field* field) { return field ? field->field.grid.n : 0; }

double ktz_field_time(const ktz_field* field) { return field ? field->field.time : 0.0; }

double ktz_field_max_amplitude(const ktz_field* field) {
  return field ? field->field.max_amplitude() : 0.0;
}

ktz_status ktz_field_measure_charge(const ktz_field* field, double loop_radius,
                                    int* charge) {
  return guarded([&] {
    require(field, "field");
    require(charge, "charge");
    *charge = ktz::measure_charge(field->field, loop_radius);
  });
}

}  // extern "C"
