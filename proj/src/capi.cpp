#include "kinterp/kinterp.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "kinterp/corpus.hpp"
#include "kinterp/extrapolate.hpp"
#include "kinterp/grand.hpp"
#include "kinterp/interpnorm.hpp"
#include "kinterp/kfunctional.hpp"
#include "kinterp/lattice.hpp"
#include "kinterp/report.hpp"
#include "kinterp/schatten.hpp"
#include "kinterp/suites.hpp"

struct kinterp_config {
  kinterp::SuiteConfig cfg;
};
struct kinterp_report {
  kinterp::VerificationReport r;
};
struct kinterp_profile {
  kinterp::QuasiConcaveProfile K;
};
struct kinterp_function {
  kinterp::StepRearrangement f;
};
struct kinterp_operator {
  kinterp::CompactOperator M;
};

namespace {

thread_local std::string g_last_error;

kinterp_status set_error(kinterp_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
kinterp_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return KINTERP_OK;
  } catch (const kinterp::Error& e) {
    return set_error(static_cast<kinterp_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(KINTERP_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(KINTERP_E_INTERNAL, e.what());
  }
}

void need(const void* p, const char* what) {
  if (!p) kinterp::fail(kinterp::ErrorCode::argument, std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<kinterp::VerificationReport> gather(const kinterp_report* const* reports, size_t n) {
  if (n > 0) need(reports, "reports");
  std::vector<kinterp::VerificationReport> rs;
  for (size_t i = 0; i < n; ++i) {
    need(reports[i], "report");
    rs.push_back(reports[i]->r);
  }
  return rs;
}

kinterp::LogGrid grid_of(double t_min, int ppo) {
  if (!(t_min > 0.0 && t_min < 1.0) || ppo < 1) kinterp::fail(kinterp::ErrorCode::argument, "grid settings out of range");
  return kinterp::LogGrid(t_min, ppo);
}

}  // namespace

extern "C" {

const char* kinterp_last_error(void) { return g_last_error.c_str(); }
const char* kinterp_version(void) { return "1.0.0"; }
void kinterp_string_free(char* s) { std::free(s); }

kinterp_status kinterp_config_new(kinterp_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new kinterp_config{};
  });
}

void kinterp_config_free(kinterp_config* cfg) { delete cfg; }

kinterp_status kinterp_config_set_seed(kinterp_config* cfg, uint64_t seed) {
  return guarded([&] {
    need(cfg, "config");
    cfg->cfg.seed = seed;
  });
}

kinterp_status kinterp_config_set_grid(kinterp_config* cfg, double t_min, int points_per_octave) {
  return guarded([&] {
    need(cfg, "config");
    grid_of(t_min, points_per_octave);
    cfg->cfg.t_min = t_min;
    cfg->cfg.ppo = points_per_octave;
  });
}

kinterp_status kinterp_config_set_workers(kinterp_config* cfg, size_t workers) {
  return guarded([&] {
    need(cfg, "config");
    cfg->cfg.workers = std::max<size_t>(1, workers);
  });
}

kinterp_status kinterp_config_set_timestamp(kinterp_config* cfg, int enabled) {
  return guarded([&] {
    need(cfg, "config");
    cfg->cfg.timestamp = enabled != 0;
  });
}

kinterp_status kinterp_config_add_lattice(kinterp_config* cfg, const char* spec) {
  return guarded([&] {
    need(cfg, "config");
    need(spec, "lattice spec");
    kinterp::LatticeParam::parse(spec);
    cfg->cfg.lattices.emplace_back(spec);
  });
}

kinterp_status kinterp_config_set_baselines(kinterp_config* cfg, const char* path, int enabled) {
  return guarded([&] {
    need(cfg, "config");
    cfg->cfg.baseline_file = path ? path : "";
    cfg->cfg.use_baselines = enabled != 0;
  });
}

size_t kinterp_suite_count(void) { return kinterp::suite_names().size(); }

const char* kinterp_suite_name(size_t i) {
  const auto& n = kinterp::suite_names();
  return i < n.size() ? n[i].c_str() : nullptr;
}

kinterp_status kinterp_run_suite(const char* name, const kinterp_config* cfg, kinterp_report** out) {
  return guarded([&] {
    need(name, "suite name");
    need(out, "out");
    kinterp::SuiteConfig c = cfg ? cfg->cfg : kinterp::SuiteConfig{};
    auto r = std::make_unique<kinterp_report>();
    r->r = kinterp::run_suite(name, c);
    *out = r.release();
  });
}

void kinterp_report_free(kinterp_report* r) { delete r; }

kinterp_status kinterp_report_result(const kinterp_report* r, kinterp_result* out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    *out = static_cast<kinterp_result>(r->r.status);
  });
}

kinterp_status kinterp_report_runtime(const kinterp_report* r, double* seconds) {
  return guarded([&] {
    need(r, "report");
    need(seconds, "out");
    *seconds = r->r.runtime;
  });
}

size_t kinterp_report_assertion_count(const kinterp_report* r) { return r ? r->r.assertions.size() : 0; }

kinterp_status kinterp_report_assertion(const kinterp_report* r, size_t i, const char** name, double* value,
                                        double* bound, int* pass) {
  return guarded([&] {
    need(r, "report");
    if (i >= r->r.assertions.size()) kinterp::fail(kinterp::ErrorCode::argument, "assertion index out of range");
    const auto& a = r->r.assertions[i];
    if (name) *name = a.name.c_str();
    if (value) *value = a.value;
    if (bound) *bound = a.bound;
    if (pass) *pass = a.pass ? 1 : 0;
  });
}

kinterp_status kinterp_report_emit(const kinterp_report* const* reports, size_t n, const char* format, char** out) {
  return guarded([&] {
    need(format, "format");
    need(out, "out");
    auto rs = gather(reports, n);
    *out = dup_string(kinterp::emit(rs, kinterp::parse_format(format)));
  });
}

kinterp_status kinterp_report_parse_json(const char* text, kinterp_report** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    auto r = std::make_unique<kinterp_report>();
    r->r = kinterp::parse_report_json(text);
    *out = r.release();
  });
}

kinterp_status kinterp_baseline_json(const kinterp_report* const* reports, size_t n, char** out) {
  return guarded([&] {
    need(out, "out");
    *out = dup_string(kinterp::baseline_json(gather(reports, n)));
  });
}

int kinterp_exit_code(const kinterp_report* const* reports, size_t n) {
  for (size_t i = 0; i < n; ++i)
    if (reports && reports[i] && reports[i]->r.status == kinterp::Status::fail) return 1;
  return 0;
}

kinterp_status kinterp_corpus_gen(uint64_t seed, const char* families, size_t count, double t_min, int points_per_octave,
                                  const char* dir) {
  return guarded([&] {
    need(dir, "dir");
    kinterp::CorpusSpec spec;
    spec.seed = seed;
    spec.count = count;
    grid_of(t_min, points_per_octave);
    spec.t_min = t_min;
    spec.ppo = points_per_octave;
    if (families && *families) {
      spec.families.clear();
      std::stringstream ss(families);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) spec.families.push_back(item);
    }
    kinterp::gen_corpus(spec, dir);
  });
}

kinterp_status kinterp_profile_new(const double* t, const double* k, size_t n, kinterp_profile** out) {
  return guarded([&] {
    need(t, "t");
    need(k, "k");
    need(out, "out");
    if (n == 0) kinterp::fail(kinterp::ErrorCode::argument, "empty profile");
    kinterp::QuasiConcaveProfile K(std::vector<double>(t, t + n), std::vector<double>(k, k + n));
    std::string why = K.defect(1e-10);
    if (!why.empty()) kinterp::fail(kinterp::ErrorCode::domain, "profile is not quasi-concave: " + why);
    *out = new kinterp_profile{std::move(K)};
  });
}

void kinterp_profile_free(kinterp_profile* p) { delete p; }

kinterp_status kinterp_profile_eval(const kinterp_profile* p, double t, double* out) {
  return guarded([&] {
    need(p, "profile");
    need(out, "out");
    *out = p->K(t);
  });
}

kinterp_status kinterp_profile_norm(const kinterp_profile* p, double theta, double q, int normalized, int restricted,
                                    double* out) {
  return guarded([&] {
    need(p, "profile");
    need(out, "out");
    if (!(theta > 0.0 && theta < 1.0) || !(q >= 1.0)) kinterp::fail(kinterp::ErrorCode::argument, "theta or q out of range");
    *out = kinterp::lp_norm_K(p->K, {theta, q}, normalized != 0, restricted != 0);
  });
}

kinterp_status kinterp_profile_lattice_norm(const kinterp_profile* p, const char* lattice, double t_min,
                                            int points_per_octave, double* out, int* divergent) {
  return guarded([&] {
    need(p, "profile");
    need(lattice, "lattice");
    need(out, "out");
    kinterp::LogGrid g = grid_of(t_min, points_per_octave);
    kinterp::NormResult n = kinterp::lattice_norm(p->K.sample(g), kinterp::LatticeParam::parse(lattice));
    *out = n.value;
    if (divergent) *divergent = n.divergent ? 1 : 0;
  });
}

kinterp_status kinterp_profile_extrap_norm(const kinterp_profile* p, const char* lattice, double q, double t_min,
                                           int points_per_octave, double* out, int* divergent) {
  return guarded([&] {
    need(p, "profile");
    need(lattice, "lattice");
    need(out, "out");
    if (!(q >= 1.0)) kinterp::fail(kinterp::ErrorCode::argument, "q must be >= 1");
    kinterp::LogGrid g = grid_of(t_min, points_per_octave);
    kinterp::NormResult n = kinterp::extrap_norm_K(kinterp::ProfileNorm(p->K), g, kinterp::LatticeParam::parse(lattice), q);
    *out = n.value;
    if (divergent) *divergent = n.divergent ? 1 : 0;
  });
}

kinterp_status kinterp_function_new(const double* t, const double* v, size_t n, kinterp_function** out) {
  return guarded([&] {
    need(t, "t");
    need(v, "v");
    need(out, "out");
    if (n == 0) kinterp::fail(kinterp::ErrorCode::argument, "empty function");
    std::vector<double> values, widths;
    for (size_t i = 0; i < n; ++i) {
      double a = t[i], b = i + 1 < n ? t[i + 1] : 1.0;
      if (!(a >= 0.0 && b > a && b <= 1.0)) kinterp::fail(kinterp::ErrorCode::argument, "cell edges must increase inside [0,1]");
      values.push_back(v[i]);
      widths.push_back(b - a);
    }
    *out = new kinterp_function{kinterp::rearrange_cells(values, widths)};
  });
}

void kinterp_function_free(kinterp_function* f) { delete f; }

kinterp_status kinterp_function_k_lp(const kinterp_function* f, double t, double p, double* out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = kinterp::k_Lp_Linf(t, p, f->f);
  });
}

kinterp_status kinterp_function_grand_def(const kinterp_function* f, double p, double alpha, double* out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = kinterp::grand_norm_def(f->f, kinterp::GrandParams(p, alpha));
  });
}

kinterp_status kinterp_function_grand_fk(const kinterp_function* f, double p, double alpha, double* out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = kinterp::grand_norm_fk(f->f, kinterp::GrandParams(p, alpha));
  });
}

kinterp_status kinterp_function_llogl(const kinterp_function* f, double alpha, double* out, int* divergent) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    kinterp::SideValue s = kinterp::llogl_alpha_norm(f->f, alpha);
    *out = s.value;
    if (divergent) *divergent = s.divergent ? 1 : 0;
  });
}

kinterp_status kinterp_operator_parse(const char* text, kinterp_operator** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new kinterp_operator{kinterp::CompactOperator::parse_csv(text)};
  });
}

kinterp_status kinterp_operator_volterra(size_t n, kinterp_operator** out) {
  return guarded([&] {
    need(out, "out");
    *out = new kinterp_operator{kinterp::volterra(n)};
  });
}

void kinterp_operator_free(kinterp_operator* m) { delete m; }

size_t kinterp_operator_dim(const kinterp_operator* m) { return m ? m->M.n() : 0; }

kinterp_status kinterp_operator_s_numbers(const kinterp_operator* m, double* out, size_t cap, size_t* count) {
  return guarded([&] {
    need(m, "operator");
    const auto& s = m->M.s();
    if (count) *count = s.size();
    if (cap > 0) need(out, "out");
    std::copy_n(s.begin(), std::min(cap, s.size()), out);
  });
}

kinterp_status kinterp_operator_schatten(const kinterp_operator* m, double p, double* out) {
  return guarded([&] {
    need(m, "operator");
    need(out, "out");
    *out = kinterp::schatten_norm(m->M, p);
  });
}

kinterp_status kinterp_operator_matsaev(const kinterp_operator* m, double alpha, double* out) {
  return guarded([&] {
    need(m, "operator");
    need(out, "out");
    *out = kinterp::matsaev_norm(m->M, alpha);
  });
}

}  // extern "C"
