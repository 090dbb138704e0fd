#include "kinterp/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "kinterp/schatten.hpp"

namespace kinterp {

namespace {

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

QuasiConcaveProfile power_log_profile(const LogGrid& g, double gam, double del) {
  auto f = SampledFunction::from(
      g, [=](double t) { return std::pow(t, gam) * std::pow(1.0 - std::log(t), del); }, Measure::ds_over_s);
  return QuasiConcaveProfile::from_samples(f);
}

QuasiConcaveProfile random_profile(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pieces(1, 8);
  std::uniform_real_distribution<double> logt(std::log(1e-8), 0.0);
  std::lognormal_distribution<double> slope(0.0, 2.0);
  int m = pieces(rng);
  std::vector<double> t(static_cast<std::size_t>(m));
  for (auto& x : t) x = std::exp(logt(rng));
  t.back() = 1.0;
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  std::vector<double> s(t.size());
  for (auto& x : s) x = slope(rng);
  std::sort(s.begin(), s.end(), std::greater<>());
  std::vector<double> k(t.size());
  double prev_t = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    acc += s[i] * (t[i] - prev_t);
    k[i] = acc;
    prev_t = t[i];
  }
  double top = k.back();
  for (auto& x : k) x /= top;
  return QuasiConcaveProfile(std::move(t), std::move(k));
}

// int_0^t (1 - ln s)^d ds
double log_power_head(double t, double d) { return std::exp(1.0) * boost::math::tgamma(d + 1.0, 1.0 - std::log(t)); }

std::string csv_number(double x) { return fmt("%.17g", x); }

}  // namespace

std::vector<NamedProfile> conv0_canonical() {
  std::vector<NamedProfile> out;
  LogGrid probe(1e-12, 16);
  for (double gam : {0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.75, 1.0})
    for (double del : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0}) {
      if (!power_log_profile(probe, gam, del).valid(1e-10)) continue;
      out.push_back({"canon:g=" + fmt("%.4g", gam) + ",d=" + fmt("%.4g", del),
                     [gam, del](const LogGrid& g) { return power_log_profile(g, gam, del); }, gam});
    }
  return out;
}

std::vector<NamedProfile> conv0_random(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<NamedProfile> out;
  for (std::size_t i = 0; i < n; ++i) {
    QuasiConcaveProfile K = random_profile(rng);
    char id[32];
    std::snprintf(id, sizeof id, "rand:%03zu", i);
    out.push_back({id, [K](const LogGrid&) { return K; }});
  }
  return out;
}

std::vector<NamedProfile> conv0_corpus(std::size_t n_random, std::uint64_t seed) {
  auto out = conv0_canonical();
  auto r = conv0_random(n_random, seed);
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

std::vector<NamedProfile> steep_family(int jmax) {
  std::vector<NamedProfile> out;
  for (int j = 1; j <= jmax; ++j) {
    double b = std::ldexp(1.0, -j);
    char id[32];
    std::snprintf(id, sizeof id, "steep:j=%02d", j);
    out.push_back({id, [b](const LogGrid&) { return QuasiConcaveProfile({b}, {1.0}); }});
  }
  return out;
}

std::vector<SampledFunction> lattice_corpus(const LogGrid& g, std::size_t n_random, std::uint64_t seed) {
  std::vector<SampledFunction> out;
  for (double gam : {0.0, 0.5, 1.0})
    for (double del : {-2.0, -1.0, 0.0, 1.0, 2.0})
      out.push_back(SampledFunction::from(
          g, [=](double t) { return std::pow(t, gam) * std::pow(1.0 - std::log(t), del); }, Measure::ds_over_s));
  for (const auto& p : conv0_random(n_random, seed)) out.push_back(p.make(g).sample(g));
  return out;
}

std::vector<NamedRearrangement> rearrangement_corpus(double max_power, std::size_t n_random, std::uint64_t seed) {
  std::vector<NamedRearrangement> out;
  for (double b : {0.0, 0.125, 0.2, 0.25, 1.0 / 3.0, 0.5, 0.75}) {
    if (!(b < max_power)) continue;
    out.push_back({"power:b=" + fmt("%.4g", b), "power", [b](const LogGrid& g) {
                     if (b == 0.0) return StepRearrangement({0.0, 1.0}, {1.0});
                     auto f = SampledFunction::from(g, [b](double s) { return std::pow(s, -b); }, Measure::ds);
                     double tN = g.node(g.last());
                     return rearrange(f, std::pow(tN, 1.0 - b) / (1.0 - b));
                   }});
  }
  for (double d : {0.5, 1.0, 2.0}) {
    out.push_back({"logpow:d=" + fmt("%.4g", d), "log-power", [d](const LogGrid& g) {
                     auto f = SampledFunction::from(g, [d](double s) { return std::pow(1.0 - std::log(s), d); }, Measure::ds);
                     return rearrange(f, log_power_head(g.node(g.last()), d));
                   }});
  }
  for (double c : {1.0, 0.5, std::exp(-1.0), 0.1, 1e-3}) {
    out.push_back({"step:c=" + fmt("%.4g", c), "step", [c](const LogGrid&) { return StepRearrangement({0.0, c}, {1.0}); }});
  }
  out.push_back({"step:two-level", "step", [](const LogGrid&) { return StepRearrangement({0.0, 0.1, 0.6}, {2.0, 1.0}); }});
  auto rp = conv0_random(n_random, seed ^ 0x5bd1e995ULL);
  for (std::size_t i = 0; i < rp.size(); ++i) {
    QuasiConcaveProfile K = rp[i].make(LogGrid());
    StepRearrangement f = realize_conv0(K);
    char id[32];
    std::snprintf(id, sizeof id, "rconc:%03zu", i);
    out.push_back({id, "random-concave", [f](const LogGrid&) { return f; }});
  }
  return out;
}

std::vector<NamedSequence> sequence_corpus(std::size_t n_random, std::uint64_t seed) {
  std::vector<NamedSequence> out;
  for (double beta : {0.5, 1.0, 2.0}) {
    std::vector<double> a(64);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = std::pow(static_cast<double>(j + 1), -beta);
    out.push_back({"seq:pow=" + fmt("%.4g", beta), SequenceData(std::move(a))});
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(1, 64);
  std::lognormal_distribution<double> val(0.0, 1.5);
  for (std::size_t i = 0; i < n_random; ++i) {
    std::vector<double> a(static_cast<std::size_t>(len(rng)));
    for (auto& x : a) x = val(rng);
    char id[32];
    std::snprintf(id, sizeof id, "seq:%03zu", i);
    out.push_back({id, SequenceData::rearranged(std::move(a))});
  }
  return out;
}

std::vector<VectorValuedInstance> pisier_corpus(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> atoms(1, 8), steps(1, 16);
  std::uniform_real_distribution<double> mu(0.1, 1.0), len(0.02, 0.5);
  std::lognormal_distribution<double> lev(0.0, 1.0);
  std::vector<VectorValuedInstance> out;
  for (std::size_t i = 0; i < n; ++i) {
    VectorValuedInstance inst;
    int m = atoms(rng);
    for (int w = 0; w < m; ++w) {
      Atom a;
      a.mu = mu(rng);
      int s = steps(rng);
      for (int j = 0; j < s; ++j) {
        a.levels.push_back(lev(rng));
        a.lengths.push_back(len(rng));
      }
      std::sort(a.levels.begin(), a.levels.end(), std::greater<>());
      inst.atoms.push_back(std::move(a));
    }
    inst.validate();
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<std::string> gen_corpus(const CorpusSpec& spec, const std::string& dir) {
  static const std::vector<std::string> known{"power", "log-power", "step", "random-concave", "sequence", "operator"};
  for (const auto& f : spec.families)
    if (std::find(known.begin(), known.end(), f) == known.end()) fail(ErrorCode::usage, "unknown corpus family '" + f + "'");
  std::filesystem::create_directories(dir);
  LogGrid g(spec.t_min, spec.ppo);
  std::vector<std::string> written;
  auto open = [&](const std::string& name) {
    std::string path = (std::filesystem::path(dir) / name).string();
    std::ofstream os(path);
    if (!os) fail(ErrorCode::io, "cannot write " + path);
    written.push_back(name);
    return os;
  };
  auto has = [&](const char* f) { return std::find(spec.families.begin(), spec.families.end(), f) != spec.families.end(); };

  auto rc = rearrangement_corpus(1.0, spec.count, spec.seed);
  for (const char* fam : {"power", "log-power", "step", "random-concave"}) {
    if (!has(fam)) continue;
    std::ofstream os = open(std::string(fam) + ".csv");
    os << "id,s,level\n";
    for (const auto& r : rc) {
      if (r.family != fam) continue;
      StepRearrangement f = r.make(g);
      QuasiConcaveProfile K = [&] {
        std::vector<double> t(f.breakpoints().begin() + 1, f.breakpoints().end()), k(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) k[i] = f.integral(t[i]);
        return QuasiConcaveProfile(std::move(t), std::move(k));
      }();
      std::string why = K.defect(1e-10);
      if (!why.empty()) fail(ErrorCode::internal, "corpus member " + r.id + " is not concave: " + why);
      for (std::size_t i = 0; i < f.segments(); ++i)
        os << r.id << ',' << csv_number(f.breakpoints()[i]) << ',' << csv_number(f.levels()[i]) << '\n';
    }
  }
  if (has("random-concave")) {
    std::ofstream os = open("profiles.csv");
    os << "id,t,K\n";
    for (const auto& p : conv0_corpus(spec.count, spec.seed)) {
      QuasiConcaveProfile K = p.make(g);
      std::string why = K.defect(1e-10);
      if (!why.empty()) fail(ErrorCode::internal, "profile " + p.id + " is not concave: " + why);
      for (std::size_t i = 0; i < K.size(); ++i)
        os << p.id << ',' << csv_number(K.breakpoints()[i]) << ',' << csv_number(K.values()[i]) << '\n';
    }
  }
  if (has("sequence")) {
    std::ofstream os = open("sequence.csv");
    os << "id,j,a\n";
    for (const auto& s : sequence_corpus(spec.count, spec.seed))
      for (std::size_t j = 0; j < s.a.size(); ++j) os << s.id << ',' << j + 1 << ',' << csv_number(s.a.values()[j]) << '\n';
  }
  if (has("operator")) {
    std::ofstream os = open("operator.csv");
    os << "id,i,j,re,im\n";
    std::mt19937_64 rng(spec.seed);
    for (int k = 0; k < 4; ++k) {
      std::size_t n = 8;
      CompactOperator M = CompactOperator::random_gaussian(n, rng());
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          os << "gauss:" << k << ',' << i << ',' << j << ',' << csv_number(M(i, j).real()) << ','
             << csv_number(M(i, j).imag()) << '\n';
    }
  }
  return written;
}

}  // namespace kinterp
