// Command-line front end. Talks to the library only through kinterp.h.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kinterp/kinterp.h"

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kInternal = 3 };

struct Options {
  int ppo = 64;
  double tmin = 1e-12;
  uint64_t seed = 7;
  std::string format = "text";
  size_t workers = 1;
  bool no_timestamp = false;
  std::vector<std::string> lattices;
  std::string config;
  std::string output;
};

struct CliError {
  int code;
  std::string msg;
};

void check(kinterp_status s) {
  if (s == KINTERP_OK) return;
  throw CliError{s == KINTERP_E_INTERNAL ? kInternal : kUsage, kinterp_last_error()};
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle(Handle&& o) noexcept : p(o.p) { o.p = nullptr; }
  ~Handle() { Free(p); }
};
using Report = Handle<kinterp_report, kinterp_report_free>;
using Config = Handle<kinterp_config, kinterp_config_free>;

std::string take(char* s) {
  std::string out(s);
  kinterp_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{kUsage, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw CliError{kUsage, "cannot write " + path};
  os << text;
}

// Fills every option the command line left unset from a JSON file whose keys
// are the long flag names.
void apply_config(CLI::App& app, Options& o) {
  if (o.config.empty()) return;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(o.config));
  } catch (const nlohmann::json::exception& e) {
    throw CliError{kUsage, "config " + o.config + ": " + e.what()};
  }
  auto unset = [&](const char* flag) { return app.get_option(flag)->count() == 0; };
  try {
    if (j.contains("grid-ppo") && unset("--grid-ppo")) o.ppo = j["grid-ppo"].get<int>();
    if (j.contains("tmin") && unset("--tmin")) o.tmin = j["tmin"].get<double>();
    if (j.contains("seed") && unset("--seed")) o.seed = j["seed"].get<uint64_t>();
    if (j.contains("format") && unset("--format")) o.format = j["format"].get<std::string>();
    if (j.contains("workers") && unset("--workers")) o.workers = j["workers"].get<size_t>();
    if (j.contains("no-timestamp") && unset("--no-timestamp")) o.no_timestamp = j["no-timestamp"].get<bool>();
    if (j.contains("lattice") && unset("--lattice")) {
      if (j["lattice"].is_string())
        o.lattices = {j["lattice"].get<std::string>()};
      else
        o.lattices = j["lattice"].get<std::vector<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw CliError{kUsage, "config " + o.config + ": " + e.what()};
  }
}

Config make_config(const Options& o) {
  Config c;
  check(kinterp_config_new(&c.p));
  check(kinterp_config_set_seed(c.p, o.seed));
  check(kinterp_config_set_grid(c.p, o.tmin, o.ppo));
  check(kinterp_config_set_workers(c.p, o.workers));
  check(kinterp_config_set_timestamp(c.p, o.no_timestamp ? 0 : 1));
  for (const auto& l : o.lattices) check(kinterp_config_add_lattice(c.p, l.c_str()));
  return c;
}

// ---------------------------------------------------------------- input data

struct Points {
  std::vector<double> t, v;
};

// CSV "t,value" (header optional), or a spec string "t^a*(1-ln t)^b"
// sampled at the nodes of the grid.
Points read_points(const std::string& input, const Options& o) {
  Points p;
  if (std::filesystem::exists(input)) {
    std::istringstream in(read_file(input));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      double a, b;
      char comma;
      std::istringstream ls(line);
      if (!(ls >> a >> comma >> b) || comma != ',') {
        if (p.t.empty()) continue;  // header
        throw CliError{kUsage, "bad line in " + input + ": " + line};
      }
      p.t.push_back(a);
      p.v.push_back(b);
    }
    if (p.t.empty()) throw CliError{kUsage, input + " holds no points"};
    return p;
  }
  double a = 0.0, b = 0.0;
  if (std::sscanf(input.c_str(), "t^%lf*(1-ln t)^%lf", &a, &b) != 2) {
    if (std::sscanf(input.c_str(), "t^%lf", &a) != 1)
      throw CliError{kUsage, "input '" + input + "' is neither a file nor a spec string t^a*(1-ln t)^b"};
  }
  double h = std::log(2.0) / o.ppo;
  int n = static_cast<int>(std::ceil(-std::log(o.tmin) / h));
  for (int k = n; k >= 0; --k) {
    double t = std::exp(-h * k);
    p.t.push_back(t);
    p.v.push_back(std::pow(t, a) * std::pow(1.0 - std::log(t), b));
  }
  return p;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// ---------------------------------------------------------------- commands

int cmd_suite(const Options& o, const std::vector<std::string>& names, const std::string& baselines, bool no_baselines,
              const std::string& update_baselines) {
  std::vector<std::string> todo = names;
  if (todo.size() == 1 && todo[0] == "all") {
    todo.clear();
    for (size_t i = 0; i < kinterp_suite_count(); ++i) todo.emplace_back(kinterp_suite_name(i));
  }
  Config cfg = make_config(o);
  bool writing = !update_baselines.empty();
  check(kinterp_config_set_baselines(cfg.p, baselines.empty() ? nullptr : baselines.c_str(),
                                     no_baselines || writing ? 0 : 1));
  std::vector<Report> reports(todo.size());
  for (size_t i = 0; i < todo.size(); ++i) check(kinterp_run_suite(todo[i].c_str(), cfg.p, &reports[i].p));
  std::vector<const kinterp_report*> raw;
  for (const auto& r : reports) raw.push_back(r.p);
  char* text = nullptr;
  check(kinterp_report_emit(raw.data(), raw.size(), o.format.c_str(), &text));
  write_output(o.output, take(text));
  if (writing) {
    check(kinterp_baseline_json(raw.data(), raw.size(), &text));
    write_output(update_baselines, take(text));
  }
  return kinterp_exit_code(raw.data(), raw.size());
}

int cmd_corpus(const Options& o, const std::string& dir, const std::string& families, size_t count) {
  check(kinterp_corpus_gen(o.seed, families.c_str(), count, o.tmin, o.ppo, dir.c_str()));
  return kPass;
}

struct NormArgs {
  std::string which, input;
  double theta = 0.5, q = 1.0, p = 2.0, alpha = 1.0, t = 0.5;
  std::string lattice = "t^-1*(1-ln t)^-1; q=1; domain=(0,1]";
};

int cmd_norm(const Options& o, const NormArgs& a) {
  std::vector<std::pair<std::string, double>> out;
  const std::string& w = a.which;
  if (w == "phi" || w == "lattice" || w == "extrap") {
    Points pts = read_points(a.input, o);
    Handle<kinterp_profile, kinterp_profile_free> K;
    check(kinterp_profile_new(pts.t.data(), pts.v.data(), pts.t.size(), &K.p));
    double v = 0.0;
    int div = 0;
    if (w == "phi") {
      check(kinterp_profile_norm(K.p, a.theta, a.q, 1, 0, &v));
      out.emplace_back("full", v);
      check(kinterp_profile_norm(K.p, a.theta, a.q, 1, 1, &v));
      out.emplace_back("restricted", v);
    } else if (w == "lattice") {
      check(kinterp_profile_lattice_norm(K.p, a.lattice.c_str(), o.tmin, o.ppo, &v, &div));
      out.emplace_back("norm", v);
      out.emplace_back("divergent", div);
    } else {
      check(kinterp_profile_extrap_norm(K.p, a.lattice.c_str(), a.q, o.tmin, o.ppo, &v, &div));
      out.emplace_back("norm", v);
      out.emplace_back("divergent", div);
    }
  } else if (w == "k" || w == "grand" || w == "fk" || w == "llogl") {
    Points pts = read_points(a.input, o);
    Handle<kinterp_function, kinterp_function_free> f;
    check(kinterp_function_new(pts.t.data(), pts.v.data(), pts.t.size(), &f.p));
    double v = 0.0;
    int div = 0;
    if (w == "k") {
      check(kinterp_function_k_lp(f.p, a.t, a.p, &v));
      out.emplace_back("K", v);
    } else if (w == "grand") {
      check(kinterp_function_grand_def(f.p, a.p, a.alpha, &v));
      out.emplace_back("norm", v);
    } else if (w == "fk") {
      check(kinterp_function_grand_fk(f.p, a.p, a.alpha, &v));
      out.emplace_back("norm", v);
    } else {
      check(kinterp_function_llogl(f.p, a.alpha, &v, &div));
      out.emplace_back("norm", v);
      out.emplace_back("divergent", div);
    }
  } else if (w == "schatten" || w == "matsaev") {
    Handle<kinterp_operator, kinterp_operator_free> M;
    if (a.input.rfind("volterra:", 0) == 0)
      check(kinterp_operator_volterra(std::stoul(a.input.substr(9)), &M.p));
    else
      check(kinterp_operator_parse(read_file(a.input).c_str(), &M.p));
    double v = 0.0;
    if (w == "schatten")
      check(kinterp_operator_schatten(M.p, a.p, &v));
    else
      check(kinterp_operator_matsaev(M.p, a.alpha, &v));
    out.emplace_back("norm", v);
  } else {
    throw CliError{kUsage, "unknown norm '" + w + "'"};
  }

  std::ostringstream os;
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["which"] = w;
    j["input"] = a.input;
    for (const auto& [k, v] : out) j[k] = std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(fmt(v));
    os << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    os << "norm,field,value\n";
    for (const auto& [k, v] : out) os << w << ',' << k << ',' << fmt(v) << '\n';
  } else if (o.format == "text" || o.format == "text-table") {
    for (const auto& [k, v] : out) os << w << ' ' << k << ' ' << fmt(v) << '\n';
  } else {
    throw CliError{kUsage, "unknown format '" + o.format + "'"};
  }
  write_output(o.output, os.str());
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-method interpolation and extrapolation norms, with verification suites"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--grid-ppo", o.ppo, "grid points per octave")->check(CLI::PositiveNumber);
  app.add_option("--tmin", o.tmin, "smallest grid node")->check(CLI::Range(1e-300, 1.0));
  app.add_option("--seed", o.seed, "corpus seed");
  app.add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text", "text-table"}));
  app.add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--no-timestamp", o.no_timestamp, "omit timestamps from reports");
  app.add_option("--lattice", o.lattices, "baseq lattice spec \"t^-a*(1-ln t)^-b; q=Q; domain=(0,1]\"");
  app.add_option("--config", o.config, "JSON file with the same keys as the long flags");
  app.add_option("-o,--output", o.output, "write the report here instead of stdout");

  auto* suite = app.add_subcommand("suite", "run verification suites");
  std::vector<std::string> names;
  std::string baselines, update;
  bool no_baselines = false;
  suite->add_option("name", names, "suite names, or 'all'")->required();
  suite->add_option("--baselines", baselines, "baseline file to compare windows against");
  suite->add_flag("--no-baselines", no_baselines, "skip the baseline comparison");
  suite->add_option("--update-baselines", update, "write the windows of this run as a baseline file");

  auto* corpus = app.add_subcommand("corpus", "corpus tools");
  auto* gen = corpus->add_subcommand("gen", "write the seeded corpus as CSV files");
  corpus->require_subcommand(1);
  corpus->fallthrough();
  std::string dir = "corpus", families;
  size_t count = 100;
  gen->add_option("--out", dir, "output directory");
  gen->add_option("--families", families, "comma separated families (default all)");
  gen->add_option("--count", count, "random members per family");

  auto* norm = app.add_subcommand("norm", "evaluate one norm on an input");
  NormArgs na;
  norm->add_option("which", na.which, "phi, lattice, extrap, k, grand, fk, llogl, schatten, matsaev")->required();
  norm->add_option("--input", na.input, "CSV file, spec string t^a*(1-ln t)^b, or volterra:N")->required();
  norm->add_option("--theta", na.theta);
  norm->add_option("--q", na.q, "inner exponent (inf allowed)");
  norm->add_option("--p", na.p);
  norm->add_option("--alpha", na.alpha);
  norm->add_option("--t", na.t, "argument of the K-functional");
  norm->add_option("--norm-lattice", na.lattice, "lattice spec for lattice and extrap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    apply_config(app, o);
    if (suite->parsed()) {
      for (const auto& n : names) {
        bool known = n == "all";
        for (size_t i = 0; i < kinterp_suite_count(); ++i) known = known || n == kinterp_suite_name(i);
        if (!known) throw CliError{kUsage, "unknown suite '" + n + "'"};
      }
      return cmd_suite(o, names, baselines, no_baselines, update);
    }
    if (gen->parsed()) return cmd_corpus(o, dir, families, count);
    return cmd_norm(o, na);
  } catch (const CliError& e) {
    std::cerr << "kinterp: " << e.msg << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "kinterp: " << e.what() << '\n';
    return kInternal;
  }
}
