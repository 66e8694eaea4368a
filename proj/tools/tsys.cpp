// Command-line front end: reduce | lengths | systole | classify | verify | scan | slice
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <mutex>
#include <optional>
#include <random>
#include <map>
#include <array>

#include "CLI11.hpp"
#include "json.hpp"
#include "tsys/acceptance.hpp"
#include "tsys/curves.hpp"
#include "tsys/modular.hpp"
#include "tsys/systole.hpp"

using json = nlohmann::json;
using namespace tsys;

namespace {

enum Exit { Ok = 0, CheckFailed = 1, Usage = 2, Io = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- config -------------------------------------------------------------

struct Range {
  double min = 0, max = 0, step = 1;
};

struct ScanConfig {
  Range theta{0, 0.5, 0.05}, x{1.1, 5, 0.1}, z{1.1, 5, 0.1};
  long random = 0;  // > 0: random samples instead of the grid
  std::uint64_t seed = 1;
  std::string out;
};

struct Config {
  Tolerances tol;
  ScanConfig scan;
};

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw UsageError("config: '" + key + "' must be a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw UsageError("config: '" + key + "' must be finite");
  return v;
}

Range range(const json& j, const std::string& key, Range r) {
  if (!j.is_object()) throw UsageError("config: '" + key + "' must be an object {min, max, step}");
  for (auto& [k, v] : j.items()) {
    if (k == "min") r.min = number(v, key + ".min");
    else if (k == "max") r.max = number(v, key + ".max");
    else if (k == "step") r.step = number(v, key + ".step");
    else throw UsageError("config: unknown key '" + key + "." + k + "'");
  }
  if (!(r.step > 0)) throw UsageError("config: '" + key + ".step' must be positive");
  return r;
}

Config load_config(const std::string& path) {
  Config c;
  if (path.empty()) return c;
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config: top level must be an object");
  for (auto& [k, v] : j.items()) {
    if (k == "tolerances") {
      if (!v.is_object()) throw UsageError("config: 'tolerances' must be an object");
      std::map<std::string, double*> slots{{"wall_eps", &c.tol.wall_eps},   {"optimizer", &c.tol.optimizer},
                                           {"oracle", &c.tol.oracle},       {"group", &c.tol.group},
                                           {"bound", &c.tol.bound},         {"near_max", &c.tol.near_max},
                                           {"fd_abs", &c.tol.fd_abs},       {"fd_rel", &c.tol.fd_rel},
                                           {"eutaxy_slack", &c.tol.eutaxy_slack}};
      for (auto& [name, val] : v.items()) {
        auto it = slots.find(name);
        if (it == slots.end()) throw UsageError("config: unknown tolerance '" + name + "'");
        double d = number(val, name);
        if (!(d > 0)) throw UsageError("config: tolerance '" + name + "' must be positive");
        *it->second = d;
      }
    } else if (k == "scan") {
      if (!v.is_object()) throw UsageError("config: 'scan' must be an object");
      for (auto& [name, val] : v.items()) {
        if (name == "theta") c.scan.theta = range(val, "scan.theta", c.scan.theta);
        else if (name == "x") c.scan.x = range(val, "scan.x", c.scan.x);
        else if (name == "z") c.scan.z = range(val, "scan.z", c.scan.z);
        else if (name == "random") {
          if (!val.is_number_integer() || val.get<long>() < 0)
            throw UsageError("config: 'scan.random' must be a nonnegative integer");
          c.scan.random = val.get<long>();
        } else if (name == "seed") {
          if (!val.is_number_unsigned()) throw UsageError("config: 'scan.seed' must be a nonnegative integer");
          c.scan.seed = val.get<std::uint64_t>();
        } else if (name == "out") {
          if (!val.is_string()) throw UsageError("config: 'scan.out' must be a string");
          c.scan.out = val.get<std::string>();
        } else {
          throw UsageError("config: unknown key 'scan." + name + "'");
        }
      }
    } else {
      throw UsageError("config: unknown section '" + k + "'");
    }
  }
  return c;
}

// ---- output helpers -----------------------------------------------------

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw IoError("cannot write " + out);
  f << text;
  if (!f) throw IoError("write failed: " + out);
}

std::string g17(double v) {
  char b[64];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

json classes_json(const std::vector<GeodesicClass>& cs) {
  json a = json::array();
  for (auto& c : cs) a.push_back(c.str());
  return a;
}

std::string classes_text(const std::vector<GeodesicClass>& cs) {
  std::string s;
  for (auto& c : cs) s += (s.empty() ? "" : " ") + c.str();
  return s;
}

SurfacePoint checked_point(double th, double l1, double lx) {
  if (!std::isfinite(th) || !(l1 > 0) || !(lx > 0) || !std::isfinite(l1) || !std::isfinite(lx))
    throw UsageError("need finite --theta and positive --l1, --lx");
  return {th, l1, lx};
}

// ---- subcommands --------------------------------------------------------

struct PointArgs {
  double theta = NAN, l1 = NAN, lx = NAN;
  void add(CLI::App* s) {
    s->add_option("--theta", theta, "twist theta1 (full turn = 1)")->required();
    s->add_option("--l1", l1, "length of gamma1")->required();
    s->add_option("--lx", lx, "length of the ovale")->required();
  }
  SurfacePoint get() const { return checked_point(theta, l1, lx); }
};

std::string cmd_reduce(const SurfacePoint& p, double eps, bool as_json) {
  Reduction r = reduce(p, eps);
  CellId cell = classify_cell(r.point, eps);
  SystoleResult s = systole(p, eps);
  if (as_json) {
    json j{{"input", {p.theta1, p.l1, p.lX}},
           {"reduced", {{"theta1", r.point.theta1}, {"l1", r.point.l1}, {"lX", r.point.lX}}},
           {"matrix", {{r.g.a, r.g.b}, {r.g.c, r.g.d}}},
           {"word", r.g.word},
           {"cell", to_string(cell)},
           {"systole", s.value},
           {"cosh_systole", std::cosh(s.value)},
           {"systoles", classes_json(s.classes)}};
    return j.dump(2) + "\n";
  }
  std::ostringstream o;
  o.precision(12);
  o << "reduced  theta1=" << r.point.theta1 << " l1=" << r.point.l1 << " lX=" << r.point.lX << "\n"
    << "matrix   " << r.g.str() << "  word=" << (r.g.word.empty() ? "1" : r.g.word) << "\n"
    << "cell     " << to_string(cell) << "\n"
    << "systole  " << s.value << "  cosh=" << std::cosh(s.value) << "\n"
    << "realized " << classes_text(s.classes) << " (" << s.classes.size() << ")\n";
  return o.str();
}

std::string cmd_lengths(const SurfacePoint& p, double max_len, bool as_json) {
  if (!(max_len > 0)) max_len = 2 * systole(p).value;
  auto c = candidate_geodesics(max_len, p);
  if (as_json) {
    json a = json::array();
    for (auto& [g, l] : c) a.push_back({{"class", g.str()}, {"length", l}});
    return json{{"max_len", max_len}, {"geodesics", a}}.dump(2) + "\n";
  }
  std::ostringstream o;
  o.precision(12);
  for (auto& [g, l] : c) o << g.str() << "\t" << l << "\n";
  return o.str();
}

std::string cmd_systole(const SurfacePoint& p, double eps, bool as_json) {
  auto s = systole(p, eps), so = orientable_systole(p, eps), sn = nonorientable_systole(p, eps);
  double s2 = k_systole(p, 2), s3 = k_systole(p, 3);
  if (as_json) {
    json j{{"systole", {{"value", s.value}, {"classes", classes_json(s.classes)}}},
           {"orientable", {{"value", so.value}, {"classes", classes_json(so.classes)}}},
           {"nonorientable", {{"value", sn.value}, {"classes", classes_json(sn.classes)}}},
           {"2-systole", s2},
           {"3-systole", s3}};
    return j.dump(2) + "\n";
  }
  std::ostringstream o;
  o.precision(12);
  o << "systole        " << s.value << "  " << classes_text(s.classes) << "\n"
    << "orientable     " << so.value << "  " << classes_text(so.classes) << "\n"
    << "nonorientable  " << sn.value << "  " << classes_text(sn.classes) << "\n"
    << "2-systole      " << s2 << "\n"
    << "3-systole      " << s3 << "\n";
  return o.str();
}

std::string cmd_classify(const SurfacePoint& p, double eps, bool as_json) {
  if (!in_domain(p, eps)) throw UsageError("point is not in the fundamental domain; run 'reduce' first");
  CellId c = classify_cell(p, eps);
  if (as_json) return json{{"cell", to_string(c)}, {"systoles", classes_json(cell_systoles(c))}}.dump(2) + "\n";
  return to_string(c) + "  " + classes_text(cell_systoles(c)) + "\n";
}

std::string cmd_slice(const std::string& kind, double b1, double b2, bool as_json) {
  SliceSpec s;
  if (kind == "torus") s.kind = SliceSpec::Torus;
  else if (kind == "klein") s.kind = SliceSpec::Klein;
  else if (kind == "pp") s.kind = SliceSpec::ProjectivePlane;
  else throw UsageError("unknown slice kind '" + kind + "' (torus | klein | pp)");
  if (!(b1 > 0) || (s.kind == SliceSpec::ProjectivePlane && !(b2 > 0)))
    throw UsageError("boundary lengths must be positive (pp needs --b2)");
  s.b1 = b1, s.b2 = b2;
  SliceResult r = slice_extremum(s);
  const char* what = s.kind == SliceSpec::Torus ? "cosh(s/2)" : "cosh(s)";
  if (as_json) {
    json j{{"kind", kind},
           {"maximizer", {{"theta1", r.point.theta1}, {"l1", r.point.l1}, {"lX", r.point.lX}}},
           {"systole", r.systole},
           {"closed_form_systole", r.closed_form},
           {"quantity", what},
           {"optimized", r.formula_opt},
           {"closed_form", r.formula_pred},
           {"difference", r.formula_opt - r.formula_pred}};
    return j.dump(2) + "\n";
  }
  std::ostringstream o;
  o.precision(12);
  o << "maximizer    theta1=" << r.point.theta1 << " l1=" << r.point.l1 << " lX=" << r.point.lX << "\n"
    << "systole      " << r.systole << " (closed form " << r.closed_form << ")\n"
    << what << "  optimized " << r.formula_opt << "  closed form " << r.formula_pred
    << "  difference " << r.formula_opt - r.formula_pred << "\n";
  return o.str();
}

int cmd_verify(Level lv, const Tolerances& tol, std::uint64_t seed, int only, const std::string& out) {
  auto res = run_acceptance(lv, tol, seed, only);
  json checks = json::array();
  bool all = !res.empty();
  for (auto& r : res) {
    checks.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
    all = all && r.pass;
    std::fprintf(stderr, "[%s] %d %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str());
  }
  json report{{"level", lv == Level::Full ? "full" : "fast"}, {"seed", seed}, {"pass", all}, {"checks", checks}};
  emit(report.dump(2) + "\n", out);
  return all ? Ok : CheckFailed;
}

std::vector<double> axis(const Range& r) {
  std::vector<double> v;
  for (long i = 0;; ++i) {
    double x = r.min + i * r.step;
    if (x > r.max + 1e-9 * r.step) break;
    v.push_back(x);
  }
  return v;
}

std::string scan_row(double th, double x, double z, double eps) {
  SurfacePoint p{th, 2 * std::acosh(std::sqrt(x)), 2 * std::acosh(std::sqrt(z))};
  Reduction r = reduce(p, eps);
  std::string cell = to_string(classify_cell(r.point, eps));
  double s = systole(p, eps).value, so = orientable_systole(p, eps).value;
  double sn = nonorientable_systole(p, eps).value, s2 = k_systole(p, 2);
  return g17(th) + "," + g17(x) + "," + g17(z) + "," + g17(p.l1) + "," + g17(p.lX) + "," + cell + "," + g17(s) + "," +
         g17(so) + "," + g17(sn) + "," + g17(s2) + "\n";
}

int cmd_scan(const ScanConfig& sc, double eps, unsigned threads) {
  std::vector<std::array<double, 3>> pts;
  if (sc.random > 0) {
    std::mt19937_64 rng(sc.seed);
    auto u = [&](const Range& r) { return std::uniform_real_distribution<double>(r.min, r.max)(rng); };
    for (long i = 0; i < sc.random; ++i) {
      double th = u(sc.theta), x = u(sc.x), z = u(sc.z);
      pts.push_back({th, x, z});
    }
  } else {
    for (double th : axis(sc.theta))
      for (double x : axis(sc.x))
        for (double z : axis(sc.z)) pts.push_back({th, x, z});
  }
  for (auto& p : pts)
    if (!(p[1] > 1) || !(p[2] > 1)) throw UsageError("scan needs x > 1 and z > 1");
  // open the output before computing, so a bad path fails fast
  std::ofstream f;
  if (!sc.out.empty()) {
    f.open(sc.out, std::ios::binary);
    if (!f) throw IoError("cannot write " + sc.out);
  }
  std::vector<std::string> rows(pts.size());
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::string err;
  std::mutex m;
  auto work = [&] {
    for (size_t i; (i = next++) < pts.size();) {
      try {
        rows[i] = scan_row(pts[i][0], pts[i][1], pts[i][2], eps);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lk(m);
        failed = true;
        err = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(pts.size())));
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failed) throw std::runtime_error("scan: " + err);
  std::ostream& o = sc.out.empty() ? std::cout : f;
  o << "theta1,x,z,l1,lX,cell,systole,sys_or,sys_nonor,sys2\n";
  for (auto& r : rows) o << r;
  o.flush();
  if (!o) throw IoError("write failed");
  // the 3-systole has no finite supremum (it blows up as lX -> 0)
  std::fprintf(stderr, "%zu rows; sup of the 3-systole over all surfaces: Unbounded\n", rows.size());
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Systoles of non-orientable genus-3 hyperbolic surfaces"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  std::string config_path, out;
  double eps = NAN;
  bool as_json = false;
  app.add_option("--config", config_path, "JSON config: {\"tolerances\": {...}, \"scan\": {...}}");
  app.add_option("--eps", eps, "tie tolerance on cell walls (overrides config)");
  app.add_option("--out", out, "write output here instead of stdout");
  app.add_flag("--json", as_json, "JSON output");

  PointArgs pr, pl, ps, pc;
  auto* reduce_cmd = app.add_subcommand("reduce", "reduce to the fundamental domain; cell and systole");
  pr.add(reduce_cmd);
  auto* lengths_cmd = app.add_subcommand("lengths", "simple closed geodesics up to a length");
  pl.add(lengths_cmd);
  double max_len = 0;
  lengths_cmd->add_option("--max", max_len, "length cutoff (default: twice the systole)");
  auto* systole_cmd = app.add_subcommand("systole", "systole, orientable/nonorientable systoles, k-systoles");
  ps.add(systole_cmd);
  auto* classify_cmd = app.add_subcommand("classify", "cell of a point of the fundamental domain");
  pc.add(classify_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance checks");
  std::string level = "fast";
  std::uint64_t seed = 1;
  int only = 0;
  verify_cmd->add_option("--level", level, "fast | full")->check(CLI::IsMember({"fast", "full"}));
  verify_cmd->add_option("--seed", seed, "random seed");
  verify_cmd->add_option("--only", only, "run a single check (1-9)")->check(CLI::Range(0, 9));

  auto* scan_cmd = app.add_subcommand("scan", "CSV over a grid or random sample of (theta1, x, z)");
  std::optional<std::uint64_t> scan_seed;
  std::optional<long> scan_random;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  scan_cmd->add_option("--seed", scan_seed, "seed for random sampling");
  scan_cmd->add_option("--random", scan_random, "random sample count (0: grid)");
  scan_cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  auto* slice_cmd = app.add_subcommand("slice", "systole-maximal point on a bordered slice");
  std::string kind;
  double b1 = NAN, b2 = NAN;
  slice_cmd->add_option("kind", kind, "torus | klein | pp")->required();
  slice_cmd->add_option("--b1", b1, "first boundary length")->required();
  slice_cmd->add_option("--b2", b2, "second boundary length (pp)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? Ok : Usage;
  }

  try {
    Config cfg = load_config(config_path);
    if (!std::isnan(eps)) {
      if (!(eps > 0)) throw UsageError("--eps must be positive");
      cfg.tol.wall_eps = eps;
    }
    double e = cfg.tol.wall_eps;
    if (*reduce_cmd) emit(cmd_reduce(pr.get(), e, as_json), out);
    else if (*lengths_cmd) emit(cmd_lengths(pl.get(), max_len, as_json), out);
    else if (*systole_cmd) emit(cmd_systole(ps.get(), e, as_json), out);
    else if (*classify_cmd) emit(cmd_classify(pc.get(), e, as_json), out);
    else if (*slice_cmd) emit(cmd_slice(kind, b1, b2, as_json), out);
    else if (*verify_cmd) return cmd_verify(level == "full" ? Level::Full : Level::Fast, cfg.tol, seed, only, out);
    else if (*scan_cmd) {
      ScanConfig sc = cfg.scan;
      if (scan_seed) sc.seed = *scan_seed;
      if (scan_random) sc.random = *scan_random;
      if (!out.empty()) sc.out = out;
      return cmd_scan(sc, e, threads);
    }
    return Ok;
  } catch (const UsageError& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return Usage;
  } catch (const IoError& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return Io;
  } catch (const std::invalid_argument& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return Usage;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return CheckFailed;
  }
}
