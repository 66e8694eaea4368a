#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tsys {

// Every tolerance the checks use; defaults are the documented ones.
struct Tolerances {
  double wall_eps = 1e-9;      // ties on cell walls
  double optimizer = 1e-7;     // slice / maximizer acceptance
  double oracle = 1e-9;        // closed form vs holonomy / enumeration
  double group = 1e-8;         // modular invariance
  double bound = 1e-9;         // slack on the global systole bound
  double near_max = 1e-3;      // "approaches the bound"
  double fd_abs = 1e-6;        // differential vs finite differences:
  double fd_rel = 1e-4;        //   max(fd_abs, fd_rel |d|)
  double eutaxy_slack = 1e-10; // strict interiority of convex weights
};

enum class Level { Fast, Full };

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// ids 1..9; only != 0 runs that single check
std::vector<CheckResult> run_acceptance(Level level, const Tolerances& tol, std::uint64_t seed = 1, int only = 0);

}  // namespace tsys
