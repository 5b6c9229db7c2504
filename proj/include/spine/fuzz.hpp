#pragma once

#include "spine/coords.hpp"
#include "spine/paths.hpp"
#include "spine/ribbon.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spine {

struct GraphBounds {
  int max_genus = 2;
  int max_holes = 5;  // s = sh + so
  int max_cusps = 4;
};

// Random spine: a vertex census is drawn, then half-edges are paired at
// random and the result is kept only if it validates.
FatGraph random_graph(Rng& rng, const GraphBounds& b = {});

// Point with rational half-exponentials t in [1/4, 4] and rational loop
// weights in [2, 6].
CoordinatePoint random_exact_point(const FatGraph& g, Rng& rng);

// Canonical form used to compare graphs up to relabelling of half-edges:
// sorted list of per-vertex cyclic edge-name words (minimal rotation).
std::string graph_signature(const FatGraph& g);

std::uint64_t trial_seed(std::uint64_t seed, int trial);

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s{"monomiality", "positivity", "involution", "ptolemy", "roundtrip",
                                          "center",      "proportionality", "inversion", "invariance", "windows"};
  return s;
}

struct FuzzConfig {
  std::uint64_t seed = 1;
  int trials = 100;
  std::optional<int> only_trial;
  double tolerance = 1e-9;
  std::vector<std::string> suites = all_suites();
  GraphBounds bounds;
  int arcs_per_graph = 5;
  int closed_per_graph = 2;
};

struct SuiteResult {
  std::string name;
  long checked = 0;
  long failures = 0;
  std::vector<std::string> counterexamples;
  std::map<std::string, long> tally;  // tabulated values (kappa, c, ...)
};

struct FuzzReport {
  FuzzConfig config;
  std::vector<SuiteResult> suites;
  bool ok() const;
  std::string text() const;
  std::string tsv() const;
};

FuzzReport run_fuzz(const FuzzConfig& cfg);

}  // namespace spine
