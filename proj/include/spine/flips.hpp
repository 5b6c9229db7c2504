#pragma once

#include "spine/algebra.hpp"
#include "spine/coords.hpp"
#include "spine/paths.hpp"
#include "spine/ribbon.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spine {

class FlipError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FlipSlot {
  std::string name;  // "A".."D"
  int half = -1;
  std::string edge;
};

struct FlipRecord {
  std::string edge;
  bool loop_adjacent = false;
  int h = -1, h_other = -1;  // halves of the flipped edge; h at the ordinary vertex for loop flips
  std::vector<FlipSlot> slots;
  CoordinatePoint before, after;
};

struct FlipResult {
  FatGraph graph;
  CoordinatePoint point;
  FlipRecord record;
};

// Why the edge cannot be flipped as an inner edge (nullopt if it can).
std::optional<std::string> inner_flip_refusal(const FatGraph& g, int edge);
std::optional<std::string> loop_flip_refusal(const FatGraph& g, int edge);

FlipResult flip_inner(const FatGraph& g, int edge, const CoordinatePoint& p);
FlipResult flip_loop_adjacent(const FatGraph& g, int edge, const CoordinatePoint& p);
// Dispatches on the edge's neighbourhood.
FlipResult flip(const FatGraph& g, int edge, const CoordinatePoint& p);

enum class MutationKind { Ptolemy, Generalized };

// `g` is the graph before the flip; the result is keyed by edge name.
LambdaAssignment mutate_lambda(const FatGraph& g, const LambdaAssignment& l, int edge, MutationKind kind,
                               const std::optional<Omega>& omega = std::nullopt);

// Carries a path of the old graph to the homotopic path of the flipped graph.
HalfPath transport(const FatGraph& old_graph, const FlipRecord& rec, const HalfPath& p);

struct IdentityReport {
  std::string name;
  std::string statement;
  bool holds = false;
  int sign = 0;  // lhs = sign * rhs, 0 when unequal
  int u_degree = 0;
  std::string residual;
  bool numeric_holds = false;  // specialization at all coordinates 0 (omega = 2)
};

// The three inner-flip identities and the four loop-flip identities, checked
// in the square-root extended Laurent ring.
std::vector<IdentityReport> verify_flip_matrix_identities();
// The same identities with the index placement as commonly printed; these
// are reported for comparison and are not expected to hold.
std::vector<IdentityReport> printed_identity_forms();

}  // namespace spine
