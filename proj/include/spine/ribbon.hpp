#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spine {

enum class EdgeKind { Inner, Pending, Loop };

std::string_view kind_name(EdgeKind k);

struct HalfEdge {
  std::string id;
  int vertex = -1;
  int edge = -1;
};

struct Vertex {
  std::string id;
  std::vector<int> halves;  // counterclockwise
  bool is_cusp() const { return halves.size() == 1; }
};

// Value attribute as written in the graph file, e.g. key "Z", text "2log(3)".
struct EdgeValue {
  std::string key;
  std::string text;
};

struct Edge {
  std::string name;
  EdgeKind kind = EdgeKind::Inner;
  std::array<int, 2> halves{-1, -1};
  std::optional<EdgeValue> value;
};

struct SurfaceType {
  int g = 0, sh = 0, so = 0, n = 0;
  int s() const { return sh + so; }
  int expected_edges() const { return 6 * g - 6 + 3 * s() + 2 * n; }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class GraphError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class FatGraph {
 public:
  FatGraph() = default;
  FatGraph(SurfaceType type, std::vector<HalfEdge> halves, std::vector<Vertex> vertices, std::vector<Edge> edges);

  const SurfaceType& type() const { return type_; }
  const std::vector<HalfEdge>& halves() const { return halves_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<Edge>& mutable_edges() { return edges_; }

  int sigma(int h) const;      // next counterclockwise at the same vertex
  int sigma_inv(int h) const;  // next clockwise
  int mate(int h) const;
  int vertex_of(int h) const { return halves_[h].vertex; }
  int edge_of(int h) const { return halves_[h].edge; }
  const Edge& edge(int e) const { return edges_[e]; }
  EdgeKind kind_of_half(int h) const { return edges_[halves_[h].edge].kind; }
  bool at_cusp(int h) const { return vertices_[halves_[h].vertex].is_cusp(); }
  bool is_loop_vertex(int v) const;

  int edge_index(std::string_view name) const;  // throws GraphError
  std::optional<int> find_edge(std::string_view name) const;
  int half_index(std::string_view id) const;

  // Non-loop edges in file order: the coordinate labels.
  std::vector<int> coordinate_edges() const;
  std::vector<std::string> coordinate_labels() const;
  std::vector<int> loop_edges() const;

  // Replace the cyclic order at vertex v (same half-edge set, or halves moved
  // in from elsewhere; vertex fields are updated).
  void set_rotation(int v, std::vector<int> halves);

 private:
  void index();
  SurfaceType type_;
  std::vector<HalfEdge> halves_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<int> pos_;   // position of each half in its vertex list
  std::vector<int> mate_;
};

FatGraph parse_graph(std::string_view text);
FatGraph load_graph(const std::string& path);
std::string format_graph(const FatGraph& g);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool ok() const;
  std::string str() const;
};

ValidationReport validate(const FatGraph& g);

// Boundary walk: arrive at a vertex through half h, leave through sigma(h).
// A face is the cyclic sequence of exit halves.
struct Face {
  std::vector<int> exits;
  bool monogon = false;  // bounded by a single loop traversal
  std::vector<int> cusps;
};

std::vector<Face> faces(const FatGraph& g);

struct WindowToken {
  int edge = -1;
  bool loop = false;
};

struct Window {
  int hole = -1;
  int start_cusp = -1;  // vertex index
  std::vector<WindowToken> tokens;
  std::vector<int> coordinate_tokens() const;  // edges, loops dropped
};

std::vector<Window> windows(const FatGraph& g);

// A path in the graph as the sequence of exit half-edges: each traversal goes
// from half x to mate(x).  Starts at a cusp half, ends arriving at a cusp.
struct HalfPath {
  std::vector<int> exits;
};

// Loop traversal sign: '+' when leaving the loop vertex through the loop half
// that follows the stem counterclockwise.
char loop_sign(const FatGraph& g, int exit_half);
int loop_stem_half(const FatGraph& g, int loop_vertex);

HalfPath dual_arc(const FatGraph& g, int edge);
HalfPath reverse_path(const FatGraph& g, const HalfPath& p);

}  // namespace spine
