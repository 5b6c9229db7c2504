#include "spine/ribbon.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace spine {

std::string_view kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::Inner: return "inner";
    case EdgeKind::Pending: return "pending";
    case EdgeKind::Loop: return "loop";
  }
  return "?";
}

FatGraph::FatGraph(SurfaceType type, std::vector<HalfEdge> halves, std::vector<Vertex> vertices,
                   std::vector<Edge> edges)
    : type_(type), halves_(std::move(halves)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  index();
}

void FatGraph::index() {
  pos_.assign(halves_.size(), -1);
  mate_.assign(halves_.size(), -1);
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    for (std::size_t i = 0; i < vertices_[v].halves.size(); ++i) {
      int h = vertices_[v].halves[i];
      halves_[h].vertex = static_cast<int>(v);
      pos_[h] = static_cast<int>(i);
    }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto [x, y] = edges_[e].halves;
    halves_[x].edge = halves_[y].edge = static_cast<int>(e);
    mate_[x] = y;
    mate_[y] = x;
  }
}

int FatGraph::sigma(int h) const {
  auto& hs = vertices_[halves_[h].vertex].halves;
  return hs[(pos_[h] + 1) % hs.size()];
}

int FatGraph::sigma_inv(int h) const {
  auto& hs = vertices_[halves_[h].vertex].halves;
  return hs[(pos_[h] + hs.size() - 1) % hs.size()];
}

int FatGraph::mate(int h) const { return mate_[h]; }

bool FatGraph::is_loop_vertex(int v) const {
  for (int h : vertices_[v].halves)
    if (edges_[halves_[h].edge].kind == EdgeKind::Loop) return true;
  return false;
}

std::optional<int> FatGraph::find_edge(std::string_view name) const {
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].name == name) return static_cast<int>(e);
  return std::nullopt;
}

int FatGraph::edge_index(std::string_view name) const {
  if (auto e = find_edge(name)) return *e;
  throw GraphError("unknown edge " + std::string(name));
}

int FatGraph::half_index(std::string_view id) const {
  for (std::size_t h = 0; h < halves_.size(); ++h)
    if (halves_[h].id == id) return static_cast<int>(h);
  throw GraphError("unknown half-edge " + std::string(id));
}

std::vector<int> FatGraph::coordinate_edges() const {
  std::vector<int> out;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].kind != EdgeKind::Loop) out.push_back(static_cast<int>(e));
  return out;
}

std::vector<std::string> FatGraph::coordinate_labels() const {
  std::vector<std::string> out;
  for (int e : coordinate_edges()) out.push_back(edges_[e].name);
  return out;
}

std::vector<int> FatGraph::loop_edges() const {
  std::vector<int> out;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].kind == EdgeKind::Loop) out.push_back(static_cast<int>(e));
  return out;
}

void FatGraph::set_rotation(int v, std::vector<int> halves) {
  vertices_[v].halves = std::move(halves);
  index();
}

// ---------------------------------------------------------------- parsing

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

int parse_int_field(const std::string& tok, const std::string& key, int line) {
  if (tok.rfind(key + "=", 0) != 0) throw ParseError(line, "expected " + key + "=<int>, got '" + tok + "'");
  std::string v = tok.substr(key.size() + 1);
  try {
    std::size_t used = 0;
    int x = std::stoi(v, &used);
    if (used != v.size() || x < 0) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParseError(line, "bad integer in '" + tok + "'");
  }
}

}  // namespace

FatGraph parse_graph(std::string_view text) {
  std::optional<SurfaceType> type;
  std::vector<HalfEdge> halves;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::map<std::string, int> half_ids;
  std::map<std::string, int> half_line;  // where each half was placed at a vertex
  std::set<std::string> vertex_names, edge_names;
  std::set<std::string> paired;

  auto half = [&](const std::string& id) {
    auto [it, fresh] = half_ids.try_emplace(id, static_cast<int>(halves.size()));
    if (fresh) halves.push_back({id, -1, -1});
    return it->second;
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto w = split_ws(raw);
    if (w.empty()) continue;
    const std::string& head = w[0];
    if (head == "surface") {
      if (type) throw ParseError(lineno, "duplicate surface line");
      if (w.size() != 5) throw ParseError(lineno, "surface line needs g= sh= so= n=");
      type = SurfaceType{parse_int_field(w[1], "g", lineno), parse_int_field(w[2], "sh", lineno),
                         parse_int_field(w[3], "so", lineno), parse_int_field(w[4], "n", lineno)};
    } else if (head == "vertex" || head == "cusp") {
      bool cusp = head == "cusp";
      std::size_t want = cusp ? 4 : 6;
      std::string tag = cusp ? "half:" : "ccw:";
      if (w.size() != want || w[2] != tag)
        throw ParseError(lineno, cusp ? "expected 'cusp <id> half: <he>'" : "expected 'vertex <id> ccw: <he> <he> <he>'");
      if (!vertex_names.insert(w[1]).second) throw ParseError(lineno, "duplicate vertex id " + w[1]);
      Vertex v{w[1], {}};
      for (std::size_t i = 3; i < w.size(); ++i) {
        if (half_line.count(w[i])) throw ParseError(lineno, "half-edge " + w[i] + " already used at a vertex");
        half_line[w[i]] = lineno;
        v.halves.push_back(half(w[i]));
      }
      vertices.push_back(std::move(v));
    } else if (head == "edge") {
      if (w.size() != 5 && w.size() != 6) throw ParseError(lineno, "expected 'edge <name> <kind> <he> <he> [key=value]'");
      Edge e;
      e.name = w[1];
      if (!edge_names.insert(e.name).second) throw ParseError(lineno, "duplicate edge name " + e.name);
      if (w[2] == "inner") e.kind = EdgeKind::Inner;
      else if (w[2] == "pending") e.kind = EdgeKind::Pending;
      else if (w[2] == "loop") e.kind = EdgeKind::Loop;
      else throw ParseError(lineno, "unknown edge kind " + w[2]);
      if (w[3] == w[4]) throw ParseError(lineno, "edge pairs a half-edge with itself");
      for (int i = 0; i < 2; ++i) {
        if (!paired.insert(w[3 + i]).second)
          throw ParseError(lineno, "half-edge " + w[3 + i] + " already belongs to another edge");
        e.halves[i] = half(w[3 + i]);
      }
      if (w.size() == 6) {
        auto eq = w[5].find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == w[5].size())
          throw ParseError(lineno, "malformed value field '" + w[5] + "'");
        std::string key = w[5].substr(0, eq);
        static const std::map<EdgeKind, std::set<std::string>> allowed{
            {EdgeKind::Inner, {"Z", "lambda"}},
            {EdgeKind::Pending, {"pi", "lambda"}},
            {EdgeKind::Loop, {"omega", "perimeter", "orbifold"}}};
        if (!allowed.at(e.kind).count(key))
          throw ParseError(lineno, "value key '" + key + "' not allowed on a " + std::string(kind_name(e.kind)) + " edge");
        e.value = EdgeValue{key, w[5].substr(eq + 1)};
      }
      edges.push_back(std::move(e));
    } else {
      throw ParseError(lineno, "unrecognized line starting with '" + head + "'");
    }
  }
  if (!type) throw ParseError(lineno, "missing surface line");
  for (auto& [id, h] : half_ids) {
    if (!half_line.count(id)) throw ParseError(lineno, "unknown half-edge " + id + " (not placed at any vertex)");
    if (!paired.count(id)) throw ParseError(half_line[id], "half-edge " + id + " is not paired by any edge");
  }
  return FatGraph(*type, std::move(halves), std::move(vertices), std::move(edges));
}

FatGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

std::string format_graph(const FatGraph& g) {
  std::ostringstream out;
  auto& t = g.type();
  out << "surface g=" << t.g << " sh=" << t.sh << " so=" << t.so << " n=" << t.n << "\n";
  for (auto& v : g.vertices()) {
    if (v.is_cusp()) {
      out << "cusp " << v.id << " half: " << g.halves()[v.halves[0]].id << "\n";
    } else {
      out << "vertex " << v.id << " ccw:";
      for (int h : v.halves) out << " " << g.halves()[h].id;
      out << "\n";
    }
  }
  for (auto& e : g.edges()) {
    out << "edge " << e.name << " " << kind_name(e.kind) << " " << g.halves()[e.halves[0]].id << " "
        << g.halves()[e.halves[1]].id;
    if (e.value) out << " " << e.value->key << "=" << e.value->text;
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------- faces

std::vector<Face> faces(const FatGraph& g) {
  std::size_t H = g.halves().size();
  std::vector<char> seen(H, 0);
  std::vector<Face> out;
  // iterate over arrival halves; the face step is h -> mate(sigma(h))
  for (std::size_t start = 0; start < H; ++start) {
    if (seen[start]) continue;
    Face f;
    int h = static_cast<int>(start);
    while (!seen[h]) {
      seen[h] = 1;
      if (g.at_cusp(h)) f.cusps.push_back(g.vertex_of(h));
      int x = g.sigma(h);
      f.exits.push_back(x);
      h = g.mate(x);
    }
    f.monogon = f.exits.size() == 1 && g.kind_of_half(f.exits[0]) == EdgeKind::Loop;
    out.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------- validation

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](auto& c) { return c.passed; });
}

std::string ValidationReport::str() const {
  std::string s;
  for (auto& c : checks) s += (c.passed ? "PASS " : "FAIL ") + c.name + (c.detail.empty() ? "" : ": " + c.detail) + "\n";
  return s;
}

ValidationReport validate(const FatGraph& g) {
  ValidationReport r;
  auto add = [&](std::string name, bool ok, std::string detail) { r.checks.push_back({std::move(name), ok, std::move(detail)}); };
  const auto& t = g.type();
  std::size_t H = g.halves().size();

  // involution / partition
  {
    bool ok = true;
    std::vector<int> at_vertex(H, 0), in_edge(H, 0);
    for (auto& v : g.vertices())
      for (int h : v.halves) ++at_vertex[h];
    for (auto& e : g.edges())
      for (int h : e.halves) ++in_edge[h];
    for (std::size_t h = 0; h < H; ++h) ok = ok && at_vertex[h] == 1 && in_edge[h] == 1;
    add("half-edge pairing is a fixed-point-free involution", ok, "");
  }

  int cusps = 0, bad_valence = 0;
  for (auto& v : g.vertices()) {
    if (v.halves.size() == 1) ++cusps;
    else if (v.halves.size() != 3) ++bad_valence;
  }
  add("(b) vertices are 3-valent except n 1-valent", bad_valence == 0 && cusps == t.n,
      std::to_string(cusps) + " one-valent, n=" + std::to_string(t.n) +
          (bad_valence ? ", " + std::to_string(bad_valence) + " of other valence" : ""));

  int pending = 0, loops = 0;
  bool pend_ok = true, loop_ok = true, inner_ok = true;
  for (auto& e : g.edges()) {
    auto [x, y] = e.halves;
    bool cx = g.at_cusp(x), cy = g.at_cusp(y);
    switch (e.kind) {
      case EdgeKind::Pending:
        ++pending;
        pend_ok = pend_ok && (cx != cy);
        break;
      case EdgeKind::Loop:
        ++loops;
        loop_ok = loop_ok && !cx && g.vertex_of(x) == g.vertex_of(y) &&
                  g.kind_of_half(g.sigma(y) == x ? g.sigma(x) : g.sigma(y)) != EdgeKind::Loop;
        break;
      case EdgeKind::Inner:
        inner_ok = inner_ok && !cx && !cy;
        break;
    }
  }
  add("(b) pending edges join a cusp to a 3-valent vertex", pend_ok && pending == t.n,
      std::to_string(pending) + " pending edges");
  add("inner edges join 3-valent vertices", inner_ok, "");
  add("(d) loops start and end at one 3-valent vertex", loop_ok && loops == t.so,
      std::to_string(loops) + " loops, so=" + std::to_string(t.so));

  int E = static_cast<int>(g.edges().size());
  add("(e) edge count 6g-6+3s+2n", E == t.expected_edges(),
      std::to_string(E) + " edges, expected " + std::to_string(t.expected_edges()));
  {
    std::set<std::string> names;
    for (auto& e : g.edges()) names.insert(e.name);
    add("(e) edge labels distinct", names.size() == g.edges().size(), "");
  }

  // connectivity
  {
    std::vector<int> parent(g.vertices().size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto& e : g.edges()) parent[find(g.vertex_of(e.halves[0]))] = find(g.vertex_of(e.halves[1]));
    std::set<int> roots;
    for (std::size_t v = 0; v < g.vertices().size(); ++v) roots.insert(find(static_cast<int>(v)));
    add("graph is connected", roots.size() <= 1, "");
  }

  auto fs = faces(g);
  int monogons = 0, cusp_faces = 0, bare = 0;
  for (auto& f : fs) {
    if (f.monogon) ++monogons;
    else if (!f.cusps.empty()) ++cusp_faces;
    else ++bare;
  }
  add("(d) boundary walks: face count equals s", static_cast<int>(fs.size()) == t.s(),
      std::to_string(fs.size()) + " faces, s=" + std::to_string(t.s()));
  add("(d) holes without cusps are loop monogons", bare == 0 && monogons == t.so,
      std::to_string(monogons) + " monogons" + (bare ? ", " + std::to_string(bare) + " faces without cusps" : ""));
  add("(c) holes with cusps number s_h", cusp_faces == t.sh && t.sh > 0 && t.n > 0,
      std::to_string(cusp_faces) + " cusp-bearing faces, sh=" + std::to_string(t.sh));
  int V = static_cast<int>(g.vertices().size()), F = static_cast<int>(fs.size());
  add("(a) Euler characteristic V-E+F = 2-2g", V - E + F == 2 - 2 * t.g,
      std::to_string(V) + "-" + std::to_string(E) + "+" + std::to_string(F) + " vs " + std::to_string(2 - 2 * t.g));
  return r;
}

// ---------------------------------------------------------------- windows

std::vector<int> Window::coordinate_tokens() const {
  std::vector<int> out;
  for (auto& t : tokens)
    if (!t.loop) out.push_back(t.edge);
  return out;
}

std::vector<Window> windows(const FatGraph& g) {
  if (g.type().n == 0) throw GraphError("surface has no cusps, so no windows");
  auto fs = faces(g);
  std::vector<int> face_of_exit(g.halves().size(), -1);
  for (std::size_t f = 0; f < fs.size(); ++f)
    for (int x : fs[f].exits) face_of_exit[x] = static_cast<int>(f);

  std::vector<Window> out;
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    if (!g.vertices()[v].is_cusp()) continue;
    Window w;
    w.start_cusp = static_cast<int>(v);
    int x = g.vertices()[v].halves[0];
    w.hole = face_of_exit[x];
    w.tokens.push_back({g.edge_of(x), false});
    int h = g.mate(x);
    std::size_t guard = 0;
    while (!g.at_cusp(h)) {
      x = g.sigma(h);
      w.tokens.push_back({g.edge_of(x), g.kind_of_half(x) == EdgeKind::Loop});
      h = g.mate(x);
      if (++guard > 4 * g.halves().size()) throw GraphError("boundary walk does not reach a cusp");
    }
    out.push_back(std::move(w));
  }
  return out;
}

// ---------------------------------------------------------------- paths

int loop_stem_half(const FatGraph& g, int v) {
  for (int h : g.vertices()[v].halves)
    if (g.kind_of_half(h) != EdgeKind::Loop) return h;
  throw GraphError("vertex " + g.vertices()[v].id + " has no stem");
}

char loop_sign(const FatGraph& g, int exit_half) {
  int stem = loop_stem_half(g, g.vertex_of(exit_half));
  return g.sigma(stem) == exit_half ? '+' : '-';
}

namespace {

// Arrived through h; keep leaving clockwise until a cusp is reached.
std::vector<int> right_walk(const FatGraph& g, int h) {
  std::vector<int> out;
  std::size_t guard = 0;
  while (!g.at_cusp(h)) {
    int x = g.sigma_inv(h);
    out.push_back(x);
    h = g.mate(x);
    if (++guard > 4 * g.halves().size()) throw GraphError("clockwise walk does not reach a cusp");
  }
  return out;
}

}  // namespace

HalfPath reverse_path(const FatGraph& g, const HalfPath& p) {
  HalfPath r;
  for (auto it = p.exits.rbegin(); it != p.exits.rend(); ++it) r.exits.push_back(g.mate(*it));
  return r;
}

HalfPath dual_arc(const FatGraph& g, int e) {
  const Edge& ed = g.edge(e);
  if (ed.kind == EdgeKind::Loop) throw GraphError("no dual arc for loop edge " + ed.name);
  auto [h1, h2] = ed.halves;
  // orient so that the path crosses the edge from h2's side to h1's side,
  // a pending edge being crossed out of its cusp
  if (g.at_cusp(h1)) std::swap(h1, h2);
  HalfPath tail{right_walk(g, h2)};
  HalfPath p = reverse_path(g, tail);
  p.exits.push_back(h2);
  for (int x : right_walk(g, h1)) p.exits.push_back(x);
  return p;
}

}  // namespace spine
