#include "masterfield/planar.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

#include "masterfield/error.hpp"

namespace mf::planar {

namespace {

constexpr std::array<Step, 4> kSteps{Step::N, Step::E, Step::S, Step::W};

int idx(Step s) { return static_cast<int>(s); }

bool cell_less(Point a, Point b) { return a.y != b.y ? a.y < b.y : a.x < b.x; }

struct HalfEdge {
  Point from;
  Step dir;
};

// Removes spikes from a closed walk, cyclically.
std::vector<HalfEdge> cyclic_reduce(std::vector<HalfEdge> walk) {
  std::vector<HalfEdge> out;
  out.reserve(walk.size());
  for (const auto& h : walk) {
    if (!out.empty() && out.back().dir == inverse(h.dir))
      out.pop_back();
    else
      out.push_back(h);
  }
  std::size_t lo = 0, hi = out.size();
  while (hi - lo >= 2 && out[lo].dir == inverse(out[hi - 1].dir)) {
    ++lo;
    --hi;
  }
  return {out.begin() + static_cast<std::ptrdiff_t>(lo), out.begin() + static_cast<std::ptrdiff_t>(hi)};
}

}  // namespace

char to_char(Step s) { return "NESW"[idx(s)]; }

Point operator+(Point p, Step s) {
  switch (s) {
    case Step::N: return {p.x, p.y + 1};
    case Step::E: return {p.x + 1, p.y};
    case Step::S: return {p.x, p.y - 1};
    case Step::W: return {p.x - 1, p.y};
  }
  return p;
}

Path parse_path(std::string_view word) {
  Path out;
  out.reserve(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    switch (word[i]) {
      case 'N': case 'n': out.push_back(Step::N); break;
      case 'E': case 'e': out.push_back(Step::E); break;
      case 'S': case 's': out.push_back(Step::S); break;
      case 'W': case 'w': out.push_back(Step::W); break;
      default:
        throw Error("bad step '" + std::string(1, word[i]) + "' at position " + std::to_string(i) +
                    " (expected N, E, S or W)");
    }
  }
  return out;
}

std::string to_string(std::span<const Step> steps) {
  std::string s;
  s.reserve(steps.size());
  for (Step st : steps) s += to_char(st);
  return s;
}

Path reduce_path(std::span<const Step> steps) {
  Path out;
  out.reserve(steps.size());
  for (Step s : steps) {
    if (!out.empty() && out.back() == inverse(s))
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

Path inverse_path(std::span<const Step> steps) {
  Path out(steps.rbegin(), steps.rend());
  for (auto& s : out) s = inverse(s);
  return out;
}

long shoelace(Point start, std::span<const Step> steps) {
  long a = 0;
  Point p = start;
  for (Step s : steps) {
    if (s == Step::N) a += p.x;
    if (s == Step::S) a -= p.x;
    p = p + s;
  }
  return a;
}

int winding_number(Point start, std::span<const Step> steps, Point cell) {
  // Ray from the cell centre towards +x; count signed crossings.
  int w = 0;
  Point p = start;
  for (Step s : steps) {
    if (p.x > cell.x) {
      if (s == Step::N && p.y == cell.y) ++w;
      if (s == Step::S && p.y == cell.y + 1) --w;
    }
    p = p + s;
  }
  return w;
}

Loop::Loop(Path steps) : steps_(std::move(steps)) {
  Point p{};
  for (Step s : steps_) p = p + s;
  if (p != Point{})
    throw Error("not a loop: path " + to_string(steps_) + " ends at (" + std::to_string(p.x) + "," +
                std::to_string(p.y) + ")");
}

Loop Loop::parse(std::string_view word) { return Loop(parse_path(word)); }

bool Loop::is_reduced() const { return reduce_path(steps_).size() == steps_.size(); }

std::vector<Loop> parse_loops(std::string_view text) {
  std::vector<Loop> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    while (!item.empty() && (item.front() == ' ' || item.front() == '\t')) item.remove_prefix(1);
    while (!item.empty() && (item.back() == ' ' || item.back() == '\t' || item.back() == '\r'))
      item.remove_suffix(1);
    out.push_back(Loop::parse(item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

Loop reduce(const Loop& loop) { return Loop(reduce_path(loop.steps())); }

Loop loop_group_op(const Loop& l1, const Loop& l2, LoopOp op) {
  if (op == LoopOp::inverse) return Loop(inverse_path(l1.steps()));
  Path p = l1.steps();
  p.insert(p.end(), l2.steps().begin(), l2.steps().end());
  return Loop(reduce_path(p));
}

bool PlanarGraph::has_edge(Point from, Step dir) const {
  auto it = adjacency_.find(from);
  return it != adjacency_.end() && it->second[static_cast<std::size_t>(idx(dir))];
}

int PlanarGraph::face_left_of(Point from, Step dir) const {
  auto it = left_face_.find({from, dir});
  if (it == left_face_.end()) throw Error("face_left_of: no such edge");
  return it->second;
}

std::string PlanarGraph::dump() const {
  std::ostringstream os;
  os << "vertices " << vertices_.size() << " edges " << oriented_edges_ / 2 << " faces " << faces_.size()
     << '\n';
  for (const auto& v : vertices_) {
    os << "vertex " << v.x << ' ' << v.y << " :";
    for (Step s : kSteps)
      if (has_edge(v, s)) os << ' ' << to_char(s);
    os << '\n';
  }
  for (const auto& f : faces_) os << "face " << f.id << " area " << f.area << " boundary " << to_string(f.boundary) << '\n';
  return os.str();
}

PlanarGraph build_graph(std::span<const Loop> loops) {
  if (loops.empty()) throw Error("build_graph: no loops given");
  PlanarGraph g;
  g.adjacency_[Point{}];
  for (const auto& loop : loops) {
    if (!loop.is_reduced()) throw Error("build_graph: loop " + loop.str() + " is not reduced");
    Point p{};
    for (Step s : loop.steps()) {
      Point q = p + s;
      g.adjacency_[p][static_cast<std::size_t>(idx(s))] = true;
      g.adjacency_[q][static_cast<std::size_t>(idx(inverse(s)))] = true;
      p = q;
    }
  }
  for (const auto& [v, adj] : g.adjacency_) {
    g.vertices_.push_back(v);
    for (bool b : adj) g.oriented_edges_ += b ? 1 : 0;
  }

  // Trace faces: after arriving along d, turn to the first edge clockwise
  // from the reverse of d. This keeps the face on the left.
  std::set<std::pair<Point, Step>> seen;
  struct Walk {
    std::vector<HalfEdge> edges;
    long area;
  };
  std::vector<Walk> walks;
  for (const auto& v : g.vertices_) {
    for (Step s : kSteps) {
      if (!g.has_edge(v, s) || seen.count({v, s})) continue;
      Walk w;
      HalfEdge h{v, s};
      while (!seen.count({h.from, h.dir})) {
        seen.insert({h.from, h.dir});
        w.edges.push_back(h);
        Point to = h.from + h.dir;
        int r = idx(inverse(h.dir));
        for (int rot = 1; rot <= 4; ++rot) {
          Step nd = static_cast<Step>((r + rot) % 4);
          if (g.has_edge(to, nd)) {
            h = {to, nd};
            break;
          }
        }
      }
      Path steps;
      for (const auto& e : w.edges) steps.push_back(e.dir);
      w.area = shoelace(w.edges.front().from, steps);
      walks.push_back(std::move(w));
    }
  }

  int outer = -1;
  for (std::size_t i = 0; i < walks.size(); ++i) {
    if (walks[i].area <= 0) {
      if (outer >= 0) throw Error("build_graph: union of loops is not connected");
      outer = static_cast<int>(i);
    }
  }

  struct Pending {
    std::size_t walk;
    Face face;
  };
  std::vector<Pending> pending;
  for (std::size_t i = 0; i < walks.size(); ++i) {
    if (static_cast<int>(i) == outer) continue;
    const Walk& w = walks[i];
    std::vector<HalfEdge> red = cyclic_reduce(w.edges);
    Path raw;
    for (const auto& e : w.edges) raw.push_back(e.dir);
    int xmin = std::numeric_limits<int>::max(), xmax = std::numeric_limits<int>::min();
    int ymin = xmin, ymax = xmax;
    for (const auto& e : w.edges) {
      xmin = std::min(xmin, e.from.x);
      xmax = std::max(xmax, e.from.x);
      ymin = std::min(ymin, e.from.y);
      ymax = std::max(ymax, e.from.y);
    }
    Face f;
    f.area = w.area;
    bool found = false;
    long cells = 0;
    for (int y = ymin; y < ymax; ++y) {
      for (int x = xmin; x < xmax; ++x) {
        if (winding_number(w.edges.front().from, raw, {x, y}) == 1) {
          if (!found) f.cell = {x, y};
          found = true;
          ++cells;
        }
      }
    }
    if (!found || cells != f.area) throw Error("build_graph: inconsistent face tracing");
    std::size_t first = 0;
    for (std::size_t k = 1; k < red.size(); ++k)
      if (cell_less(red[k].from, red[first].from)) first = k;
    f.start = red[first].from;
    for (std::size_t k = 0; k < red.size(); ++k) f.boundary.push_back(red[(first + k) % red.size()].dir);
    pending.push_back({i, std::move(f)});
  }
  std::sort(pending.begin(), pending.end(),
            [](const Pending& a, const Pending& b) { return cell_less(a.face.cell, b.face.cell); });
  for (const auto& w : walks)
    for (const auto& e : w.edges) g.left_face_[{e.from, e.dir}] = -1;
  for (std::size_t id = 0; id < pending.size(); ++id) {
    pending[id].face.id = static_cast<int>(id);
    for (const auto& e : walks[pending[id].walk].edges) g.left_face_[{e.from, e.dir}] = static_cast<int>(id);
    g.faces_.push_back(std::move(pending[id].face));
  }
  return g;
}

int winding(const Loop& loop, const Face& face) { return winding_number(Point{}, loop.steps(), face.cell); }

Loop Lasso::loop() const {
  Path p = tail;
  p.insert(p.end(), bulk.begin(), bulk.end());
  Path back = inverse_path(tail);
  p.insert(p.end(), back.begin(), back.end());
  return Loop(std::move(p));
}

LassoBasis::LassoBasis(PlanarGraph graph, TieBreak tie_break, Orientation orientation)
    : graph_(std::move(graph)) {
  const std::array<Step, 4> priority = tie_break == TieBreak::nesw
                                           ? std::array<Step, 4>{Step::N, Step::E, Step::S, Step::W}
                                           : std::array<Step, 4>{Step::W, Step::S, Step::E, Step::N};
  // Breadth-first spanning tree from the origin.
  std::queue<Point> q;
  tree_[Point{}] = TreeNode{-1, 0};
  q.push(Point{});
  int order = 1;
  while (!q.empty()) {
    Point v = q.front();
    q.pop();
    for (Step s : priority) {
      if (!graph_.has_edge(v, s)) continue;
      Point w = v + s;
      if (tree_.count(w)) continue;
      tree_[w] = TreeNode{idx(s), order++};
      q.push(w);
    }
  }

  auto is_tree_edge = [&](Point from, Step s) {
    Point to = from + s;
    return tree_.at(to).parent_dir == idx(s) || tree_.at(from).parent_dir == idx(inverse(s));
  };
  for (const auto& v : graph_.vertices()) {
    for (Step s : {Step::N, Step::E}) {
      if (graph_.has_edge(v, s) && !is_tree_edge(v, s)) {
        int k = static_cast<int>(edge_index_.size());
        edge_index_[{v, s}] = k;
      }
    }
  }

  const auto& faces = graph_.faces();
  if (edge_index_.size() != faces.size()) throw Error("lasso basis: Euler relation violated");

  for (const auto& f : faces) {
    // Tail to the boundary vertex discovered first by the search.
    std::size_t best = 0;
    int best_order = std::numeric_limits<int>::max();
    Point p = f.start;
    for (std::size_t k = 0; k < f.boundary.size(); ++k) {
      int o = tree_.at(p).order;
      if (o < best_order) {
        best_order = o;
        best = k;
      }
      p = p + f.boundary[k];
    }
    Lasso l;
    l.face_id = f.id;
    l.orientation = orientation;
    Point v = f.start;
    for (std::size_t k = 0; k < best; ++k) v = v + f.boundary[k];
    l.tail = tree_path(v);
    for (std::size_t k = 0; k < f.boundary.size(); ++k) l.bulk.push_back(f.boundary[(best + k) % f.boundary.size()]);
    if (orientation == Orientation::clockwise) l.bulk = inverse_path(l.bulk);
    lassos_.push_back(std::move(l));
  }

  // Dual tree rooted at the unbounded face; each bounded face F gets the
  // non-tree edge e_F linking it to its parent.
  const std::size_t nf = faces.size();
  std::vector<int> parent_edge(nf, -1), depth(nf, -1);
  std::vector<std::pair<Point, Step>> edges(edge_index_.size());
  for (const auto& [key, k] : edge_index_) edges[static_cast<std::size_t>(k)] = key;
  {
    std::deque<int> dq{-1};
    std::vector<bool> used(edges.size(), false);
    while (!dq.empty()) {
      int f = dq.front();
      dq.pop_front();
      for (std::size_t k = 0; k < edges.size(); ++k) {
        if (used[k]) continue;
        auto [from, s] = edges[k];
        int a = graph_.face_left_of(from, s), b = graph_.face_left_of(from + s, inverse(s));
        int other;
        if (a == f) other = b;
        else if (b == f) other = a;
        else continue;
        if (other < 0 || depth[static_cast<std::size_t>(other)] >= 0) continue;
        used[k] = true;
        depth[static_cast<std::size_t>(other)] = f < 0 ? 0 : depth[static_cast<std::size_t>(f)] + 1;
        parent_edge[static_cast<std::size_t>(other)] = static_cast<int>(k);
        dq.push_back(other);
      }
    }
  }
  std::vector<int> by_depth(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    if (depth[i] < 0) throw Error("lasso basis: dual graph is not connected");
    by_depth[i] = static_cast<int>(i);
  }
  std::stable_sort(by_depth.begin(), by_depth.end(),
                   [&](int a, int b) { return depth[static_cast<std::size_t>(a)] > depth[static_cast<std::size_t>(b)]; });

  edge_in_lassos_.assign(edges.size(), {});
  std::vector<bool> solved(edges.size(), false);
  for (int fid : by_depth) {
    const Lasso& l = lassos_[static_cast<std::size_t>(fid)];
    Point v{};
    for (Step s : l.tail) v = v + s;
    FreeWord w = edge_word(v, l.bulk);
    // Tail contributes nothing: tree edges only. Write w = x e^s y.
    int e = parent_edge[static_cast<std::size_t>(fid)];
    std::size_t pos = w.size();
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k].gen == e) {
        if (pos != w.size()) throw Error("lasso basis: edge repeated on a face boundary");
        pos = k;
      }
    }
    if (pos == w.size()) throw Error("lasso basis: dual tree edge missing from face boundary");
    auto expand = [&](std::span<const FreeLetter> part) {
      FreeWord out;
      for (const auto& letter : part) {
        if (!solved[static_cast<std::size_t>(letter.gen)])
          throw Error("lasso basis: unresolved edge in face boundary");
        const FreeWord& img = edge_in_lassos_[static_cast<std::size_t>(letter.gen)];
        FreeWord piece = letter.exp > 0 ? img : free_inverse(img);
        out.insert(out.end(), piece.begin(), piece.end());
      }
      return free_reduce(out);
    };
    FreeWord x = expand(std::span(w).first(pos));
    FreeWord y = expand(std::span(w).subspan(pos + 1));
    FreeWord sol = free_inverse(x);
    sol.push_back(FreeLetter{fid, 1});
    FreeWord yi = free_inverse(y);
    sol.insert(sol.end(), yi.begin(), yi.end());
    sol = free_reduce(sol);
    if (w[pos].exp < 0) sol = free_inverse(sol);
    edge_in_lassos_[static_cast<std::size_t>(e)] = std::move(sol);
    solved[static_cast<std::size_t>(e)] = true;
  }
}

Path LassoBasis::tree_path(Point v) const {
  Path rev;
  while (true) {
    int d = tree_.at(v).parent_dir;
    if (d < 0) break;
    Step s = static_cast<Step>(d);
    rev.push_back(s);
    v = v + inverse(s);
  }
  return Path(rev.rbegin(), rev.rend());
}

FreeWord LassoBasis::edge_word(Point start, std::span<const Step> steps) const {
  FreeWord w;
  Point p = start;
  for (Step s : steps) {
    if (!graph_.has_edge(p, s))
      throw Error("path leaves the graph at (" + std::to_string(p.x) + "," + std::to_string(p.y) + ") going " +
                  std::string(1, to_char(s)));
    Point q = p + s;
    if (s == Step::N || s == Step::E) {
      auto it = edge_index_.find({p, s});
      if (it != edge_index_.end()) w.push_back({it->second, 1});
    } else {
      auto it = edge_index_.find({q, inverse(s)});
      if (it != edge_index_.end()) w.push_back({it->second, -1});
    }
    p = q;
  }
  return w;
}

LassoWord LassoBasis::decompose(const Loop& loop) const {
  return free_substitute(edge_word(Point{}, loop.steps()), edge_in_lassos_);
}

Loop LassoBasis::substitute(std::span<const FreeLetter> word) const {
  Path p;
  for (const auto& l : word) {
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= lassos_.size())
      throw Error("substitute: no lasso " + std::to_string(l.gen + 1));
    Loop ll = lassos_[static_cast<std::size_t>(l.gen)].loop();
    Path piece = l.exp > 0 ? ll.steps() : inverse_path(ll.steps());
    p.insert(p.end(), piece.begin(), piece.end());
  }
  return Loop(reduce_path(p));
}

std::vector<Lasso> lasso_basis(const PlanarGraph& graph, TieBreak tie_break, Orientation orientation) {
  return LassoBasis(graph, tie_break, orientation).lassos();
}

LassoWord decompose(const Loop& loop, const LassoBasis& basis) { return basis.decompose(loop); }

namespace {

template <class T, class Mul, class Inv>
std::vector<T> braid_generic(const BraidWord& braid, std::span<const T> tuple, Mul mul, Inv inv) {
  if (static_cast<int>(tuple.size()) != braid.strands)
    throw Error("braid_act: tuple has " + std::to_string(tuple.size()) + " entries, braid has " +
                std::to_string(braid.strands) + " strands");
  std::vector<T> c(tuple.begin(), tuple.end());
  for (auto it = braid.letters.rbegin(); it != braid.letters.rend(); ++it) {
    int i = it->index - 1;
    if (i < 0 || i + 1 >= braid.strands) throw Error("braid_act: generator index out of range");
    T a = c[static_cast<std::size_t>(i)], b = c[static_cast<std::size_t>(i) + 1];
    if (it->sign > 0) {
      c[static_cast<std::size_t>(i)] = b;
      c[static_cast<std::size_t>(i) + 1] = mul(mul(b, a), inv(b));
    } else {
      c[static_cast<std::size_t>(i)] = mul(mul(inv(a), b), a);
      c[static_cast<std::size_t>(i) + 1] = a;
    }
  }
  return c;
}

}  // namespace

std::vector<FreeWord> braid_act(const BraidWord& braid, std::span<const FreeWord> tuple) {
  return braid_generic<FreeWord>(
      braid, tuple, [](const FreeWord& a, const FreeWord& b) { return free_concat(a, b); },
      [](const FreeWord& a) { return free_inverse(a); });
}

std::vector<Loop> braid_act(const BraidWord& braid, std::span<const Loop> tuple) {
  return braid_generic<Loop>(
      braid, tuple, [](const Loop& a, const Loop& b) { return concat(a, b); },
      [](const Loop& a) { return inverse(a); });
}

std::vector<int> braid_permutation(const BraidWord& braid) {
  // Composition sigma_{b1} o ... o sigma_{bm}: apply the rightmost first.
  std::vector<int> perm(static_cast<std::size_t>(braid.strands));
  for (int j = 0; j < braid.strands; ++j) perm[static_cast<std::size_t>(j)] = j;
  for (auto it = braid.letters.rbegin(); it != braid.letters.rend(); ++it) {
    int i = it->index - 1;
    for (auto& p : perm) {
      if (p == i) p = i + 1;
      else if (p == i + 1) p = i;
    }
  }
  return perm;
}

std::vector<BraidWord> all_braid_words(int strands, int max_length) {
  std::vector<BraidWord> out{BraidWord{strands, {}}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_length && strands >= 2; ++len) {
    std::size_t end = out.size();
    for (std::size_t w = begin; w < end; ++w) {
      for (int i = 1; i < strands; ++i) {
        for (int s : {1, -1}) {
          BraidWord b = out[w];
          b.letters.push_back({i, s});
          out.push_back(std::move(b));
        }
      }
    }
    begin = end;
  }
  return out;
}

std::string to_string(const BraidWord& braid) {
  if (braid.letters.empty()) return "e";
  std::string s;
  for (std::size_t k = 0; k < braid.letters.size(); ++k) {
    if (k) s += ' ';
    s += 'b' + std::to_string(braid.letters[k].index);
    if (braid.letters[k].sign < 0) s += "^-1";
  }
  return s;
}

}  // namespace mf::planar
