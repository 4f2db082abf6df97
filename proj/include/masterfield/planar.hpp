#pragma once

// Lattice loops on the plane, the graphs they draw, lasso bases and the
// braid action on lasso families.
//
// Conventions: x grows to the East, y grows to the North, every loop is
// based at the origin. Anticlockwise means positive signed area.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "masterfield/freegroup.hpp"

namespace mf::planar {

enum class Step : std::uint8_t { N = 0, E = 1, S = 2, W = 3 };

constexpr Step inverse(Step s) { return static_cast<Step>((static_cast<int>(s) + 2) % 4); }
char to_char(Step s);

struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

Point operator+(Point p, Step s);

using Path = std::vector<Step>;

Path parse_path(std::string_view word);
std::string to_string(std::span<const Step> steps);
// Erases backtracking pairs s·inverse(s) until none is left.
Path reduce_path(std::span<const Step> steps);
Path inverse_path(std::span<const Step> steps);
// Signed area enclosed by a closed path, i.e. the integral of x dy.
long shoelace(Point start, std::span<const Step> steps);
// Winding number of a closed path around the centre of the unit cell whose
// lower-left corner is `cell`.
int winding_number(Point start, std::span<const Step> steps, Point cell);

// Closed lattice path based at the origin.
class Loop {
 public:
  Loop() = default;
  explicit Loop(Path steps);

  static Loop parse(std::string_view word);

  const Path& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }
  std::size_t size() const { return steps_.size(); }
  bool is_reduced() const;
  std::string str() const { return to_string(steps_); }

  friend bool operator==(const Loop&, const Loop&) = default;

 private:
  Path steps_;
};

// Comma separated loop words; empty items are constant loops.
std::vector<Loop> parse_loops(std::string_view text);

Loop reduce(const Loop& loop);

enum class LoopOp { concat, inverse };
// concat reduces l1·l2; inverse ignores l2.
Loop loop_group_op(const Loop& l1, const Loop& l2, LoopOp op);
inline Loop concat(const Loop& a, const Loop& b) { return loop_group_op(a, b, LoopOp::concat); }
inline Loop inverse(const Loop& l) { return loop_group_op(l, Loop{}, LoopOp::inverse); }

struct Face {
  int id = 0;
  Point start;  // lowest, then leftmost vertex of the boundary
  Path boundary;  // anticlockwise facial walk from `start`, cyclically reduced
  long area = 0;
  Point cell;  // lower-left corner of a unit cell inside the face
};

class PlanarGraph {
 public:
  const std::vector<Point>& vertices() const { return vertices_; }
  bool has_vertex(Point p) const { return adjacency_.count(p) != 0; }
  bool has_edge(Point from, Step dir) const;
  // Number of oriented edges; each unit segment counts twice.
  std::size_t oriented_edge_count() const { return oriented_edges_; }
  const std::vector<Face>& faces() const { return faces_; }
  // Bounded face on the left of the oriented edge, or -1 for the unbounded face.
  int face_left_of(Point from, Step dir) const;
  std::string dump() const;

  friend PlanarGraph build_graph(std::span<const Loop> loops);

 private:
  std::map<Point, std::array<bool, 4>> adjacency_;
  std::map<std::pair<Point, Step>, int> left_face_;
  std::vector<Point> vertices_;
  std::vector<Face> faces_;
  std::size_t oriented_edges_ = 0;
};

PlanarGraph build_graph(std::span<const Loop> loops);

// Winding number of the loop around an interior point of the face.
int winding(const Loop& loop, const Face& face);

// Neighbour priority of the breadth-first spanning tree.
enum class TieBreak { nesw, wsen };
enum class Orientation { anticlockwise, clockwise };

struct Lasso {
  Path tail;
  Path bulk;
  int face_id = 0;
  Orientation orientation = Orientation::anticlockwise;

  Loop loop() const;
};

using LassoWord = FreeWord;

// A lasso basis of the reduced loops of a graph, with the data needed to
// write any loop drawn on the graph in that basis. Lasso i surrounds face i.
class LassoBasis {
 public:
  explicit LassoBasis(PlanarGraph graph, TieBreak tie_break = TieBreak::nesw,
                      Orientation orientation = Orientation::anticlockwise);

  const PlanarGraph& graph() const { return graph_; }
  const std::vector<Lasso>& lassos() const { return lassos_; }
  std::size_t size() const { return lassos_.size(); }

  LassoWord decompose(const Loop& loop) const;
  // Replaces each letter by its lasso and reduces.
  Loop substitute(std::span<const FreeLetter> word) const;

 private:
  struct TreeNode {
    int parent_dir = -1;  // step from the parent, -1 at the root
    int order = 0;        // discovery order
  };

  Path tree_path(Point v) const;
  FreeWord edge_word(Point start, std::span<const Step> steps) const;

  PlanarGraph graph_;
  std::map<Point, TreeNode> tree_;
  std::map<std::pair<Point, Step>, int> edge_index_;  // canonical non-tree edges (N or E)
  std::vector<FreeWord> edge_in_lassos_;              // non-tree edge -> word in lassos
  std::vector<Lasso> lassos_;
};

std::vector<Lasso> lasso_basis(const PlanarGraph& graph, TieBreak tie_break = TieBreak::nesw,
                               Orientation orientation = Orientation::anticlockwise);
LassoWord decompose(const Loop& loop, const LassoBasis& basis);

struct BraidLetter {
  int index = 1;  // 1-based: beta_index
  int sign = 1;
};

struct BraidWord {
  int strands = 1;
  std::vector<BraidLetter> letters;
};

// beta_i . (c_1, ..., c_n) = (c_1, ..., c_{i+1}, c_{i+1} c_i c_{i+1}^-1, ..., c_n);
// a word acts letter by letter starting from its rightmost letter.
std::vector<FreeWord> braid_act(const BraidWord& braid, std::span<const FreeWord> tuple);
std::vector<Loop> braid_act(const BraidWord& braid, std::span<const Loop> tuple);
// sigma_beta, extended multiplicatively from sigma_{beta_i} = (i, i+1);
// braid_act moves the j-th entry, up to conjugation, to position sigma_beta(j).
std::vector<int> braid_permutation(const BraidWord& braid);
// Every word of length <= max_length over beta_1^{+-1}, ..., beta_{n-1}^{+-1}.
std::vector<BraidWord> all_braid_words(int strands, int max_length);
std::string to_string(const BraidWord& braid);

}  // namespace mf::planar
