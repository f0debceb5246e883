#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace critising {

struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on vertices [0, n). Immutable after construction.
class Graph {
 public:
  Graph() = default;
  // Validates: no loops, no duplicates, ids in range. Edges are normalized
  // to u < v and stored sorted.
  Graph(int n, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  int max_degree() const { return max_degree_; }
  bool is_regular(int d) const;

  // Returns a copy with vertex v renamed to perm[v].
  Graph relabeled(const std::vector<int>& perm) const;

 private:
  int n_ = 0;
  int max_degree_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

// Per-vertex side of a cut; stored as +1 / -1 so it doubles as the sign
// vector of an orthant of magnetization space.
class CutAssignment {
 public:
  CutAssignment() = default;
  explicit CutAssignment(std::vector<int> signs);

  static CutAssignment all_plus(int n);
  // Parses a string over {'+', '-'}.
  static CutAssignment parse(std::string_view text);
  // Vertex v gets '-' iff bit v of mask is set.
  static CutAssignment from_mask(int n, std::uint64_t mask);

  int size() const { return static_cast<int>(signs_.size()); }
  int operator[](int v) const { return signs_[v]; }
  const std::vector<int>& signs() const { return signs_; }
  CutAssignment flipped() const;
  std::string to_string() const;

  friend bool operator==(const CutAssignment&, const CutAssignment&) = default;

 private:
  std::vector<int> signs_;
};

// Edge-list document: header "n m" followed by m lines "u v", u < v.
Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);
Graph read_graph_file(const std::string& path);

// Pairing-model d-regular graph with restart on loops or parallel edges.
Graph random_regular(int n, int d, std::uint64_t seed, int max_attempts = 10000);

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph complete_bipartite(int a, int b);

std::int64_t cut_size(const Graph& g, const CutAssignment& cut);

struct MaxCutResult {
  std::int64_t size = 0;
  CutAssignment witness;
};

inline constexpr int kMaxCutEnumerationLimit = 30;

// Exhaustive search with vertex 0 pinned to '+'. Among optimal cuts the
// lexicographically smallest '+'/'-' string wins, so the result does not
// depend on the thread count.
MaxCutResult max_cut_exact(const Graph& g, int threads = 1);

}  // namespace critising
