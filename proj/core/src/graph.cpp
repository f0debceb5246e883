#include "critising/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "critising/error.hpp"
#include "parallel.hpp"

namespace critising {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedInput: return "malformed_input";
    case ErrorCode::kDuplicateEdge: return "duplicate_edge";
    case ErrorCode::kSelfLoop: return "self_loop";
    case ErrorCode::kVertexOutOfRange: return "vertex_out_of_range";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kGenerationFailed: return "generation_failed";
    case ErrorCode::kTooLarge: return "too_large";
    case ErrorCode::kBudgetExceeded: return "budget_exceeded";
    case ErrorCode::kLengthMismatch: return "length_mismatch";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kOverflow: return "overflow";
    case ErrorCode::kNotSymmetric: return "not_symmetric";
    case ErrorCode::kNoConvergence: return "no_convergence";
    case ErrorCode::kVerificationFailed: return "verification_failed";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  require(n >= 0, ErrorCode::kMalformedInput, "negative vertex count");
  for (auto& e : edges_) {
    require(e.u >= 0 && e.u < n && e.v >= 0 && e.v < n, ErrorCode::kVertexOutOfRange,
            "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                ") has a vertex outside [0, " + std::to_string(n) + ")");
    require(e.u != e.v, ErrorCode::kSelfLoop, "self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  require(dup == edges_.end(), ErrorCode::kDuplicateEdge,
          dup == edges_.end() ? std::string{}
                              : "duplicate edge (" + std::to_string(dup->u) + ", " +
                                    std::to_string(dup->v) + ")");
  adjacency_.assign(n, {});
  for (const auto& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (const auto& adj : adjacency_) {
    max_degree_ = std::max(max_degree_, static_cast<int>(adj.size()));
  }
}

bool Graph::is_regular(int d) const {
  return std::all_of(adjacency_.begin(), adjacency_.end(),
                     [d](const auto& adj) { return static_cast<int>(adj.size()) == d; });
}

Graph Graph::relabeled(const std::vector<int>& perm) const {
  require(static_cast<int>(perm.size()) == n_, ErrorCode::kLengthMismatch,
          "permutation length differs from vertex count");
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back({perm[e.u], perm[e.v]});
  return Graph(n_, std::move(out));
}

CutAssignment::CutAssignment(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_) {
    require(s == 1 || s == -1, ErrorCode::kMalformedInput, "cut sides must be +1 or -1");
  }
}

CutAssignment CutAssignment::all_plus(int n) { return CutAssignment(std::vector<int>(n, 1)); }

CutAssignment CutAssignment::parse(std::string_view text) {
  std::vector<int> signs;
  signs.reserve(text.size());
  for (char ch : text) {
    if (ch == '+') {
      signs.push_back(1);
    } else if (ch == '-') {
      signs.push_back(-1);
    } else {
      fail(ErrorCode::kMalformedInput, "cut string may contain only '+' and '-'");
    }
  }
  return CutAssignment(std::move(signs));
}

CutAssignment CutAssignment::from_mask(int n, std::uint64_t mask) {
  std::vector<int> signs(n);
  for (int v = 0; v < n; ++v) signs[v] = ((mask >> v) & 1U) ? -1 : 1;
  return CutAssignment(std::move(signs));
}

CutAssignment CutAssignment::flipped() const {
  std::vector<int> signs(signs_);
  for (int& s : signs) s = -s;
  return CutAssignment(std::move(signs));
}

std::string CutAssignment::to_string() const {
  std::string out;
  out.reserve(signs_.size());
  for (int s : signs_) out.push_back(s > 0 ? '+' : '-');
  return out;
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string_view::npos) {
    lines.pop_back();
  }
  return lines;
}

// Exactly two non-negative integers separated by whitespace.
bool parse_pair(std::string_view line, long long& a, long long& b) {
  auto skip = [&](std::size_t i) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    return i;
  };
  auto number = [&](std::size_t& i, long long& out) {
    i = skip(i);
    const char* first = line.data() + i;
    auto [ptr, ec] = std::from_chars(first, line.data() + line.size(), out);
    if (ec != std::errc{} || ptr == first) return false;
    i += static_cast<std::size_t>(ptr - first);
    return true;
  };
  std::size_t i = 0;
  if (!number(i, a)) return false;
  if (i >= line.size() || (line[i] != ' ' && line[i] != '\t')) return false;
  if (!number(i, b)) return false;
  return skip(i) == line.size();
}

}  // namespace

Graph parse_graph(std::string_view text) {
  auto lines = split_lines(text);
  require(!lines.empty(), ErrorCode::kMalformedInput, "empty graph document");
  long long n = 0;
  long long m = 0;
  require(parse_pair(lines[0], n, m) && n >= 0 && m >= 0, ErrorCode::kMalformedInput,
          "line 1: expected header \"n m\"");
  require(n <= (1LL << 30), ErrorCode::kTooLarge, "vertex count too large");
  require(static_cast<long long>(lines.size()) - 1 == m, ErrorCode::kMalformedInput,
          "header announces " + std::to_string(m) + " edges but " +
              std::to_string(lines.size() - 1) + " edge lines follow");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::set<std::pair<long long, long long>> seen;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    long long u = 0;
    long long v = 0;
    const std::string where = "line " + std::to_string(k + 1) + ": ";
    require(parse_pair(lines[k], u, v), ErrorCode::kMalformedInput,
            where + "expected \"u v\"");
    require(u != v, ErrorCode::kSelfLoop, where + "self-loop at vertex " + std::to_string(u));
    require(u >= 0 && v >= 0 && u < n && v < n, ErrorCode::kVertexOutOfRange,
            where + "vertex id outside [0, " + std::to_string(n) + ")");
    require(u < v, ErrorCode::kMalformedInput, where + "edges must be written with u < v");
    require(seen.emplace(u, v).second, ErrorCode::kDuplicateEdge,
            where + "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

std::string format_graph(const Graph& g) {
  std::ostringstream os;
  os << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.edges()) os << e.u << ' ' << e.v << '\n';
  return os.str();
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open graph file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_graph(buffer.str());
}

Graph random_regular(int n, int d, std::uint64_t seed, int max_attempts) {
  require(d >= 0 && n > d, ErrorCode::kInfeasible,
          "no simple " + std::to_string(d) + "-regular graph on " + std::to_string(n) +
              " vertices (need n > d)");
  require((static_cast<long long>(n) * d) % 2 == 0, ErrorCode::kInfeasible,
          "n * d must be even");
  std::mt19937_64 rng(seed);
  std::vector<int> points(static_cast<std::size_t>(n) * d);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    for (int v = 0; v < n; ++v) {
      std::fill_n(points.begin() + static_cast<std::ptrdiff_t>(v) * d, d, v);
    }
    std::shuffle(points.begin(), points.end(), rng);
    std::set<std::pair<int, int>> seen;
    std::vector<Edge> edges;
    bool ok = true;
    for (std::size_t k = 0; k + 1 < points.size(); k += 2) {
      int u = std::min(points[k], points[k + 1]);
      int v = std::max(points[k], points[k + 1]);
      if (u == v || !seen.emplace(u, v).second) {
        ok = false;
        break;
      }
      edges.push_back({u, v});
    }
    if (ok) return Graph(n, std::move(edges));
  }
  fail(ErrorCode::kGenerationFailed,
       "pairing model did not produce a simple graph within " +
           std::to_string(max_attempts) + " attempts");
}

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph(n, std::move(edges));
}

Graph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
  return Graph(n, std::move(edges));
}

Graph complete_bipartite(int a, int b) {
  std::vector<Edge> edges;
  for (int u = 0; u < a; ++u) {
    for (int v = 0; v < b; ++v) edges.push_back({u, a + v});
  }
  return Graph(a + b, std::move(edges));
}

std::int64_t cut_size(const Graph& g, const CutAssignment& cut) {
  require(cut.size() == g.num_vertices(), ErrorCode::kLengthMismatch,
          "cut assignment length " + std::to_string(cut.size()) + " differs from n = " +
              std::to_string(g.num_vertices()));
  std::int64_t total = 0;
  for (const auto& e : g.edges()) total += cut[e.u] != cut[e.v];
  return total;
}

namespace {

// Key under which a smaller value means a lexicographically smaller '+'/'-'
// string: vertex 0 is the most significant position.
std::uint64_t lex_key(std::uint64_t mask, int n) {
  std::uint64_t key = 0;
  for (int v = 0; v < n; ++v) key = (key << 1) | ((mask >> v) & 1U);
  return key;
}

struct ChunkBest {
  std::int64_t size = -1;
  std::uint64_t mask = 0;
};

}  // namespace

MaxCutResult max_cut_exact(const Graph& g, int threads) {
  const int n = g.num_vertices();
  require(n <= kMaxCutEnumerationLimit, ErrorCode::kTooLarge,
          "max_cut_exact enumerates 2^(n-1) cuts; n = " + std::to_string(n) + " exceeds " +
              std::to_string(kMaxCutEnumerationLimit));
  if (n <= 1) return {0, CutAssignment::all_plus(n)};

  // Vertex 0 stays on '+'; vertices 1..n-1 are free. The top `fixed` free
  // vertices select a chunk, the rest are walked in Gray-code order.
  const int free_vertices = n - 1;
  const int fixed = std::min(free_vertices, 6);
  const int walked = free_vertices - fixed;
  const int num_chunks = 1 << fixed;
  std::vector<ChunkBest> best(num_chunks);

  detail::for_each_chunk(num_chunks, threads, [&](int chunk) {
    std::uint64_t mask = static_cast<std::uint64_t>(chunk) << (1 + walked);
    std::vector<int> side(n);
    for (int v = 0; v < n; ++v) side[v] = ((mask >> v) & 1U) ? -1 : 1;
    std::int64_t cut = 0;
    for (const auto& e : g.edges()) cut += side[e.u] != side[e.v];
    ChunkBest local{cut, mask};
    const std::uint64_t steps = std::uint64_t{1} << walked;
    for (std::uint64_t k = 1; k < steps; ++k) {
      const int v = 1 + std::countr_zero(k);
      std::int64_t same = 0;
      for (int u : g.neighbors(v)) same += side[u] == side[v];
      // Flipping v cuts the previously uncut incident edges and uncuts the rest.
      cut += 2 * same - g.degree(v);
      side[v] = -side[v];
      mask ^= std::uint64_t{1} << v;
      if (cut > local.size ||
          (cut == local.size && lex_key(mask, n) < lex_key(local.mask, n))) {
        local = {cut, mask};
      }
    }
    best[chunk] = local;
  });

  ChunkBest winner = best[0];
  for (const auto& b : best) {
    if (b.size > winner.size ||
        (b.size == winner.size && lex_key(b.mask, n) < lex_key(winner.mask, n))) {
      winner = b;
    }
  }
  return {winner.size, CutAssignment::from_mask(n, winner.mask)};
}

}  // namespace critising
