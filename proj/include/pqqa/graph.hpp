#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pqqa/error.hpp"

namespace pqqa {

using node_t = std::uint32_t;

struct Edge {
  node_t u = 0;
  node_t v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  node_t node = 0;
  double weight = 1.0;
};

/// Undirected simple graph with optional real edge weights.
///
/// Stored in canonical form: every edge has u < v and the edge list is
/// sorted. A CSR adjacency (sorted neighbor lists) is built once at
/// construction; the object is immutable afterwards.
class Graph {
 public:
  Graph() = default;

  /// Throws GenerationError on self-loops, out-of-range endpoints or
  /// duplicate undirected edges.
  Graph(std::size_t num_nodes, std::vector<Edge> edges) : n_(num_nodes), edges_(std::move(edges)) {
    for (auto& e : edges_) {
      if (e.u == e.v) throw GenerationError("self-loop on node " + std::to_string(e.u));
      if (e.u >= n_ || e.v >= n_) {
        throw GenerationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                              ") out of range for " + std::to_string(n_) + " nodes");
      }
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    for (std::size_t k = 1; k < edges_.size(); ++k) {
      if (edges_[k].u == edges_[k - 1].u && edges_[k].v == edges_[k - 1].v) {
        throw GenerationError("duplicate edge (" + std::to_string(edges_[k].u) + "," +
                              std::to_string(edges_[k].v) + ")");
      }
    }
    build_adjacency();
  }

  std::size_t num_nodes() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const Neighbor> neighbors(node_t i) const noexcept {
    return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
  }
  std::size_t degree(node_t i) const noexcept { return offsets_[i + 1] - offsets_[i]; }

  bool has_edge(node_t a, node_t b) const noexcept {
    if (a >= n_ || b >= n_) return false;
    auto nb = neighbors(a);
    auto it = std::lower_bound(nb.begin(), nb.end(), b,
                               [](const Neighbor& x, node_t key) { return x.node < key; });
    return it != nb.end() && it->node == b;
  }

  bool unit_weights() const noexcept {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight == 1.0; });
  }

  /// Unweighted complement (all non-adjacent pairs become unit edges).
  Graph complement() const {
    std::vector<Edge> out;
    for (node_t i = 0; i < n_; ++i) {
      for (node_t j = i + 1; j < n_; ++j) {
        if (!has_edge(i, j)) out.push_back({i, j, 1.0});
      }
    }
    return Graph(n_, std::move(out));
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  void build_adjacency() {
    offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adjacency_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // Sorted edge order yields sorted neighbor lists for the u side; the v side
    // needs an explicit sort.
    for (const auto& e : edges_) {
      adjacency_[cursor[e.u]++] = {e.v, e.weight};
      adjacency_[cursor[e.v]++] = {e.u, e.weight};
    }
    for (node_t i = 0; i < n_; ++i) {
      std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
                [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    }
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

enum class GraphFamily { ER, BA, RRG, Queen, Mycielski, Book, File };

inline std::string_view to_string(GraphFamily f) {
  switch (f) {
    case GraphFamily::ER: return "er";
    case GraphFamily::BA: return "ba";
    case GraphFamily::RRG: return "rrg";
    case GraphFamily::Queen: return "queen";
    case GraphFamily::Mycielski: return "mycielski";
    case GraphFamily::Book: return "book";
    case GraphFamily::File: return "file";
  }
  return "file";
}

struct InstanceMeta {
  std::string name;
  GraphFamily family = GraphFamily::File;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> params;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("non-numeric " + std::string(what) + " '" + std::string(tok) + "'", line);
  }
  return value;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    fn(text.substr(pos, end - pos), line_no);
    pos = end + 1;
  }
}

inline std::uint64_t pair_key(node_t a, node_t b) { return (std::uint64_t{a} << 32) | b; }

}  // namespace detail

/// Reads the DIMACS edge format ("p edge N M", "e i j", 1-indexed, "c"
/// comments). Files that list every edge in both directions (as the COLOR
/// benchmark files do) are accepted; any other repeat is an error.
inline Graph parse_dimacs(std::string_view text) {
  bool have_header = false;
  std::size_t n = 0;
  std::size_t declared = 0;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> ordered;
  std::size_t mirrored = 0;

  detail::for_each_line(text, [&](std::string_view line, std::size_t ln) {
    auto tok = detail::split_ws(line);
    if (tok.empty() || tok[0] == "c") return;
    if (tok[0] == "p") {
      if (have_header) throw ParseError("second problem line", ln);
      if (tok.size() != 4 || (tok[1] != "edge" && tok[1] != "col")) {
        throw ParseError("malformed header, expected 'p edge N M'", ln);
      }
      n = detail::parse_number<std::size_t>(tok[2], ln, "node count");
      declared = detail::parse_number<std::size_t>(tok[3], ln, "edge count");
      have_header = true;
      return;
    }
    if (tok[0] == "e") {
      if (!have_header) throw ParseError("edge before 'p edge' header", ln);
      if (tok.size() < 3) throw ParseError("malformed edge line", ln);
      auto i = detail::parse_number<std::size_t>(tok[1], ln, "node index");
      auto j = detail::parse_number<std::size_t>(tok[2], ln, "node index");
      if (i < 1 || i > n || j < 1 || j > n) {
        throw ParseError("index out of range (" + std::to_string(i) + "," + std::to_string(j) +
                             ") for " + std::to_string(n) + " nodes",
                         ln);
      }
      if (i == j) throw ParseError("self-loop on node " + std::to_string(i), ln);
      auto a = static_cast<node_t>(i - 1);
      auto b = static_cast<node_t>(j - 1);
      if (!ordered.insert(detail::pair_key(a, b)).second) {
        throw ParseError("duplicate edge (" + std::to_string(i) + "," + std::to_string(j) + ")", ln);
      }
      if (ordered.count(detail::pair_key(b, a))) {
        ++mirrored;
        return;
      }
      edges.push_back({std::min(a, b), std::max(a, b), 1.0});
      return;
    }
    throw ParseError("unknown line type '" + std::string(tok[0]) + "'", ln);
  });

  if (!have_header) throw ParseError("missing 'p edge N M' header", 0);
  if (mirrored != 0 && mirrored != edges.size()) {
    throw ParseError("duplicate edge: " + std::to_string(mirrored) + " of " + std::to_string(edges.size()) +
                         " edges repeated in reverse direction",
                     0);
  }
  std::size_t listed = edges.size() + mirrored;
  if (listed != declared) {
    throw ParseError("header declares " + std::to_string(declared) + " edges, found " + std::to_string(listed),
                     0);
  }
  return Graph(n, std::move(edges));
}

/// Reads "i j w" lines (0-indexed, w optional and defaulting to 1) with an
/// optional leading "N M" line. Without a header N is max index + 1.
/// Zero weights are kept. Lines starting with '#' are comments.
inline Graph parse_weighted_edgelist(std::string_view text) {
  bool first = true;
  bool have_header = false;
  std::size_t n = 0;
  std::size_t declared = 0;
  std::size_t max_index = 0;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::size_t> edge_line;

  detail::for_each_line(text, [&](std::string_view line, std::size_t ln) {
    auto tok = detail::split_ws(line);
    if (tok.empty() || tok[0].front() == '#') return;
    if (first && tok.size() == 2) {
      first = false;
      n = detail::parse_number<std::size_t>(tok[0], ln, "node count");
      declared = detail::parse_number<std::size_t>(tok[1], ln, "edge count");
      have_header = true;
      return;
    }
    first = false;
    if (tok.size() != 3 && tok.size() != 2) throw ParseError("expected 'i j w'", ln);
    auto i = detail::parse_number<std::size_t>(tok[0], ln, "node index");
    auto j = detail::parse_number<std::size_t>(tok[1], ln, "node index");
    double w = tok.size() == 3 ? detail::parse_number<double>(tok[2], ln, "weight") : 1.0;
    if (i == j) throw ParseError("self-loop on node " + std::to_string(i), ln);
    if (have_header && (i >= n || j >= n)) {
      throw ParseError("index out of range (" + std::to_string(i) + "," + std::to_string(j) +
                           "), inconsistent with N=" + std::to_string(n),
                       ln);
    }
    auto a = static_cast<node_t>(std::min(i, j));
    auto b = static_cast<node_t>(std::max(i, j));
    if (!seen.insert(detail::pair_key(a, b)).second) {
      throw ParseError("duplicate edge (" + std::to_string(i) + "," + std::to_string(j) + ")", ln);
    }
    max_index = std::max({max_index, i, j});
    edges.push_back({a, b, w});
  });

  if (have_header) {
    if (edges.size() != declared) {
      throw ParseError("header declares " + std::to_string(declared) + " edges, found " +
                           std::to_string(edges.size()),
                       0);
    }
  } else {
    n = edges.empty() ? 0 : max_index + 1;
  }
  return Graph(n, std::move(edges));
}

/// Canonical weighted edge list: "N M" header then sorted "i j w" lines.
inline std::string serialize_weighted_edgelist(const Graph& g) {
  std::ostringstream os;
  os.precision(17);
  os << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.edges()) os << e.u << ' ' << e.v << ' ' << e.weight << '\n';
  return os.str();
}

/// DIMACS output; weights are not representable, so non-unit weights throw.
inline std::string serialize_dimacs(const Graph& g) {
  if (!g.unit_weights()) throw Error("DIMACS output requires unit edge weights");
  std::ostringstream os;
  os << "p edge " << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.edges()) os << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
  return os.str();
}

}  // namespace pqqa
