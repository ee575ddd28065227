#include "ishi/graphs.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "ishi/errors.hpp"

namespace ishi::graphs {

PatternGraph::PatternGraph(int vertex_count) : n_(vertex_count) {
  if (vertex_count < 1) throw ShapeMismatch("a graph needs at least one vertex");
  adj_.assign(static_cast<std::size_t>(n_) * n_, false);
}

PatternGraph PatternGraph::from_edges(int vertex_count,
                                      const std::vector<std::pair<int, int>>& edges) {
  PatternGraph g(vertex_count);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

PatternGraph PatternGraph::path(int n) {
  PatternGraph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(v, v + 1);
  return g;
}

PatternGraph PatternGraph::cycle(int n) {
  if (n < 3) throw ShapeMismatch("a cycle needs at least three vertices");
  PatternGraph g = path(n);
  g.add_edge(n, 1);
  return g;
}

PatternGraph PatternGraph::complete(int n) {
  PatternGraph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) g.add_edge(u, v);
  return g;
}

PatternGraph PatternGraph::star(int n) {
  PatternGraph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(v, n);
  return g;
}

void PatternGraph::check_vertex(int v) const {
  if (v < 1 || v > n_) throw ShapeMismatch("vertex label out of range");
}

int PatternGraph::edge_count() const {
  int c = 0;
  for (int u = 1; u <= n_; ++u)
    for (int v = u + 1; v <= n_; ++v)
      if (adj_[static_cast<std::size_t>(at(u, v))]) ++c;
  return c;
}

bool PatternGraph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return false;
  return adj_[static_cast<std::size_t>(at(u, v))];
}

void PatternGraph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw ShapeMismatch("self-loops are not allowed");
  adj_[static_cast<std::size_t>(at(u, v))] = true;
  adj_[static_cast<std::size_t>(at(v, u))] = true;
}

std::vector<std::pair<int, int>> PatternGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 1; u <= n_; ++u)
    for (int v = u + 1; v <= n_; ++v)
      if (adj_[static_cast<std::size_t>(at(u, v))]) out.emplace_back(u, v);
  return out;
}

int PatternGraph::degree(int v) const {
  check_vertex(v);
  int d = 0;
  for (int u = 1; u <= n_; ++u)
    if (u != v && adj_[static_cast<std::size_t>(at(v, u))]) ++d;
  return d;
}

ChordalityResult is_chordal(const PatternGraph& g) {
  const int n = g.vertex_count();
  std::vector<bool> removed(static_cast<std::size_t>(n) + 1, false);
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 1; v <= n && pick < 0; ++v) {
      if (removed[static_cast<std::size_t>(v)]) continue;
      // v is simplicial when its remaining neighborhood is a clique.
      bool simplicial = true;
      for (int a = 1; a <= n && simplicial; ++a) {
        if (removed[static_cast<std::size_t>(a)] || a == v || !g.has_edge(v, a)) continue;
        for (int b = a + 1; b <= n && simplicial; ++b) {
          if (removed[static_cast<std::size_t>(b)] || b == v || !g.has_edge(v, b)) continue;
          if (!g.has_edge(a, b)) simplicial = false;
        }
      }
      if (simplicial) pick = v;
    }
    if (pick < 0) return {false, {}};
    removed[static_cast<std::size_t>(pick)] = true;
    order.push_back(pick);
  }
  return {true, order};
}

namespace {

std::vector<std::vector<int>> components_within(const PatternGraph& g,
                                                const std::vector<int>& subset) {
  std::vector<bool> in(static_cast<std::size_t>(g.vertex_count()) + 1, false);
  for (int v : subset) in[static_cast<std::size_t>(v)] = true;
  std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()) + 1, false);
  std::vector<std::vector<int>> comps;
  for (int s : subset) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::vector<int> comp{s};
    seen[static_cast<std::size_t>(s)] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (int u : subset) {
        if (!seen[static_cast<std::size_t>(u)] && g.has_edge(comp[head], u)) {
          seen[static_cast<std::size_t>(u)] = true;
          comp.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

// Places a universal vertex of every connected piece last, recursively.
void order_subset(const PatternGraph& g, const std::vector<int>& subset, std::vector<int>& out) {
  for (const auto& comp : components_within(g, subset)) {
    int universal = -1;
    for (int v : comp) {
      bool all = true;
      for (int u : comp)
        if (u != v && !g.has_edge(u, v)) {
          all = false;
          break;
        }
      if (all) {
        universal = v;
        break;
      }
    }
    if (universal < 0) {
      throw CertificationError("connected piece without a universal vertex after the subset scan");
    }
    std::vector<int> rest;
    for (int v : comp)
      if (v != universal) rest.push_back(v);
    order_subset(g, rest, out);
    out.push_back(universal);
  }
}

// Positions p < q carry an edge iff the underlying labels do; both closure
// rules must hold: (p,q),(q,s) ⟹ (p,s) and (p,q),(p,s) with q<s ⟹ (q,s).
bool ordering_closed(const PatternGraph& g, const std::vector<int>& lab) {
  const int n = g.vertex_count();
  auto e = [&](int p, int q) {
    return g.has_edge(lab[static_cast<std::size_t>(p - 1)], lab[static_cast<std::size_t>(q - 1)]);
  };
  for (int p = 1; p <= n; ++p) {
    for (int q = p + 1; q <= n; ++q) {
      if (!e(p, q)) continue;
      for (int s = q + 1; s <= n; ++s) {
        if (e(q, s) && !e(p, s)) return false;
        if (e(p, s) && !e(q, s)) return false;
      }
    }
  }
  return true;
}

}  // namespace

HomogeneousResult is_homogeneous_chordal(const PatternGraph& g) {
  const int n = g.vertex_count();
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      for (int c = b + 1; c <= n; ++c) {
        for (int d = c + 1; d <= n; ++d) {
          const int quad[4] = {a, b, c, d};
          int deg[4] = {0, 0, 0, 0};
          int edges = 0;
          for (int x = 0; x < 4; ++x)
            for (int y = x + 1; y < 4; ++y)
              if (g.has_edge(quad[x], quad[y])) {
                ++edges;
                ++deg[x];
                ++deg[y];
              }
          std::sort(deg, deg + 4);
          const bool p4 = edges == 3 && deg[0] == 1 && deg[1] == 1 && deg[2] == 2 && deg[3] == 2;
          const bool c4 = edges == 4 && deg[0] == 2 && deg[3] == 2;
          if (p4 || c4) return {false, {}, {a, b, c, d}};
        }
      }
    }
  }
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 1);
  HomogeneousResult res;
  res.homogeneous = true;
  order_subset(g, all, res.ordering);
  if (!ordering_closed(g, res.ordering)) {
    throw CertificationError("constructed ordering violates a closure rule");
  }
  return res;
}

frame::IshiFrame frame_from_graph(const PatternGraph& g, const std::vector<int>& labelling) {
  const int n = g.vertex_count();
  if (static_cast<int>(labelling.size()) != n) {
    throw InvalidLabelling("labelling size differs from the vertex count");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int v : labelling) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw InvalidLabelling("labelling is not a permutation of the vertices");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  std::map<std::pair<int, int>, std::vector<dense::Mat>> gens;
  dense::Mat one(1, 1);
  one(0, 0) = 1.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (g.has_edge(labelling[static_cast<std::size_t>(i - 1)],
                     labelling[static_cast<std::size_t>(j - 1)])) {
        gens[{i, j}] = {one};
      }
    }
  }
  return frame::make_frame(std::vector<int>(static_cast<std::size_t>(n), 1), gens);
}

SparseClassification classify_sparse(const PatternGraph& g) {
  const HomogeneousResult h = is_homogeneous_chordal(g);
  SparseClassification out;
  if (!h.homogeneous) {
    out.verdict = SparseClass::not_homogeneous;
    out.obstruction = h.obstruction;
    return out;
  }
  out.verdict = SparseClass::homogeneous;
  out.ordering = h.ordering;
  if (!frame_from_graph(g, h.ordering).axioms_pass()) {
    throw CertificationError("frame from a homogeneous-chordal ordering failed the axioms");
  }
  return out;
}

std::vector<CatalogEntry> rank4_catalog() {
  std::vector<int> natural{1, 2, 3, 4};
  auto entry = [&](std::string name, PatternGraph g, bool homogeneous) {
    frame::IshiFrame f = frame_from_graph(g, natural);
    const int dim = f.ambient_dim();
    return CatalogEntry{std::move(name), std::move(g), natural, std::move(f), dim, homogeneous};
  };
  std::vector<CatalogEntry> out;
  out.push_back(entry("K4(7)", PatternGraph::from_edges(4, {{1, 4}, {2, 4}, {3, 4}}), true));
  out.push_back(
      entry("K4(8)", PatternGraph::from_edges(4, {{2, 3}, {1, 4}, {2, 4}, {3, 4}}), true));
  out.push_back(entry(
      "K4(9)", PatternGraph::from_edges(4, {{1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}}), true));
  out.push_back(entry("S4", PatternGraph::complete(4), true));
  out.push_back(entry("K(P4)", PatternGraph::from_edges(4, {{1, 2}, {1, 4}, {3, 4}}), false));
  out.push_back(
      entry("K(C4)", PatternGraph::from_edges(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}), false));
  return out;
}

namespace {

std::uint64_t edge_bits(const PatternGraph& g, const std::vector<int>& perm) {
  // Bit index runs over pairs (i<j) in lexicographic order of new labels.
  const int n = g.vertex_count();
  std::uint64_t bits = 0;
  int idx = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j, ++idx) {
      if (g.has_edge(perm[static_cast<std::size_t>(i - 1)], perm[static_cast<std::size_t>(j - 1)]))
        bits |= (std::uint64_t{1} << idx);
    }
  }
  return bits;
}

std::uint64_t canonical_bits(const PatternGraph& g) {
  std::vector<int> perm(static_cast<std::size_t>(g.vertex_count()));
  std::iota(perm.begin(), perm.end(), 1);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    best = std::min(best, edge_bits(g, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

PatternGraph graph_from_bits(int n, std::uint64_t bits) {
  PatternGraph g(n);
  int idx = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j, ++idx)
      if (bits & (std::uint64_t{1} << idx)) g.add_edge(i, j);
  return g;
}

bool connected(const PatternGraph& g) {
  std::vector<int> all(static_cast<std::size_t>(g.vertex_count()));
  std::iota(all.begin(), all.end(), 1);
  return components_within(g, all).size() == 1;
}

}  // namespace

std::vector<IsoClass> enumerate_connected_homogeneous(int n) {
  if (n > 5) throw TooLarge("enumeration is limited to five vertices");
  if (n < 1) throw ShapeMismatch("a graph needs at least one vertex");
  const int pairs = n * (n - 1) / 2;
  std::map<std::uint64_t, IsoClass> classes;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs); ++bits) {
    const PatternGraph g = graph_from_bits(n, bits);
    if (!connected(g)) continue;
    const HomogeneousResult h = is_homogeneous_chordal(g);
    if (!h.homogeneous) continue;
    const std::uint64_t canon = canonical_bits(g);
    auto it = classes.find(canon);
    if (it == classes.end()) {
      PatternGraph rep = graph_from_bits(n, canon);
      const HomogeneousResult hr = is_homogeneous_chordal(rep);
      classes.emplace(canon, IsoClass{std::move(rep), canon, 1, n + g.edge_count(), hr.ordering});
    } else {
      ++it->second.labelled_count;
    }
  }
  std::vector<IsoClass> out;
  out.reserve(classes.size());
  for (auto& [bits, cls] : classes) out.push_back(std::move(cls));
  std::sort(out.begin(), out.end(), [](const IsoClass& a, const IsoClass& b) {
    return std::tie(a.frame_dimension, a.canonical_bits) <
           std::tie(b.frame_dimension, b.canonical_bits);
  });
  return out;
}

}  // namespace ishi::graphs
