#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "ishi/graphs.hpp"

using namespace ishi;
using namespace ishi::graphs;

namespace {

// Independent re-check of a perfect elimination ordering.
bool valid_peo(const PatternGraph& g, const std::vector<int>& order) {
  const int n = g.vertex_count();
  std::vector<int> pos(static_cast<std::size_t>(n) + 1, 0);
  for (int p = 0; p < n; ++p) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] = p;
  for (int p = 0; p < n; ++p) {
    const int v = order[static_cast<std::size_t>(p)];
    std::vector<int> later;
    for (int u = 1; u <= n; ++u)
      if (g.has_edge(v, u) && pos[static_cast<std::size_t>(u)] > p) later.push_back(u);
    for (std::size_t a = 0; a < later.size(); ++a)
      for (std::size_t b = a + 1; b < later.size(); ++b)
        if (!g.has_edge(later[a], later[b])) return false;
  }
  return true;
}

// Both closure rules of a labelling, re-checked independently.
bool closure_rules_hold(const PatternGraph& g, const std::vector<int>& lab) {
  const int n = g.vertex_count();
  auto e = [&](int p, int q) {
    return g.has_edge(lab[static_cast<std::size_t>(p - 1)], lab[static_cast<std::size_t>(q - 1)]);
  };
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        if (e(i, j) && e(j, k) && !e(i, k)) return false;
        if (e(i, j) && e(i, k) && !e(j, k)) return false;
      }
  return true;
}

PatternGraph graph_with_edges(int n, std::uint64_t bits) {
  PatternGraph g(n);
  int idx = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j, ++idx)
      if (bits & (std::uint64_t{1} << idx)) g.add_edge(i, j);
  return g;
}

}  // namespace

TEST_CASE("pattern graph basics") {
  PatternGraph g(4);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(1, 3));
  CHECK(g.degree(2) == 2);
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}});
  CHECK_THROWS_AS(g.add_edge(1, 1), ShapeMismatch);
  CHECK_THROWS_AS(g.add_edge(0, 2), ShapeMismatch);
  CHECK_THROWS_AS(PatternGraph(0), ShapeMismatch);
}

TEST_CASE("chordality verdicts") {
  const auto p4 = is_chordal(PatternGraph::path(4));
  CHECK(p4.chordal);
  CHECK(valid_peo(PatternGraph::path(4), p4.ordering));
  CHECK_FALSE(is_chordal(PatternGraph::cycle(4)).chordal);
  const auto k4 = is_chordal(PatternGraph::complete(4));
  CHECK(k4.chordal);
  CHECK(valid_peo(PatternGraph::complete(4), k4.ordering));
  CHECK_FALSE(is_chordal(PatternGraph::cycle(5)).chordal);
}

TEST_CASE("homogeneous chordality verdicts") {
  const auto p4 = is_homogeneous_chordal(PatternGraph::path(4));
  CHECK_FALSE(p4.homogeneous);
  CHECK(p4.obstruction == std::vector<int>{1, 2, 3, 4});
  CHECK_FALSE(is_homogeneous_chordal(PatternGraph::cycle(4)).homogeneous);
  const auto star = is_homogeneous_chordal(PatternGraph::star(4));
  CHECK(star.homogeneous);
  CHECK(closure_rules_hold(PatternGraph::star(4), star.ordering));
  // The star center must come last under any closed labelling.
  CHECK(star.ordering.back() == 4);
  // Paw: triangle with a pendant vertex.
  const auto paw = PatternGraph::from_edges(4, {{1, 2}, {1, 3}, {2, 3}, {3, 4}});
  const auto paw_res = is_homogeneous_chordal(paw);
  CHECK(paw_res.homogeneous);
  CHECK(closure_rules_hold(paw, paw_res.ordering));
}

TEST_CASE("orderings from the recursive construction always satisfy the closure rules") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> n_pick(2, 7);
  int produced = 0;
  while (produced < 40) {
    const int n = n_pick(rng);
    std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 2; v <= n; ++v) {
      std::uniform_int_distribution<int> pick(0, v - 1);
      parent[static_cast<std::size_t>(v)] = pick(rng);
    }
    PatternGraph g(n);
    for (int v = 1; v <= n; ++v)
      for (int u = parent[static_cast<std::size_t>(v)]; u != 0;
           u = parent[static_cast<std::size_t>(u)])
        g.add_edge(u, v);
    const auto h = is_homogeneous_chordal(g);
    REQUIRE(h.homogeneous);
    CHECK(closure_rules_hold(g, h.ordering));
    CHECK(valid_peo(g, h.ordering));  // closed labellings eliminate perfectly
    ++produced;
  }
}

TEST_CASE("frame_from_graph dimensions and labelling validation") {
  const auto star = PatternGraph::star(4);
  const auto f = frame_from_graph(star, {1, 2, 3, 4});
  CHECK(f.rank() == 4);
  CHECK(f.ambient_dim() == 7);
  CHECK(f.dim(1, 4) == 1);
  CHECK(f.dim(1, 2) == 0);
  CHECK(f.axioms_pass());
  const auto cyc = frame_from_graph(PatternGraph::cycle(4), {1, 2, 3, 4});
  CHECK(cyc.ambient_dim() == 8);
  CHECK_FALSE(cyc.axioms_pass());
  const auto edgeless = frame_from_graph(PatternGraph(3), {1, 2, 3});
  CHECK(edgeless.ambient_dim() == 3);
  CHECK(edgeless.axioms_pass());
  CHECK_THROWS_AS(frame_from_graph(star, {1, 2, 3}), InvalidLabelling);
  CHECK_THROWS_AS(frame_from_graph(star, {1, 2, 3, 3}), InvalidLabelling);
  CHECK_THROWS_AS(frame_from_graph(star, {0, 2, 3, 4}), InvalidLabelling);
}

TEST_CASE("labellings matter: the star frame needs its center placed last") {
  const auto star = PatternGraph::star(4);
  // Center first leaves position pairs open under the closure rules.
  const auto f = frame_from_graph(star, {4, 1, 2, 3});
  CHECK_FALSE(f.axioms_pass());
}

TEST_CASE("classify_sparse certificates") {
  const auto pos = classify_sparse(PatternGraph::from_edges(4, {{1, 2}, {1, 3}, {2, 3}, {3, 4}}));
  CHECK(pos.verdict == SparseClass::homogeneous);
  CHECK_FALSE(pos.ordering.empty());
  const auto neg = classify_sparse(PatternGraph::path(4));
  CHECK(neg.verdict == SparseClass::not_homogeneous);
  CHECK(neg.obstruction.size() == 4);
  const auto diamond =
      classify_sparse(PatternGraph::from_edges(4, {{1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}}));
  CHECK(diamond.verdict == SparseClass::homogeneous);
}

TEST_CASE("classification is invariant under relabelling") {
  std::mt19937_64 rng(55);
  for (std::uint64_t bits = 0; bits < 64; bits += 7) {
    const PatternGraph g = graph_with_edges(4, bits);
    const auto base = classify_sparse(g).verdict;
    std::vector<int> perm{1, 2, 3, 4};
    for (int rep = 0; rep < 4; ++rep) {
      std::shuffle(perm.begin(), perm.end(), rng);
      PatternGraph h(4);
      for (const auto& [u, v] : g.edges())
        h.add_edge(perm[static_cast<std::size_t>(u - 1)], perm[static_cast<std::size_t>(v - 1)]);
      CHECK(classify_sparse(h).verdict == base);
    }
  }
}

TEST_CASE("rank-4 catalog contents") {
  const auto cat = rank4_catalog();
  REQUIRE(cat.size() == 6);
  CHECK(cat[0].name == "K4(7)");
  CHECK(cat[0].dimension == 7);
  CHECK(cat[0].homogeneous);
  CHECK(cat[0].frame.axioms_pass());
  CHECK(cat[1].name == "K4(8)");
  CHECK(cat[1].dimension == 8);
  CHECK(cat[2].name == "K4(9)");
  CHECK(cat[2].dimension == 9);
  CHECK(cat[3].name == "S4");
  CHECK(cat[3].dimension == 10);
  CHECK(cat[3].frame.axioms_pass());
  CHECK(cat[4].name == "K(P4)");
  CHECK_FALSE(cat[4].homogeneous);
  CHECK_FALSE(cat[4].frame.axioms_pass());
  CHECK(cat[5].name == "K(C4)");
  CHECK_FALSE(cat[5].frame.axioms_pass());
}

TEST_CASE("enumeration of connected homogeneous classes") {
  const auto n2 = enumerate_connected_homogeneous(2);
  REQUIRE(n2.size() == 1);
  CHECK(n2[0].frame_dimension == 3);

  const auto n3 = enumerate_connected_homogeneous(3);
  REQUIRE(n3.size() == 2);
  CHECK(n3[0].frame_dimension == 5);  // the 2-star
  CHECK(n3[1].frame_dimension == 6);  // the triangle

  const auto n4 = enumerate_connected_homogeneous(4);
  REQUIRE(n4.size() == 4);
  std::vector<int> dims;
  for (const auto& cls : n4) dims.push_back(cls.frame_dimension);
  CHECK(dims == std::vector<int>{7, 8, 9, 10});

  // Classes correspond to rooted trees on n nodes: 1, 1, 2, 4, 9.
  CHECK(enumerate_connected_homogeneous(5).size() == 9);
  CHECK(enumerate_connected_homogeneous(1).size() == 1);
  CHECK_THROWS_AS(enumerate_connected_homogeneous(6), TooLarge);
}

TEST_CASE("enumerated representatives build axiom-passing frames") {
  for (int n = 1; n <= 4; ++n) {
    for (const auto& cls : enumerate_connected_homogeneous(n)) {
      const auto f = frame_from_graph(cls.representative, cls.ordering);
      CHECK(f.axioms_pass());
      CHECK(f.ambient_dim() == cls.frame_dimension);
    }
  }
}

TEST_CASE("oracle equivalence at four vertices and below") {
  for (int n = 1; n <= 4; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs); ++bits) {
      const PatternGraph g = graph_with_edges(n, bits);
      const bool predicted = is_homogeneous_chordal(g).homogeneous;
      bool any_labelling = false;
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 1);
      do {
        if (frame_from_graph(g, perm).axioms_pass()) {
          any_labelling = true;
          break;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      CHECK(predicted == any_labelling);
    }
  }
}
