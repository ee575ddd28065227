#pragma once

// Sparsity-pattern graphs: chordality and the stronger no-induced-P₄/C₄
// property, orderings that make the pattern upper-triangularly closed,
// sparse frames built from graphs, and the rank-4 classification data.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ishi/frame.hpp"

namespace ishi::graphs {

// Simple undirected graph on vertices 1..n, no self-loops.
class PatternGraph {
 public:
  PatternGraph() = default;
  explicit PatternGraph(int vertex_count);

  static PatternGraph from_edges(int vertex_count,
                                 const std::vector<std::pair<int, int>>& edges);
  static PatternGraph path(int n);      // 1−2−…−n
  static PatternGraph cycle(int n);     // path plus {n,1}, n ≥ 3
  static PatternGraph complete(int n);  // K_n
  static PatternGraph star(int n);      // K_{1,n−1} with the center labelled n

  int vertex_count() const { return n_; }
  int edge_count() const;
  bool has_edge(int u, int v) const;
  void add_edge(int u, int v);
  // Ascending (u < v) pairs in lexicographic order.
  std::vector<std::pair<int, int>> edges() const;
  int degree(int v) const;

  friend bool operator==(const PatternGraph&, const PatternGraph&) = default;

 private:
  int n_ = 0;
  std::vector<bool> adj_;  // row-major n×n symmetric incidence

  int at(int u, int v) const { return (u - 1) * n_ + (v - 1); }
  void check_vertex(int v) const;
};

// Verdict of the perfect-elimination search. ordering lists original vertex
// labels; position p holds the vertex labelled p+1 in the new order.
struct ChordalityResult {
  bool chordal = false;
  std::vector<int> ordering;
};

// True iff a perfect elimination ordering exists (every vertex's
// later-placed neighborhood is a clique); greedy simplicial elimination.
ChordalityResult is_chordal(const PatternGraph& g);

struct HomogeneousResult {
  bool homogeneous = false;
  // When true: a labelling under which the edge pattern is closed under both
  // composition rules checked by frames; built by placing a universal vertex
  // of every connected piece last, recursively.
  std::vector<int> ordering;
  // When false: four vertices inducing a P₄ or C₄.
  std::vector<int> obstruction;
};

// True iff g has no induced P₄ and no induced C₄ (exhaustive 4-subset scan).
HomogeneousResult is_homogeneous_chordal(const PatternGraph& g);

// Frame with all block sizes 1 and V_ij = ℝ exactly when
// {labelling[i−1], labelling[j−1]} is an edge. Ambient dimension is
// vertex_count + edge_count. Raises InvalidLabelling when labelling is not a
// permutation of 1..n.
frame::IshiFrame frame_from_graph(const PatternGraph& g, const std::vector<int>& labelling);

enum class SparseClass { homogeneous, not_homogeneous };

struct SparseClassification {
  SparseClass verdict = SparseClass::not_homogeneous;
  std::vector<int> ordering;     // certificate in the positive case
  std::vector<int> obstruction;  // induced P₄/C₄ vertex set otherwise
};

// homogeneous iff is_homogeneous_chordal; in the positive case the frame
// built from the returned ordering is certified to pass the axioms.
SparseClassification classify_sparse(const PatternGraph& g);

struct CatalogEntry {
  std::string name;
  PatternGraph graph;
  std::vector<int> labelling;
  frame::IshiFrame frame;
  int dimension = 0;
  bool homogeneous = false;  // counterexample patterns carry false
};

// The four rank-4 classes (dimensions 7, 8, 9, 10) plus the two
// non-homogeneous counterexample patterns K(P₄) and K(C₄).
std::vector<CatalogEntry> rank4_catalog();

struct IsoClass {
  PatternGraph representative;
  std::uint64_t canonical_bits = 0;  // min edge bitmask over all labellings
  int labelled_count = 0;            // labelled graphs in the class
  int frame_dimension = 0;           // n + |E|
  std::vector<int> ordering;         // homogeneous labelling of the representative
};

// All isomorphism classes of connected homogeneous-chordal graphs on n ≤ 5
// vertices, by brute force over labelled graphs and permutations. Raises
// TooLarge for n > 5.
std::vector<IsoClass> enumerate_connected_homogeneous(int n);

}  // namespace ishi::graphs
