#pragma once

#include <functional>
#include <vector>

#include "vernation/excursion.hpp"

namespace vernation {

// Finite rooted ordered tree given by its child counts in depth-first
// order; valid iff the Lukasiewicz walk stays non-negative before
// finishing at -1.
struct PlaneTree {
  std::vector<int> child_counts;                // by depth-first index
  std::vector<int> parent;                      // -1 at the root
  std::vector<std::vector<int>> children;       // depth-first indices
  std::vector<int> depth;

  int size() const { return int(child_counts.size()); }
  int height() const;
};

PlaneTree parse_tree(const std::vector<int>& child_counts);

struct TreeProcesses {
  std::vector<int> height;     // H_i, size n
  std::vector<int> contour;    // C_i, size 2n-1
  std::vector<int> lukasiewicz;  // L_i, size n+1
  std::vector<int> xi;         // largest depth-first index explored, size 2n-1
  std::vector<int> contour_vertex;  // c(i) as depth-first index, size 2n-1
};
TreeProcesses processes(const PlaneTree& tree);

// The slope -1 contour-adapted walk W and its excursion w: corner values
// are exact integers at times i / (2n - 1); jumps of height k_u + 1 sit
// at first-visit times.
struct WalkCoding {
  Excursion excursion;
  int time_scale = 1;                 // 2 * size - 1
  std::vector<double> first_visit;    // r(u) per depth-first index
  std::vector<int> walk;              // W_i at integer times, size 2n
};
WalkCoding w_process(const PlaneTree& tree);

// Discrete looptree multigraph: first-child, last-child, consecutive
// sibling, and leaf self-loop edges.
struct LoopGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;          // with multiplicity
  std::vector<std::vector<int>> adjacency;         // self-loops excluded
};
LoopGraph loop_graph(const PlaneTree& tree);

int bfs_distance(const LoopGraph& graph, int u, int v);

// A family of sibling permutations: k -> permutation of {1..k} (1-based
// in psi[1..k]).
using PermutationFamily = std::function<std::vector<int>(int)>;
PermutationFamily identity_family();
PermutationFamily sibling_family();  // the deterministic odd/even split

PlaneTree permute_tree(const PlaneTree& tree, const PermutationFamily& family);

// True iff every edge lies on at most one simple cycle (self-loops are
// 1-cycles, parallel pairs are 2-cycles). Throws on disconnected input.
bool is_cactus(const LoopGraph& graph);

}  // namespace vernation
