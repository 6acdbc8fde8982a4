#include "vernation/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace vernation {

int PlaneTree::height() const {
  int h = 0;
  for (int d : depth) h = std::max(h, d);
  return h;
}

PlaneTree parse_tree(const std::vector<int>& child_counts) {
  const int n = int(child_counts.size());
  if (n == 0) throw std::invalid_argument("plane tree: empty child-count sequence");
  long long walk = 0;
  for (int i = 0; i < n; ++i) {
    if (child_counts[i] < 0) throw std::invalid_argument("plane tree: negative child count");
    walk += child_counts[i] - 1;
    if (i + 1 < n && walk < 0)
      throw std::invalid_argument("plane tree: Lukasiewicz walk hits -1 early");
  }
  if (walk != -1) throw std::invalid_argument("plane tree: Lukasiewicz walk must end at -1");

  PlaneTree tree;
  tree.child_counts = child_counts;
  tree.parent.assign(n, -1);
  tree.children.assign(n, {});
  tree.depth.assign(n, 0);
  std::vector<int> stack;
  for (int i = 0; i < n; ++i) {
    while (!stack.empty() && int(tree.children[stack.back()].size()) == child_counts[stack.back()])
      stack.pop_back();
    if (!stack.empty()) {
      tree.parent[i] = stack.back();
      tree.children[stack.back()].push_back(i);
      tree.depth[i] = tree.depth[stack.back()] + 1;
    }
    stack.push_back(i);
  }
  return tree;
}

TreeProcesses processes(const PlaneTree& tree) {
  const int n = tree.size();
  TreeProcesses p;
  p.height.resize(n);
  for (int i = 0; i < n; ++i) p.height[i] = tree.depth[i];
  p.lukasiewicz.resize(n + 1);
  p.lukasiewicz[0] = 0;
  for (int i = 0; i < n; ++i)
    p.lukasiewicz[i + 1] = p.lukasiewicz[i] + tree.child_counts[i] - 1;

  // contour: walk edges left to right
  const int steps = 2 * n - 1;
  p.contour.resize(steps);
  p.xi.resize(steps);
  p.contour_vertex.resize(steps);
  std::vector<int> next_child(n, 0);
  int v = 0, seen = 0;
  for (int i = 0; i < steps; ++i) {
    p.contour[i] = tree.depth[v];
    p.contour_vertex[i] = v;
    seen = std::max(seen, v);
    p.xi[i] = seen;
    if (i + 1 == steps) break;
    if (next_child[v] < tree.child_counts[v]) {
      v = tree.children[v][next_child[v]++];
    } else {
      v = tree.parent[v];
    }
  }
  return p;
}

WalkCoding w_process(const PlaneTree& tree) {
  const int n = tree.size();
  const TreeProcesses p = processes(tree);
  const int T = 2 * n - 1;
  WalkCoding out;
  out.time_scale = T;
  out.walk.resize(T + 1);
  for (int i = 0; i < T; ++i)
    out.walk[i] = p.lukasiewicz[p.xi[i] + 1] + p.contour[i] + 2;  // W_i = L_{xi(i)+1} + C_i + 2
  out.walk[T] = 0;

  out.first_visit.assign(n, 0.0);
  std::vector<Breakpoint> bps;
  bps.push_back({0.0, 0.0, double(out.walk[0])});
  out.first_visit[0] = 0.0;
  for (int i = 1; i < T; ++i) {
    const double t = double(i) / double(T);
    const double left = double(out.walk[i - 1] - 1);
    const double right = double(out.walk[i]);
    if (p.contour[i] == p.contour[i - 1] + 1) out.first_visit[p.contour_vertex[i]] = t;
    bps.push_back({t, left, right});
  }
  bps.push_back({1.0, 0.0, 0.0});
  out.excursion = Excursion::make(std::move(bps));
  return out;
}

LoopGraph loop_graph(const PlaneTree& tree) {
  LoopGraph g;
  g.vertices = tree.size();
  for (int u = 0; u < tree.size(); ++u) {
    const auto& ch = tree.children[u];
    if (ch.empty()) {
      g.edges.push_back({u, u});  // leaf self-loop
      continue;
    }
    g.edges.push_back({u, ch.front()});            // first child
    g.edges.push_back({u, ch.back()});             // last child
    for (std::size_t j = 0; j + 1 < ch.size(); ++j)  // consecutive siblings
      g.edges.push_back({ch[j], ch[j + 1]});
  }
  g.adjacency.assign(g.vertices, {});
  for (const auto& [a, b] : g.edges)
    if (a != b) {
      g.adjacency[a].push_back(b);
      g.adjacency[b].push_back(a);
    }
  return g;
}

int bfs_distance(const LoopGraph& graph, int u, int v) {
  if (u < 0 || u >= graph.vertices || v < 0 || v >= graph.vertices)
    throw std::invalid_argument("bfs_distance: vertex out of range");
  if (u == v) return 0;
  std::vector<int> dist(graph.vertices, -1);
  std::queue<int> q;
  dist[u] = 0;
  q.push(u);
  while (!q.empty()) {
    const int a = q.front();
    q.pop();
    for (int b : graph.adjacency[a])
      if (dist[b] < 0) {
        dist[b] = dist[a] + 1;
        if (b == v) return dist[b];
        q.push(b);
      }
  }
  return -1;
}

PermutationFamily identity_family() {
  return [](int k) {
    std::vector<int> psi(k + 1);
    std::iota(psi.begin(), psi.end(), 0);
    return psi;
  };
}

PermutationFamily sibling_family() {
  return [](int k) {
    std::vector<int> psi(k + 1, 0);
    for (int l = 1; l <= k; ++l) {
      const int d = k + 1 - l;
      psi[l] = (d % 2 == 1) ? (d + 1) / 2 : (k + 1 - d / 2);
    }
    return psi;
  };
}

namespace {

void emit_depth_first(const PlaneTree& tree, const PermutationFamily& family, int u,
                      std::vector<int>& out) {
  const int k = tree.child_counts[u];
  out.push_back(k);
  if (k == 0) return;
  const std::vector<int> psi = family(k);
  std::vector<int> reordered(k, -1);
  for (int j = 1; j <= k; ++j) reordered[psi[j] - 1] = tree.children[u][j - 1];
  for (int child : reordered) emit_depth_first(tree, family, child, out);
}

}  // namespace

PlaneTree permute_tree(const PlaneTree& tree, const PermutationFamily& family) {
  std::vector<int> counts;
  counts.reserve(tree.size());
  emit_depth_first(tree, family, 0, counts);
  return parse_tree(counts);
}

namespace {

// Iterative biconnected components over a multigraph with edge ids;
// self-loops are excluded (each is a 1-cycle on its own).
struct BicompScan {
  int n;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbour, edge id)
  std::vector<int> num, low;
  std::vector<std::pair<int, int>> edge_stack;  // (edge id, child vertex)
  int counter = 0;
  bool ok = true;

  void component_check(const std::vector<int>& edge_ids,
                       const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> verts;
    for (int id : edge_ids) {
      verts.push_back(edges[id].first);
      verts.push_back(edges[id].second);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    const std::size_t e = edge_ids.size();
    if (e > 1 && e != verts.size()) ok = false;  // a cycle has #edges == #vertices
  }
};

}  // namespace

bool is_cactus(const LoopGraph& graph) {
  const int n = graph.vertices;
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int id = 0; id < int(graph.edges.size()); ++id) {
    const auto& [a, b] = graph.edges[id];
    if (a == b) continue;
    adj[a].push_back({b, id});
    adj[b].push_back({a, id});
  }

  std::vector<int> num(n, -1), low(n, 0);
  std::vector<int> edge_stack;
  int counter = 0;
  bool ok = true;

  // iterative DFS from vertex 0
  struct Frame {
    int v;
    int parent_edge;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  if (n == 0) return true;
  num[0] = low[0] = counter++;
  stack.push_back({0, -1});
  while (!stack.empty()) {
    Frame& fr = stack.back();
    if (fr.next < adj[fr.v].size()) {
      const auto [w, id] = adj[fr.v][fr.next++];
      if (id == fr.parent_edge) continue;
      if (num[w] < 0) {
        edge_stack.push_back(id);
        num[w] = low[w] = counter++;
        stack.push_back({w, id});
      } else if (num[w] < num[fr.v]) {
        edge_stack.push_back(id);
        low[fr.v] = std::min(low[fr.v], num[w]);
      }
    } else {
      const Frame done = fr;
      stack.pop_back();
      if (!stack.empty()) {
        Frame& up = stack.back();
        low[up.v] = std::min(low[up.v], low[done.v]);
        if (low[done.v] >= num[up.v]) {
          // pop the biconnected component ending with done.parent_edge
          std::vector<int> comp;
          while (!edge_stack.empty()) {
            const int id = edge_stack.back();
            edge_stack.pop_back();
            comp.push_back(id);
            if (id == done.parent_edge) break;
          }
          std::vector<int> verts;
          for (int id : comp) {
            verts.push_back(graph.edges[id].first);
            verts.push_back(graph.edges[id].second);
          }
          std::sort(verts.begin(), verts.end());
          verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
          if (comp.size() > 1 && comp.size() != verts.size()) ok = false;
        }
      }
    }
  }
  for (int v = 0; v < n; ++v)
    if (num[v] < 0) throw std::invalid_argument("is_cactus: graph is disconnected");
  return ok;
}

}  // namespace vernation
