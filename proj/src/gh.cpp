#include "vernation/gh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace vernation {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---- exact rational max-flow (Dinic) for coupling masses ----

struct MaxFlow {
  struct Edge {
    int to;
    long long cap;
    int rev;
  };
  std::vector<std::vector<Edge>> g;
  std::vector<int> level, iter;

  explicit MaxFlow(int n) : g(n), level(n), iter(n) {}

  void add_edge(int from, int to, long long cap) {
    g[from].push_back({to, cap, int(g[to].size())});
    g[to].push_back({from, 0, int(g[from].size()) - 1});
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const auto& e : g[v])
        if (e.cap > 0 && level[e.to] < 0) {
          level[e.to] = level[v] + 1;
          q.push(e.to);
        }
    }
    return level[t] >= 0;
  }

  long long dfs(int v, int t, long long f) {
    if (v == t) return f;
    for (int& i = iter[v]; i < int(g[v].size()); ++i) {
      Edge& e = g[v][i];
      if (e.cap > 0 && level[v] < level[e.to]) {
        const long long d = dfs(e.to, t, std::min(f, e.cap));
        if (d > 0) {
          e.cap -= d;
          g[e.to][e.rev].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  long long run(int s, int t) {
    long long flow = 0;
    while (bfs(s, t)) {
      std::fill(iter.begin(), iter.end(), 0);
      long long f;
      while ((f = dfs(s, t, std::numeric_limits<long long>::max())) > 0) flow += f;
    }
    return flow;
  }
};

// Mass of the best coupling supported on the pairs, as a fraction of 1.
double max_coupling_mass(const FiniteSpace& x, const FiniteSpace& y,
                         const std::vector<std::pair<int, int>>& pairs) {
  const int nx = int(x.size()), ny = int(y.size());
  const int src = nx + ny, dst = nx + ny + 1;
  MaxFlow mf(nx + ny + 2);
  // scale both weight systems to the common denominator total_x * total_y
  for (int i = 0; i < nx; ++i) mf.add_edge(src, i, x.weight_counts[i] * y.weight_total);
  for (int j = 0; j < ny; ++j) mf.add_edge(nx + j, dst, y.weight_counts[j] * x.weight_total);
  std::vector<std::pair<int, int>> uniq = pairs;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  for (const auto& [i, j] : uniq)
    mf.add_edge(i, nx + j, std::numeric_limits<long long>::max() / 4);
  const long long flow = mf.run(src, dst);
  return double(flow) / (double(x.weight_total) * double(y.weight_total));
}

double distortion_pairs(const std::vector<std::pair<int, int>>& pairs, const FiniteSpace& x,
                        const FiniteSpace& y) {
  double dis = 0.0;
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = a; b < pairs.size(); ++b)
      dis = std::max(dis, std::abs(x.d(pairs[a].first, pairs[b].first) -
                                   y.d(pairs[a].second, pairs[b].second)));
  return dis;
}

}  // namespace

void Correspondence::validate(const FiniteSpace& x, const FiniteSpace& y, bool pointed) const {
  std::vector<char> cx(x.size(), 0), cy(y.size(), 0);
  bool root_pair = false;
  for (const auto& [i, j] : pairs) {
    if (i < 0 || std::size_t(i) >= x.size() || j < 0 || std::size_t(j) >= y.size())
      throw std::invalid_argument("correspondence: index out of range");
    cx[i] = 1;
    cy[j] = 1;
    root_pair = root_pair || (i == x.root && j == y.root);
  }
  for (char c : cx)
    if (!c) throw std::invalid_argument("correspondence: left side not covered");
  for (char c : cy)
    if (!c) throw std::invalid_argument("correspondence: right side not covered");
  if (pointed && !root_pair)
    throw std::invalid_argument("correspondence: missing root pair");
}

double distortion(const Correspondence& r, const FiniteSpace& x, const FiniteSpace& y) {
  r.validate(x, y);
  return distortion_pairs(r.pairs, x, y);
}

namespace {

struct GhSearch {
  const FiniteSpace& x;
  const FiniteSpace& y;
  double best = kInf;
  std::vector<std::pair<int, int>> pairs;

  double added_dis(int i, int j, double cur) const {
    double dis = cur;
    for (const auto& [a, b] : pairs)
      dis = std::max(dis, std::abs(x.d(a, i) - y.d(b, j)));
    return dis;
  }

  void phase_y(std::size_t idx, const std::vector<int>& uncovered, double cur) {
    if (cur >= best) return;
    if (idx == uncovered.size()) {
      best = cur;
      return;
    }
    const int j = uncovered[idx];
    for (int i = 0; i < int(x.size()); ++i) {
      const double nd = added_dis(i, j, cur);
      if (nd >= best) continue;
      pairs.push_back({i, j});
      phase_y(idx + 1, uncovered, nd);
      pairs.pop_back();
    }
  }

  void phase_x(int i, double cur) {
    if (cur >= best) return;
    if (i == int(x.size())) {
      std::vector<char> covered(y.size(), 0);
      for (const auto& [a, b] : pairs) covered[b] = 1;
      std::vector<int> uncovered;
      for (int j = 0; j < int(y.size()); ++j)
        if (!covered[j]) uncovered.push_back(j);
      phase_y(0, uncovered, cur);
      return;
    }
    for (int j = 0; j < int(y.size()); ++j) {
      const double nd = added_dis(i, j, cur);
      if (nd >= best) continue;
      pairs.push_back({i, j});
      phase_x(i + 1, nd);
      pairs.pop_back();
    }
  }
};

}  // namespace

double gh_exact_small(const FiniteSpace& x, const FiniteSpace& y, int max_points, bool pointed) {
  if (int(x.size()) > max_points || int(y.size()) > max_points)
    throw std::invalid_argument("gh_exact_small: space exceeds max_points");
  GhSearch search{x, y};
  if (pointed) search.pairs.push_back({x.root, y.root});
  search.phase_x(0, 0.0);
  return 0.5 * search.best;
}

double gh_lower(const FiniteSpace& x, const FiniteSpace& y) {
  const double diam_gap = std::abs(diam(x) - diam(y));
  // Hausdorff distance between the sets of pairwise distances: any
  // correspondence matches every distance of one space to within its
  // distortion in the other.
  std::vector<double> dx(x.dist), dy(y.dist);
  std::sort(dx.begin(), dx.end());
  std::sort(dy.begin(), dy.end());
  dx.erase(std::unique(dx.begin(), dx.end()), dx.end());
  dy.erase(std::unique(dy.begin(), dy.end()), dy.end());
  auto one_sided = [](const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (double v : a) {
      auto it = std::lower_bound(b.begin(), b.end(), v);
      double nearest = kInf;
      if (it != b.end()) nearest = std::min(nearest, *it - v);
      if (it != b.begin()) nearest = std::min(nearest, v - *(it - 1));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  const double hausdorff = std::max(one_sided(dx, dy), one_sided(dy, dx));
  return 0.5 * std::max(diam_gap, hausdorff);
}

namespace {

std::vector<std::pair<int, int>> warp_pairs(const FiniteSpace& x, const FiniteSpace& y,
                                            const Warp& w) {
  std::vector<std::pair<int, int>> pairs;
  auto nearest = [](const std::vector<double>& times, double t) {
    int best = 0;
    double gap = kInf;
    for (int k = 0; k < int(times.size()); ++k)
      if (std::abs(times[k] - t) < gap) {
        gap = std::abs(times[k] - t);
        best = k;
      }
    return best;
  };
  for (int i = 0; i < int(x.size()); ++i) pairs.push_back({i, nearest(y.rep_times, w(x.rep_times[i]))});
  for (int j = 0; j < int(y.size()); ++j)
    pairs.push_back({nearest(x.rep_times, w.inverse(y.rep_times[j])), j});
  pairs.push_back({x.root, y.root});
  return pairs;
}

double root_profile(const FiniteSpace& s, int i) { return s.d(i, s.root); }

// Monotone warp matching normalized root-distance profiles along the
// sample-time axis.
Warp profile_warp(const FiniteSpace& x, const FiniteSpace& y) {
  std::vector<int> ox(x.size()), oy(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) ox[i] = int(i);
  for (std::size_t j = 0; j < y.size(); ++j) oy[j] = int(j);
  std::sort(ox.begin(), ox.end(),
            [&](int a, int b) { return x.rep_times[a] < x.rep_times[b]; });
  std::sort(oy.begin(), oy.end(),
            [&](int a, int b) { return y.rep_times[a] < y.rep_times[b]; });
  const double dx = std::max(diam(x), 1e-30);
  const double dy = std::max(diam(y), 1e-30);
  Warp w;
  w.knots.push_back({0.0, 0.0});
  double last_u = 0.0, last_v = 0.0;
  for (int i : ox) {
    const double u = x.rep_times[i];
    const double p = root_profile(x, i) / dx;
    // earliest y time whose profile reaches p
    double v = last_v;
    for (int j : oy) {
      if (y.rep_times[j] <= last_v) continue;
      if (root_profile(y, j) / dy >= p - 1e-9) {
        v = y.rep_times[j];
        break;
      }
    }
    if (u > last_u + 1e-9 && v > last_v + 1e-9 && u < 1.0 && v < 1.0) {
      w.knots.push_back({u, v});
      last_u = u;
      last_v = v;
    }
  }
  w.knots.push_back({1.0, 1.0});
  // thin out to a manageable knot count
  if (w.knots.size() > 64) {
    std::vector<std::pair<double, double>> thin;
    const std::size_t stride = (w.knots.size() + 63) / 64;
    for (std::size_t k = 0; k < w.knots.size(); k += stride) thin.push_back(w.knots[k]);
    if (thin.back() != w.knots.back()) thin.push_back(w.knots.back());
    w.knots = std::move(thin);
  }
  return w;
}

}  // namespace

double parametrized_upper(const FiniteSpace& x, const FiniteSpace& y,
                          const std::vector<Warp>& warps, int knots) {
  std::vector<Warp> candidates = warps;
  candidates.push_back(Warp::identity());
  candidates.push_back(profile_warp(x, y));
  {
    // reversed roles give a different profile fit
    Warp w = profile_warp(y, x);
    Warp inv;
    for (const auto& [u, v] : w.knots) inv.knots.push_back({v, u});
    candidates.push_back(inv);
  }
  double best = kInf;
  for (const auto& w : candidates) {
    try {
      w.validate();
    } catch (const std::invalid_argument&) {
      continue;
    }
    best = std::min(best, 0.5 * distortion_pairs(warp_pairs(x, y, w), x, y));
  }
  // coordinate descent on uniform knots seeded with the identity
  if (knots >= 2) {
    Warp w;
    for (int k = 0; k <= knots; ++k) {
      const double u = double(k) / double(knots);
      w.knots.push_back({u, u});
    }
    double cur = 0.5 * distortion_pairs(warp_pairs(x, y, w), x, y);
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 1; k < knots; ++k) {
        const double lo = w.knots[k - 1].second;
        const double hi = w.knots[k + 1].second;
        double best_v = w.knots[k].second;
        for (int step = 1; step <= 7; ++step) {
          const double v = lo + (hi - lo) * double(step) / 8.0;
          w.knots[k].second = v;
          const double c = 0.5 * distortion_pairs(warp_pairs(x, y, w), x, y);
          if (c < cur) {
            cur = c;
            best_v = v;
          }
        }
        w.knots[k].second = best_v;
      }
    }
    best = std::min(best, cur);
  }
  return best;
}

double ghp_upper(const DistanceMatrix& d1, const DistanceMatrix& d2) {
  return matrix_sup_diff(d1, d2);
}

double ghp_upper_coupled(const FiniteSpace& x, const FiniteSpace& y, const Correspondence& r) {
  r.validate(x, y, true);
  const double dis = distortion_pairs(r.pairs, x, y);
  const double mass = max_coupling_mass(x, y, r.pairs);
  return std::max(0.5 * dis, 1.0 - mass);
}

double ghp_upper_anchored(const FiniteSpace& x, const FiniteSpace& y,
                          const std::vector<std::pair<int, int>>& anchors,
                          const std::vector<double>& radii) {
  if (anchors.empty()) throw std::invalid_argument("ghp_upper_anchored: no anchors");
  double best = kInf;
  for (double rho : radii) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [i, j0] : anchors)
      for (int j = 0; j < int(y.size()); ++j)
        if (y.d(j0, j) <= rho) pairs.push_back({i, j});
    Correspondence r{pairs};
    try {
      r.validate(x, y, true);
    } catch (const std::invalid_argument&) {
      continue;  // radius too small to cover
    }
    best = std::min(best, std::max(0.5 * distortion_pairs(pairs, x, y),
                                   1.0 - max_coupling_mass(x, y, pairs)));
  }
  if (best == kInf) throw std::invalid_argument("ghp_upper_anchored: no radius covers the target");
  return best;
}

double ghp_upper_generic(const FiniteSpace& x, const FiniteSpace& y) {
  // match by root-distance profile quantiles
  auto order_by_profile = [](const FiniteSpace& s) {
    std::vector<int> idx(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) idx[i] = int(i);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return root_profile(s, a) < root_profile(s, b); });
    return idx;
  };
  const auto ix = order_by_profile(x);
  const auto iy = order_by_profile(y);
  std::vector<std::pair<int, int>> pairs;
  pairs.push_back({x.root, y.root});
  for (std::size_t k = 0; k < ix.size(); ++k) {
    const std::size_t j = iy.empty() ? 0 : (k * iy.size()) / ix.size();
    pairs.push_back({ix[k], iy[std::min(j, iy.size() - 1)]});
  }
  for (std::size_t k = 0; k < iy.size(); ++k) {
    const std::size_t i = ix.empty() ? 0 : (k * ix.size()) / iy.size();
    pairs.push_back({ix[std::min(i, ix.size() - 1)], iy[k]});
  }
  return std::max(0.5 * distortion_pairs(pairs, x, y),
                  1.0 - max_coupling_mass(x, y, pairs));
}

double sequence_distance(const std::vector<std::pair<double, FiniteSpace>>& s1,
                         const std::vector<std::pair<double, FiniteSpace>>& s2) {
  const std::size_t n = std::max(s1.size(), s2.size());
  const FiniteSpace pt = point();
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = j < s1.size() ? s1[j].first : 0.0;
    const double b = j < s2.size() ? s2[j].first : 0.0;
    const FiniteSpace& xa = j < s1.size() ? s1[j].second : pt;
    const FiniteSpace& xb = j < s2.size() ? s2[j].second : pt;
    best = std::max(best, std::max(std::abs(a - b), ghp_upper_generic(xa, xb)));
  }
  return best;
}

}  // namespace vernation
