#include "vernation/randgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace vernation {

Rng::Rng(RngSeed s) {
  // splitmix64 over (seed, stream) to decorrelate streams
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  eng_.seed(mix(s.seed) ^ mix(mix(s.stream) + 0x9e3779b97f4a7c15ull));
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("rng: below(0)");
  const std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
  while (true) {
    const std::uint64_t v = eng_();
    if (rem == 0 || v <= std::numeric_limits<std::uint64_t>::max() - rem) return v % n;
  }
}

double Rng::real01() { return double(eng_() >> 11) * 0x1.0p-53; }

OffspringLaw OffspringLaw::geometric(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("geometric law: p in (0,1)");
  return {Kind::Geometric, p, 1.5};
}

OffspringLaw OffspringLaw::stable_tail(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw std::invalid_argument("stable tail: alpha in (1,2)");
  return {Kind::StableTail, 0.5, alpha};
}

OffspringLaw OffspringLaw::uniform_binary() { return {Kind::UniformBinary, 0.5, 1.5}; }

OffspringLaw OffspringLaw::parse(const std::string& text) {
  if (text == "uniform-binary") return uniform_binary();
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  if (head == "geometric" && colon != std::string::npos)
    return geometric(std::stod(text.substr(colon + 1)));
  if (head == "stable" && colon != std::string::npos)
    return stable_tail(std::stod(text.substr(colon + 1)));
  throw std::invalid_argument("unknown offspring law: " + text);
}

namespace {

// Inverse-CDF sampler over a capped support. Conditioned Galton-Watson
// trees are invariant under exponential tilting, so the stable-tail law
// is tilted towards criticality whenever its mean exceeds 1.
struct OffspringSampler {
  std::vector<double> cdf;
  int sample(Rng& rng) const {
    const double u = rng.real01();
    return int(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
  }
};

OffspringSampler build_stable_sampler(double alpha) {
  constexpr int cap = 1000000;
  std::vector<double> pmf(cap + 1);
  for (int k = 0; k <= cap; ++k) pmf[k] = std::pow(double(k + 1), -1.0 - alpha);
  // lump the tail beyond the cap onto the cap (integral estimate)
  pmf[cap] += std::pow(double(cap + 2), -alpha) / alpha;

  auto mean_of = [&](double theta) {
    double z = 0.0, m = 0.0, w = 1.0;
    for (int k = 0; k <= cap; ++k) {
      const double q = pmf[k] * w;
      z += q;
      m += double(k) * q;
      w *= theta;
      if (w == 0.0) break;
    }
    return m / z;
  };
  double theta = 1.0;
  if (mean_of(1.0) > 1.0) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 80; ++it) {
      theta = 0.5 * (lo + hi);
      (mean_of(theta) > 1.0 ? hi : lo) = theta;
    }
  }
  OffspringSampler s;
  s.cdf.resize(cap + 1);
  double z = 0.0, w = 1.0;
  for (int k = 0; k <= cap; ++k) {
    z += pmf[k] * w;
    s.cdf[k] = z;
    w *= theta;
  }
  for (double& c : s.cdf) c /= z;
  return s;
}

const OffspringSampler& stable_sampler(double alpha) {
  static std::mutex mu;
  static std::map<double, OffspringSampler> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(alpha);
  if (it == cache.end()) it = cache.emplace(alpha, build_stable_sampler(alpha)).first;
  return it->second;
}

int sample_offspring(const OffspringLaw& law, Rng& rng) {
  switch (law.kind) {
    case OffspringLaw::Kind::Geometric: {
      // any geometric tilts to geometric(1/2); the conditioned tree law
      // is unchanged and the walk is critical
      const double u = rng.real01();
      return int(std::floor(std::log1p(-u) / std::log(0.5)));
    }
    case OffspringLaw::Kind::UniformBinary:
      return rng.below(2) == 0 ? 0 : 2;
    case OffspringLaw::Kind::StableTail:
      return stable_sampler(law.alpha).sample(rng);
  }
  return 0;
}

}  // namespace

PlaneTree random_plane_tree(int n, const OffspringLaw& law, RngSeed seed) {
  if (n < 1) throw std::invalid_argument("random_plane_tree: n >= 1");
  if (law.kind == OffspringLaw::Kind::UniformBinary && n % 2 == 0)
    throw std::invalid_argument("random_plane_tree: binary trees have odd sizes");
  Rng rng(seed);
  std::vector<int> counts(n);
  for (long long attempt = 0; attempt < 4000000; ++attempt) {
    long long sum = 0;
    for (int i = 0; i < n; ++i) {
      counts[i] = sample_offspring(law, rng);
      sum += counts[i];
    }
    if (sum != n - 1) continue;
    // cycle lemma: rotate just past the first minimum of the prefix walk
    long long walk = 0, best = 0;
    int cut = 0;
    for (int i = 0; i < n; ++i) {
      walk += counts[i] - 1;
      if (walk < best) {
        best = walk;
        cut = i + 1;
      }
    }
    std::rotate(counts.begin(), counts.begin() + (cut % n), counts.end());
    return parse_tree(counts);
  }
  throw std::runtime_error("random_plane_tree: rejection sampling exhausted");
}

namespace {

struct TreeBuild {
  std::vector<int> counts;
  std::vector<int> vertex_of_node;
};

// depth-first child counts of the component rooted at `root`, following
// the already-shuffled children lists
TreeBuild build_component(int root, const std::vector<std::vector<int>>& children) {
  TreeBuild out;
  std::vector<int> todo{root};
  while (!todo.empty()) {
    const int v = todo.back();
    todo.pop_back();
    out.counts.push_back(int(children[v].size()));
    out.vertex_of_node.push_back(v);
    for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) todo.push_back(*it);
  }
  return out;
}

}  // namespace

Mapping mapping_from_images(const std::vector<int>& images, RngSeed seed) {
  const int n = int(images.size());
  if (n < 1) throw std::invalid_argument("mapping: n >= 1");
  for (int v : images)
    if (v < 0 || v >= n) throw std::invalid_argument("mapping: image out of range");
  Rng rng(seed);

  Mapping m;
  m.n = n;
  m.images = images;
  m.cyclic.assign(n, 0);

  // cyclic points: colour walks through the functional graph
  std::vector<int> state(n, 0);  // 0 new, 1 on current walk, 2 done
  std::vector<int> order(n, -1);
  for (int start = 0; start < n; ++start) {
    if (state[start] != 0) continue;
    std::vector<int> path;
    int v = start;
    while (state[v] == 0) {
      state[v] = 1;
      order[v] = int(path.size());
      path.push_back(v);
      v = images[v];
    }
    if (state[v] == 1) {
      for (int i = order[v]; i < int(path.size()); ++i) m.cyclic[path[i]] = 1;
    }
    for (int u : path) state[u] = 2;
  }

  // children lists (tree edges only), each set in uniform random order
  std::vector<std::vector<int>> children(n);
  for (int v = 0; v < n; ++v)
    if (!m.cyclic[v]) children[images[v]].push_back(v);
  for (auto& ch : children) rng.shuffle(ch);

  // root of the tree component containing v
  auto tree_root = [&](int v) {
    while (!m.cyclic[v]) v = images[v];
    return v;
  };

  // basin index per vertex via the cycle each root belongs to
  std::vector<int> cycle_head(n, -1);  // smallest-walk representative per cyclic orbit
  std::vector<std::vector<int>> orbits;
  {
    std::vector<char> seen(n, 0);
    for (int v = 0; v < n; ++v) {
      if (!m.cyclic[v] || seen[v]) continue;
      std::vector<int> orbit;
      int u = v;
      do {
        seen[u] = 1;
        orbit.push_back(u);
        u = images[u];
      } while (u != v);
      for (int w : orbit) cycle_head[w] = int(orbits.size());
      orbits.push_back(orbit);
    }
  }
  std::vector<int> orbit_of_vertex(n);
  for (int v = 0; v < n; ++v) orbit_of_vertex[v] = cycle_head[tree_root(v)];

  // basins ordered by first appearance in an independent uniform sample,
  // with g_j* the root of the component holding that first sample point
  const int k = int(orbits.size());
  std::vector<int> basin_index(k, -1);
  m.gamma_star.clear();
  int assigned = 0;
  while (assigned < k) {
    const int x = int(rng.below(std::uint64_t(n)));
    const int orbit = orbit_of_vertex[x];
    if (basin_index[orbit] >= 0) continue;
    basin_index[orbit] = assigned++;
    m.gamma_star.push_back(tree_root(x));
  }

  m.basins.assign(k, {});
  m.basin_of.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    m.basin_of[v] = basin_index[orbit_of_vertex[v]];
    m.basins[m.basin_of[v]].push_back(v);
  }
  m.cycles.assign(k, {});
  for (int orbit = 0; orbit < k; ++orbit) {
    const int j = basin_index[orbit];
    const int g = m.gamma_star[j];
    // cycle listed m(g*) <= m^2(g*) <= ... <= g*
    std::vector<int> cyc;
    int u = images[g];
    while (u != g) {
      cyc.push_back(u);
      u = images[u];
    }
    cyc.push_back(g);
    m.cycles[j] = std::move(cyc);
  }

  for (int j = 0; j < k; ++j)
    for (int g : m.cycles[j]) {
      const TreeBuild tb = build_component(g, children);
      m.trees.push_back(parse_tree(tb.counts));
      m.tree_root_vertex.push_back(g);
      m.tree_basin.push_back(j);
      m.tree_vertex_of_node.push_back(tb.vertex_of_node);
    }
  return m;
}

Mapping random_mapping(int n, RngSeed seed) {
  if (n < 1) throw std::invalid_argument("random_mapping: n >= 1");
  Rng rng(RngSeed{seed.seed, seed.stream ^ 0x6d6170ull});
  std::vector<int> images(n);
  for (int i = 0; i < n; ++i) images[i] = int(rng.below(std::uint64_t(n)));
  return mapping_from_images(images, seed);
}

MappingProcesses mapping_processes(const Mapping& m) {
  MappingProcesses out;
  out.height.clear();
  out.contour.clear();
  for (const auto& tree : m.trees) {
    const TreeProcesses p = processes(tree);
    for (int h : p.height) out.height.push_back(h);
    for (int c : p.contour) out.contour.push_back(c);
    out.contour.push_back(0);  // inserted zero between tree components
  }
  out.height.push_back(0);
  out.contour.push_back(0);  // final zero term

  out.ell_prime.assign(out.contour.size(), 0.0);
  for (std::size_t i = 1; i < out.contour.size(); ++i)
    out.ell_prime[i] =
        out.ell_prime[i - 1] + ((out.contour[i] == 0 && out.contour[i - 1] == 0) ? 0.5 : 0.0);

  out.marks.assign(m.basins.size() + 1, 0);
  for (std::size_t j = 0; j < m.basins.size(); ++j)
    out.marks[j + 1] = out.marks[j] + (long long)m.basins[j].size();

  for (std::size_t j = 0; j < m.basins.size(); ++j) {
    const long long lo = 2 * out.marks[j];
    const long long hi = 2 * out.marks[j + 1];
    const long long span = hi - lo;
    std::vector<Breakpoint> bps;
    for (long long i = lo; i <= hi; ++i) {
      const double t = double(i - lo) / double(span);
      const double v = double(out.contour[i]) + 0.5 * (out.ell_prime[hi] - out.ell_prime[i]);
      bps.push_back({t, i == lo ? 0.0 : v, v});
    }
    // interior corners are continuous; only the jump at 0 has left != right
    for (std::size_t b = 1; b < bps.size(); ++b) bps[b].left = bps[b].right;
    bps.front().left = 0.0;
    bps.back().right = 0.0;
    out.basin_excursions.push_back(Excursion::make(std::move(bps)));
  }
  return out;
}

StepLaw StepLaw::pm1() { return {Kind::Pm1, 1.5}; }

StepLaw StepLaw::stable_tail(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw std::invalid_argument("step law: alpha in (1,2)");
  return {Kind::StableTail, alpha};
}

StepLaw StepLaw::parse(const std::string& text) {
  if (text == "pm1") return pm1();
  const auto colon = text.find(':');
  if (text.substr(0, colon) == "stable" && colon != std::string::npos)
    return stable_tail(std::stod(text.substr(colon + 1)));
  throw std::invalid_argument("unknown step law: " + text);
}

Excursion walk_excursion(int n, const StepLaw& law, RngSeed seed) {
  if (n < 1) throw std::invalid_argument("walk_excursion: n >= 1");
  if (law.kind == StepLaw::Kind::Pm1) {
    if (n % 2 != 0) throw std::invalid_argument("walk_excursion: pm1 needs even n");
    Rng rng(seed);
    std::vector<int> steps(n, -1);
    for (int i = 0; i < n / 2; ++i) steps[i] = 1;
    rng.shuffle(steps);
    // discrete Vervaat transform: rotate just past the first minimum
    int walk = 0, best = 0, cut = 0;
    for (int i = 0; i < n; ++i) {
      walk += steps[i];
      if (walk < best) {
        best = walk;
        cut = i + 1;
      }
    }
    std::rotate(steps.begin(), steps.begin() + (cut % n), steps.end());
    const double vscale = std::sqrt(double(n));
    std::vector<Breakpoint> bps;
    int s = 0;
    bps.push_back({0.0, 0.0, 0.0});
    for (int i = 0; i < n; ++i) {
      s += steps[i];
      const double v = double(std::max(s, 0)) / vscale;
      bps.push_back({double(i + 1) / double(n), v, v});
    }
    bps.back() = {1.0, 0.0, 0.0};
    return Excursion::make(std::move(bps));
  }
  // stable steps: the Lukasiewicz path of a conditioned tree, drawn with
  // jumps at up-steps and affine descents, clipped at the end
  const PlaneTree tree = random_plane_tree(n, OffspringLaw::stable_tail(law.alpha), seed);
  const TreeProcesses p = processes(tree);
  const double vscale = std::pow(double(n), 1.0 / law.alpha);
  std::vector<Breakpoint> bps;
  for (int i = 0; i < n; ++i) {
    const double t = double(i) / double(n);
    const double left = double(p.lukasiewicz[i]) / vscale;
    const double right = double(std::max(p.lukasiewicz[i], p.lukasiewicz[i + 1])) / vscale;
    bps.push_back({t, i == 0 ? 0.0 : left, right});
  }
  bps.push_back({1.0, 0.0, 0.0});
  return Excursion::make(std::move(bps));
}

}  // namespace vernation
