#include "vernation/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace vernation {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(int i, int j) {
    i = find(i);
    j = find(j);
    if (i != j) parent[std::max(i, j)] = std::min(i, j);
  }
};

}  // namespace

void FiniteSpace::validate() const {
  const std::size_t n = size();
  if (dist.size() != n * n || weight_counts.size() != n)
    throw std::logic_error("finite space: inconsistent sizes");
  if (root < 0 || std::size_t(root) >= n) throw std::logic_error("finite space: bad root");
  long long total = 0;
  for (long long c : weight_counts) total += c;
  if (total != weight_total) throw std::logic_error("finite space: weights do not sum to total");
}

FiniteSpace quotient_space(const DistanceMatrix& m, double dedupe_tol, double root_time) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("quotient: empty samples");
  UnionFind uf(int(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m.at(i, j) <= dedupe_tol) uf.unite(int(i), int(j));

  std::vector<int> cls(n, -1);
  std::vector<int> reps;
  for (std::size_t i = 0; i < n; ++i) {
    const int r = uf.find(int(i));
    if (cls[r] < 0) {
      cls[r] = int(reps.size());
      reps.push_back(r);
    }
    cls[i] = cls[r];
  }

  FiniteSpace out;
  const std::size_t k = reps.size();
  out.rep_times.resize(k);
  out.weight_counts.assign(k, 0);
  out.weight_total = (long long)n;
  out.members.assign(k, {});
  for (std::size_t i = 0; i < n; ++i) {
    out.weight_counts[cls[i]] += 1;
    out.members[cls[i]].push_back(int(i));
  }
  for (std::size_t c = 0; c < k; ++c) out.rep_times[c] = m.times[reps[c]];
  out.dist.assign(k * k, 0.0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      const double v = m.at(reps[a], reps[b]);
      out.d(a, b) = v;
      out.d(b, a) = v;
    }
  auto it = std::find(m.times.begin(), m.times.end(), root_time);
  if (it == m.times.end()) throw std::invalid_argument("quotient: root time missing from samples");
  out.root = cls[it - m.times.begin()];
  out.validate();
  return out;
}

FiniteSpace quotient_space(const Excursion& f, const MetricKind& kind,
                           const std::vector<double>& sample_times, double dedupe_tol) {
  std::vector<double> times = sample_times;
  for (const auto& jr : f.jumps())
    if (std::find(times.begin(), times.end(), jr.time) == times.end())
      times.push_back(jr.time);
  if (std::find(times.begin(), times.end(), 1.0) == times.end()) times.push_back(1.0);
  std::sort(times.begin(), times.end());
  return quotient_space(matrix(f, kind, times), dedupe_tol, 1.0);
}

FiniteSpace glue(const FiniteSpace& x0, const FiniteSpace& x1, int a, double mass0,
                 double mass1) {
  if (a < 0 || std::size_t(a) >= x0.size()) throw std::invalid_argument("glue: bad index");
  if (!(mass0 > 0.0) || !(mass1 > 0.0)) throw std::invalid_argument("glue: bad masses");
  const std::size_t n0 = x0.size(), n1 = x1.size(), n = n0 + n1;
  FiniteSpace out;
  out.rep_times = x0.rep_times;
  out.rep_times.insert(out.rep_times.end(), x1.rep_times.begin(), x1.rep_times.end());
  out.dist.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n0; ++j) out.d(i, j) = x0.d(i, j);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) out.d(n0 + i, n0 + j) = x1.d(i, j);
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      const double v = x0.d(i, std::size_t(a)) + x1.d(std::size_t(x1.root), j);
      out.d(i, n0 + j) = v;
      out.d(n0 + j, i) = v;
    }
  out.root = x0.root;
  // weights mass0 : mass1, kept rational via cross-multiplied counts
  out.weight_counts.assign(n, 0);
  const long long scale0 = std::llround(mass0 * 1024.0) * x1.weight_total;
  const long long scale1 = std::llround(mass1 * 1024.0) * x0.weight_total;
  for (std::size_t i = 0; i < n0; ++i) out.weight_counts[i] = x0.weight_counts[i] * scale0;
  for (std::size_t j = 0; j < n1; ++j) out.weight_counts[n0 + j] = x1.weight_counts[j] * scale1;
  out.weight_total = 0;
  for (long long c : out.weight_counts) out.weight_total += c;
  out.members.assign(n, {});
  out.validate();
  return out;
}

FiniteSpace scale(const FiniteSpace& x, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("scale: factor must be positive");
  FiniteSpace out = x;
  for (double& v : out.dist) v *= c;
  return out;
}

double diam(const FiniteSpace& x) {
  double best = 0.0;
  for (double v : x.dist) best = std::max(best, v);
  return best;
}

FiniteSpace segment(double length, int n) {
  if (n < 2) throw std::invalid_argument("segment: need n >= 2");
  FiniteSpace out;
  out.rep_times.resize(n);
  out.weight_counts.assign(n, 1);
  out.weight_total = n;
  out.members.assign(n, {});
  out.dist.assign(std::size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    out.rep_times[i] = double(i) / double(n - 1);
    out.members[i] = {i};
    for (int j = 0; j < n; ++j)
      out.d(i, j) = length * std::abs(i - j) / double(n - 1);
  }
  out.root = 0;
  return out;
}

FiniteSpace circle(double length, int n) {
  if (n < 2) throw std::invalid_argument("circle: need n >= 2");
  FiniteSpace out;
  out.rep_times.resize(n);
  out.weight_counts.assign(n, 1);
  out.weight_total = n;
  out.members.assign(n, {});
  out.dist.assign(std::size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    out.rep_times[i] = double(i) / double(n);
    out.members[i] = {i};
    for (int j = 0; j < n; ++j) {
      const double frac = std::abs(i - j) / double(n);
      out.d(i, j) = length * std::min(frac, 1.0 - frac);
    }
  }
  out.root = 0;
  return out;
}

FiniteSpace point() {
  FiniteSpace out;
  out.rep_times = {1.0};
  out.dist = {0.0};
  out.weight_counts = {1};
  out.weight_total = 1;
  out.members = {{0}};
  out.root = 0;
  return out;
}

std::string to_json(const FiniteSpace& x) {
  nlohmann::json j;
  j["points"] = x.rep_times;
  j["root"] = x.root;
  j["weights"] = nlohmann::json::array();
  for (std::size_t i = 0; i < x.size(); ++i) j["weights"].push_back(x.weight(i));
  j["weight_counts"] = x.weight_counts;
  j["weight_total"] = x.weight_total;
  j["matrix"] = nlohmann::json::array();
  for (std::size_t i = 0; i < x.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t jx = 0; jx < x.size(); ++jx) row.push_back(x.d(i, jx));
    j["matrix"].push_back(row);
  }
  return j.dump(2);
}

FiniteSpace finite_space_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  FiniteSpace x;
  x.rep_times = j.at("points").get<std::vector<double>>();
  x.root = j.at("root").get<int>();
  x.weight_counts = j.at("weight_counts").get<std::vector<long long>>();
  x.weight_total = j.at("weight_total").get<long long>();
  const std::size_t n = x.rep_times.size();
  x.dist.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t jx = 0; jx < n; ++jx) x.d(i, jx) = j.at("matrix")[i][jx].get<double>();
  x.members.assign(n, {});
  x.validate();
  return x;
}

}  // namespace vernation
