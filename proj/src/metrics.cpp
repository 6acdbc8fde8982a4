#include "vernation/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace vernation {

namespace {

inline double delta_r(double height, double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, height - d);
}

}  // namespace

MetricKind MetricKind::parse(const std::string& name, double coefficient,
                             const std::optional<Shuffle>& shuffle) {
  if (!(coefficient > 0.0)) throw std::invalid_argument("metric: coefficient must be positive");
  if (name == "classic") return classic();
  if (name == "tree") return tree();
  if (name == "loop") return loop();
  if (name == "vern") return vern(coefficient);
  if (name == "loop-shuffled")
    return loop_shuffled(shuffle.value_or(Shuffle::defaulted()));
  if (name == "vern-shuffled")
    return vern_shuffled(shuffle.value_or(Shuffle::defaulted()), coefficient);
  throw std::invalid_argument("unknown metric kind: " + name);
}

double d_classic(const Excursion& f, double s, double t) {
  const double lo = std::min(s, t);
  const double hi = std::max(s, t);
  return f.value(s) + f.value(t) - 2.0 * f.range_inf(lo, hi);
}

double d_loop(const Excursion& f, double s, double t) {
  double sum = 0.0;
  for (const auto& jr : f.jumps())
    sum += delta_r(jr.height, f.x_value(jr.time, s), f.x_value(jr.time, t));
  return sum;
}

double d_tree(const Excursion& f, double s, double t) {
  double sum = 0.0;
  for (const auto& jr : f.jumps())
    sum += std::abs(f.x_value(jr.time, s) - f.x_value(jr.time, t));
  return d_classic(f, s, t) - sum;
}

double d_vern(const Excursion& f, double s, double t, double coefficient) {
  return d_tree(f, s, t) + coefficient * d_loop(f, s, t);
}

double d_loop_shuffled(const Excursion& f, const Shuffle& shuffle, double s, double t) {
  double sum = 0.0;
  for (const auto& jr : f.jumps())
    sum += shuffle.delta_tilde(jr.height, f.x_value(jr.time, s), f.x_value(jr.time, t));
  return sum;
}

double d_vern_shuffled(const Excursion& f, const Shuffle& shuffle, double s, double t,
                       double coefficient) {
  return d_tree(f, s, t) + coefficient * d_loop_shuffled(f, shuffle, s, t);
}

namespace {

bool strict_ancestor(const Excursion& f, double s, double r) {
  return s < r && f.genealogy(s, r).is_ancestor;
}

bool weak_ancestor(const Excursion& f, double r, double t) {
  return r <= t && f.genealogy(r, t).is_ancestor;
}

}  // namespace

double d_one_sided(const Excursion& f, double s, double t) {
  double sum = 0.0;
  for (const auto& jr : f.jumps())
    if (strict_ancestor(f, s, jr.time) && weak_ancestor(f, jr.time, t))
      sum += delta_r(jr.height, 0.0, f.x_value(jr.time, t));
  return sum;
}

double d_one_sided_shuffled(const Excursion& f, const Shuffle& shuffle, double s, double t) {
  double sum = 0.0;
  for (const auto& jr : f.jumps())
    if (strict_ancestor(f, s, jr.time) && weak_ancestor(f, jr.time, t))
      sum += shuffle.delta_tilde(jr.height, 0.0, f.x_value(jr.time, t));
  return sum;
}

double d_loop_via_mrca(const Excursion& f, double s, double t) {
  const double m = f.mrca(s, t);
  const double dm = f.jump_at(m);
  const double h = dm > 0.0 ? delta_r(dm, f.x_value(m, s), f.x_value(m, t)) : 0.0;
  return h + d_one_sided(f, m, s) + d_one_sided(f, m, t);
}

double d_loop_shuffled_via_mrca(const Excursion& f, const Shuffle& shuffle, double s, double t) {
  const double m = f.mrca(s, t);
  const double dm = f.jump_at(m);
  const double h = dm > 0.0 ? shuffle.delta_tilde(dm, f.x_value(m, s), f.x_value(m, t)) : 0.0;
  return h + d_one_sided_shuffled(f, shuffle, m, s) + d_one_sided_shuffled(f, shuffle, m, t);
}

double DistanceMatrix::max_entry() const {
  double best = 0.0;
  for (double v : values) best = std::max(best, v);
  return best;
}

JumpTable::JumpTable(const Excursion& f, std::vector<double> sample_times,
                     const std::optional<Shuffle>& shuffle)
    : f_(&f), times_(std::move(sample_times)) {
  if (times_.empty()) throw std::invalid_argument("jump table: empty samples");
  const std::size_t m = times_.size();
  f_values_.resize(m);
  for (std::size_t i = 0; i < m; ++i) f_values_[i] = f.value(times_[i]);
  const auto& js = f.jumps();
  heights_.resize(js.size());
  x_.assign(js.size() * m, 0.0);
  if (shuffle) phi_.assign(js.size() * m, 0.0);
  for (std::size_t k = 0; k < js.size(); ++k) {
    heights_[k] = js[k].height;
    const double r = js[k].time;
    for (std::size_t i = 0; i < m; ++i) {
      const double x = f.x_value(r, times_[i]);
      x_[k * m + i] = x;
      if (shuffle) phi_[k * m + i] = shuffle->phi(heights_[k], x / heights_[k]);
    }
  }
}

double JumpTable::pair_inf(std::size_t i, std::size_t j) const {
  const double lo = std::min(times_[i], times_[j]);
  const double hi = std::max(times_[i], times_[j]);
  return f_->range_inf(lo, hi);
}

double JumpTable::distance(const MetricKind& kind, std::size_t i, std::size_t j) const {
  const std::size_t m = times_.size();
  const std::size_t nj = heights_.size();
  auto loop_sum = [&] {
    double sum = 0.0;
    for (std::size_t k = 0; k < nj; ++k)
      sum += delta_r(heights_[k], x_[k * m + i], x_[k * m + j]);
    return sum;
  };
  auto loop_shuffled_sum = [&] {
    double sum = 0.0;
    for (std::size_t k = 0; k < nj; ++k)
      sum += heights_[k] * circle_distance(phi_[k * m + i], phi_[k * m + j]);
    return sum;
  };
  auto tree_val = [&] {
    double sum = 0.0;
    for (std::size_t k = 0; k < nj; ++k) sum += std::abs(x_[k * m + i] - x_[k * m + j]);
    return f_values_[i] + f_values_[j] - 2.0 * pair_inf(i, j) - sum;
  };
  switch (kind.family) {
    case MetricFamily::Classic:
      return f_values_[i] + f_values_[j] - 2.0 * pair_inf(i, j);
    case MetricFamily::Loop:
      return loop_sum();
    case MetricFamily::Tree:
      return tree_val();
    case MetricFamily::Vern:
      return tree_val() + kind.coefficient * loop_sum();
    case MetricFamily::LoopShuffled:
      return loop_shuffled_sum();
    case MetricFamily::VernShuffled:
      return tree_val() + kind.coefficient * loop_shuffled_sum();
  }
  return 0.0;
}

DistanceMatrix matrix(const Excursion& f, const MetricKind& kind,
                      const std::vector<double>& sample_times) {
  if (sample_times.empty()) throw std::invalid_argument("matrix: empty samples");
  if (std::find(sample_times.begin(), sample_times.end(), 1.0) == sample_times.end())
    throw std::invalid_argument("matrix: sample times must contain 1 (the root)");
  const bool shuffled = kind.family == MetricFamily::LoopShuffled ||
                        kind.family == MetricFamily::VernShuffled;
  JumpTable table(f, sample_times, shuffled ? kind.shuffle : std::nullopt);
  const std::size_t m = sample_times.size();
  DistanceMatrix out;
  out.times = sample_times;
  out.values.assign(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double v = table.distance(kind, i, j);
      out.at(i, j) = v;
      out.at(j, i) = v;
    }
  return out;
}

double matrix_sup_diff(const DistanceMatrix& a, const DistanceMatrix& b) {
  if (a.times != b.times) throw std::invalid_argument("matrix_sup_diff: sample times differ");
  double best = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    best = std::max(best, std::abs(a.values[i] - b.values[i]));
  return best;
}

std::string to_csv(const DistanceMatrix& m) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", m.times[i]);
    out += buf;
    out += (i + 1 < m.size()) ? ',' : '\n';
  }
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", m.at(i, j));
      out += buf;
      out += (j + 1 < m.size()) ? ',' : '\n';
    }
  return out;
}

// First time t >= r with f(t) - f(r-) = x * Delta_r; exists because f is
// an excursion and f(r) - f(r-) = Delta_r >= x * Delta_r.
static double loop_anchor_time(const Excursion& f, double r, double frac) {
  const Evaluation er = f.evaluate(r);
  const double level = er.left_limit + frac * er.jump;
  if (f.value(r) <= level) return r;
  const auto& bps = f.breakpoints();
  std::size_t i = 0;
  while (i + 1 < bps.size() && bps[i + 1].t <= r) ++i;
  double cur_t = r, cur_v = er.value;
  for (; i + 1 < bps.size(); ++i) {
    const auto& next = bps[i + 1];
    if (next.t <= r) continue;
    // affine stretch from (cur_t, cur_v) to (next.t, next.left)
    if (next.left <= level && cur_v > level) {
      if (cur_v == next.left) return next.t;
      const double u = cur_t + (cur_v - level) * (next.t - cur_t) / (cur_v - next.left);
      return std::min(std::max(u, cur_t), next.t);
    }
    if (next.left <= level) return cur_t;
    cur_t = next.t;
    cur_v = next.right;
    if (cur_v <= level) return cur_t;
  }
  return 1.0;
}

std::vector<double> build_sample_times(const Excursion& f, int n, int loop_anchors) {
  std::vector<double> times;
  if (n < 2) n = 2;
  for (int i = 0; i <= n; ++i) times.push_back(double(i) / double(n));
  for (const auto& jr : f.jumps()) {
    times.push_back(jr.time);
    for (int a = 1; a < loop_anchors; ++a)
      times.push_back(loop_anchor_time(f, jr.time, double(a) / double(loop_anchors)));
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

}  // namespace vernation
