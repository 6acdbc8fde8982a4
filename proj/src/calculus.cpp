#include "vernation/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "vernation/metrics.hpp"

namespace vernation {

namespace {

// Corner candidates of t -> sum of x_r^t: the breakpoints of f plus, for
// each jump r, the times where the running minimum of f over [r,t]
// switches between "constant" and "descending with f".
std::vector<double> j_corner_times(const Excursion& f, double min_height) {
  std::vector<double> times;
  const auto& bps = f.breakpoints();
  for (const auto& bp : bps) times.push_back(bp.t);
  for (const auto& jr : f.jumps()) {
    if (jr.height < min_height) continue;
    double rm = f.value(jr.time);
    double cur_t = jr.time, cur_v = rm;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
      const auto& next = bps[i + 1];
      if (next.t <= jr.time) continue;
      if (cur_v > rm && next.left < rm) {
        const double u = cur_t + (cur_v - rm) * (next.t - cur_t) / (cur_v - next.left);
        times.push_back(std::min(std::max(u, cur_t), next.t));
      }
      rm = std::min(rm, next.left);
      cur_t = next.t;
      cur_v = next.right;
    }
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

double j_eps_sum_at(const Excursion& f, double t, double min_height) {
  double sum = 0.0;
  for (const auto& jr : f.jumps()) {
    if (jr.time > t) break;  // jumps ascend
    if (jr.height < min_height) continue;
    sum += f.x_value(jr.time, t);
  }
  return sum;
}

Excursion breakpoints_to_excursion(const std::vector<double>& times,
                                   const std::vector<double>& rights,
                                   const std::vector<double>& jumps) {
  std::vector<Breakpoint> out;
  out.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    double right = rights[i];
    if (std::abs(right) <= 1e-12) right = 0.0;
    double left = right - jumps[i];
    if (std::abs(left) <= 1e-12) left = 0.0;
    out.push_back({times[i], left, right});
  }
  out.front().left = 0.0;
  out.back().right = 0.0;
  return Excursion::make(std::move(out));
}

}  // namespace

Excursion j_transform(const Excursion& f) {
  // (calcul_Jf): Jf(t) = f(t) - d_tree(f, t, 1); jumps carry over exactly.
  const std::vector<double> times = j_corner_times(f, 0.0);
  std::vector<double> rights(times.size()), jumps(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    rights[i] = f.value(times[i]) - d_tree(f, times[i], 1.0);
    jumps[i] = f.jump_at(times[i]);
  }
  return breakpoints_to_excursion(times, rights, jumps);
}

Excursion j_eps(const Excursion& f, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("j_eps: eps must be positive");
  const std::vector<double> times = j_corner_times(f, eps);
  std::vector<double> rights(times.size()), jumps(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    rights[i] = j_eps_sum_at(f, times[i], eps);
    const double d = f.jump_at(times[i]);
    jumps[i] = d >= eps ? d : 0.0;
  }
  return breakpoints_to_excursion(times, rights, jumps);
}

Decomposition decompose(const Excursion& f) {
  Decomposition d{Excursion::zero(), Excursion::zero()};
  d.pjg_part = j_transform(f);
  d.continuous_part = linear_combine({{1.0, &f}, {-1.0, &d.pjg_part}});
  return d;
}

ExcursionClass classify(const Excursion& f, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("classify: tol must be positive");
  const Excursion jf = j_transform(f);
  if (jf.sup() <= tol) return ExcursionClass::Continuous;
  if (sup_norm_diff(f, jf) <= tol) return ExcursionClass::Pjg;
  return ExcursionClass::Mixed;
}

const char* to_string(ExcursionClass c) {
  switch (c) {
    case ExcursionClass::Continuous:
      return "continuous";
    case ExcursionClass::Pjg:
      return "pjg";
    case ExcursionClass::Mixed:
      return "mixed";
  }
  return "mixed";
}

Excursion regularize(const Excursion& f, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("regularize: eps must be positive");
  const Excursion jf = j_transform(f);
  const Excursion jef = j_eps(f, eps);
  return linear_combine({{1.0, &f}, {-1.0, &jf}, {1.0, &jef}});
}

BranchSplit branch_split(const Excursion& f, double u, double v, double tol) {
  if (!(u < v)) throw std::invalid_argument("branch_split: need u < v");
  const double fum = f.left_limit(u);
  const double fvm = f.left_limit(v);
  if (std::abs(fum - fvm) > tol)
    throw std::invalid_argument("branch_split: f(u-) != f(v-)");
  if (!f.genealogy(u, v).is_ancestor)
    throw std::invalid_argument("branch_split: u is not an ancestor of v");

  const auto& bps = f.breakpoints();
  const double flat = (v == 1.0 && std::abs(fum) <= tol) ? 0.0 : fum;

  std::vector<Breakpoint> g;
  for (const auto& bp : bps)
    if (bp.t < u) g.push_back(bp);
  g.push_back({u, flat, flat});
  if (v < 1.0) {
    const Evaluation ev = f.evaluate(v);
    g.push_back({v, flat, ev.value});
    for (const auto& bp : bps)
      if (bp.t > v) g.push_back(bp);
  } else {
    g.push_back({1.0, flat, 0.0});
  }

  // inner part: h(t) = f(u + t(v-u)) - f(u-), with h(1) = 0
  const double span = v - u;
  std::vector<Breakpoint> h;
  h.push_back({0.0, 0.0, f.value(u) - fum});
  for (const auto& bp : bps)
    if (bp.t > u && bp.t < v)
      h.push_back({(bp.t - u) / span, bp.left - fum, bp.right - fum});
  h.push_back({1.0, f.left_limit(v) - fum, 0.0});
  for (auto& bp : h) {
    if (std::abs(bp.left) <= tol) bp.left = 0.0;
    if (std::abs(bp.right) <= tol) bp.right = 0.0;
  }
  return BranchSplit{Excursion::make(std::move(g)), Excursion::make(std::move(h))};
}

}  // namespace vernation
