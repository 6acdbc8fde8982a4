#include "vernation/excursion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace vernation {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double interp(double t0, double v0, double t1, double v1, double t) {
  if (t1 == t0) return v0;
  const double w = (t - t0) / (t1 - t0);
  return v0 + w * (v1 - v0);
}

}  // namespace

Excursion Excursion::make(std::vector<Breakpoint> breakpoints) {
  if (breakpoints.empty()) throw std::invalid_argument("excursion: empty breakpoint sequence");
  auto& b = breakpoints;
  if (b.front().t != 0.0) throw std::invalid_argument("excursion: first breakpoint must be at t=0");
  if (b.back().t != 1.0) throw std::invalid_argument("excursion: last breakpoint must be at t=1");
  if (b.front().left != 0.0) throw std::invalid_argument("excursion: f(0-) must equal 0");
  if (b.back().right != 0.0) throw std::invalid_argument("excursion: f(1) must equal 0");
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!(std::isfinite(b[i].t) && std::isfinite(b[i].left) && std::isfinite(b[i].right)))
      throw std::invalid_argument("excursion: non-finite breakpoint");
    if (b[i].left < 0.0 || b[i].right < 0.0)
      throw std::invalid_argument("excursion: negative value at t=" + std::to_string(b[i].t));
    if (b[i].right < b[i].left)
      throw std::invalid_argument("excursion: negative jump at t=" + std::to_string(b[i].t));
    if (i > 0 && !(b[i].t > b[i - 1].t))
      throw std::invalid_argument("excursion: breakpoint times must be strictly increasing");
  }

  // Canonical form: drop interior breakpoints with no jump that are
  // collinear with their neighbours.
  std::vector<Breakpoint> canon;
  canon.reserve(b.size());
  canon.push_back(b.front());
  for (std::size_t i = 1; i + 1 < b.size(); ++i) {
    if (b[i].right == b[i].left) {
      const Breakpoint& prev = canon.back();
      const Breakpoint& next = b[i + 1];
      const double lin = interp(prev.t, prev.right, next.t, next.left, b[i].t);
      const double scale = 1.0 + std::abs(prev.right) + std::abs(next.left);
      if (std::abs(lin - b[i].right) <= 1e-12 * scale) continue;
    }
    canon.push_back(b[i]);
  }
  canon.push_back(b.back());

  Excursion f;
  f.bps_ = std::move(canon);
  f.build_index();
  return f;
}

Excursion Excursion::zero() {
  return make({{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}});
}

void Excursion::build_index() {
  const std::size_t n = bps_.size();
  jumps_.clear();
  sup_ = 0.0;
  for (const auto& bp : bps_) {
    sup_ = std::max(sup_, std::max(bp.left, bp.right));
    if (bp.right > bp.left) jumps_.push_back({bp.t, bp.right - bp.left});
  }
  seg_min_.assign(n > 1 ? n - 1 : 0, 0.0);
  gmin_.assign(seg_min_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    seg_min_[i] = std::min(bps_[i].right, bps_[i + 1].left);
    gmin_[i] = std::min(bps_[i].left, seg_min_[i]);
  }
  auto build_table = [](const std::vector<double>& base) {
    std::vector<std::vector<double>> tab;
    if (base.empty()) return tab;
    tab.push_back(base);
    for (std::size_t len = 1; 2 * len <= base.size(); len *= 2) {
      const auto& prev = tab.back();
      std::vector<double> row(base.size() - 2 * len + 1);
      for (std::size_t i = 0; i < row.size(); ++i) row[i] = std::min(prev[i], prev[i + len]);
      tab.push_back(std::move(row));
    }
    return tab;
  };
  table_ = build_table(seg_min_);
  gtable_ = build_table(gmin_);
}

std::size_t Excursion::segment_of(double t) const {
  // index i with t in [t_i, t_{i+1}); the last breakpoint maps to n-2.
  auto it = std::upper_bound(bps_.begin(), bps_.end(), t,
                             [](double v, const Breakpoint& bp) { return v < bp.t; });
  std::size_t idx = static_cast<std::size_t>(it - bps_.begin());
  if (idx == 0) return 0;
  if (idx >= bps_.size()) return bps_.size() - 2;
  return idx - 1;
}

namespace {
double table_query(const std::vector<std::vector<double>>& tab, std::size_t lo, std::size_t hi) {
  if (lo > hi) return kInf;
  const std::size_t len = hi - lo + 1;
  std::size_t k = 0;
  while ((std::size_t{2} << k) <= len) ++k;
  return std::min(tab[k][lo], tab[k][hi + 1 - (std::size_t{1} << k)]);
}
}  // namespace

double Excursion::seg_range_min(std::size_t lo, std::size_t hi) const {
  return table_query(table_, lo, hi);
}

double Excursion::gmin_range_min(std::size_t lo, std::size_t hi) const {
  return table_query(gtable_, lo, hi);
}

Evaluation Excursion::evaluate(double t) const {
  if (t < 0.0 || t > 1.0) throw std::out_of_range("excursion: t outside [0,1]");
  const std::size_t i = segment_of(t);
  const Breakpoint& a = bps_[i];
  const Breakpoint& b = bps_[i + 1];
  Evaluation e;
  if (t == a.t) {
    e.value = a.right;
    e.left_limit = a.left;
  } else if (t == b.t) {
    e.value = b.right;
    e.left_limit = b.left;
  } else {
    e.value = interp(a.t, a.right, b.t, b.left, t);
    e.left_limit = e.value;
  }
  e.jump = e.value - e.left_limit;
  return e;
}

double Excursion::range_inf(double s, double t) const {
  if (s > t) throw std::invalid_argument("range_inf: s > t");
  if (s < 0.0 || t > 1.0) throw std::out_of_range("range_inf: outside [0,1]");
  const Evaluation es = evaluate(s);
  if (s == t) return es.value;
  const Evaluation et = evaluate(t);
  double best = std::min(es.value, et.value);
  // left limit at t is approached from within [s,t)
  best = std::min(best, et.left_limit);
  const std::size_t is = segment_of(s);
  const std::size_t it = segment_of(t);
  if (is == it) return best;  // single affine piece, endpoints cover it
  // tail of s's segment: affine from f(s) to left_{is+1}
  best = std::min(best, std::min(es.value, bps_[is + 1].left));
  // head of t's segment: affine from right_{it} to f(t-); both covered
  if (t > bps_[it].t) best = std::min(best, bps_[it].right);
  // whole segments strictly between
  if (is + 1 <= it - 1) best = std::min(best, seg_range_min(is + 1, it - 1));
  return best;
}

double Excursion::x_value(double s, double t) const {
  if (s > t) return 0.0;
  const double inf = range_inf(s, t);
  const double fsm = evaluate(s).left_limit;
  return std::max(inf - fsm, 0.0);
}

double Excursion::last_left_limit_below(double s, double level) const {
  const double c = level + ancestor_tol;
  // Left limits over the segment [t_j, t_{j+1}] take values between
  // left_j, right_j and left_{j+1}; gmin_[j] is their minimum.
  std::size_t i = segment_of(s);
  // partial window (t_i, s]: f(r-) runs affinely from right_i to f(s-)
  {
    const Breakpoint& a = bps_[i];
    const double vs = evaluate(s).left_limit;
    if (vs <= c) return s;
    if (s > a.t && a.right <= c && vs > a.right) {
      const double r = a.t + (c - a.right) * (s - a.t) / (vs - a.right);
      if (r > a.t && r < s) return r;
    }
  }
  while (true) {
    if (bps_[i].left <= c) return bps_[i].t;
    if (i == 0) return 0.0;  // f(0-) = 0 <= c, always reached
    // binary search with the gmin table for the last segment j < i whose
    // left limits dip to c
    std::size_t lo = 0, hi = i - 1, j = 0;
    if (gmin_range_min(lo, hi) > c) return 0.0;  // cannot happen: gmin_[0] <= left_0 = 0
    while (lo < hi) {
      const std::size_t mid = (lo + hi + 1) / 2;
      if (gmin_range_min(mid, hi) <= c)
        lo = mid;
      else
        hi = mid - 1;
    }
    j = lo;
    const Breakpoint& a = bps_[j];
    const Breakpoint& b = bps_[j + 1];
    if (b.left <= c) return b.t;
    // interior of (t_j, t_{j+1}): affine from a.right to b.left > c
    if (a.right <= c && b.left > a.right) {
      const double r = a.t + (c - a.right) * (b.t - a.t) / (b.left - a.right);
      if (r > a.t && r < b.t) return r;
    }
    if (a.left <= c) return a.t;
    // infimum approached but not attained inside segment j; keep scanning
    if (j == 0) return 0.0;
    i = j;
  }
}

Excursion::Genealogy Excursion::genealogy(double s, double t) const {
  Genealogy g;
  const double lo = std::min(s, t);
  const double hi = std::max(s, t);
  const double inf = range_inf(lo, hi);
  g.is_ancestor = (s <= t) && (evaluate(s).left_limit <= inf + ancestor_tol);
  g.mrca = last_left_limit_below(lo, inf);
  return g;
}

Excursion theta(const Excursion& f) {
  std::vector<Breakpoint> out;
  out.push_back({0.0, 0.0, 0.0});
  for (const auto& bp : f.breakpoints()) {
    const double t = 0.5 * (1.0 + bp.t);
    out.push_back({t, bp.t == 0.0 ? 0.0 : bp.left, bp.right});
  }
  return Excursion::make(std::move(out));
}

Excursion scale(const Excursion& f, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("scale: alpha must be positive");
  std::vector<Breakpoint> out = f.breakpoints();
  for (auto& bp : out) {
    bp.left *= alpha;
    bp.right *= alpha;
  }
  return Excursion::make(std::move(out));
}

Excursion linear_combine(const std::vector<std::pair<double, const Excursion*>>& terms,
                         double clamp_tol) {
  if (terms.empty()) throw std::invalid_argument("linear_combine: no terms");
  std::vector<double> times;
  for (const auto& [c, f] : terms)
    for (const auto& bp : f->breakpoints()) times.push_back(bp.t);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  std::vector<Breakpoint> out;
  out.reserve(times.size());
  for (double t : times) {
    double v = 0.0, l = 0.0;
    for (const auto& [c, f] : terms) {
      const Evaluation e = f->evaluate(t);
      v += c * e.value;
      l += c * e.left_limit;
    }
    auto clamp = [&](double x) { return std::abs(x) <= clamp_tol ? 0.0 : x; };
    out.push_back({t, clamp(l), clamp(v)});
  }
  return Excursion::make(std::move(out));
}

Warp Warp::identity() { return Warp{{{0.0, 0.0}, {1.0, 1.0}}}; }

void Warp::validate() const {
  if (knots.size() < 2 || knots.front() != std::pair<double, double>{0.0, 0.0} ||
      knots.back() != std::pair<double, double>{1.0, 1.0})
    throw std::invalid_argument("warp: knots must run from (0,0) to (1,1)");
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i].first > knots[i - 1].first && knots[i].second > knots[i - 1].second))
      throw std::invalid_argument("warp: knots must be strictly increasing");
}

double Warp::operator()(double u) const {
  auto it = std::upper_bound(knots.begin(), knots.end(), u,
                             [](double v, const std::pair<double, double>& k) { return v < k.first; });
  if (it == knots.begin()) return knots.front().second;
  if (it == knots.end()) return knots.back().second;
  const auto& b = *it;
  const auto& a = *(it - 1);
  return interp(a.first, a.second, b.first, b.second, u);
}

double Warp::inverse(double v) const {
  auto it = std::upper_bound(knots.begin(), knots.end(), v,
                             [](double x, const std::pair<double, double>& k) { return x < k.second; });
  if (it == knots.begin()) return knots.front().first;
  if (it == knots.end()) return knots.back().first;
  const auto& b = *it;
  const auto& a = *(it - 1);
  return interp(a.second, a.first, b.second, b.first, v);
}

Excursion time_change(const Excursion& f, const Warp& lambda) {
  lambda.validate();
  std::vector<double> times;
  for (const auto& k : lambda.knots) times.push_back(k.first);
  for (const auto& bp : f.breakpoints()) times.push_back(lambda.inverse(bp.t));
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  std::vector<Breakpoint> out;
  out.reserve(times.size());
  for (double u : times) {
    const Evaluation e = f.evaluate(lambda(u));
    out.push_back({u, e.left_limit, e.value});
  }
  if (!out.empty()) {
    out.front().t = 0.0;
    out.back().t = 1.0;
  }
  return Excursion::make(std::move(out));
}

double sup_norm_diff(const Excursion& f, const Excursion& g) {
  std::vector<double> times;
  for (const auto& bp : f.breakpoints()) times.push_back(bp.t);
  for (const auto& bp : g.breakpoints()) times.push_back(bp.t);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  double best = 0.0;
  for (double t : times) {
    const Evaluation ef = f.evaluate(t);
    const Evaluation eg = g.evaluate(t);
    best = std::max(best, std::abs(ef.value - eg.value));
    best = std::max(best, std::abs(ef.left_limit - eg.left_limit));
  }
  return best;
}

namespace {

// Exact sup over [u0,u1] of |f - g(lambda)| where lambda is affine with
// lambda(u0)=v0, lambda(u1)=v1.
double piece_sup(const Excursion& f, const Excursion& g, double u0, double v0, double u1,
                 double v1) {
  std::vector<double> knots{u0, u1};
  for (const auto& bp : f.breakpoints())
    if (bp.t > u0 && bp.t < u1) knots.push_back(bp.t);
  for (const auto& bp : g.breakpoints())
    if (bp.t > v0 && bp.t <= v1 && v1 > v0)
      knots.push_back(interp(v0, u0, v1, u1, bp.t));
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  double best = 0.0;
  for (double u : knots) {
    const double v = std::clamp(interp(u0, v0, u1, v1, u), 0.0, 1.0);
    const Evaluation ef = f.evaluate(u);
    const Evaluation eg = g.evaluate(v);
    best = std::max(best, std::abs(ef.value - eg.value));
    best = std::max(best, std::abs(ef.left_limit - eg.left_limit));
  }
  return best;
}

}  // namespace

double skorokhod_upper(const Excursion& f, const Excursion& g, int warp_grid) {
  if (warp_grid < 2) warp_grid = 2;
  std::vector<double> grid;
  for (int i = 0; i < warp_grid; ++i) grid.push_back(double(i) / double(warp_grid - 1));
  auto add_breakpoints = [&grid](const Excursion& h) {
    const auto& bps = h.breakpoints();
    const std::size_t cap = 24;
    const std::size_t stride = bps.size() > cap ? (bps.size() + cap - 1) / cap : 1;
    for (std::size_t i = 0; i < bps.size(); i += stride) grid.push_back(bps[i].t);
  };
  add_breakpoints(f);
  add_breakpoints(g);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  const std::size_t m = grid.size();

  // cost[i][j] = best max-cost over warps built from lattice knots ending
  // with lambda(grid[i]) = grid[j]; knots may skip grid points, so the
  // warp family contains far more than the identity.
  std::vector<std::vector<double>> cost(m, std::vector<double>(m, kInf));
  cost[0][0] = 0.0;
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t j = 1; j < m; ++j) {
      if ((i + 1 == m) != (j + 1 == m)) continue;  // endpoints pinned together
      double best = kInf;
      const std::size_t window = 8;  // bounds warp slopes, keeps identity reachable
      const std::size_t ip_lo = i > window ? i - window : 0;
      const std::size_t jp_lo = j > window ? j - window : 0;
      for (std::size_t ip = ip_lo; ip < i; ++ip) {
        for (std::size_t jp = jp_lo; jp < j; ++jp) {
          const double prev = cost[ip][jp];
          if (prev >= best) continue;
          const double warp_dev =
              std::max(std::abs(grid[jp] - grid[ip]), std::abs(grid[j] - grid[i]));
          if (std::max(prev, warp_dev) >= best) continue;
          const double sup = piece_sup(f, g, grid[ip], grid[jp], grid[i], grid[j]);
          best = std::min(best, std::max(prev, std::max(warp_dev, sup)));
        }
      }
      cost[i][j] = best;
    }
  }
  return cost[m - 1][m - 1];
}

std::string to_json(const Excursion& f) {
  nlohmann::json j;
  j["breakpoints"] = nlohmann::json::array();
  for (const auto& bp : f.breakpoints())
    j["breakpoints"].push_back({{"t", bp.t}, {"left", bp.left}, {"right", bp.right}});
  return j.dump(2);
}

Excursion excursion_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::vector<Breakpoint> bps;
  for (const auto& e : j.at("breakpoints"))
    bps.push_back({e.at("t").get<double>(), e.at("left").get<double>(),
                   e.at("right").get<double>()});
  return Excursion::make(std::move(bps));
}

}  // namespace vernation
