#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace vernation {

// A breakpoint of a piecewise-linear cadlag function on [0,1].
// `left` is the left limit f(t-), `right` is the value f(t).
// Between consecutive breakpoints the function is affine from
// (t_i, right_i) to (t_{i+1}, left_{i+1}).
struct Breakpoint {
  double t = 0.0;
  double left = 0.0;
  double right = 0.0;
};

struct JumpRecord {
  double time = 0.0;
  double height = 0.0;
};

struct Evaluation {
  double value = 0.0;       // f(t)
  double left_limit = 0.0;  // f(t-)
  double jump = 0.0;        // f(t) - f(t-)
};

// Non-negative piecewise-linear excursion on [0,1] with finitely many
// non-negative jumps, f(0-) = 0 and f(1) = 0. Immutable after
// construction; a sparse range-minimum index over the affine segments is
// built eagerly so all queries are lock-free.
class Excursion {
 public:
  // Validates and canonicalizes the breakpoint sequence (interior
  // breakpoints that are neither kinks nor jumps are coalesced).
  static Excursion make(std::vector<Breakpoint> breakpoints);

  // Constant zero excursion.
  static Excursion zero();

  const std::vector<Breakpoint>& breakpoints() const { return bps_; }
  std::size_t size() const { return bps_.size(); }

  Evaluation evaluate(double t) const;
  double value(double t) const { return evaluate(t).value; }
  double left_limit(double t) const { return evaluate(t).left_limit; }
  double jump_at(double t) const { return evaluate(t).jump; }

  // Exact infimum of f over the closed interval [s,t].
  double range_inf(double s, double t) const;

  // x_s^t = 1{s<=t} max(inf_{[s,t]} f - f(s-), 0).
  double x_value(double s, double t) const;

  // Ancestor test s <= t and f(s-) <= inf_{[s,t]} f (tolerance
  // `ancestor_tol`), plus the most recent common ancestor
  // s^t = sup{r <= min(s,t) : f(r-) <= inf over [min,max]}.
  struct Genealogy {
    bool is_ancestor = false;
    double mrca = 0.0;
  };
  Genealogy genealogy(double s, double t) const;
  double mrca(double s, double t) const { return genealogy(s, t).mrca; }

  // All times with a strictly positive jump, ascending.
  const std::vector<JumpRecord>& jumps() const { return jumps_; }

  double sup() const { return sup_; }

  bool operator==(const Excursion& other) const { return bps_ == other.bps_; }

  static constexpr double ancestor_tol = 1e-9;

 private:
  Excursion() = default;
  void build_index();
  // Largest r <= s with f(r-) <= level + ancestor_tol (always exists,
  // since f(0-) = 0 <= level for level >= 0).
  double last_left_limit_below(double s, double level) const;

  std::vector<Breakpoint> bps_;
  std::vector<JumpRecord> jumps_;
  // seg_min_[i] = inf of f over [t_i, t_{i+1}) together with the left
  // limit at t_{i+1}; equals min(right_i, left_{i+1}).
  std::vector<double> seg_min_;
  // gmin_[i] = min of the left limits over [t_i, t_{i+1}] = min(left_i, seg_min_[i])
  std::vector<double> gmin_;
  // sparse tables over seg_min_ and gmin_
  std::vector<std::vector<double>> table_;
  std::vector<std::vector<double>> gtable_;
  double sup_ = 0.0;

  std::size_t segment_of(double t) const;
  double seg_range_min(std::size_t lo, std::size_t hi) const;   // [lo,hi]
  double gmin_range_min(std::size_t lo, std::size_t hi) const;  // [lo,hi]
};

// Theta operator: flat zero on [0,1/2), time-compressed copy on [1/2,1].
Excursion theta(const Excursion& f);

// alpha * f, alpha > 0.
Excursion scale(const Excursion& f, double alpha);

// Pointwise linear combination of excursions; the result must itself be a
// valid excursion (values that round to within `clamp_tol` of zero are
// clamped). Throws if it is not.
Excursion linear_combine(const std::vector<std::pair<double, const Excursion*>>& terms,
                         double clamp_tol = 1e-9);

// Increasing piecewise-linear bijection of [0,1] given by its knots.
struct Warp {
  std::vector<std::pair<double, double>> knots;  // (u, lambda(u))
  static Warp identity();
  double operator()(double u) const;
  double inverse(double v) const;
  void validate() const;
};

// f composed with a piecewise-linear increasing bijection of [0,1].
Excursion time_change(const Excursion& f, const Warp& lambda);

// Exact sup norm of f - g over [0,1] (both values and left limits).
double sup_norm_diff(const Excursion& f, const Excursion& g);

// Upper bound on the Skorokhod distance rho(f,g), obtained by a dynamic
// program over piecewise-linear warps whose knots live on the union of a
// uniform grid of `warp_grid` points and both breakpoint sets. Always
// bounded above by sup_norm_diff(f,g) (the identity warp is a candidate).
double skorokhod_upper(const Excursion& f, const Excursion& g, int warp_grid = 33);

// JSON wire format {"breakpoints":[{"t":..,"left":..,"right":..},...]}
std::string to_json(const Excursion& f);
Excursion excursion_from_json(const std::string& text);

}  // namespace vernation
