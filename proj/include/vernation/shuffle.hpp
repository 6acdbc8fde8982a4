#pragma once

#include <string>
#include <vector>

namespace vernation {

// Distance on the metric circle of perimeter 1, [0,1] with 0 and 1 glued.
inline double circle_distance(double a, double b) {
  double d = a > b ? a - b : b - a;
  return d <= 0.5 ? d : 1.0 - d;
}

// phi_Delta of the geometric-interval construction: for jump height
// Delta >= 1 the identity, for Delta in (0,1) the piecewise map with base
// b = 1 - Delta running over the intervals (b^{k+1}, b^k].
double default_phi(double jump_height, double x);

// Deterministic sibling permutation of {1,...,k} (odd/even split of k+1-l).
std::vector<int> sibling_psi(int k);

// Circle map paired with sibling_psi(k) at the height (k+1)/a; satisfies
// delta(phi(1 - j/(k+1)), 1 - psi_k(j)/(k+1)) <= 2/(k+1) and preserves
// Lebesgue measure (piecewise affine with slope +-1).
struct SiblingPhi {
  int k = 1;
  double a = 1.0;
  double alpha = 0.75;  // geometric ratio of the interval partition
  bool flip_parity(double x) const;
  double operator()(double x) const;
};
SiblingPhi sibling_phi(int k, double a);

// A shuffle: family Delta -> phi_Delta of surjective caglad circle maps.
class Shuffle {
 public:
  enum class Kind { Default, IdentityAbove, Sibling };

  static Shuffle defaulted();
  static Shuffle identity_above(double eps);
  // k inferred from the height as round(Delta * a) - 1; identity when the
  // inferred k is below 1 or the height is at least 1.
  static Shuffle sibling(double a);

  double phi(double jump_height, double x) const;

  // delta~_t(a,b) = Delta * delta(phi_Delta(a/Delta), phi_Delta(b/Delta))
  double delta_tilde(double jump_height, double a, double b) const;

  Kind kind() const { return kind_; }
  double eps() const { return eps_; }
  std::string describe() const;

  // CLI spelling: "default", "identity-eps:<e>", "sibling:<a>"
  static Shuffle parse(const std::string& text);

 private:
  Kind kind_ = Kind::Default;
  double eps_ = 0.0;  // IdentityAbove threshold
  double a_ = 1.0;    // Sibling scale
};

// Empirical check of the shuffle conditions: per Delta the sup over the x
// grid of |2 delta(phi(0), phi(x)) / x - 1|, plus the grid estimate of
// K = sup delta(phi(0), phi(x)) / x.
struct ShuffleReport {
  std::vector<double> deltas;
  std::vector<double> sup_deviation;  // aligned with deltas
  double K = 0.0;
};
ShuffleReport check_shuffle(const Shuffle& shuffle, const std::vector<double>& delta_grid,
                            const std::vector<double>& x_grid);

}  // namespace vernation
