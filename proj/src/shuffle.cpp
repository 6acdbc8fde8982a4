#include "vernation/shuffle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vernation {

double default_phi(double jump_height, double x) {
  if (!(jump_height > 0.0)) throw std::invalid_argument("default_phi: height must be positive");
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("default_phi: x outside [0,1]");
  if (jump_height >= 1.0) return x;
  if (x == 0.0) return 0.0;
  const double base = 1.0 - jump_height;  // the formula indexes phi_{1-Delta} by base Delta
  // find k with x in (base^{k+1}, base^k]; below numeric resolution the
  // value is indistinguishable from 0
  if (x < 1e-12) return 0.0;
  int k = static_cast<int>(std::floor(std::log(x) / std::log(base)));
  // guard the boundary cases of floor against rounding
  while (k > 0 && x > std::pow(base, k)) --k;
  while (x <= std::pow(base, k + 1)) ++k;
  const double hi = std::pow(base, k);
  const double lo = std::pow(base, k + 1);
  const double mid = 0.5 * (hi + lo);
  double y = (x > mid) ? (x - 0.5 * hi) : (1.0 - x + 0.5 * lo);
  if (y >= 1.0) y -= 1.0;  // wrap onto the circle [0,1)
  return y;
}

std::vector<int> sibling_psi(int k) {
  if (k <= 0) throw std::invalid_argument("sibling_psi: k must be positive");
  std::vector<int> psi(k + 1, 0);  // 1-based
  for (int l = 1; l <= k; ++l) {
    const int d = k + 1 - l;
    psi[l] = (d % 2 == 1) ? (d + 1) / 2 : (k + 1 - d / 2);
  }
  return psi;
}

bool SiblingPhi::flip_parity(double x) const {
  // x lives in I_{2m} u I_{2m+1}; flip when some j/(k+1) lies in
  // I_{2m+1-b(j)} with b the parity of j
  if (x <= 0.0 || x > 1.0) return false;
  const int m = [&] {
    int mm = static_cast<int>(std::floor(std::log(x) / std::log(alpha)));
    while (mm > 0 && x > std::pow(alpha, mm)) --mm;
    while (x <= std::pow(alpha, mm + 1)) ++mm;
    return mm;
  }();
  const double am = std::pow(alpha, m);
  const double am1 = std::pow(alpha, m + 1);
  const double mid = 0.5 * am * (1.0 + alpha);
  for (int j = 1; j <= k; ++j) {
    const double q = double(j) / double(k + 1);
    if (q <= am1 || q > am) continue;
    const bool in_even = q > mid;  // I_{2m}
    const bool odd_j = (j % 2 == 1);
    // need j/(k+1) in I_{2m+1-b(j)}: odd j -> I_{2m}, even j -> I_{2m+1}
    if ((odd_j && in_even) || (!odd_j && !in_even)) return true;
  }
  return false;
}

double SiblingPhi::operator()(double x) const {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("sibling phi: x outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x < 1e-12) return 0.0;
  int m = static_cast<int>(std::floor(std::log(x) / std::log(alpha)));
  while (m > 0 && x > std::pow(alpha, m)) --m;
  while (x <= std::pow(alpha, m + 1)) ++m;
  const double am = std::pow(alpha, m);
  const double am1 = std::pow(alpha, m + 1);
  const double mid = 0.5 * am * (1.0 + alpha);
  double v = (x > mid) ? (x - 0.5 * am) : (1.0 - x + 0.5 * am1);
  if (v >= 1.0) v -= 1.0;
  if (flip_parity(x)) {
    v = 1.0 - v;
    if (v >= 1.0) v -= 1.0;
  }
  return v;
}

SiblingPhi sibling_phi(int k, double a) {
  if (k <= 0) throw std::invalid_argument("sibling_phi: k must be positive");
  if (!(a > 0.0)) throw std::invalid_argument("sibling_phi: a must be positive");
  SiblingPhi phi;
  phi.k = k;
  phi.a = a;
  const double bound = std::min(double(k + 1) / a, 1.0 / double(k + 1));
  // alpha in (1/2,1) with max(1-alpha, 1/alpha-1) <= bound
  phi.alpha = std::max(0.75, 1.0 / (1.0 + std::min(bound, 0.5)));
  return phi;
}

Shuffle Shuffle::defaulted() { return Shuffle{}; }

Shuffle Shuffle::identity_above(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("identity_above: eps must be positive");
  Shuffle s;
  s.kind_ = Kind::IdentityAbove;
  s.eps_ = eps;
  return s;
}

Shuffle Shuffle::sibling(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("sibling shuffle: a must be positive");
  Shuffle s;
  s.kind_ = Kind::Sibling;
  s.a_ = a;
  return s;
}

double Shuffle::phi(double jump_height, double x) const {
  switch (kind_) {
    case Kind::Default:
      return default_phi(jump_height, x);
    case Kind::IdentityAbove:
      if (jump_height >= eps_) return x >= 1.0 ? 0.0 : x;  // identity on the circle
      return default_phi(jump_height, x);
    case Kind::Sibling: {
      if (jump_height >= 1.0) return x >= 1.0 ? 0.0 : x;
      const int k = static_cast<int>(std::lround(jump_height * a_)) - 1;
      if (k < 1) return x >= 1.0 ? 0.0 : x;
      return sibling_phi(k, a_)(x);
    }
  }
  return x;
}

double Shuffle::delta_tilde(double jump_height, double a, double b) const {
  if (jump_height == 0.0) {
    if (a != 0.0 || b != 0.0) throw std::invalid_argument("delta_tilde: args outside [0,Delta]");
    return 0.0;
  }
  if (a < 0.0 || b < 0.0 || a > jump_height || b > jump_height)
    throw std::invalid_argument("delta_tilde: args outside [0,Delta]");
  return jump_height * circle_distance(phi(jump_height, a / jump_height),
                                       phi(jump_height, b / jump_height));
}

std::string Shuffle::describe() const {
  switch (kind_) {
    case Kind::Default:
      return "default";
    case Kind::IdentityAbove:
      return "identity-eps:" + std::to_string(eps_);
    case Kind::Sibling:
      return "sibling:" + std::to_string(a_);
  }
  return "default";
}

Shuffle Shuffle::parse(const std::string& text) {
  if (text == "default") return defaulted();
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  if (head == "identity-eps" && colon != std::string::npos)
    return identity_above(std::stod(text.substr(colon + 1)));
  if (head == "sibling" && colon != std::string::npos) {
    std::string rest = text.substr(colon + 1);
    const auto comma = rest.find(',');
    // accept "sibling:<a>" and the CLI spelling "sibling:<k>,<a>"
    if (comma == std::string::npos) return sibling(std::stod(rest));
    return sibling(std::stod(rest.substr(comma + 1)));
  }
  throw std::invalid_argument("unknown shuffle spec: " + text);
}

ShuffleReport check_shuffle(const Shuffle& shuffle, const std::vector<double>& delta_grid,
                            const std::vector<double>& x_grid) {
  if (delta_grid.empty() || x_grid.empty())
    throw std::invalid_argument("check_shuffle: empty grid");
  ShuffleReport report;
  report.deltas = delta_grid;
  for (double d : delta_grid) {
    double sup = 0.0;
    const double p0 = shuffle.phi(d, 0.0);
    for (double x : x_grid) {
      if (!(x > 0.0 && x <= 1.0)) throw std::invalid_argument("check_shuffle: x grid not in (0,1]");
      const double dev = std::abs(2.0 / x * circle_distance(p0, shuffle.phi(d, x)) - 1.0);
      sup = std::max(sup, dev);
      report.K = std::max(report.K, circle_distance(p0, shuffle.phi(d, x)) / x);
    }
    report.sup_deviation.push_back(sup);
  }
  return report;
}

}  // namespace vernation
