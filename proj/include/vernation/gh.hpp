#pragma once

#include <utility>
#include <vector>

#include "vernation/excursion.hpp"
#include "vernation/metrics.hpp"
#include "vernation/space.hpp"

namespace vernation {

// A correspondence between two finite spaces: index pairs covering both
// sides; the pointed variant must contain the root pair.
struct Correspondence {
  std::vector<std::pair<int, int>> pairs;
  void validate(const FiniteSpace& x, const FiniteSpace& y, bool pointed = false) const;
};

double distortion(const Correspondence& r, const FiniteSpace& x, const FiniteSpace& y);

// Exact Gromov-Hausdorff distance (1/2 inf over correspondences of the
// distortion) via branch-and-bound over partner assignments; feasible
// only for small spaces.
double gh_exact_small(const FiniteSpace& x, const FiniteSpace& y, int max_points = 6,
                      bool pointed = false);

// Lower bound: max of half the diameter gap and half the Hausdorff
// distance between the sets of pairwise distances.
double gh_lower(const FiniteSpace& x, const FiniteSpace& y);

// Upper bound from piecewise-linear warps of the sample-time axis:
// 1/2 min over warps of the distortion of the induced correspondence.
// The candidate set is seeded with the identity and a root-distance
// profile warp, then refined by coordinate descent on `knots` knots.
double parametrized_upper(const FiniteSpace& x, const FiniteSpace& y,
                          const std::vector<Warp>& warps = {}, int knots = 16);

// Pointed GHP bound for matrices sharing sample times: sup |d1 - d2|
// via the diagonal coupling.
double ghp_upper(const DistanceMatrix& d1, const DistanceMatrix& d2);

// Pointed GHP bound from an explicit correspondence: distortion plus the
// best coupling mass that can be placed on it (exact rational max-flow).
double ghp_upper_coupled(const FiniteSpace& x, const FiniteSpace& y, const Correspondence& r);

// Pointed GHP bound grown from anchor pairs (x_i matched to y_j): the
// correspondence at radius rho pairs x_i with every y within rho of its
// anchor; returns the best bound over the given radii.
double ghp_upper_anchored(const FiniteSpace& x, const FiniteSpace& y,
                          const std::vector<std::pair<int, int>>& anchors,
                          const std::vector<double>& radii);

// Generic GHP upper bound; matches points by root-distance profile.
double ghp_upper_generic(const FiniteSpace& x, const FiniteSpace& y);

// d_S between truncated sequences of (mass, space); shorter sequence is
// padded with (0, point).
double sequence_distance(const std::vector<std::pair<double, FiniteSpace>>& s1,
                         const std::vector<std::pair<double, FiniteSpace>>& s2);

}  // namespace vernation
