#pragma once

#include <string>
#include <vector>

#include "vernation/metrics.hpp"

namespace vernation {

// Pointed weighted finite metric space. Weights are kept as integer
// counts over a total so measure couplings stay exact rationals.
struct FiniteSpace {
  std::vector<double> rep_times;          // representative sample times (provenance)
  std::vector<double> dist;               // row-major n x n
  int root = 0;                           // index of the class of time 1
  std::vector<long long> weight_counts;   // per-class counts
  long long weight_total = 1;             // sum of counts
  std::vector<std::vector<int>> members;  // original sample indices per class

  std::size_t size() const { return rep_times.size(); }
  double d(std::size_t i, std::size_t j) const { return dist[i * size() + j]; }
  double& d(std::size_t i, std::size_t j) { return dist[i * size() + j]; }
  double weight(std::size_t i) const {
    return double(weight_counts[i]) / double(weight_total);
  }
  void validate() const;
};

// Quotient of the pseudo-distance matrix of `f` restricted to the sample
// times: classes are the union-find components of the pairs at distance
// <= dedupe_tol, weights count merged samples, root is the class of 1.
FiniteSpace quotient_space(const Excursion& f, const MetricKind& kind,
                           const std::vector<double>& sample_times, double dedupe_tol = 1e-9);

// Quotient of an explicit matrix (root_time must be among m.times).
FiniteSpace quotient_space(const DistanceMatrix& m, double dedupe_tol = 1e-9,
                           double root_time = 1.0);

// Gluing of X1 onto X0 at index a: cross distances d(x,y) = d0(x,a) +
// d1(root1,y); weights renormalized mass0 : mass1 (default 1:1).
FiniteSpace glue(const FiniteSpace& x0, const FiniteSpace& x1, int a, double mass0 = 1.0,
                 double mass1 = 1.0);

FiniteSpace scale(const FiniteSpace& x, double c);
double diam(const FiniteSpace& x);

// Equispaced reference shapes rooted at an endpoint / a fixed point.
FiniteSpace segment(double length, int n);
FiniteSpace circle(double length, int n);
FiniteSpace point();

std::string to_json(const FiniteSpace& x);
FiniteSpace finite_space_from_json(const std::string& text);

}  // namespace vernation
