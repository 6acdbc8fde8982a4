#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vernation/excursion.hpp"
#include "vernation/shuffle.hpp"

namespace vernation {

enum class MetricFamily { Classic, Tree, Loop, Vern, LoopShuffled, VernShuffled };

struct MetricKind {
  MetricFamily family = MetricFamily::Vern;
  double coefficient = 2.0;  // weight of the loop part in vern distances
  std::optional<Shuffle> shuffle;

  static MetricKind classic() { return {MetricFamily::Classic, 2.0, std::nullopt}; }
  static MetricKind tree() { return {MetricFamily::Tree, 2.0, std::nullopt}; }
  static MetricKind loop() { return {MetricFamily::Loop, 2.0, std::nullopt}; }
  static MetricKind vern(double coefficient = 2.0) {
    return {MetricFamily::Vern, coefficient, std::nullopt};
  }
  static MetricKind loop_shuffled(Shuffle s) {
    return {MetricFamily::LoopShuffled, 2.0, std::move(s)};
  }
  static MetricKind vern_shuffled(Shuffle s, double coefficient = 2.0) {
    return {MetricFamily::VernShuffled, coefficient, std::move(s)};
  }
  static MetricKind parse(const std::string& name, double coefficient,
                          const std::optional<Shuffle>& shuffle);
};

// d_clas(s,t) = f(s) + f(t) - 2 inf_{[s,t]} f
double d_classic(const Excursion& f, double s, double t);

// d_Loop(s,t) = sum over jumps r of delta_r(x_r^s, x_r^t)
double d_loop(const Excursion& f, double s, double t);

// d_Tree(s,t) = d_clas(s,t) - sum over jumps r of |x_r^s - x_r^t|
double d_tree(const Excursion& f, double s, double t);

double d_vern(const Excursion& f, double s, double t, double coefficient = 2.0);

double d_loop_shuffled(const Excursion& f, const Shuffle& shuffle, double s, double t);
double d_vern_shuffled(const Excursion& f, const Shuffle& shuffle, double s, double t,
                       double coefficient = 2.0);

// One-sided loop sums d_O / d~_O restricted to s -< r =< t, exposed for
// testing the three-term definitions against the jump-sum identities.
double d_one_sided(const Excursion& f, double s, double t);
double d_one_sided_shuffled(const Excursion& f, const Shuffle& shuffle, double s, double t);
// Three-term route through the most recent common ancestor.
double d_loop_via_mrca(const Excursion& f, double s, double t);
double d_loop_shuffled_via_mrca(const Excursion& f, const Shuffle& shuffle, double s, double t);

struct DistanceMatrix {
  std::vector<double> times;
  std::vector<double> values;  // row-major m x m, symmetric

  std::size_t size() const { return times.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * times.size() + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * times.size() + j]; }
  double max_entry() const;
};

// Precomputed per-excursion jump data against a fixed list of sample
// times; makes every pairwise distance an O(#jumps) sum.
class JumpTable {
 public:
  JumpTable(const Excursion& f, std::vector<double> sample_times,
            const std::optional<Shuffle>& shuffle = std::nullopt);

  double distance(const MetricKind& kind, std::size_t i, std::size_t j) const;
  const std::vector<double>& times() const { return times_; }
  const Excursion& excursion() const { return *f_; }

 private:
  const Excursion* f_;
  std::vector<double> times_;
  std::vector<double> f_values_;          // f(t_i)
  std::vector<double> heights_;           // jump heights
  std::vector<double> x_;    // x_[k*m + i] = x_{r_k}^{t_i}
  std::vector<double> phi_;  // shuffled positions, when a shuffle is given
  double pair_inf(std::size_t i, std::size_t j) const;
};

// Full symmetric table; sample_times must be non-empty and contain 1.
DistanceMatrix matrix(const Excursion& f, const MetricKind& kind,
                      const std::vector<double>& sample_times);

// sup_{i,j} |a - b| entrywise; requires identical sample times.
double matrix_sup_diff(const DistanceMatrix& a, const DistanceMatrix& b);

// CSV wire format: header row of times, then the symmetric numeric rows.
std::string to_csv(const DistanceMatrix& m);

// Default sampling grid: `n` equispaced times plus all jump times plus
// `loop_anchors` extra times around each loop (positions x*Delta), plus 1.
std::vector<double> build_sample_times(const Excursion& f, int n = 256, int loop_anchors = 8);

}  // namespace vernation
