#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vernation/combinatorics.hpp"
#include "vernation/excursion.hpp"

namespace vernation {

struct RngSeed {
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
};

// Deterministic generator: identical seeds reproduce identical outputs
// bit-for-bit across runs (mt19937_64 plus rejection sampling only).
class Rng {
 public:
  explicit Rng(RngSeed s);
  std::uint64_t u64() { return eng_(); }
  std::uint64_t below(std::uint64_t n);  // uniform on [0, n)
  double real01();                       // uniform on [0, 1)
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

struct OffspringLaw {
  enum class Kind { Geometric, StableTail, UniformBinary };
  Kind kind = Kind::Geometric;
  double p = 0.5;      // geometric parameter
  double alpha = 1.5;  // stable tail exponent

  static OffspringLaw geometric(double p);
  static OffspringLaw stable_tail(double alpha);
  static OffspringLaw uniform_binary();
  static OffspringLaw parse(const std::string& text);  // geometric:<p> | stable:<a> | uniform-binary
};

// Galton-Watson tree conditioned on n vertices via cycle-lemma rotation
// of an offspring sequence summing to n-1.
PlaneTree random_plane_tree(int n, const OffspringLaw& law, RngSeed seed);

struct Mapping {
  int n = 0;
  std::vector<int> images;  // 0-based, i -> images[i]
  std::vector<char> cyclic;
  std::vector<int> basin_of;                 // basin index per vertex
  std::vector<std::vector<int>> basins;      // vertex sets, in sample order
  std::vector<std::vector<int>> cycles;      // cycle of basin j, listed m(g*),...,g*
  std::vector<int> gamma_star;               // g_j* per basin
  // tree components in the <=_m order (basins in order, cycles within):
  std::vector<PlaneTree> trees;
  std::vector<int> tree_root_vertex;  // cyclic root per tree
  std::vector<int> tree_basin;        // basin index per tree
  std::vector<std::vector<int>> tree_vertex_of_node;  // mapping vertex per tree node
};

Mapping random_mapping(int n, RngSeed seed);
// Deterministic injection: run the same ordering procedure on the given
// images (the randomness only orders children, basins, and cycles).
Mapping mapping_from_images(const std::vector<int>& images, RngSeed seed);

struct MappingProcesses {
  std::vector<int> height;        // H_i(m), size n+1
  std::vector<int> contour;       // C_i(m), size 2n+1
  std::vector<double> ell_prime;  // l'_i(m), size 2n+1
  std::vector<long long> marks;   // Z_j(m), j = 0..k(m)
  std::vector<Excursion> basin_excursions;  // f_j^n, one per basin
};
MappingProcesses mapping_processes(const Mapping& m);

struct StepLaw {
  enum class Kind { Pm1, StableTail };
  Kind kind = Kind::Pm1;
  double alpha = 1.5;
  static StepLaw pm1();
  static StepLaw stable_tail(double alpha);
  static StepLaw parse(const std::string& text);  // pm1 | stable:<a>
};

// Conditioned non-negative random-walk excursion of length n rescaled to
// [0,1]; pm1 gives a continuous excursion at vertical scale sqrt(n)
// (n must be even), stable steps give a PJG excursion at scale n^{1/alpha}.
Excursion walk_excursion(int n, const StepLaw& law, RngSeed seed);

}  // namespace vernation
