#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dcop/model.hpp"

namespace dcop {

struct GeneratorConfig {
  enum class Family {
    delaunay_coloring,
    scale_free_asymmetric,
    random_density_coloring,
    bridge_demo,
  };

  Family family = Family::delaunay_coloring;
  int n = 200;
  int colors = 3;        // coloring families
  double density = 0.1;  // random_density_coloring
  int attach_m = 2;      // scale_free_asymmetric
  int domain_size = 10;  // scale_free_asymmetric
  std::uint64_t seed = 0;
};

std::string to_string(GeneratorConfig::Family family);
GeneratorConfig::Family family_from_string(const std::string& s);

// Dispatches on config.family.
ProblemInstance generate(const GeneratorConfig& config);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

std::vector<Point> sample_unit_square(int n, std::uint64_t seed);

// Delaunay edge set of a point set in general position (Bowyer–Watson).
std::vector<std::pair<int, int>> delaunay_edges(const std::vector<Point>& points);

// Unit-conflict graph coloring over a Delaunay triangulation of n uniform
// random points in the unit square.
ProblemInstance gen_delaunay_coloring(int n, int colors, std::uint64_t seed);

// Barabási–Albert preferential attachment with independent per-side integer
// costs uniform in [0, 100].
ProblemInstance gen_scale_free_asymmetric(int n, int attach_m, int domain_size,
                                          std::uint64_t seed);

// Exactly round(d * n(n-1)/2) distinct edges sampled uniformly.
ProblemInstance gen_random_density_coloring(int n, double density, int colors,
                                            std::uint64_t seed);

// Two 10-node hub+cycle clusters joined by the single bridge {0, 10};
// 3-color unit-conflict costs.
ProblemInstance gen_bridge_demo();

// All bridge edges, as (min, max) pairs sorted ascending.
std::vector<std::pair<int, int>> find_bridges(const ProblemInstance& inst);

// x0 = x10 = color 0, every other node properly colored among themselves
// with colors {1, 2}. Only valid for the bridge_demo instance.
Assignment make_unfortunate_assignment(const ProblemInstance& inst);

}  // namespace dcop
