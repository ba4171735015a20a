#include "dcop/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "dcop/rng.hpp"

namespace dcop {

namespace {

constexpr std::uint64_t kPointStream = 0x706F696E7473ull;
constexpr std::uint64_t kGraphStream = 0x677261706873ull;
constexpr std::uint64_t kCostStream = 0x636F737473ull;

CostMatrix conflict_matrix(int colors) {
  CostMatrix m(colors, colors, 0.0);
  for (int c = 0; c < colors; ++c) m.at(c, c) = 1.0;
  return m;
}

ProblemInstance coloring_instance(int n, int colors,
                                  const std::vector<std::pair<int, int>>& edges) {
  ProblemInstance inst;
  inst.kind = Kind::symmetric;
  inst.domains.assign(n, colors);
  inst.constraints.reserve(edges.size());
  for (const auto& [i, j] : edges) {
    Constraint c;
    c.i = i;
    c.j = j;
    c.cost_i = conflict_matrix(colors);
    c.cost_j = CostMatrix(colors, colors, 0.0);
    inst.constraints.push_back(std::move(c));
  }
  return inst;
}

std::vector<std::pair<int, int>> sorted_unique(std::vector<std::pair<int, int>> edges) {
  for (auto& [i, j] : edges)
    if (i > j) std::swap(i, j);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace

std::string to_string(GeneratorConfig::Family family) {
  switch (family) {
    case GeneratorConfig::Family::delaunay_coloring: return "delaunay_coloring";
    case GeneratorConfig::Family::scale_free_asymmetric: return "scale_free_asymmetric";
    case GeneratorConfig::Family::random_density_coloring: return "random_density_coloring";
    case GeneratorConfig::Family::bridge_demo: return "bridge_demo";
  }
  throw std::logic_error("unreachable family");
}

GeneratorConfig::Family family_from_string(const std::string& s) {
  if (s == "delaunay_coloring") return GeneratorConfig::Family::delaunay_coloring;
  if (s == "scale_free_asymmetric") return GeneratorConfig::Family::scale_free_asymmetric;
  if (s == "random_density_coloring") return GeneratorConfig::Family::random_density_coloring;
  if (s == "bridge_demo") return GeneratorConfig::Family::bridge_demo;
  throw std::invalid_argument("unknown generator family: " + s);
}

ProblemInstance generate(const GeneratorConfig& c) {
  switch (c.family) {
    case GeneratorConfig::Family::delaunay_coloring:
      return gen_delaunay_coloring(c.n, c.colors, c.seed);
    case GeneratorConfig::Family::scale_free_asymmetric:
      return gen_scale_free_asymmetric(c.n, c.attach_m, c.domain_size, c.seed);
    case GeneratorConfig::Family::random_density_coloring:
      return gen_random_density_coloring(c.n, c.density, c.colors, c.seed);
    case GeneratorConfig::Family::bridge_demo:
      return gen_bridge_demo();
  }
  throw std::logic_error("unreachable family");
}

// ---------------------------------------------------------------------------
// Delaunay triangulation (incremental Bowyer–Watson)
// ---------------------------------------------------------------------------

std::vector<Point> sample_unit_square(int n, std::uint64_t seed) {
  Rng rng(mix_seed(seed, kPointStream));
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.x = rng.uniform01();
    p.y = rng.uniform01();
  }
  return pts;
}

namespace {

long double orient(const Point& a, const Point& b, const Point& c) {
  return (static_cast<long double>(b.x) - a.x) * (static_cast<long double>(c.y) - a.y) -
         (static_cast<long double>(b.y) - a.y) * (static_cast<long double>(c.x) - a.x);
}

// p strictly inside the circumcircle of (a, b, c); the triangle may have
// either orientation.
bool in_circumcircle(const Point& a, const Point& b, const Point& c, const Point& p) {
  const long double adx = a.x - p.x, ady = a.y - p.y;
  const long double bdx = b.x - p.x, bdy = b.y - p.y;
  const long double cdx = c.x - p.x, cdy = c.y - p.y;
  const long double det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) -
                          (bdx * bdx + bdy * bdy) * (adx * cdy - cdx * ady) +
                          (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
  const long double o = orient(a, b, c);
  if (o > 0) return det > 0;
  if (o < 0) return det < 0;
  return false;
}

struct Triangle {
  int a, b, c;
};

}  // namespace

std::vector<std::pair<int, int>> delaunay_edges(const std::vector<Point>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 2) return {};
  if (n == 2) return {{0, 1}};

  // Super-triangle far outside the unit square; its vertices use indices
  // n, n+1, n+2 and are dropped at the end.
  std::vector<Point> pts = points;
  pts.push_back({-50.0, -50.0});
  pts.push_back({150.0, -50.0});
  pts.push_back({0.5, 150.0});

  std::vector<Triangle> tris{{n, n + 1, n + 2}};
  for (int p = 0; p < n; ++p) {
    std::vector<Triangle> bad;
    std::vector<Triangle> keep;
    for (const Triangle& t : tris) {
      if (in_circumcircle(pts[t.a], pts[t.b], pts[t.c], pts[p]))
        bad.push_back(t);
      else
        keep.push_back(t);
    }
    // Boundary of the cavity: edges not shared by two bad triangles.
    std::vector<std::pair<int, int>> boundary;
    auto add_edge = [&](int u, int v) {
      const auto flipped = std::make_pair(v, u);
      const auto it = std::find(boundary.begin(), boundary.end(), flipped);
      if (it != boundary.end())
        boundary.erase(it);
      else
        boundary.emplace_back(u, v);
    };
    for (const Triangle& t : bad) {
      add_edge(t.a, t.b);
      add_edge(t.b, t.c);
      add_edge(t.c, t.a);
    }
    tris = std::move(keep);
    for (const auto& [u, v] : boundary) tris.push_back({u, v, p});
  }

  std::vector<std::pair<int, int>> edges;
  for (const Triangle& t : tris) {
    if (t.a >= n || t.b >= n || t.c >= n) continue;
    edges.emplace_back(t.a, t.b);
    edges.emplace_back(t.b, t.c);
    edges.emplace_back(t.c, t.a);
  }
  return sorted_unique(std::move(edges));
}

ProblemInstance gen_delaunay_coloring(int n, int colors, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("delaunay_coloring needs n >= 3");
  if (colors < 2) throw std::invalid_argument("coloring needs at least 2 colors");
  for (std::uint64_t attempt = 0;; ++attempt) {
    const auto pts = sample_unit_square(n, seed + attempt);
    bool degenerate = true;
    for (int k = 2; k < n && degenerate; ++k)
      if (orient(pts[0], pts[1], pts[k]) != 0) degenerate = false;
    if (degenerate) continue;  // all collinear: resample
    return coloring_instance(n, colors, delaunay_edges(pts));
  }
}

// ---------------------------------------------------------------------------
// Scale-free asymmetric (preferential attachment)
// ---------------------------------------------------------------------------

ProblemInstance gen_scale_free_asymmetric(int n, int attach_m, int domain_size,
                                          std::uint64_t seed) {
  if (attach_m < 1 || n <= attach_m)
    throw std::invalid_argument("scale_free needs n > attach_m >= 1");
  if (domain_size < 2) throw std::invalid_argument("scale_free needs domain_size >= 2");

  Rng rng(mix_seed(seed, kGraphStream));
  std::vector<std::pair<int, int>> edges;
  std::vector<int> endpoint_pool;  // one entry per edge endpoint: degree-proportional

  for (int i = 0; i <= attach_m; ++i)
    for (int j = i + 1; j <= attach_m; ++j) {
      edges.emplace_back(i, j);
      endpoint_pool.push_back(i);
      endpoint_pool.push_back(j);
    }

  for (int v = attach_m + 1; v < n; ++v) {
    std::set<int> targets;
    while (static_cast<int>(targets.size()) < attach_m) {
      const int t = endpoint_pool[rng.below(endpoint_pool.size())];
      targets.insert(t);  // without replacement: duplicates rejected
    }
    for (int t : targets) {
      edges.emplace_back(t, v);
      endpoint_pool.push_back(t);
      endpoint_pool.push_back(v);
    }
  }

  edges = sorted_unique(std::move(edges));

  ProblemInstance inst;
  inst.kind = Kind::asymmetric;
  inst.domains.assign(n, domain_size);
  Rng cost_rng(mix_seed(seed, kCostStream));
  for (const auto& [i, j] : edges) {
    Constraint c;
    c.i = i;
    c.j = j;
    c.cost_i = CostMatrix(domain_size, domain_size);
    c.cost_j = CostMatrix(domain_size, domain_size);
    for (int a = 0; a < domain_size; ++a)
      for (int b = 0; b < domain_size; ++b) {
        c.cost_i.at(a, b) = static_cast<double>(cost_rng.below(101));
        c.cost_j.at(a, b) = static_cast<double>(cost_rng.below(101));
      }
    inst.constraints.push_back(std::move(c));
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Random-density coloring: G(n, M) with M = round(d * n(n-1)/2)
// ---------------------------------------------------------------------------

ProblemInstance gen_random_density_coloring(int n, double density, int colors,
                                            std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_density needs n >= 2");
  if (colors < 2) throw std::invalid_argument("coloring needs at least 2 colors");
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (!(density > 0.0) || density > 1.0 || density * static_cast<double>(total) < 1.0)
    throw std::invalid_argument("density must satisfy 1 <= round(d*n(n-1)/2) <= n(n-1)/2");
  const std::uint64_t m =
      std::min<std::uint64_t>(total, std::llround(density * static_cast<double>(total)));

  // Partial Fisher–Yates over the pair indices: first m entries are a
  // uniform sample without replacement.
  std::vector<std::uint64_t> pairs(total);
  std::iota(pairs.begin(), pairs.end(), 0);
  Rng rng(mix_seed(seed, kGraphStream));
  for (std::uint64_t k = 0; k < m; ++k)
    std::swap(pairs[k], pairs[k + rng.below(total - k)]);

  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (std::uint64_t k = 0; k < m; ++k) {
    // Invert the triangular index: pair index -> (i, j), i < j.
    std::uint64_t idx = pairs[k];
    int i = 0;
    std::uint64_t row = static_cast<std::uint64_t>(n) - 1;
    while (idx >= row) {
      idx -= row;
      ++i;
      --row;
    }
    edges.emplace_back(i, i + 1 + static_cast<int>(idx));
  }
  return coloring_instance(n, colors, sorted_unique(std::move(edges)));
}

// ---------------------------------------------------------------------------
// Bridge demo
// ---------------------------------------------------------------------------

ProblemInstance gen_bridge_demo() {
  std::vector<std::pair<int, int>> edges;
  for (int base : {0, 10}) {
    for (int k = 1; k <= 9; ++k) edges.emplace_back(base, base + k);  // hub spokes
    for (int k = 0; k < 10; ++k)
      edges.emplace_back(base + k, base + (k + 1) % 10);  // cluster cycle
  }
  edges.emplace_back(0, 10);
  return coloring_instance(20, 3, sorted_unique(std::move(edges)));
}

// ---------------------------------------------------------------------------
// Bridge detection (iterative low-link)
// ---------------------------------------------------------------------------

std::vector<std::pair<int, int>> find_bridges(const ProblemInstance& inst) {
  const int n = inst.agent_count();
  struct Arc {
    int to;
    int pair_id;
  };
  std::vector<std::vector<Arc>> adj(n);
  for (std::size_t k = 0; k < inst.constraints.size(); ++k) {
    const auto& c = inst.constraints[k];
    adj[c.i].push_back({c.j, static_cast<int>(k)});
    adj[c.j].push_back({c.i, static_cast<int>(k)});
  }

  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::pair<int, int>> bridges;
  int timer = 0;

  struct Frame {
    int node;
    int parent_arc;  // pair_id of the arc used to enter, -1 at roots
    std::size_t next = 0;
  };
  std::vector<Frame> stack;

  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    stack.push_back({root, -1});
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < adj[f.node].size()) {
        const Arc arc = adj[f.node][f.next++];
        if (arc.pair_id == f.parent_arc) continue;
        if (disc[arc.to] == -1) {
          disc[arc.to] = low[arc.to] = timer++;
          stack.push_back({arc.to, arc.pair_id});
        } else {
          low[f.node] = std::min(low[f.node], disc[arc.to]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          Frame& up = stack.back();
          low[up.node] = std::min(low[up.node], low[done.node]);
          if (low[done.node] > disc[up.node]) {
            const auto& c = inst.constraints[done.parent_arc];
            bridges.emplace_back(std::min(c.i, c.j), std::max(c.i, c.j));
          }
        }
      }
    }
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

Assignment make_unfortunate_assignment(const ProblemInstance& inst) {
  if (inst != gen_bridge_demo())
    throw std::invalid_argument("make_unfortunate_assignment expects the bridge_demo instance");
  Assignment a(inst.agent_count());
  a.set(0, 0);
  a.set(10, 0);
  // Cluster paths 1..9 and 11..19 alternate colors {1, 2}: proper among
  // themselves and never equal to the hubs' color 0.
  for (int base : {0, 10})
    for (int k = 1; k <= 9; ++k) a.set(base + k, 1 + (k + 1) % 2);
  return a;
}

}  // namespace dcop
