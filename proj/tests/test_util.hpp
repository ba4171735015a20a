// Shared helpers and reference oracles for the test suites. The oracles walk
// the raw constraint list and never touch Neighborhood or the counted
// accessors, so they stay independent of the implementation they check.
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dcop/model.hpp"
#include "dcop/rng.hpp"

namespace dcop::test {

inline ProblemInstance coloring(int n, int colors,
                                const std::vector<std::pair<int, int>>& edges) {
  ProblemInstance inst;
  inst.kind = Kind::symmetric;
  inst.domains.assign(n, colors);
  for (const auto& [i, j] : edges) {
    Constraint c;
    c.i = i;
    c.j = j;
    c.cost_i = CostMatrix(colors, colors, 0.0);
    c.cost_j = CostMatrix(colors, colors, 0.0);
    for (int v = 0; v < colors; ++v) c.cost_i.at(v, v) = 1.0;
    inst.constraints.push_back(std::move(c));
  }
  return inst;
}

// Random instance over G(n, p~density) with uniform costs. Domains vary in
// [2, max_domain]; integer costs by default so sums compare exactly.
inline ProblemInstance random_instance(Kind kind, int n, int max_domain, double density,
                                       Rng& rng, bool integer_costs = true) {
  ProblemInstance inst;
  inst.kind = kind;
  inst.domains.resize(n);
  for (int a = 0; a < n; ++a) inst.domains[a] = 2 + rng.below_int(max_domain - 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform01() >= density) continue;
      Constraint c;
      c.i = i;
      c.j = j;
      c.cost_i = CostMatrix(inst.domains[i], inst.domains[j]);
      c.cost_j = CostMatrix(inst.domains[i], inst.domains[j]);
      for (int a = 0; a < inst.domains[i]; ++a)
        for (int b = 0; b < inst.domains[j]; ++b) {
          c.cost_i.at(a, b) =
              integer_costs ? static_cast<double>(rng.below(10)) : 10.0 * rng.uniform01();
          if (kind == Kind::asymmetric)
            c.cost_j.at(a, b) =
                integer_costs ? static_cast<double>(rng.below(10)) : 10.0 * rng.uniform01();
        }
      inst.constraints.push_back(std::move(c));
    }
  return inst;
}

inline void for_all_assignments(const ProblemInstance& inst,
                                const std::function<void(const Assignment&)>& fn) {
  const int n = inst.agent_count();
  Assignment a(n);
  for (int i = 0; i < n; ++i) a.set(i, 0);
  for (;;) {
    fn(a);
    int k = 0;
    while (k < n) {
      if (a.value(k) + 1 < inst.domains[k]) {
        a.set(k, a.value(k) + 1);
        break;
      }
      a.set(k, 0);
      ++k;
    }
    if (k == n) return;
  }
}

// Independent re-summation over the raw constraint list.
inline double oracle_global_cost(const ProblemInstance& inst, const Assignment& a) {
  double sum = 0.0;
  for (const Constraint& c : inst.constraints) {
    sum += c.cost_i.at(a.value(c.i), a.value(c.j));
    sum += c.cost_j.at(a.value(c.i), a.value(c.j));
  }
  return sum;
}

// Agent-side cost by scanning every constraint; symmetric side = shared cost.
inline double oracle_local_cost(const ProblemInstance& inst, int agent, int value,
                                const Assignment& cpa) {
  double sum = 0.0;
  for (const Constraint& c : inst.constraints) {
    if (c.i == agent && cpa.assigned(c.j)) {
      sum += c.cost_i.at(value, cpa.value(c.j));
    } else if (c.j == agent && cpa.assigned(c.i)) {
      sum += inst.kind == Kind::symmetric ? c.cost_i.at(cpa.value(c.i), value)
                                          : c.cost_j.at(cpa.value(c.i), value);
    }
  }
  return sum;
}

inline double oracle_min_global_cost(const ProblemInstance& inst) {
  double best = -1.0;
  for_all_assignments(inst, [&](const Assignment& a) {
    const double c = oracle_global_cost(inst, a);
    if (best < 0.0 || c < best) best = c;
  });
  return best;
}

}  // namespace dcop::test
