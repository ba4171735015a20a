#include "doctest.h"

#include <algorithm>
#include <random>

#include "dcop/model.hpp"
#include "test_util.hpp"

using namespace dcop;
using namespace dcop::test;

TEST_SUITE_BEGIN("model");

TEST_CASE("local cost with no assigned neighbors is zero") {
  const auto inst = coloring(3, 3, {{0, 1}, {1, 2}});
  const auto nbh = build_neighborhood(inst);
  const Assignment empty(3);
  for (int v = 0; v < 3; ++v) CHECK(local_cost(inst, nbh, 1, v, empty) == 0.0);
}

TEST_CASE("two-node coloring conflict costs one") {
  const auto inst = coloring(2, 3, {{0, 1}});
  const auto nbh = build_neighborhood(inst);
  Assignment cpa(2);
  cpa.set(1, 2);
  CHECK(local_cost(inst, nbh, 0, 2, cpa) == 1.0);
  CHECK(local_cost(inst, nbh, 0, 0, cpa) == 0.0);
}

TEST_CASE("local cost matches the re-summation oracle on random asymmetric instances") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = random_instance(Kind::asymmetric, 5, 4, 0.6, rng);
    const auto nbh = build_neighborhood(inst);
    Assignment cpa(5);
    for (int a = 0; a < 5; ++a)
      if (rng.uniform01() < 0.7) cpa.set(a, rng.below_int(inst.domains[a]));
    for (int agent = 0; agent < 5; ++agent)
      for (int v = 0; v < inst.domains[agent]; ++v)
        CHECK(local_cost(inst, nbh, agent, v, cpa) == oracle_local_cost(inst, agent, v, cpa));
  }
}

TEST_CASE("local cost rejects out-of-range arguments") {
  const auto inst = coloring(2, 3, {{0, 1}});
  const auto nbh = build_neighborhood(inst);
  const Assignment cpa(2);
  CHECK_THROWS_AS(local_cost(inst, nbh, 5, 0, cpa), std::invalid_argument);
  CHECK_THROWS_AS(local_cost(inst, nbh, 0, 3, cpa), std::invalid_argument);
}

TEST_CASE("global cost of a constraint-free instance is zero") {
  ProblemInstance inst;
  inst.domains = {2, 2};
  Assignment a(2);
  a.set(0, 1);
  a.set(1, 0);
  CHECK(global_cost(inst, a) == 0.0);
}

TEST_CASE("triangle with two colors has minimum cost one") {
  const auto inst = coloring(3, 2, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(oracle_min_global_cost(inst) == 1.0);
  double best = 1e9;
  for_all_assignments(inst, [&](const Assignment& a) { best = std::min(best, global_cost(inst, a)); });
  CHECK(best == 1.0);
}

TEST_CASE("global cost rejects incomplete assignments") {
  const auto inst = coloring(2, 2, {{0, 1}});
  Assignment partial(2);
  partial.set(0, 1);
  CHECK_THROWS_AS(global_cost(inst, partial), std::invalid_argument);
}

TEST_CASE("global cost equals exhaustive enumeration on small random instances") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto kind = trial % 2 == 0 ? Kind::symmetric : Kind::asymmetric;
    const auto inst = random_instance(kind, 4 + rng.below_int(3), 3, 0.5, rng);
    for_all_assignments(inst, [&](const Assignment& a) {
      CHECK(global_cost(inst, a) == oracle_global_cost(inst, a));
    });
  }
}

TEST_CASE("best response breaks ties toward the lowest value index") {
  const auto inst = coloring(2, 3, {{0, 1}});
  const auto nbh = build_neighborhood(inst);

  const Assignment unassigned(2);
  auto br = best_response(inst, nbh, 0, unassigned);
  CHECK(br.value == 0);
  CHECK(br.cost == 0.0);

  Assignment cpa(2);
  cpa.set(1, 0);
  br = best_response(inst, nbh, 0, cpa);
  CHECK(br.value == 1);
  CHECK(br.cost == 0.0);
}

TEST_CASE("best response matches an exhaustive scan on random instances") {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = random_instance(Kind::asymmetric, 4, 4, 0.7, rng);
    const auto nbh = build_neighborhood(inst);
    Assignment cpa(4);
    for (int a = 0; a < 4; ++a) cpa.set(a, rng.below_int(inst.domains[a]));
    for (int agent = 0; agent < 4; ++agent) {
      const auto got = best_response(inst, nbh, agent, cpa);
      int want_v = 0;
      double want_c = oracle_local_cost(inst, agent, 0, cpa);
      for (int v = 1; v < inst.domains[agent]; ++v) {
        const double c = oracle_local_cost(inst, agent, v, cpa);
        if (c < want_c) {
          want_c = c;
          want_v = v;
        }
      }
      CHECK(got.value == want_v);
      CHECK(got.cost == want_c);
    }
  }
}

TEST_CASE("sum of local costs relates to global cost by kind") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto kind = trial % 2 == 0 ? Kind::symmetric : Kind::asymmetric;
    const auto inst = random_instance(kind, 6, 3, 0.5, rng);
    const auto nbh = build_neighborhood(inst);
    Assignment a(6);
    for (int i = 0; i < 6; ++i) a.set(i, rng.below_int(inst.domains[i]));
    double local_sum = 0.0;
    for (int i = 0; i < 6; ++i) local_sum += local_cost(inst, nbh, i, a.value(i), a);
    const double g = global_cost(inst, a);
    if (kind == Kind::symmetric) {
      CHECK(local_sum == 2.0 * g);  // each shared cost seen from both sides
    } else {
      CHECK(local_sum == g);
    }
  }
}

TEST_CASE("global cost is invariant under constraint reordering") {
  Rng rng(19);
  auto inst = random_instance(Kind::asymmetric, 6, 3, 0.6, rng);
  Assignment a(6);
  for (int i = 0; i < 6; ++i) a.set(i, rng.below_int(inst.domains[i]));
  const double before = global_cost(inst, a);
  std::mt19937 shuffle_rng(5);
  std::shuffle(inst.constraints.begin(), inst.constraints.end(), shuffle_rng);
  CHECK(global_cost(inst, a) == before);
}

TEST_CASE("transposing a symmetric constraint leaves global cost unchanged") {
  Rng rng(23);
  auto inst = random_instance(Kind::symmetric, 5, 3, 0.8, rng);
  Assignment a(5);
  for (int i = 0; i < 5; ++i) a.set(i, rng.below_int(inst.domains[i]));
  const double before = global_cost(inst, a);
  for (auto& c : inst.constraints) {
    CostMatrix t(c.cost_i.cols(), c.cost_i.rows());
    for (int r = 0; r < c.cost_i.rows(); ++r)
      for (int col = 0; col < c.cost_i.cols(); ++col) t.at(col, r) = c.cost_i.at(r, col);
    std::swap(c.i, c.j);
    c.cost_i = std::move(t);
    c.cost_j = CostMatrix(c.cost_i.rows(), c.cost_i.cols());
  }
  CHECK(global_cost(inst, a) == before);
}

TEST_CASE("evaluation ticks count one per matrix cell read") {
  const auto sym = coloring(3, 3, {{0, 1}, {1, 2}});
  const auto nbh = build_neighborhood(sym);
  Assignment a(3);
  a.set(0, 0);
  a.set(1, 1);
  a.set(2, 2);

  std::uint64_t ticks = 0;
  global_cost(sym, a, &ticks);
  CHECK(ticks == 2);  // one shared-cost read per symmetric constraint

  ticks = 0;
  local_cost(sym, nbh, 1, 0, a, &ticks);
  CHECK(ticks == 2);  // both neighbors assigned

  Rng rng(29);
  const auto asym = random_instance(Kind::asymmetric, 4, 3, 1.0, rng);
  Assignment b(4);
  for (int i = 0; i < 4; ++i) b.set(i, 0);
  ticks = 0;
  global_cost(asym, b, &ticks);
  CHECK(ticks == 2 * asym.constraints.size());
}

TEST_CASE("validate rejects malformed instances") {
  auto good = coloring(3, 3, {{0, 1}});
  CHECK_NOTHROW(good.validate());

  auto dup = coloring(3, 3, {{0, 1}, {1, 0}});
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

  auto self_loop = coloring(3, 3, {{1, 1}});
  CHECK_THROWS_AS(self_loop.validate(), std::invalid_argument);

  auto negative = good;
  negative.constraints[0].cost_i.at(0, 0) = -1.0;
  CHECK_THROWS_AS(negative.validate(), std::invalid_argument);

  auto sym_with_cost_j = good;
  sym_with_cost_j.constraints[0].cost_j.at(0, 0) = 1.0;
  CHECK_THROWS_AS(sym_with_cost_j.validate(), std::invalid_argument);

  auto bad_dims = good;
  bad_dims.constraints[0].cost_i = CostMatrix(2, 3, 0.0);
  CHECK_THROWS_AS(bad_dims.validate(), std::invalid_argument);

  auto out_of_range = good;
  out_of_range.constraints[0].j = 9;
  CHECK_THROWS_AS(out_of_range.validate(), std::invalid_argument);
}

TEST_CASE("problem JSON round-trips bit-exactly") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto kind = trial % 2 == 0 ? Kind::symmetric : Kind::asymmetric;
    // Non-integer costs stress the float round trip.
    const auto inst = random_instance(kind, 5, 4, 0.7, rng, /*integer_costs=*/false);
    const std::string text = problem_to_json(inst);
    const auto back = problem_from_json(text);
    CHECK(back == inst);
    CHECK(problem_to_json(back) == text);
  }
}

TEST_CASE("problem JSON parsing validates the document") {
  CHECK_THROWS_AS(problem_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(problem_from_json("{\"kind\":\"symmetric\"}"), std::invalid_argument);
  CHECK_THROWS_AS(problem_from_json(R"({"kind":"diagonal","domains":[2],"constraints":[]})"),
                  std::invalid_argument);
}

TEST_SUITE_END();
