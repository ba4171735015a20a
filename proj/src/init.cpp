#include "dcop/init.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace dcop {

namespace {

constexpr std::uint64_t kRandomInitStream = 0x72616E646F6Dull;

class RandomInitializer final : public Initializer {
 public:
  std::string_view id() const override { return "random"; }
  bool spreads() const override { return false; }
  Step activate(ActivationContext&) override {
    throw std::logic_error("random initializer has no activation step");
  }
  Assignment sample(const ProblemInstance& inst, std::uint64_t seed) override {
    return random_init(inst, seed);
  }
};

// Greedy: best response against the already-assigned neighbors only.
class ZslaInitializer final : public Initializer {
 public:
  std::string_view id() const override { return "zsla"; }

  Step activate(ActivationContext& ctx) override {
    int best_value = 0;
    double best_cost = ctx.own_local_cost(0);
    for (int v = 1; v < ctx.domain_size(); ++v) {
      const double c = ctx.own_local_cost(v);
      if (c < best_cost) {
        best_cost = c;
        best_value = v;
      }
    }
    return {false, best_value};
  }
};

// One-hop look-ahead: the agent inquires every neighbor, each neighbor
// replies with, per candidate value d, the minimum over its own domain of
// (its side of the shared constraint at d + its side-costs against its own
// assigned neighbors). Non-unique minima defer once, then commit to the
// lowest value index.
class SslaInitializer final : public Initializer {
 public:
  std::string_view id() const override { return "ssla"; }
  int deferral_bound() const override { return 1; }

  Step activate(ActivationContext& ctx) override {
    const int domain = ctx.domain_size();
    const auto replies = ctx.inquire_neighbors(domain);

    std::vector<double> total(domain, 0.0);
    for (int d = 0; d < domain; ++d) {
      total[d] = ctx.own_local_cost(d);
      for (const auto& reply : replies) total[d] += reply[d];
    }

    int best = 0;
    for (int d = 1; d < domain; ++d)
      if (total[d] < total[best]) best = d;
    int minima = 0;
    for (int d = 0; d < domain; ++d)
      if (total[d] == total[best]) ++minima;

    if (minima > 1 && !ctx.must_commit()) return {true, 0};
    return {false, best};
  }

  std::vector<double> respond_inquiry(InquiryContext& ctx, int candidate_count) override {
    std::vector<double> costs(candidate_count, 0.0);
    for (int d = 0; d < candidate_count; ++d) {
      double best = std::numeric_limits<double>::infinity();
      for (int mine = 0; mine < ctx.domain_size(); ++mine) {
        double c = ctx.shared_edge_cost(d, mine);
        for (const auto& edge : ctx.edges()) {
          if (edge.neighbor == ctx.inquirer()) continue;
          if (!ctx.known().assigned(edge.neighbor)) continue;
          c += ctx.side_cost(edge, mine, ctx.known().value(edge.neighbor));
        }
        if (c < best) best = c;
      }
      costs[d] = best;
    }
    return costs;
  }
};

}  // namespace

Assignment random_init(const ProblemInstance& inst, std::uint64_t seed) {
  Rng rng(mix_seed(seed, kRandomInitStream));
  Assignment a(inst.agent_count());
  for (int agent = 0; agent < inst.agent_count(); ++agent)
    a.set(agent, rng.below_int(inst.domains[agent]));
  return a;
}

std::unique_ptr<Initializer> make_initializer(std::string_view id) {
  if (id == "random") return std::make_unique<RandomInitializer>();
  if (id == "zsla") return std::make_unique<ZslaInitializer>();
  if (id == "ssla") return std::make_unique<SslaInitializer>();
  throw std::invalid_argument("unknown initializer id: " + std::string(id));
}

}  // namespace dcop
