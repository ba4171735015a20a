#include "dcop/engine.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <set>
#include <stdexcept>

namespace dcop {

namespace {

constexpr std::uint64_t kActivationStream = 0x61637469766174ull;  // activation-phase RNG

}  // namespace

std::size_t detect_convergence(std::span<const double> trace) {
  if (trace.empty()) throw std::invalid_argument("detect_convergence: empty trace");
  const double cmin = *std::min_element(trace.begin(), trace.end());
  const double threshold = 1.01 * cmin;
  for (std::size_t r = 0; r < trace.size(); ++r)
    if (trace[r] <= threshold) return r;
  return trace.size() - 1;  // unreachable: the minimum itself satisfies the bound
}

std::vector<double> Initializer::respond_inquiry(InquiryContext&, int) {
  throw std::logic_error(std::string(id()) + ": initializer does not answer inquiries");
}

Assignment Initializer::sample(const ProblemInstance&, std::uint64_t) {
  throw std::logic_error(std::string(id()) + ": initializer spreads, it does not sample");
}

// ---------------------------------------------------------------------------
// Activation phase
// ---------------------------------------------------------------------------

namespace detail {

struct ActivationEnv {
  const ProblemInstance& inst;
  const Neighborhood& nbh;
  Initializer& init;
  Counters counters;
  Assignment assignment;
  std::vector<Assignment> known;  // per-agent CPA cache fed by ValueMsgs
  std::vector<int> deferrals;

  ActivationEnv(const ProblemInstance& i, const Neighborhood& n, Initializer& ini)
      : inst(i), nbh(n), init(ini), assignment(i.agent_count()),
        known(i.agent_count(), Assignment(i.agent_count())),
        deferrals(i.agent_count(), 0) {}

  ActivationContext context(int agent) { return ActivationContext(*this, agent); }
  InquiryContext inquiry_context(int agent, int inquirer, const Neighborhood::Edge& shared) {
    return InquiryContext(*this, agent, inquirer, shared);
  }
};

}  // namespace detail

int ActivationContext::domain_size() const { return env_.inst.domains[agent_]; }

std::span<const Neighborhood::Edge> ActivationContext::edges() const {
  return env_.nbh.edges(agent_);
}

const Assignment& ActivationContext::known() const { return env_.known[agent_]; }

bool ActivationContext::must_commit() const {
  return env_.deferrals[agent_] >= env_.init.deferral_bound();
}

double ActivationContext::own_local_cost(int value) const {
  return local_cost(env_.inst, env_.nbh, agent_, value, env_.known[agent_],
                    &env_.counters.evaluations);
}

std::vector<std::vector<double>> ActivationContext::inquire_neighbors(int candidate_count) {
  std::vector<std::vector<double>> replies;
  replies.reserve(edges().size());
  for (const auto& edge : edges()) {
    env_.counters.messages++;  // InquiryMsg
    // The responder sees the shared edge from its own side.
    const Neighborhood::Edge reverse{agent_, edge.constraint, !edge.is_side_i};
    InquiryContext rctx = env_.inquiry_context(edge.neighbor, agent_, reverse);
    replies.push_back(env_.init.respond_inquiry(rctx, candidate_count));
    env_.counters.messages++;  // CostMapMsg reply
  }
  return replies;
}

int InquiryContext::domain_size() const { return env_.inst.domains[agent_]; }

std::span<const Neighborhood::Edge> InquiryContext::edges() const {
  return env_.nbh.edges(agent_);
}

const Assignment& InquiryContext::known() const { return env_.known[agent_]; }

double InquiryContext::shared_edge_cost(int candidate, int my_value) const {
  // shared_ is oriented with this responder as "me", the inquirer as neighbor.
  return edge_side_cost(env_.inst, shared_, my_value, candidate, &env_.counters.evaluations);
}

double InquiryContext::side_cost(const Neighborhood::Edge& edge, int my_value,
                                 int nb_value) const {
  return edge_side_cost(env_.inst, edge, my_value, nb_value, &env_.counters.evaluations);
}

ActivationResult run_activation_phase(Initializer& init, const ProblemInstance& inst,
                                      const Neighborhood& nbh, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = inst.agent_count();
  detail::ActivationEnv env(inst, nbh, init);
  Rng phase_rng(mix_seed(seed, kActivationStream));

  if (!init.spreads()) {
    env.assignment = init.sample(inst, seed);
  } else {
    std::deque<int> queue;
    std::vector<bool> activated(n, false);
    const int root = phase_rng.below_int(n);
    queue.push_back(root);
    activated[root] = true;
    int assigned = 0;

    while (assigned < n) {
      if (queue.empty()) {
        // Disconnected graph: restart from a random unassigned agent.
        std::vector<int> unassigned;
        for (int a = 0; a < n; ++a)
          if (!env.assignment.assigned(a)) unassigned.push_back(a);
        const int pick = unassigned[phase_rng.below_int(static_cast<int>(unassigned.size()))];
        queue.push_back(pick);
        activated[pick] = true;
      }
      const int a = queue.front();
      queue.pop_front();
      if (env.assignment.assigned(a)) continue;

      ActivationContext ctx = env.context(a);
      const Initializer::Step step = init.activate(ctx);
      if (step.hold) {
        if (env.deferrals[a] >= init.deferral_bound())
          throw std::logic_error("initializer held past its deferral bound");
        env.deferrals[a]++;
        queue.push_back(a);
        continue;
      }

      env.assignment.set(a, step.value);
      ++assigned;
      for (const auto& edge : nbh.edges(a)) {
        env.known[edge.neighbor].set(a, step.value);  // ValueMsg
        env.counters.messages++;
      }
      for (const auto& edge : nbh.edges(a)) {
        if (activated[edge.neighbor]) continue;
        activated[edge.neighbor] = true;
        env.counters.messages++;  // ActivateMsg
        queue.push_back(edge.neighbor);
      }
    }
  }

  env.counters.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(env.assignment), env.counters};
}

// ---------------------------------------------------------------------------
// Synchronous phase
// ---------------------------------------------------------------------------

namespace detail {

struct SyncEnv {
  const ProblemInstance& inst;
  const Neighborhood& nbh;
  std::vector<int> values;
  std::vector<std::vector<int>> known;  // known[a][b]: last ValueMsg from b seen by a
  std::vector<std::vector<Message>> inbox;
  std::vector<std::vector<Message>> pending;
  std::vector<Rng> rngs;
  Counters counters;
  std::uint64_t cycle = 0;

  SyncEnv(const ProblemInstance& i, const Neighborhood& n, const Assignment& start,
          std::uint64_t seed)
      : inst(i), nbh(n), values(start.values()), known(i.agent_count()),
        inbox(i.agent_count()), pending(i.agent_count()) {
    const int agents = i.agent_count();
    for (int a = 0; a < agents; ++a) {
      known[a].assign(agents, Assignment::kUnassigned);
      rngs.emplace_back(mix_seed(seed, 0x736F6C766572ull + static_cast<std::uint64_t>(a)));
    }
    // Bootstrap: the start assignment reaches neighbors as ordinary counted
    // ValueMsgs delivered before the first micro-round.
    for (int a = 0; a < agents; ++a)
      for (const auto& edge : n.edges(a)) {
        known[edge.neighbor][a] = values[a];
        counters.messages++;
      }
  }

  void deliver() {
    for (int a = 0; a < inst.agent_count(); ++a) {
      inbox[a] = std::move(pending[a]);
      pending[a].clear();
      for (const Message& m : inbox[a])
        if (const auto* vm = std::get_if<ValueMsg>(&m.body)) known[a][m.from] = vm->value;
    }
  }

  SolverContext context(int agent, int phase) { return SolverContext(*this, agent, phase); }
};

}  // namespace detail

std::uint64_t SolverContext::cycle() const { return env_.cycle; }
int SolverContext::value() const { return env_.values[agent_]; }

void SolverContext::set_value(int v) {
  if (v < 0 || v >= domain_size()) throw std::invalid_argument("set_value: out of domain");
  env_.values[agent_] = v;
}

int SolverContext::domain_size() const { return env_.inst.domains[agent_]; }
int SolverContext::domain_size_of(int agent) const { return env_.inst.domains[agent]; }

std::span<const Neighborhood::Edge> SolverContext::edges() const {
  return env_.nbh.edges(agent_);
}

int SolverContext::neighbor_value(int neighbor) const {
  const int v = env_.known[agent_][neighbor];
  if (v == Assignment::kUnassigned)
    throw std::logic_error("neighbor value unknown; no ValueMsg received yet");
  return v;
}

std::span<const Message> SolverContext::inbox() const { return env_.inbox[agent_]; }

void SolverContext::send(int to, MessageBody body) {
  if (to == agent_) throw std::logic_error("an agent cannot message itself");
  env_.counters.messages++;
  env_.pending[to].push_back(Message{agent_, to, std::move(body)});
}

void SolverContext::broadcast(MessageBody body) {
  for (const auto& edge : edges()) send(edge.neighbor, body);
}

Rng& SolverContext::rng() { return env_.rngs[agent_]; }

double SolverContext::side_cost(const Neighborhood::Edge& edge, int my_value, int nb_value) {
  return edge_side_cost(env_.inst, edge, my_value, nb_value, &env_.counters.evaluations);
}

double SolverContext::pair_cost(const Neighborhood::Edge& edge, int my_value, int nb_value) {
  return edge_pair_cost(env_.inst, edge, my_value, nb_value, &env_.counters.evaluations);
}

double SolverContext::local_cost_of(int value) {
  double sum = 0.0;
  for (const auto& edge : edges())
    sum += side_cost(edge, value, env_.known[agent_][edge.neighbor]);
  return sum;
}

RunRecord run_synchronous_phase(RoundSolver& solver, const ProblemInstance& inst,
                                const Neighborhood& nbh, const Assignment& start,
                                const StopPolicy& stop, std::uint64_t seed, bool record_cpa) {
  if (start.size() != inst.agent_count() || !start.complete())
    throw std::invalid_argument("run_synchronous_phase: start assignment must be complete");
  const auto t0 = std::chrono::steady_clock::now();
  const int n = inst.agent_count();

  detail::SyncEnv env(inst, nbh, start, seed);
  solver.bind(inst, nbh);

  RunRecord rec;
  rec.seed = seed;

  std::set<std::vector<int>> seen;
  auto snapshot = [&](std::uint64_t round) {
    if (!record_cpa) return;
    if (seen.insert(env.values).second)
      rec.cpa_trace.emplace_back(round, Assignment(env.values));
  };

  snapshot(0);
  rec.trace.push_back(global_cost(inst, Assignment(env.values), &env.counters.evaluations));
  double best = rec.trace.front();
  int stall = 0;
  const int phases = solver.phases();

  for (int cycle = 1; cycle <= stop.max_rounds && stall < stop.stall_rounds; ++cycle) {
    env.cycle = static_cast<std::uint64_t>(cycle);
    for (int phase = 0; phase < phases; ++phase) {
      env.counters.rounds++;
      for (int a = 0; a < n; ++a) {
        SolverContext ctx = env.context(a, phase);
        solver.step(ctx);
      }
      env.deliver();
      snapshot(env.counters.rounds);
    }
    const double cost =
        global_cost(inst, Assignment(env.values), &env.counters.evaluations);
    rec.trace.push_back(cost);
    if (cost < best) {
      best = cost;
      stall = 0;
    } else {
      stall++;
    }
  }

  rec.final_assignment = Assignment(env.values);
  rec.counters = env.counters;
  rec.final_cost = rec.trace.back();
  rec.convergence_round = detect_convergence(rec.trace);
  rec.counters.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace dcop
