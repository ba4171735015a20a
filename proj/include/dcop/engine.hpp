#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dcop/model.hpp"
#include "dcop/rng.hpp"

namespace dcop {

// ---------------------------------------------------------------------------
// Messages. Agents may only learn about neighbor state through these.
// ---------------------------------------------------------------------------

struct ValueMsg {
  int value = 0;
};
struct InquiryMsg {
  int candidate_count = 0;  // candidates are the sender's full dense domain
};
struct CostMapMsg {
  std::vector<double> costs;  // one entry per candidate value of the recipient
};
struct ProposalMsg {
  int value = 0;
};
struct DeltaMsg {
  double cost_at_proposal = 0.0;  // responder side-cost if the proposal were adopted
  double cost_at_current = 0.0;   // responder side-cost at the proposer's current value
};
struct GainMsg {
  double gain = 0.0;
};
struct OfferMsg {
  int offerer_values = 0;
  int receiver_values = 0;
  std::vector<double> gains;  // offerer's gain per joint pair, [a * receiver_values + b]
};
struct AcceptMsg {
  int offerer_value = 0;
  int receiver_value = 0;
  double joint_gain = 0.0;
};
struct RejectMsg {};
struct CommitMsg {
  bool go = false;
};
struct ActivateMsg {};

using MessageBody = std::variant<ValueMsg, InquiryMsg, CostMapMsg, ProposalMsg, DeltaMsg,
                                 GainMsg, OfferMsg, AcceptMsg, RejectMsg, CommitMsg, ActivateMsg>;

struct Message {
  int from = -1;
  int to = -1;
  MessageBody body;
};

// ---------------------------------------------------------------------------
// Accounting
// ---------------------------------------------------------------------------

struct Counters {
  std::uint64_t messages = 0;     // M: every delivered message, bootstrap included
  std::uint64_t evaluations = 0;  // E: one tick per cost-matrix cell read, anywhere
  std::uint64_t rounds = 0;       // micro-rounds executed by the synchronous phase
  double wall_seconds = 0.0;      // T: reported, never part of determinism checks

  Counters& operator+=(const Counters& o) {
    messages += o.messages;
    evaluations += o.evaluations;
    rounds += o.rounds;
    wall_seconds += o.wall_seconds;
    return *this;
  }
};

// Stop conditions in iteration (full phase cycle) units.
struct StopPolicy {
  int stall_rounds = 100;  // stop after this many cycles without best-cost improvement
  int max_rounds = 2000;   // hard cap on cycles
};

struct RunRecord {
  Assignment final_assignment;
  std::vector<double> trace;  // global cost per cycle; trace[0] is the start cost
  Counters counters;
  std::size_t convergence_round = 0;  // first trace index within 1% of the trace minimum
  double final_cost = 0.0;            // == trace.back() == global_cost(final_assignment)
  std::uint64_t seed = 0;
  // Distinct complete assignments seen, with the micro-round of first sight.
  // Populated only when CPA tracing is on.
  std::vector<std::pair<std::uint64_t, Assignment>> cpa_trace;
};

// Smallest index r with trace[r] <= 1.01 * min(trace). For a zero minimum
// this degenerates to the first exact zero.
std::size_t detect_convergence(std::span<const double> trace);

// ---------------------------------------------------------------------------
// Activation phase (initializers)
// ---------------------------------------------------------------------------

namespace detail {
struct ActivationEnv;
struct SyncEnv;
}  // namespace detail

// View of one agent while it runs its initializer step. The CPA visible here
// is what the agent has received through ValueMsgs, nothing more.
class ActivationContext {
 public:
  int agent() const { return agent_; }
  int domain_size() const;
  std::span<const Neighborhood::Edge> edges() const;
  const Assignment& known() const;
  bool must_commit() const;  // deferral budget exhausted; Hold is no longer allowed

  // Own-side cost of `value` against currently known neighbor values.
  double own_local_cost(int value) const;

  // One inquiry/cost-map round trip with every neighbor: sends an InquiryMsg
  // per edge, returns the per-edge replies (edges() order). Counts 2 messages
  // per neighbor plus the responders' evaluations.
  std::vector<std::vector<double>> inquire_neighbors(int candidate_count);

 private:
  friend struct detail::ActivationEnv;
  ActivationContext(detail::ActivationEnv& env, int agent) : env_(env), agent_(agent) {}
  detail::ActivationEnv& env_;
  int agent_;
};

// View of a neighbor answering an inquiry.
class InquiryContext {
 public:
  int agent() const { return agent_; }
  int inquirer() const { return inquirer_; }
  int domain_size() const;
  std::span<const Neighborhood::Edge> edges() const;
  const Assignment& known() const;

  // This responder's side of the shared constraint at (inquirer=candidate, me=my_value).
  double shared_edge_cost(int candidate, int my_value) const;
  double side_cost(const Neighborhood::Edge& edge, int my_value, int nb_value) const;

 private:
  friend struct detail::ActivationEnv;
  InquiryContext(detail::ActivationEnv& env, int agent, int inquirer,
                 const Neighborhood::Edge& shared)
      : env_(env), agent_(agent), inquirer_(inquirer), shared_(shared) {}
  detail::ActivationEnv& env_;
  int agent_;
  int inquirer_;
  const Neighborhood::Edge& shared_;
};

class Initializer {
 public:
  struct Step {
    bool hold = false;
    int value = 0;
  };

  virtual ~Initializer() = default;
  virtual std::string_view id() const = 0;

  // false: the whole assignment comes from sample(), no activation spreading,
  // no messages, no evaluations.
  virtual bool spreads() const { return true; }
  // Maximum HOLD re-enqueues per agent.
  virtual int deferral_bound() const { return 0; }

  virtual Step activate(ActivationContext& ctx) = 0;
  virtual std::vector<double> respond_inquiry(InquiryContext& ctx, int candidate_count);
  virtual Assignment sample(const ProblemInstance& inst, std::uint64_t seed);
};

struct ActivationResult {
  Assignment assignment;
  Counters counters;
};

// Event-driven execution: a FIFO queue seeded with one uniformly random
// agent; each dequeued agent runs its initializer step once (HOLD defers
// re-enqueue it), then activates its not-yet-activated neighbors. A drained
// queue with unassigned agents left (disconnected graph) restarts from a
// random unassigned agent. Always returns a complete assignment.
ActivationResult run_activation_phase(Initializer& init, const ProblemInstance& inst,
                                      const Neighborhood& nbh, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Synchronous phase (iterative solvers)
// ---------------------------------------------------------------------------

// View of one agent during one micro-round. Sends are delivered at the start
// of the next micro-round; neighbor values reflect ValueMsgs delivered so far.
class SolverContext {
 public:
  int agent() const { return agent_; }
  int phase() const { return phase_; }
  std::uint64_t cycle() const;

  int value() const;
  void set_value(int v);
  int domain_size() const;
  int domain_size_of(int agent) const;
  std::span<const Neighborhood::Edge> edges() const;
  int neighbor_value(int neighbor) const;
  std::span<const Message> inbox() const;

  void send(int to, MessageBody body);
  void broadcast(MessageBody body);  // one copy per neighbor
  Rng& rng();

  double side_cost(const Neighborhood::Edge& edge, int my_value, int nb_value);
  double pair_cost(const Neighborhood::Edge& edge, int my_value, int nb_value);
  // Own-side cost of `value` against the cached neighbor values.
  double local_cost_of(int value);

 private:
  friend struct detail::SyncEnv;
  SolverContext(detail::SyncEnv& env, int agent, int phase)
      : env_(env), agent_(agent), phase_(phase) {}
  detail::SyncEnv& env_;
  int agent_;
  int phase_;
};

class RoundSolver {
 public:
  virtual ~RoundSolver() = default;
  virtual std::string_view id() const = 0;
  virtual int phases() const = 0;  // micro-rounds per cycle
  virtual bool monotone_per_cycle() const { return false; }
  virtual void bind(const ProblemInstance& inst, const Neighborhood& nbh) = 0;
  virtual void step(SolverContext& ctx) = 0;
};

// Runs cycles of `solver.phases()` micro-rounds each until the stop policy
// fires. Within a micro-round agents step in ascending index; all sends are
// delivered at the start of the next micro-round. One trace entry per cycle.
RunRecord run_synchronous_phase(RoundSolver& solver, const ProblemInstance& inst,
                                const Neighborhood& nbh, const Assignment& start,
                                const StopPolicy& stop, std::uint64_t seed,
                                bool record_cpa = false);

}  // namespace dcop
