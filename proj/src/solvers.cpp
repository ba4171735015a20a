#include "dcop/solvers.hpp"

#include <cassert>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcop {

void validate_offer(const OfferMsg& offer, int receiver_domain) {
  if (offer.receiver_values != receiver_domain || offer.offerer_values < 1 ||
      offer.gains.size() != static_cast<std::size_t>(offer.offerer_values) *
                                static_cast<std::size_t>(offer.receiver_values))
    throw std::runtime_error("protocol error: malformed MGM-2 offer");
}

namespace {

struct LocalScan {
  int best_value = 0;
  double best_cost = 0.0;
  double current_cost = 0.0;
};

// Own-side cost of every value; lowest value index wins ties.
LocalScan scan_local(SolverContext& ctx) {
  LocalScan s;
  s.best_cost = std::numeric_limits<double>::infinity();
  for (int v = 0; v < ctx.domain_size(); ++v) {
    const double c = ctx.local_cost_of(v);
    if (v == ctx.value()) s.current_cost = c;
    if (c < s.best_cost) {
      s.best_cost = c;
      s.best_value = v;
    }
  }
  return s;
}

// Strict max-gain-in-neighborhood; equal gains go to the lower agent index.
bool beats(double my_gain, int my_index, double other_gain, int other_index) {
  return my_gain > other_gain || (my_gain == other_gain && my_index < other_index);
}

class SolverBase : public RoundSolver {
 public:
  void bind(const ProblemInstance& inst, const Neighborhood& nbh) override {
    inst_ = &inst;
    nbh_ = &nbh;
    const int n = inst.agent_count();
    edge_pos_.assign(n, {});
    for (int a = 0; a < n; ++a) {
      edge_pos_[a].assign(n, -1);
      const auto edges = nbh.edges(a);
      for (std::size_t k = 0; k < edges.size(); ++k)
        edge_pos_[a][edges[k].neighbor] = static_cast<int>(k);
    }
    on_bind(n);
  }

 protected:
  virtual void on_bind(int agent_count) = 0;

  const Neighborhood::Edge& edge_to(int agent, int neighbor) const {
    const int k = edge_pos_[agent][neighbor];
    assert(k >= 0);
    return nbh_->edges(agent)[static_cast<std::size_t>(k)];
  }
  int edge_index(int agent, int neighbor) const { return edge_pos_[agent][neighbor]; }

  const ProblemInstance* inst_ = nullptr;
  const Neighborhood* nbh_ = nullptr;

 private:
  std::vector<std::vector<int>> edge_pos_;
};

// ---------------------------------------------------------------------------
// DSA, variant C: move to the best response with probability p when it
// strictly improves, or when it ties and the agent still pays a conflict.
// Value messages go out only when the value actually changes.
// ---------------------------------------------------------------------------
class DsaSolver final : public SolverBase {
 public:
  explicit DsaSolver(const SolverParams& params) : p_(params.p) {}
  std::string_view id() const override { return "dsa"; }
  int phases() const override { return 1; }

  void step(SolverContext& ctx) override {
    const LocalScan s = scan_local(ctx);
    const double gain = s.current_cost - s.best_cost;
    if (gain > 0.0 || (gain == 0.0 && s.current_cost > 0.0)) {
      if (ctx.rng().uniform01() < p_ && s.best_value != ctx.value()) {
        ctx.set_value(s.best_value);
        ctx.broadcast(ValueMsg{s.best_value});
      }
    }
  }

 protected:
  void on_bind(int) override {}

 private:
  double p_;
};

// ---------------------------------------------------------------------------
// MGM: gain phase broadcasts the best-response gain, value phase moves the
// unique strict winner of each neighborhood.
// ---------------------------------------------------------------------------
class MgmSolver final : public SolverBase {
 public:
  std::string_view id() const override { return "mgm"; }
  int phases() const override { return 2; }
  bool monotone_per_cycle() const override { return true; }

  void step(SolverContext& ctx) override {
    State& st = state_[ctx.agent()];
    if (ctx.phase() == 0) {
      const LocalScan s = scan_local(ctx);
      st.best_value = s.best_value;
      st.gain = s.current_cost - s.best_cost;
      ctx.broadcast(GainMsg{st.gain});
      return;
    }
    bool win = st.gain > 0.0;
    for (const Message& m : ctx.inbox()) {
      const auto* gm = std::get_if<GainMsg>(&m.body);
      if (!gm) continue;
      if (!beats(st.gain, ctx.agent(), gm->gain, m.from)) win = false;
    }
    if (win) ctx.set_value(st.best_value);
    ctx.broadcast(ValueMsg{ctx.value()});
  }

 protected:
  void on_bind(int agent_count) override { state_.assign(agent_count, {}); }

 private:
  struct State {
    int best_value = 0;
    double gain = 0.0;
  };
  std::vector<State> state_;
};

// ---------------------------------------------------------------------------
// MGM-2: offer / reply / gain / commit / value. Offerers enumerate joint
// value pairs with one random neighbor; an accepted pair competes with the
// combined gain in both neighborhoods and moves only on go/go. Everyone else
// behaves exactly like MGM.
// ---------------------------------------------------------------------------
class Mgm2Solver final : public SolverBase {
 public:
  explicit Mgm2Solver(const SolverParams& params) : offer_prob_(params.offer_prob) {}
  std::string_view id() const override { return "mgm2"; }
  int phases() const override { return 5; }
  bool monotone_per_cycle() const override { return true; }

  void step(SolverContext& ctx) override {
    State& st = state_[ctx.agent()];
    switch (ctx.phase()) {
      case 0: offer_phase(ctx, st); break;
      case 1: reply_phase(ctx, st); break;
      case 2: gain_phase(ctx, st); break;
      case 3: commit_phase(ctx, st); break;
      case 4: value_phase(ctx, st); break;
    }
  }

 protected:
  void on_bind(int agent_count) override { state_.assign(agent_count, {}); }

 private:
  struct State {
    bool offerer = false;
    bool partnered = false;
    int partner = -1;
    int planned = 0;
    double joint_gain = 0.0;
    int solo_value = 0;
    double solo_gain = 0.0;
    bool won = false;
  };

  void offer_phase(SolverContext& ctx, State& st) {
    st = State{};
    if (offer_prob_ <= 0.0) return;  // pure MGM; keeps RNG streams untouched
    st.offerer = ctx.rng().uniform01() < offer_prob_;
    if (!st.offerer || ctx.edges().empty()) return;

    const auto edges = ctx.edges();
    const std::size_t pick = ctx.rng().below(edges.size());
    const auto& pe = edges[pick];
    st.partner = pe.neighbor;

    const int mine = ctx.domain_size();
    const int theirs = ctx.domain_size_of(pe.neighbor);
    const int partner_value = ctx.neighbor_value(pe.neighbor);

    // Regional cost restricted to this agent's constraints, both sides of the
    // shared edge counted here (the receiver adds only its other edges).
    std::vector<double> rest(mine, 0.0);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (k == pick) continue;
      const int nv = ctx.neighbor_value(edges[k].neighbor);
      for (int a = 0; a < mine; ++a) rest[a] += ctx.pair_cost(edges[k], a, nv);
    }
    const double base = ctx.pair_cost(pe, ctx.value(), partner_value) + rest[ctx.value()];

    OfferMsg offer{mine, theirs, std::vector<double>(
                                     static_cast<std::size_t>(mine) * theirs, 0.0)};
    for (int a = 0; a < mine; ++a)
      for (int b = 0; b < theirs; ++b)
        offer.gains[static_cast<std::size_t>(a) * theirs + b] =
            base - (ctx.pair_cost(pe, a, b) + rest[a]);
    ctx.send(pe.neighbor, std::move(offer));
  }

  void reply_phase(SolverContext& ctx, State& st) {
    struct Best {
      bool found = false;
      double combined = 0.0;
      int from = -1;
      int offerer_value = 0;
      int my_value = 0;
    } best;

    std::vector<int> offerers;
    for (const Message& m : ctx.inbox()) {
      const auto* offer = std::get_if<OfferMsg>(&m.body);
      if (!offer) continue;
      offerers.push_back(m.from);
      if (st.offerer) continue;  // offerers never accept

      validate_offer(*offer, ctx.domain_size());

      // The shared edge is already counted in the offerer's gains; only this
      // receiver's other constraints enter its part.
      std::vector<double> rest(ctx.domain_size(), 0.0);
      for (const auto& e : ctx.edges()) {
        if (e.neighbor == m.from) continue;
        const int nv = ctx.neighbor_value(e.neighbor);
        for (int b = 0; b < ctx.domain_size(); ++b) rest[b] += ctx.pair_cost(e, b, nv);
      }
      const double rest_current = rest[ctx.value()];

      for (int a = 0; a < offer->offerer_values; ++a)
        for (int b = 0; b < offer->receiver_values; ++b) {
          const double combined =
              offer->gains[static_cast<std::size_t>(a) * offer->receiver_values + b] +
              (rest_current - rest[b]);
          const bool better =
              !best.found || combined > best.combined ||
              (combined == best.combined &&
               (m.from < best.from ||
                (m.from == best.from &&
                 (a < best.offerer_value ||
                  (a == best.offerer_value && b < best.my_value)))));
          if (better) best = {true, combined, m.from, a, b};
        }
    }

    if (!st.offerer && best.found && best.combined > 0.0) {
      st.partnered = true;
      st.partner = best.from;
      st.planned = best.my_value;
      st.joint_gain = best.combined;
      ctx.send(best.from, AcceptMsg{best.offerer_value, best.my_value, best.combined});
      for (int from : offerers)
        if (from != best.from) ctx.send(from, RejectMsg{});
    } else {
      for (int from : offerers) ctx.send(from, RejectMsg{});
    }
  }

  void gain_phase(SolverContext& ctx, State& st) {
    if (st.offerer && st.partner >= 0) {
      for (const Message& m : ctx.inbox()) {
        if (m.from != st.partner) continue;
        if (const auto* acc = std::get_if<AcceptMsg>(&m.body)) {
          if (acc->offerer_value < 0 || acc->offerer_value >= ctx.domain_size() ||
              acc->receiver_value < 0 ||
              acc->receiver_value >= ctx.domain_size_of(st.partner))
            throw std::runtime_error("protocol error: accept names an unknown pair");
          st.partnered = true;
          st.planned = acc->offerer_value;
          st.joint_gain = acc->joint_gain;
        }
      }
    }
    if (!st.partnered) {
      const LocalScan s = scan_local(ctx);
      st.solo_value = s.best_value;
      st.solo_gain = s.current_cost - s.best_cost;
    }
    ctx.broadcast(GainMsg{st.partnered ? st.joint_gain : st.solo_gain});
  }

  void commit_phase(SolverContext& ctx, State& st) {
    const double gain = st.partnered ? st.joint_gain : st.solo_gain;
    st.won = gain > 0.0;
    for (const Message& m : ctx.inbox()) {
      const auto* gm = std::get_if<GainMsg>(&m.body);
      if (!gm) continue;
      if (st.partnered && m.from == st.partner) continue;  // same joint gain
      if (!beats(gain, ctx.agent(), gm->gain, m.from)) st.won = false;
    }
    if (st.partnered) ctx.send(st.partner, CommitMsg{st.won});
  }

  void value_phase(SolverContext& ctx, State& st) {
    if (st.partnered) {
      bool partner_go = false;
      for (const Message& m : ctx.inbox())
        if (m.from == st.partner)
          if (const auto* cm = std::get_if<CommitMsg>(&m.body)) partner_go = cm->go;
      if (st.won && partner_go) ctx.set_value(st.planned);
    } else if (st.won) {
      ctx.set_value(st.solo_value);
    }
    ctx.broadcast(ValueMsg{ctx.value()});
  }

  double offer_prob_;
  std::vector<State> state_;
};

// ---------------------------------------------------------------------------
// ACLS: propose a uniformly random member of the improving set, neighbors
// report their side-cost deltas, adopt with probability p when the regional
// delta is negative.
// ---------------------------------------------------------------------------
class AclsSolver final : public SolverBase {
 public:
  explicit AclsSolver(const SolverParams& params) : p_(params.p) {}
  std::string_view id() const override { return "acls"; }
  int phases() const override { return 3; }

  void step(SolverContext& ctx) override {
    State& st = state_[ctx.agent()];
    switch (ctx.phase()) {
      case 0: {
        st = State{};
        std::vector<double> cost(ctx.domain_size());
        for (int v = 0; v < ctx.domain_size(); ++v) cost[v] = ctx.local_cost_of(v);
        const double current = cost[ctx.value()];
        std::vector<int> improving;
        for (int v = 0; v < ctx.domain_size(); ++v)
          if (cost[v] < current) improving.push_back(v);
        if (improving.empty()) return;
        st.proposal = improving[ctx.rng().below_int(static_cast<int>(improving.size()))];
        st.own_delta = cost[st.proposal] - current;
        ctx.broadcast(ProposalMsg{st.proposal});
        return;
      }
      case 1: {
        reply_deltas(ctx);
        return;
      }
      case 2: {
        if (st.proposal >= 0) {
          double delta = st.own_delta;
          for (const Message& m : ctx.inbox())
            if (const auto* dm = std::get_if<DeltaMsg>(&m.body))
              delta += dm->cost_at_proposal - dm->cost_at_current;
          if (delta < 0.0 && ctx.rng().uniform01() < p_) ctx.set_value(st.proposal);
        }
        ctx.broadcast(ValueMsg{ctx.value()});
        return;
      }
    }
  }

 protected:
  void on_bind(int agent_count) override { state_.assign(agent_count, {}); }

 private:
  struct State {
    int proposal = -1;
    double own_delta = 0.0;
  };

  void reply_deltas(SolverContext& ctx) {
    for (const Message& m : ctx.inbox()) {
      const auto* pm = std::get_if<ProposalMsg>(&m.body);
      if (!pm) continue;
      const auto& e = edge_to(ctx.agent(), m.from);
      DeltaMsg reply;
      reply.cost_at_proposal = ctx.side_cost(e, ctx.value(), pm->value);
      reply.cost_at_current = ctx.side_cost(e, ctx.value(), ctx.neighbor_value(m.from));
      ctx.send(m.from, reply);
    }
  }

  double p_;
  std::vector<State> state_;
};

// ---------------------------------------------------------------------------
// ACLS-UB: the candidate is drawn uniformly from the full domain, and the
// adopt test compares neighbor-side cost sums only — strictly-less, so a
// candidate equal to the current value can never be adopted.
// ---------------------------------------------------------------------------
class AclsUbSolver final : public SolverBase {
 public:
  explicit AclsUbSolver(const SolverParams& params) : p_(params.p) {}
  std::string_view id() const override { return "aclsub"; }
  int phases() const override { return 3; }

  void step(SolverContext& ctx) override {
    State& st = state_[ctx.agent()];
    switch (ctx.phase()) {
      case 0: {
        st.proposal = ctx.rng().below_int(ctx.domain_size());
        ctx.broadcast(ProposalMsg{st.proposal});
        return;
      }
      case 1: {
        for (const Message& m : ctx.inbox()) {
          const auto* pm = std::get_if<ProposalMsg>(&m.body);
          if (!pm) continue;
          const auto& e = edge_to(ctx.agent(), m.from);
          DeltaMsg reply;
          reply.cost_at_proposal = ctx.side_cost(e, ctx.value(), pm->value);
          reply.cost_at_current = ctx.side_cost(e, ctx.value(), ctx.neighbor_value(m.from));
          ctx.send(m.from, reply);
        }
        return;
      }
      case 2: {
        double proposed_sum = 0.0;
        double current_sum = 0.0;
        for (const Message& m : ctx.inbox())
          if (const auto* dm = std::get_if<DeltaMsg>(&m.body)) {
            proposed_sum += dm->cost_at_proposal;
            current_sum += dm->cost_at_current;
          }
        if (proposed_sum < current_sum && ctx.rng().uniform01() < p_)
          ctx.set_value(st.proposal);
        ctx.broadcast(ValueMsg{ctx.value()});
        return;
      }
    }
  }

 protected:
  void on_bind(int agent_count) override { state_.assign(agent_count, {}); }

 private:
  struct State {
    int proposal = 0;
  };
  double p_;
  std::vector<State> state_;
};

// ---------------------------------------------------------------------------
// MCS-MGM: each agent shares, per candidate value of the recipient, the cost
// it currently incurs on their constraint, so gains are computed on the
// combined two-sided cost; winner rule as MGM. On symmetric instances this
// is MGM on doubled shared costs.
// ---------------------------------------------------------------------------
class McsMgmSolver final : public SolverBase {
 public:
  std::string_view id() const override { return "mcsmgm"; }
  int phases() const override { return 3; }

  void step(SolverContext& ctx) override {
    State& st = state_[ctx.agent()];
    switch (ctx.phase()) {
      case 0: {
        for (const auto& e : ctx.edges()) {
          CostMapMsg share;
          share.costs.resize(ctx.domain_size_of(e.neighbor));
          for (int d = 0; d < static_cast<int>(share.costs.size()); ++d)
            share.costs[d] = ctx.side_cost(e, ctx.value(), d);
          ctx.send(e.neighbor, std::move(share));
        }
        return;
      }
      case 1: {
        const auto edges = ctx.edges();
        std::vector<const std::vector<double>*> share(edges.size(), nullptr);
        for (const Message& m : ctx.inbox())
          if (const auto* cm = std::get_if<CostMapMsg>(&m.body)) {
            if (cm->costs.size() != static_cast<std::size_t>(ctx.domain_size()))
              throw std::runtime_error("protocol error: cost share has wrong length");
            share[edge_index(ctx.agent(), m.from)] = &cm->costs;
          }

        std::vector<double> regional(ctx.domain_size(), 0.0);
        for (std::size_t k = 0; k < edges.size(); ++k) {
          assert(share[k] != nullptr);
          const int nv = ctx.neighbor_value(edges[k].neighbor);
          for (int d = 0; d < ctx.domain_size(); ++d)
            regional[d] += ctx.side_cost(edges[k], d, nv) + (*share[k])[d];
        }
        int best = 0;
        for (int d = 1; d < ctx.domain_size(); ++d)
          if (regional[d] < regional[best]) best = d;
        st.best_value = best;
        st.gain = regional[ctx.value()] - regional[best];
        ctx.broadcast(GainMsg{st.gain});
        return;
      }
      case 2: {
        bool win = st.gain > 0.0;
        for (const Message& m : ctx.inbox()) {
          const auto* gm = std::get_if<GainMsg>(&m.body);
          if (!gm) continue;
          if (!beats(st.gain, ctx.agent(), gm->gain, m.from)) win = false;
        }
        if (win) ctx.set_value(st.best_value);
        ctx.broadcast(ValueMsg{ctx.value()});
        return;
      }
    }
  }

 protected:
  void on_bind(int agent_count) override { state_.assign(agent_count, {}); }

 private:
  struct State {
    int best_value = 0;
    double gain = 0.0;
  };
  std::vector<State> state_;
};

}  // namespace

std::unique_ptr<RoundSolver> make_solver(std::string_view id, const SolverParams& params) {
  if (params.p < 0.0 || params.p > 1.0 || params.offer_prob < 0.0 || params.offer_prob > 1.0)
    throw std::invalid_argument("solver probabilities must lie in [0, 1]");
  if (id == "dsa") return std::make_unique<DsaSolver>(params);
  if (id == "mgm") return std::make_unique<MgmSolver>();
  if (id == "mgm2") return std::make_unique<Mgm2Solver>(params);
  if (id == "acls") return std::make_unique<AclsSolver>(params);
  if (id == "aclsub") return std::make_unique<AclsUbSolver>(params);
  if (id == "mcsmgm") return std::make_unique<McsMgmSolver>();
  throw std::invalid_argument("unknown solver id: " + std::string(id));
}

}  // namespace dcop
