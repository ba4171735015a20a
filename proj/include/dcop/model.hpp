#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace dcop {

enum class Kind { symmetric, asymmetric };

std::string to_string(Kind kind);
Kind kind_from_string(const std::string& s);

// Dense row-major cost table over a pair of domains.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows) * cols, fill) {}

  double at(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return cells_[static_cast<std::size_t>(r) * cols_ + c];
  }
  double& at(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return cells_[static_cast<std::size_t>(r) * cols_ + c];
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<double>& cells() const { return cells_; }
  bool all_zero() const;

  bool operator==(const CostMatrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> cells_;
};

// Binary constraint between agents i and j. Both matrices are indexed
// [value of i][value of j]. For symmetric problems cost_i holds the shared
// cost and cost_j is identically zero.
struct Constraint {
  int i = 0;
  int j = 0;
  CostMatrix cost_i;
  CostMatrix cost_j;

  bool operator==(const Constraint&) const = default;
};

struct ProblemInstance {
  Kind kind = Kind::symmetric;
  std::vector<int> domains;  // domain size per agent; values are 0-based
  std::vector<Constraint> constraints;

  int agent_count() const { return static_cast<int>(domains.size()); }

  // Throws std::invalid_argument when any model invariant is broken.
  void validate() const;

  bool operator==(const ProblemInstance&) const = default;
};

// Partial or complete value assignment; one slot per agent.
class Assignment {
 public:
  static constexpr int kUnassigned = -1;

  Assignment() = default;
  explicit Assignment(int agent_count) : values_(agent_count, kUnassigned) {}
  explicit Assignment(std::vector<int> values) : values_(std::move(values)) {}

  int size() const { return static_cast<int>(values_.size()); }
  bool assigned(int agent) const { return values_[agent] != kUnassigned; }
  int value(int agent) const {
    assert(assigned(agent));
    return values_[agent];
  }
  void set(int agent, int value) {
    assert(agent >= 0 && agent < size() && value >= 0);
    values_[agent] = value;
  }
  void clear(int agent) { values_[agent] = kUnassigned; }
  bool complete() const;
  const std::vector<int>& values() const { return values_; }

  auto operator<=>(const Assignment&) const = default;

 private:
  std::vector<int> values_;
};

// Adjacency derived from the constraint list. j in N(i) iff a constraint on
// {i, j} exists; edge lists are sorted by neighbor index.
struct Neighborhood {
  struct Edge {
    int neighbor = 0;
    int constraint = 0;  // index into ProblemInstance::constraints
    bool is_side_i = false;  // true when this agent is constraints[constraint].i
  };

  std::vector<std::vector<Edge>> adjacency;

  std::span<const Edge> edges(int agent) const { return adjacency[agent]; }
  int degree(int agent) const { return static_cast<int>(adjacency[agent].size()); }
};

Neighborhood build_neighborhood(const ProblemInstance& inst);

// Every cost-matrix cell read below fires one evaluation tick when a counter
// is supplied; this is the only side channel of the model operations.
inline void tick(std::uint64_t* evals, std::uint64_t n = 1) {
  if (evals) *evals += n;
}

// This agent's side of the constraint behind `edge`, at (my_value, nb_value).
// Symmetric problems expose the shared cost to both endpoints; one cell read.
inline double edge_side_cost(const ProblemInstance& inst, const Neighborhood::Edge& edge,
                             int my_value, int nb_value, std::uint64_t* evals) {
  const Constraint& c = inst.constraints[edge.constraint];
  const int vi = edge.is_side_i ? my_value : nb_value;
  const int vj = edge.is_side_i ? nb_value : my_value;
  tick(evals);
  if (inst.kind == Kind::symmetric || edge.is_side_i) return c.cost_i.at(vi, vj);
  return c.cost_j.at(vi, vj);
}

// Both sides of the constraint behind `edge`. Symmetric: the shared cost,
// counted once (one cell read); asymmetric: cost_i + cost_j (two reads).
inline double edge_pair_cost(const ProblemInstance& inst, const Neighborhood::Edge& edge,
                             int my_value, int nb_value, std::uint64_t* evals) {
  const Constraint& c = inst.constraints[edge.constraint];
  const int vi = edge.is_side_i ? my_value : nb_value;
  const int vj = edge.is_side_i ? nb_value : my_value;
  tick(evals);
  if (inst.kind == Kind::symmetric) return c.cost_i.at(vi, vj);
  tick(evals);
  return c.cost_i.at(vi, vj) + c.cost_j.at(vi, vj);
}

// Cost this agent's side incurs for holding `value` against the neighbors
// assigned in `cpa`. Unassigned neighbors contribute nothing.
double local_cost(const ProblemInstance& inst, const Neighborhood& nbh, int agent, int value,
                  const Assignment& cpa, std::uint64_t* evals = nullptr);

// Sum over all constraints of both sides at the assigned pair.
double global_cost(const ProblemInstance& inst, const Assignment& assignment,
                   std::uint64_t* evals = nullptr);

struct BestResponse {
  int value = 0;
  double cost = 0.0;
};

// Value minimizing local_cost given `cpa`; ties go to the lowest value index.
BestResponse best_response(const ProblemInstance& inst, const Neighborhood& nbh, int agent,
                           const Assignment& cpa, std::uint64_t* evals = nullptr);

// JSON document: {kind, domains: [int], constraints: [{i, j, cost_i, cost_j}]}.
// Round-trips bit-exactly.
std::string problem_to_json(const ProblemInstance& inst);
ProblemInstance problem_from_json(const std::string& text);
void save_problem(const ProblemInstance& inst, const std::filesystem::path& path);
ProblemInstance load_problem(const std::filesystem::path& path);

}  // namespace dcop
