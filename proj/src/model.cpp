#include "dcop/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dcop {

std::string to_string(Kind kind) {
  return kind == Kind::symmetric ? "symmetric" : "asymmetric";
}

Kind kind_from_string(const std::string& s) {
  if (s == "symmetric") return Kind::symmetric;
  if (s == "asymmetric") return Kind::asymmetric;
  throw std::invalid_argument("unknown problem kind: " + s);
}

bool CostMatrix::all_zero() const {
  return std::all_of(cells_.begin(), cells_.end(), [](double v) { return v == 0.0; });
}

bool Assignment::complete() const {
  return !values_.empty() &&
         std::none_of(values_.begin(), values_.end(), [](int v) { return v == kUnassigned; });
}

namespace {

void fail(const std::string& what) { throw std::invalid_argument(what); }

void check_matrix(const CostMatrix& m, int rows, int cols, const std::string& label) {
  if (m.rows() != rows || m.cols() != cols)
    fail(label + ": dimensions " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
         " do not match domains " + std::to_string(rows) + "x" + std::to_string(cols));
  for (double v : m.cells())
    if (!std::isfinite(v) || v < 0.0) fail(label + ": costs must be finite and non-negative");
}

}  // namespace

void ProblemInstance::validate() const {
  if (domains.empty()) fail("instance needs at least one agent");
  for (std::size_t a = 0; a < domains.size(); ++a)
    if (domains[a] < 1) fail("agent " + std::to_string(a) + ": empty domain");

  std::set<std::pair<int, int>> seen;
  const int n = agent_count();
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const Constraint& c = constraints[k];
    const std::string label = "constraint " + std::to_string(k);
    if (c.i < 0 || c.i >= n || c.j < 0 || c.j >= n) fail(label + ": agent index out of range");
    if (c.i == c.j) fail(label + ": endpoints must be distinct");
    const auto key = std::minmax(c.i, c.j);
    if (!seen.insert(key).second) fail(label + ": duplicate constraint on the same agent pair");
    check_matrix(c.cost_i, domains[c.i], domains[c.j], label + ".cost_i");
    check_matrix(c.cost_j, domains[c.i], domains[c.j], label + ".cost_j");
    if (kind == Kind::symmetric && !c.cost_j.all_zero())
      fail(label + ": symmetric instances keep the full cost in cost_i; cost_j must be zero");
  }
}

Neighborhood build_neighborhood(const ProblemInstance& inst) {
  Neighborhood nbh;
  nbh.adjacency.resize(inst.agent_count());
  for (std::size_t k = 0; k < inst.constraints.size(); ++k) {
    const Constraint& c = inst.constraints[k];
    nbh.adjacency[c.i].push_back({c.j, static_cast<int>(k), true});
    nbh.adjacency[c.j].push_back({c.i, static_cast<int>(k), false});
  }
  for (auto& edges : nbh.adjacency)
    std::sort(edges.begin(), edges.end(),
              [](const auto& a, const auto& b) { return a.neighbor < b.neighbor; });
  return nbh;
}

double local_cost(const ProblemInstance& inst, const Neighborhood& nbh, int agent, int value,
                  const Assignment& cpa, std::uint64_t* evals) {
  if (agent < 0 || agent >= inst.agent_count())
    throw std::invalid_argument("local_cost: agent index out of range");
  if (value < 0 || value >= inst.domains[agent])
    throw std::invalid_argument("local_cost: value outside the agent's domain");
  double sum = 0.0;
  for (const auto& edge : nbh.edges(agent)) {
    if (!cpa.assigned(edge.neighbor)) continue;
    sum += edge_side_cost(inst, edge, value, cpa.value(edge.neighbor), evals);
  }
  return sum;
}

double global_cost(const ProblemInstance& inst, const Assignment& assignment,
                   std::uint64_t* evals) {
  if (assignment.size() != inst.agent_count() || !assignment.complete())
    throw std::invalid_argument("global_cost: assignment must be complete");
  double sum = 0.0;
  for (const Constraint& c : inst.constraints) {
    const int vi = assignment.value(c.i);
    const int vj = assignment.value(c.j);
    tick(evals);
    sum += c.cost_i.at(vi, vj);
    if (inst.kind == Kind::asymmetric) {
      tick(evals);
      sum += c.cost_j.at(vi, vj);
    }
  }
  return sum;
}

BestResponse best_response(const ProblemInstance& inst, const Neighborhood& nbh, int agent,
                           const Assignment& cpa, std::uint64_t* evals) {
  BestResponse best{0, local_cost(inst, nbh, agent, 0, cpa, evals)};
  for (int v = 1; v < inst.domains[agent]; ++v) {
    const double c = local_cost(inst, nbh, agent, v, cpa, evals);
    if (c < best.cost) best = {v, c};
  }
  return best;
}

namespace {

nlohmann::json matrix_to_json(const CostMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

CostMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("cost matrix must be a 2d array");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j.at(0).size());
  CostMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto& row = j.at(r);
    if (static_cast<int>(row.size()) != cols)
      throw std::invalid_argument("cost matrix rows have inconsistent lengths");
    for (int c = 0; c < cols; ++c) m.at(r, c) = row.at(c).get<double>();
  }
  return m;
}

}  // namespace

std::string problem_to_json(const ProblemInstance& inst) {
  nlohmann::json doc;
  doc["kind"] = to_string(inst.kind);
  doc["domains"] = inst.domains;
  nlohmann::json cs = nlohmann::json::array();
  for (const Constraint& c : inst.constraints) {
    nlohmann::json jc;
    jc["i"] = c.i;
    jc["j"] = c.j;
    jc["cost_i"] = matrix_to_json(c.cost_i);
    jc["cost_j"] = matrix_to_json(c.cost_j);
    cs.push_back(std::move(jc));
  }
  doc["constraints"] = std::move(cs);
  return doc.dump(2) + "\n";
}

ProblemInstance problem_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("problem JSON parse error: ") + e.what());
  }
  ProblemInstance inst;
  try {
    inst.kind = kind_from_string(doc.at("kind").get<std::string>());
    inst.domains = doc.at("domains").get<std::vector<int>>();
    for (const auto& jc : doc.at("constraints")) {
      Constraint c;
      c.i = jc.at("i").get<int>();
      c.j = jc.at("j").get<int>();
      c.cost_i = matrix_from_json(jc.at("cost_i"));
      c.cost_j = matrix_from_json(jc.at("cost_j"));
      inst.constraints.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("problem JSON schema error: ") + e.what());
  }
  inst.validate();
  return inst;
}

void save_problem(const ProblemInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << problem_to_json(inst);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

ProblemInstance load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return problem_from_json(buf.str());
}

}  // namespace dcop
