#pragma once

#include <memory>
#include <string_view>

#include "dcop/engine.hpp"

namespace dcop {

struct SolverParams {
  double p = 0.5;           // value-adoption probability (DSA, ACLS, ACLS-UB)
  double offer_prob = 0.5;  // probability of playing offerer in an MGM-2 cycle
};

// Solver ids: dsa | mgm | mgm2 | acls | aclsub | mcsmgm.
std::unique_ptr<RoundSolver> make_solver(std::string_view id, const SolverParams& params = {});

// Rejects offers that cannot have come from a well-formed offerer for this
// receiver. Throws std::runtime_error; the engine lets it abort the run.
void validate_offer(const OfferMsg& offer, int receiver_domain);

}  // namespace dcop
