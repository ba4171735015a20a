#pragma once

#include <memory>
#include <string_view>

#include "dcop/engine.hpp"

namespace dcop {

// i.i.d. uniform assignment; no messages, no evaluations.
Assignment random_init(const ProblemInstance& inst, std::uint64_t seed);

// Initializer ids: "random" | "zsla" | "ssla".
std::unique_ptr<Initializer> make_initializer(std::string_view id);

}  // namespace dcop
