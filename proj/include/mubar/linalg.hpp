#pragma once

#include <optional>
#include <vector>

#include "mubar/types.hpp"

namespace mubar {

// Dense exact-rational matrix helpers for the small systems that show up
// in Hall collection, simple-commutator matching and DD relation ranks.

// Solve A x = b (rows x cols).  Returns nullopt when inconsistent.  When
// underdetermined, free variables are set to 0.
std::optional<std::vector<Rat>> solve_rational(
    std::vector<std::vector<Rat>> a, std::vector<Rat> b);

int rank_rational(std::vector<std::vector<Rat>> a);

}  // namespace mubar
