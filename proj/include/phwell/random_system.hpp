#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "phwell/model.hpp"

namespace phwell {

enum class SystemClass { interval_square, interval_rect, halfline };

std::string_view to_string(SystemClass c);
SystemClass parse_system_class(std::string_view text);

/// Deterministic random system. P_k are drawn and symmetrized to
/// P_k* = (-1)^{k+1} P_k, Re P0 is shifted below zero (or P0 is skew for
/// unitary constructions), H = I. Boundary operators come from a mix of
/// families: dense Gaussian, and constructions with a prescribed
/// contraction factor on either side of the threshold. Draws whose decisive
/// eigenvalue or singular value lies within 1e-6 of its threshold are
/// rejected and redrawn. Half-line systems ignore N and use k = n2.
PortHamiltonianSystem random_system(std::uint64_t seed, int N, int d, SystemClass cls);

}  // namespace phwell
