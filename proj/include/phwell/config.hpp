#pragma once

// JSON system definitions. Top-level keys: field, interval, N, d, P (N+1
// matrices P_0..P_N), H {kind, data}, WB_hat, optional tolerances and note.
// Matrices are arrays of rows; entries are numbers or [re, im] pairs. The
// boundary operator acts on [Phi_1; Phi_0] (zeta = 1 block first).

#include <string>

#include "phwell/model.hpp"

namespace phwell {

/// Throws ParseError (syntax, types, field path) or the validation errors of
/// validate_system. Tolerances start from Tolerances::from_environment() and
/// are overridden by the config's "tolerances" object.
PortHamiltonianSystem parse_config_text(const std::string& text);
PortHamiltonianSystem parse_config(const std::string& path);

/// Inverse of parse_config_text. `note` is stored under "note" when nonempty.
std::string serialize_config(const PortHamiltonianSystem& sys, const std::string& note = {}, int indent = 2);

}  // namespace phwell
