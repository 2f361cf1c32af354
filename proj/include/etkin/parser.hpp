#pragma once

#include <optional>
#include <string>
#include <vector>

#include "etkin/ets.hpp"

namespace etkin {

// Parse the elementary-transform text grammar:
//
//   ets      := term (WS term)*
//   term     := kindaxis "(" arg ")"
//   kindaxis := ("t" | "R") ("x" | "y" | "z")
//   arg      := number unit? | "-"? "q" integer
//   unit     := "deg"
//
// e.g. "tz(0.333) Rz(q0) Ry(-q3) Rx(90deg)". "deg" converts to radians at
// parse time and is only valid on rotations; translations are in metres.
// "-q" marks a flipped (negative-running) rotation joint.
Ets parse_ets(const std::string& text);

// Canonical text form: joints as "q<j>" / "-q<j>", constants in radians or
// metres with the shortest round-trip representation. Parsing the output
// reproduces the sequence exactly.
std::string to_text(const Ets& ets);

// Load a model from a builtin name ("planar2", "ur5", "panda") or a path to
// a model file containing either a single ETS text line or a JSON object
//   { "name": string, "ets": string, "qlim": [[lo, hi], ...] }.
// "qlim" is optional and defaults to [-pi, pi] per joint.
Ets load_model(const std::string& source);

std::vector<std::string> builtin_model_names();

// JSON text of a builtin model, or nullopt when the name is not builtin.
std::optional<std::string> builtin_model_text(const std::string& name);

}  // namespace etkin
