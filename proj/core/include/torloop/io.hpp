#pragma once

#include <optional>
#include <string>

#include "torloop/module_lab.hpp"

namespace torloop {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// "A2", "g2", "E8" -> (type, rank).
SimpleAlgebra algebra_from_name(const std::string& name);

/// {"modulus": M, "coeffs": ["p/q", ...]}
std::string scalar_to_json(const CycloScalar& x);
CycloScalar scalar_from_json(const std::string& text, std::uint32_t target_modulus = 1);

/// Basis labels, structure constants and form of g as JSON.
std::string export_algebra(const SimpleAlgebra& g);
/// Replace the tables of g with those in an export file (used for fault injection).
void apply_structure_override(SimpleAlgebra& g, const std::string& export_text);

/// {"algebra": {"type": "A", "rank": 2}, "autos": [...], "orders": [...]}
/// Automorphism kinds: identity, diagram (perm, 1-based), inner (coweight),
/// matrix (rows of scalars; column j is the image of basis vector j), compose (parts).
TwistedSetup setup_from_json(const std::string& text, const std::optional<std::string>& structure = std::nullopt);
std::string setup_summary_json(const TwistedSetup& s);

struct ModuleSpec {
  GlRep v1;
  GnaughtRep v2;
  RatVec alpha;
  Rational d0;
  GradedModule module;
  std::optional<GradedAutomorphism> theta;
};

/// {"gl": "trivial" | "natural" | "adjoint" | {"dim", "matrices"},
///  "gnaught": "trivial" | "adjoint" | {"dim", "grading", "matrices": {"<adapted index>": rows}},
///  "alpha": [...], "d0": "p/q", "theta": {"matrix": rows, "shift": [...]}}
ModuleSpec module_from_json(const TwistedSetup& s, const std::string& text);

}  // namespace torloop
