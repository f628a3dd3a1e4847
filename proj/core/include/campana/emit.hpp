#pragma once

// Interchange formats for formulas.

#include <campana/formula.hpp>

#include <string>
#include <string_view>

namespace campana {

enum class Format { Json, Sexpr, Latex };

/// "json", "sexpr" or "latex"; std::invalid_argument otherwise.
Format parse_format(std::string_view name);

/// Canonical rendering. Only nodes reachable from the matrix and the
/// substitutions are written, renumbered densely in arena order, so the
/// output is deterministic.
std::string emit(const Formula& f, Format format);

/// Inverse of emit for the JSON and s-expression formats. Throws
/// std::invalid_argument on malformed input.
Formula parse_json(std::string_view text);
Formula parse_sexpr(std::string_view text);
Formula parse(std::string_view text, Format format);

}  // namespace campana
