#pragma once

#include <string>

#include "stringmass/coefficients.hpp"

namespace stringmass {

/// Parses a configuration document:
///
///   { "mass": M,
///     "left":  { "rho": P, "sigma": P, "q": P },
///     "right": { "rho": P, "sigma": P, "q": P } }
///
/// where each profile P is { "kind": "constant", "value": v },
/// { "kind": "poly", "coeffs": [c0, c1, ...] } (ascending powers of x) or
/// { "kind": "samples", "x": [...], "y": [...] }. "q" defaults to zero.
/// Unknown keys, malformed JSON and inadmissible coefficients throw ConfigError;
/// `origin` names the source in messages.
SystemConfig parse_config(const std::string& text, const std::string& origin = "<string>");

/// Reads and parses a configuration file; an unreadable path throws ConfigError naming it.
SystemConfig load_config(const std::string& path);

} // namespace stringmass
