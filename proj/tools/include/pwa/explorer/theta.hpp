#pragma once

#include <string>

namespace pwa::explorer {

/// Parse an angle token: a plain decimal ("0.3"), "pi/<int>" or
/// "<int>pi/<int>". Exact rational multiples of pi are evaluated in double
/// precision. Throws std::invalid_argument (with the offending position) for
/// malformed tokens and std::domain_error for angles outside (0, pi/4).
double parse_theta(const std::string& token);

}  // namespace pwa::explorer
