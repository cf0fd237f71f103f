#include "pwa/explorer/theta.hpp"

#include <cctype>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "pwa/geometry.hpp"

namespace pwa::explorer {

namespace {

[[noreturn]] void fail(const std::string& token, std::size_t pos, const std::string& why) {
    throw std::invalid_argument("parse_theta: " + why + " in \"" + token + "\" at position " +
                                std::to_string(pos));
}

}  // namespace

double parse_theta(const std::string& token) {
    if (token.empty()) fail(token, 0, "empty token");

    double value = 0.0;
    const std::size_t pi_pos = token.find("pi");
    if (pi_pos != std::string::npos) {
        long long num = 1;
        if (pi_pos > 0) {
            std::size_t used = 0;
            try {
                num = std::stoll(token.substr(0, pi_pos), &used);
            } catch (const std::exception&) {
                fail(token, 0, "expected integer numerator");
            }
            if (used != pi_pos) fail(token, used, "unexpected character before pi");
        }
        const std::size_t after = pi_pos + 2;
        if (after >= token.size() || token[after] != '/') {
            fail(token, after, "expected '/' after pi");
        }
        long long den = 0;
        std::size_t used = 0;
        try {
            den = std::stoll(token.substr(after + 1), &used);
        } catch (const std::exception&) {
            fail(token, after + 1, "expected integer denominator");
        }
        if (after + 1 + used != token.size()) {
            fail(token, after + 1 + used, "trailing characters");
        }
        if (den == 0) fail(token, after + 1, "zero denominator");
        value = static_cast<double>(num) * std::numbers::pi / static_cast<double>(den);
    } else {
        std::size_t used = 0;
        try {
            value = std::stod(token, &used);
        } catch (const std::exception&) {
            fail(token, 0, "expected decimal angle");
        }
        if (used != token.size()) fail(token, used, "trailing characters");
    }

    if (!(value >= kThetaMin && value <= theta_max())) {
        throw std::domain_error("parse_theta: angle " + token + " outside (0, pi/4)");
    }
    return value;
}

}  // namespace pwa::explorer
