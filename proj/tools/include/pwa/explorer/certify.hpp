#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pwa::explorer {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct CertifyOptions {
    std::string out_dir = ".";  // artifact files from the figure criterion land here
};

/// Run the full certification suite: algebraic identities, symmetries,
/// boundary/continuity, special parameters, certified circles, cancellation
/// structure, foliation, return map, rotation-number bound, figure
/// reproduction, and spectral oracles. Every tolerance is fixed in code.
std::vector<CriterionResult> run_certification(const CertifyOptions& opts = {});

/// One line per criterion: "[ k/11] PASS name (detail) [t s]".
/// Returns true when every criterion passed.
bool print_certification(std::ostream& os, const std::vector<CriterionResult>& results);

}  // namespace pwa::explorer
