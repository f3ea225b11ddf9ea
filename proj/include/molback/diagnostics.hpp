// diagnostics.hpp
// Self-contained verification checks for the special-function layer: oracle
// identities (exp, scaled erfc), regime-seam continuity, monotonicity and
// boundedness, ratio positivity, and the envelope-maximum scaling law.
#pragma once

#include <string>
#include <vector>

namespace molback {

struct VerifyCheck {
    std::string name;
    bool pass = false;
    double measured = 0;  // the quantity compared against bound
    double bound = 0;
};

std::vector<VerifyCheck> run_verification();

}  // namespace molback
