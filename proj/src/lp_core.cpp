#include "revpref/lp_core.hpp"

namespace revpref {

FeasibilityOutcome solve_feasibility(const LinearSystem& sys) {
    return solve_feasibility<double>(sys, kFeasTol);
}

}  // namespace revpref
