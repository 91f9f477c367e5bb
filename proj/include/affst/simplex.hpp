#pragma once

#include <vector>

namespace affst {

/// Result of the equality-form LP  min c.x  s.t.  A x = b, x >= 0.
struct LpResult {
    bool feasible = false;
    double value = 0.0;
    std::vector<double> duals;  // one multiplier per equality row
};

/// Two-phase revised simplex for LPs with a handful of equality rows and many
/// columns (the envelope evaluation has rows = d+1, columns = boundary
/// samples). Dantzig pricing with a Bland fallback against cycling.
LpResult solve_equality_lp(const std::vector<std::vector<double>>& columns,
                           const std::vector<double>& cost,
                           const std::vector<double>& rhs);

}  // namespace affst
