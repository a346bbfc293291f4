// Exact-rational LP over LinSystem rows (free variables, <= and = rows).
// Two-phase dense simplex with Bland's rule; small systems only.

#pragma once

#include <map>
#include <string>

#include "secrecy/linsys.hpp"

namespace secrecy {

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rat value = 0;                      // objective at optimum (when Optimal)
    std::map<std::string, Rat> point;   // an optimal (or feasible) assignment
};

// maximize sum objective[v]*v subject to sys
LpResult lp_maximize(const LinSystem& sys, const std::map<std::string, Rat>& objective);

bool lp_feasible(const LinSystem& sys);

// feasibility of sys with some variables pinned to exact values
bool lp_feasible_with_fixed(const LinSystem& sys, const std::map<std::string, Rat>& fixed);

}  // namespace secrecy
