// Named-variable linear inequality systems over exact rationals and
// Fourier-Motzkin variable elimination with redundancy pruning.
//
// Conventions:
//   - rows are "sum_i c_i * x_i REL rhs" with REL one of {<=, =},
//   - lower bounds are expressed as rows with negative coefficients,
//   - an infeasible system surfaces as the contradictory var-free row
//     "0 <= -1" rather than as an error.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "secrecy/rational.hpp"

namespace secrecy {

enum class Rel { LE, EQ };

struct LinIneq {
    std::map<std::string, Rat> coeffs;  // zero coefficients are dropped by normalize()
    Rat rhs = 0;
    Rel rel = Rel::LE;

    Rat coeff(const std::string& var) const;
    bool mentions(const std::string& var) const;

    // drop zero coefficients, scale to coprime integer coefficients
    // (equalities additionally get a positive leading coefficient)
    void normalize();

    bool trivially_true() const;   // var-free and satisfied
    bool trivially_false() const;  // var-free and violated

    std::string to_string() const;
};

struct LinSystem {
    std::vector<std::string> vars;
    std::vector<LinIneq> ineqs;

    void add(LinIneq iq) { ineqs.push_back(std::move(iq)); }
    bool has_var(const std::string& v) const;
    void validate() const;  // every coefficient key must appear in vars
    bool has_contradiction() const;

    std::string to_text() const;
    static LinSystem parse(const std::string& text);
};

// convenience row builders
LinIneq make_le(const std::map<std::string, Rat>& coeffs, const Rat& rhs);
LinIneq make_ge(const std::map<std::string, Rat>& coeffs, const Rat& rhs);  // stored as LE
LinIneq make_eq(const std::map<std::string, Rat>& coeffs, const Rat& rhs);

// Projects the solution set onto vars \ {var}: equalities containing var are
// substituted out; otherwise every (lower bound, upper bound) pair on var
// contributes one row and var-free rows pass through.
LinSystem eliminate(const LinSystem& sys, const std::string& var);

// Sequential elimination; order chosen greedily by the smallest
// (#lower)*(#upper) pairing count (equality substitutions first). Prunes
// redundant rows after each step when prune is set.
LinSystem eliminate_all(const LinSystem& sys, const std::vector<std::string>& vars_to_remove,
                        bool prune = true);

// Same solution set with no row implied by the others; implication is tested
// by exact LP (maximize the row's left side subject to the rest). Infeasible
// systems collapse to the single marker row "0 <= -1".
LinSystem remove_redundant(const LinSystem& sys);

// exact membership test: substitutes the point and checks every row
bool satisfies(const LinSystem& sys, const std::map<std::string, Rat>& point);

}  // namespace secrecy
