#pragma once

#include <array>

#include "rxm/mfa.hpp"
#include "rxm/syntax.hpp"

namespace rxm {

// 3-literal CNF. Literals are variable indices in [1..n]; the signed variant
// uses negative values for negated literals.
struct CnfInstance {
    int variableCount = 0;
    std::vector<std::array<int, 3>> clauses;
};

// Set-cover regex: one epsilon-definition per element of the chosen subset,
// k alternation blocks, a sentinel variable spanning the whole pattern, and
// trailing recalls of every element variable. The strong avd exceeds the
// universe size exactly when k subsets cover the universe.
RegexAst gen_setcover_regex(int universeSize,
                            const std::vector<std::vector<int>>& subsets,
                            int k);

// MFA(2n) over {a,b} whose probe word (aab)^n (ab)^m is accepted exactly when
// the positive CNF is 1-in-3 satisfiable.
struct OneInThree {
    Mfa mfa;
    Word probe;
};
OneInThree gen_1in3_mfa(const CnfInstance& cnf);

// Verifies the structural restrictions of the 1-in-3 construction: binary
// alphabet {a,b}, no epsilon transitions, at most one successor per state for
// every label other than Char(a), and exactly two a-successors at the
// branching states. Throws on violation.
void verify_1in3_restrictions(const Mfa& m);

// MFA(2n+m) over {a,b} that is non-synchronised exactly when the signed CNF
// is satisfiable. Requires at least one clause.
Mfa gen_3sat_sync_mfa(const CnfInstance& cnf);

// Longest input the construction above can consume; bound for the
// brute-force synchronisation check.
int gen_3sat_input_bound(const CnfInstance& cnf);

// Brute-force oracles for the generators' iff-properties.
bool onein3_satisfiable(const CnfInstance& cnf);
bool sat_satisfiable(const CnfInstance& cnf);
bool setcover_exists(int universeSize,
                     const std::vector<std::vector<int>>& subsets, int k);

}  // namespace rxm
