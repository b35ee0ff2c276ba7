#pragma once

#include <map>
#include <set>

#include "rxm/mfa.hpp"
#include "rxm/syntax.hpp"

namespace rxm {

// The pre/post variable reachability relations over an automaton's states:
//   pre[x][q]  : some path from the initial state to q opens x at least once
//   post[x][q] : from q, a recall of x is reachable without re-opening x
// and active[q] = {x | pre and post}.
struct VarReachability {
    std::vector<std::vector<bool>> pre;   // [var-1][state]
    std::vector<std::vector<bool>> post;  // [var-1][state]
    std::vector<std::set<int>> active;    // [state] -> variable indices
};

VarReachability compute_reachability(const Mfa& m);

struct AvdReport {
    int avd = 0;
    Mfa mfa;               // canonical automaton
    VarReachability reach;
    // definition-child ast node -> active variable set at its in-state
    std::map<int, std::set<int>> activeAtDefChild;
};

AvdReport avd_report(const RegexAst& ast);
int avd(const RegexAst& ast);

// Exact strong avd by subset enumeration; throws when the regex has more
// than 12 variables.
int savd_bruteforce(const RegexAst& ast);

// Memory-reuse automaton: an MFA(k) with the same language, built lazily
// from (canonical state, memory slot list) pairs. Requires avd(ast) <= k.
Mfa build_reuse_mfa(const RegexAst& ast, int k);

}  // namespace rxm
