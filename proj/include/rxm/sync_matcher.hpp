#pragma once

#include <string>

#include "rxm/contracted.hpp"
#include "rxm/lce.hpp"
#include "rxm/mfa.hpp"
#include "rxm/syntax.hpp"

namespace rxm {

// Single-pass acceptance for synchronised MFA: one merged frontier of states
// plus a shared memory image (contents U, statuses R). The caller is
// responsible for the automaton actually being synchronised (normally via
// is_memory_deterministic); on other inputs the result is unspecified but the
// procedure still terminates.
bool sync_match(const Mfa& m, const ContractedTables& tables,
                const LceIndex& lce, const Word& w);

struct MatchOptions {
    int avdCap = 2;
    long long budget = 10'000'000;
};

struct EngineResult {
    bool accepted = false;
    std::string engine;  // "sync", "reuse-mfa(k)", "generic-bfs"
};

// Dispatcher: sync matcher for memory-deterministic regex, memory-reuse
// MFA(avd) when avd is within the cap, generic configuration BFS otherwise.
EngineResult match_auto(const RegexAst& ast, const Word& w,
                        const MatchOptions& opts = {});

}  // namespace rxm
