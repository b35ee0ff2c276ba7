#pragma once

#include <optional>

#include "rxm/contracted.hpp"
#include "rxm/mfa.hpp"

namespace rxm {

struct MemSyncRelation {
    std::vector<std::vector<bool>> sync;  // symmetric |Q| x |Q|
    bool get(int q1, int q2) const {
        return sync[static_cast<size_t>(q1)][static_cast<size_t>(q2)];
    }
};

// Is there a non-consuming path from q to p whose compressed instruction set
// contains (contains=true) / omits (contains=false) the single instruction c
// (an Open or Close label)?
bool q1_query(const Mfa& m, int q, int p, const Label& c, bool contains);

MemSyncRelation compute_mem_sync(const Mfa& m, const ContractedTables& tables);

struct NsbWitness {
    int q, p1, p2;
};

// Searches for a non-synchronised branching triple: a state q from which two
// contracted computations over the same consuming labels reach a pair of
// states that is not memory synchronised.
std::optional<NsbWitness> find_non_sync_branch(const Mfa& m,
                                               const ContractedTables& tables,
                                               const MemSyncRelation& ms);

bool has_non_sync_branch(const Mfa& m, const ContractedTables& tables,
                         const MemSyncRelation& ms);

bool is_memory_deterministic(const Mfa& m);
bool is_mdet_regex(const RegexAst& ast);

struct SyncViolation {
    Word word;
    int step;  // index into the computations, 0 = initial configuration
    Configuration c1, c2;
};

// Brute-force synchronisation oracle: enumerates contracted computations on
// every word up to maxlen and reports two same-step configurations that
// differ beyond their states.
std::optional<SyncViolation> bounded_sync_check(const Mfa& m, int maxlen,
                                                long long budget = 50'000'000);

}  // namespace rxm
