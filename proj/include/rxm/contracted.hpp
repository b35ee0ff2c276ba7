#pragma once

#include <map>
#include <vector>

#include "rxm/mfa.hpp"

namespace rxm {

enum class MemOp : uint8_t { None, Open, Close };

// Per-memory "last instruction wins" summary of an instruction sequence.
struct ReducedInstructionSet {
    std::vector<MemOp> perMemory;  // size k

    bool operator==(const ReducedInstructionSet& o) const {
        return perMemory == o.perMemory;
    }
};

ReducedInstructionSet compress(const std::vector<Label>& seq, int k);

// Key for a consuming label: recalls sort before characters, recalls by
// memory index, characters by symbol.
struct ConsKey {
    int mem = 0;  // > 0: Recall(mem); 0: Char(sym)
    Symbol sym;

    static ConsKey of(const Label& l) {
        if (l.kind == LabelKind::Recall) return {l.mem, {}};
        return {0, l.sym};
    }
    bool is_recall() const { return mem > 0; }
    bool operator==(const ConsKey& o) const {
        return mem == o.mem && sym == o.sym;
    }
    bool operator<(const ConsKey& o) const {
        if ((mem > 0) != (o.mem > 0)) return mem > 0;  // recalls first
        if (mem != o.mem) return mem < o.mem;
        return sym < o.sym;
    }
    std::string str() const {
        return is_recall() ? "recall(" + std::to_string(mem) + ")" : sym;
    }
};

struct ContrColumn {
    std::vector<int> targets;       // delta-contr(q, x), sorted unique
    ReducedInstructionSet instr;    // T[q, x]: first BFS-order witness
    // Memories opened somewhere along the witness path. Their content is
    // epsilon after the instructions even when the final instruction is a
    // close; the reduced set alone loses that.
    std::vector<bool> contentReset;
};

struct ContractedTables {
    int k = 0;
    std::vector<std::map<ConsKey, ContrColumn>> byState;
    std::vector<std::vector<int>> epsClosure;  // delta-contr(q, eps), BFS order

    const ContrColumn* column(int q, const ConsKey& key) const {
        const auto& cols = byState[static_cast<size_t>(q)];
        auto it = cols.find(key);
        return it == cols.end() ? nullptr : &it->second;
    }
};

ContractedTables build_contracted_tables(const Mfa& m);

// statuses[i] = true means memory i+1 is open.
void apply_status_update(std::vector<bool>& statuses,
                         const ReducedInstructionSet& instr);

}  // namespace rxm
