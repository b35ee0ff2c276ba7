#include "rxm/contracted.hpp"

#include <algorithm>
#include <deque>

namespace rxm {

ReducedInstructionSet compress(const std::vector<Label>& seq, int k) {
    ReducedInstructionSet out;
    out.perMemory.assign(static_cast<size_t>(k), MemOp::None);
    for (const auto& l : seq) {
        if (l.kind == LabelKind::Open)
            out.perMemory[static_cast<size_t>(l.mem) - 1] = MemOp::Open;
        else if (l.kind == LabelKind::Close)
            out.perMemory[static_cast<size_t>(l.mem) - 1] = MemOp::Close;
    }
    return out;
}

void apply_status_update(std::vector<bool>& statuses,
                         const ReducedInstructionSet& instr) {
    for (size_t i = 0; i < instr.perMemory.size(); ++i) {
        if (instr.perMemory[i] == MemOp::Open)
            statuses[i] = true;
        else if (instr.perMemory[i] == MemOp::Close)
            statuses[i] = false;
    }
}

ContractedTables build_contracted_tables(const Mfa& m) {
    ContractedTables tables;
    tables.k = m.memoryCount;
    tables.byState.resize(static_cast<size_t>(m.stateCount));
    tables.epsClosure.resize(static_cast<size_t>(m.stateCount));
    const size_t k = static_cast<size_t>(m.memoryCount);

    for (int q = 0; q < m.stateCount; ++q) {
        // BFS over non-consuming edges, accumulating the compressed
        // instruction set and the opened-memories mask down the tree.
        std::vector<bool> visited(static_cast<size_t>(m.stateCount), false);
        struct Entry {
            int state;
            ReducedInstructionSet instr;
            std::vector<bool> reset;
        };
        std::deque<Entry> queue;
        Entry start;
        start.state = q;
        start.instr.perMemory.assign(k, MemOp::None);
        start.reset.assign(k, false);
        visited[static_cast<size_t>(q)] = true;
        queue.push_back(std::move(start));
        auto& cols = tables.byState[static_cast<size_t>(q)];
        while (!queue.empty()) {
            Entry e = std::move(queue.front());
            queue.pop_front();
            tables.epsClosure[static_cast<size_t>(q)].push_back(e.state);
            for (int ti : m.out[static_cast<size_t>(e.state)]) {
                const Transition& t = m.transitions[static_cast<size_t>(ti)];
                if (t.label.consuming()) {
                    ConsKey key = ConsKey::of(t.label);
                    auto it = cols.find(key);
                    if (it == cols.end()) {
                        ContrColumn col;
                        col.targets = {t.to};
                        col.instr = e.instr;
                        col.contentReset = e.reset;
                        cols.emplace(key, std::move(col));
                    } else {
                        it->second.targets.push_back(t.to);
                    }
                } else if (!visited[static_cast<size_t>(t.to)]) {
                    visited[static_cast<size_t>(t.to)] = true;
                    Entry next = e;
                    next.state = t.to;
                    if (t.label.kind == LabelKind::Open) {
                        next.instr.perMemory[static_cast<size_t>(t.label.mem) -
                                             1] = MemOp::Open;
                        next.reset[static_cast<size_t>(t.label.mem) - 1] = true;
                    } else if (t.label.kind == LabelKind::Close) {
                        next.instr.perMemory[static_cast<size_t>(t.label.mem) -
                                             1] = MemOp::Close;
                    }
                    queue.push_back(std::move(next));
                }
            }
        }
        for (auto& [key, col] : cols) {
            std::sort(col.targets.begin(), col.targets.end());
            col.targets.erase(
                std::unique(col.targets.begin(), col.targets.end()),
                col.targets.end());
        }
    }
    return tables;
}

}  // namespace rxm
