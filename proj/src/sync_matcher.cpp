#include "rxm/sync_matcher.hpp"

#include <algorithm>

#include "rxm/avd.hpp"
#include "rxm/mdet.hpp"

namespace rxm {

namespace {

struct Span {
    int lo = 0, hi = 0;
    int len() const { return hi - lo; }
};

bool frontier_accepts(const Mfa& m, const ContractedTables& tables,
                      const std::vector<int>& frontier) {
    for (int q : frontier)
        for (int p : tables.epsClosure[static_cast<size_t>(q)])
            if (m.is_accepting(p)) return true;
    return false;
}

}  // namespace

bool sync_match(const Mfa& m, const ContractedTables& tables,
                const LceIndex& lce, const Word& w) {
    const int n = static_cast<int>(w.size());
    const int k = m.memoryCount;
    std::vector<int> frontier = {m.initial};
    std::vector<Span> U(static_cast<size_t>(k));
    std::vector<bool> open(static_cast<size_t>(k), false);
    int pos = 0;
    int stall = 0;

    if (pos == n && frontier_accepts(m, tables, frontier)) return true;

    while (stall <= m.stateCount) {
        // applicable consuming labels at the current memory image
        auto applicable = [&](const ConsKey& key) {
            if (key.is_recall()) {
                const Span& s = U[static_cast<size_t>(key.mem) - 1];
                if (pos == n) return s.len() == 0;
                return lce.is_prefix(s.lo, s.hi, pos);
            }
            return pos < n && w[static_cast<size_t>(pos)] == key.sym;
        };

        // first applicable (state, label) in fixed order
        const ContrColumn* picked = nullptr;
        ConsKey pickedKey;
        for (int q : frontier) {
            for (const auto& [key, col] : tables.byState[static_cast<size_t>(q)])
                if (applicable(key)) {
                    picked = &col;
                    pickedKey = key;
                    break;
                }
            if (picked) break;
        }
        if (!picked) return false;

        int ulen = pickedKey.is_recall()
                       ? U[static_cast<size_t>(pickedKey.mem) - 1].len()
                       : 1;
        stall = (ulen == 0) ? stall + 1 : 0;
        if (stall > m.stateCount) return false;

        // next frontier over the same applicability set
        std::vector<int> next;
        for (int q : frontier)
            for (const auto& [key, col] : tables.byState[static_cast<size_t>(q)])
                if (applicable(key))
                    next.insert(next.end(), col.targets.begin(),
                                col.targets.end());
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());

        // memory effects of the picked transition, then the consumption
        for (int i = 0; i < k; ++i) {
            MemOp op = picked->instr.perMemory[static_cast<size_t>(i)];
            if (op == MemOp::Open) {
                open[static_cast<size_t>(i)] = true;
                U[static_cast<size_t>(i)] = {pos, pos};
            } else if (op == MemOp::Close) {
                open[static_cast<size_t>(i)] = false;
                // a memory opened and closed along the same path holds epsilon
                if (picked->contentReset[static_cast<size_t>(i)])
                    U[static_cast<size_t>(i)] = {pos, pos};
            }
        }
        pos += ulen;
        for (int i = 0; i < k; ++i)
            if (open[static_cast<size_t>(i)]) U[static_cast<size_t>(i)].hi = pos;

        frontier = std::move(next);
        if (pos == n && frontier_accepts(m, tables, frontier)) return true;
    }
    return false;
}

EngineResult match_auto(const RegexAst& ast, const Word& w,
                        const MatchOptions& opts) {
    Mfa canonical = build_crude_automaton(ast);
    if (is_memory_deterministic(canonical)) {
        ContractedTables tables = build_contracted_tables(canonical);
        LceIndex lce = LceIndex::build(w);
        return {sync_match(canonical, tables, lce, w), "sync"};
    }
    int a = avd(ast);
    if (a <= opts.avdCap) {
        Mfa reuse = build_reuse_mfa(ast, a);
        return {mfa_accepts(reuse, w, opts.budget),
                "reuse-mfa(" + std::to_string(a) + ")"};
    }
    return {mfa_accepts(canonical, w, opts.budget), "generic-bfs"};
}

}  // namespace rxm
