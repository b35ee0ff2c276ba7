#include "rxm/mdet.hpp"

#include <array>
#include <deque>
#include <map>
#include <set>

namespace rxm {

namespace {

// Bit positions for the achievable "last instruction on memory y" values.
constexpr uint8_t kNone = 1, kOpen = 2, kClose = 4;

// For fixed q and memory y: which (state, last-instruction-on-y) pairs are
// reachable via non-consuming edges. Returned as a per-state 3-bit mask.
std::vector<uint8_t> last_reach(const Mfa& m, int q, int y) {
    std::vector<std::array<bool, 3>> visited(
        static_cast<size_t>(m.stateCount), {false, false, false});
    std::deque<std::pair<int, int>> queue;
    visited[static_cast<size_t>(q)][0] = true;
    queue.push_back({q, 0});
    while (!queue.empty()) {
        auto [s, last] = queue.front();
        queue.pop_front();
        for (int ti : m.out[static_cast<size_t>(s)]) {
            const Transition& t = m.transitions[static_cast<size_t>(ti)];
            if (t.label.consuming()) continue;
            int nl = last;
            if (t.label.kind == LabelKind::Open && t.label.mem == y) nl = 1;
            if (t.label.kind == LabelKind::Close && t.label.mem == y) nl = 2;
            if (!visited[static_cast<size_t>(t.to)][static_cast<size_t>(nl)]) {
                visited[static_cast<size_t>(t.to)][static_cast<size_t>(nl)] =
                    true;
                queue.push_back({t.to, nl});
            }
        }
    }
    std::vector<uint8_t> mask(static_cast<size_t>(m.stateCount), 0);
    for (int s = 0; s < m.stateCount; ++s) {
        const auto& v = visited[static_cast<size_t>(s)];
        mask[static_cast<size_t>(s)] = static_cast<uint8_t>(
            (v[0] ? kNone : 0) | (v[1] ? kOpen : 0) | (v[2] ? kClose : 0));
    }
    return mask;
}

}  // namespace

bool q1_query(const Mfa& m, int q, int p, const Label& c, bool contains) {
    if (!c.instruction())
        throw std::invalid_argument("q1_query takes an open/close instruction");
    std::vector<uint8_t> mask = last_reach(m, q, c.mem);
    uint8_t bit = (c.kind == LabelKind::Open) ? kOpen : kClose;
    uint8_t at = mask[static_cast<size_t>(p)];
    return contains ? (at & bit) != 0 : (at & ~bit & 7) != 0;
}

MemSyncRelation compute_mem_sync(const Mfa& m, const ContractedTables& tables) {
    const int Q = m.stateCount;
    const int k = m.memoryCount;

    // profile[q][x][y-1]: achievable last-instruction-on-y values over all
    // contracted x-transitions leaving q
    std::vector<std::map<ConsKey, std::vector<uint8_t>>> profile(
        static_cast<size_t>(Q));
    for (int q = 0; q < Q; ++q) {
        std::vector<std::vector<uint8_t>> reach;  // per memory
        reach.reserve(static_cast<size_t>(k));
        for (int y = 1; y <= k; ++y) reach.push_back(last_reach(m, q, y));
        for (int p : tables.epsClosure[static_cast<size_t>(q)]) {
            for (int ti : m.out[static_cast<size_t>(p)]) {
                const Transition& t = m.transitions[static_cast<size_t>(ti)];
                if (!t.label.consuming()) continue;
                auto& masks = profile[static_cast<size_t>(q)]
                                     [ConsKey::of(t.label)];
                if (masks.empty())
                    masks.assign(static_cast<size_t>(k), 0);
                for (int y = 1; y <= k; ++y)
                    masks[static_cast<size_t>(y) - 1] |=
                        reach[static_cast<size_t>(y) - 1]
                             [static_cast<size_t>(p)];
            }
        }
    }

    MemSyncRelation ms;
    ms.sync.assign(static_cast<size_t>(Q),
                   std::vector<bool>(static_cast<size_t>(Q), true));
    for (int q1 = 0; q1 < Q; ++q1) {
        for (int q2 = q1; q2 < Q; ++q2) {
            bool ok = true;
            const auto& prof1 = profile[static_cast<size_t>(q1)];
            const auto& prof2 = profile[static_cast<size_t>(q2)];
            // condition 1: shared consuming labels must admit a unique
            // instruction effect across both states
            for (const auto& [key, masks1] : prof1) {
                auto it = prof2.find(key);
                if (it == prof2.end()) continue;
                for (int y = 0; y < k && ok; ++y) {
                    uint8_t u = masks1[static_cast<size_t>(y)] |
                                it->second[static_cast<size_t>(y)];
                    if (__builtin_popcount(u) >= 2) ok = false;
                }
                if (!ok) break;
            }
            // condition 2: a contracted recall transition forbids any other
            // consuming behavior at the partner state
            if (ok) {
                auto checkRecalls = [&](const auto& a, const auto& b) {
                    for (const auto& [keyA, masksA] : a) {
                        if (!keyA.is_recall()) continue;
                        for (const auto& [keyB, masksB] : b)
                            if (!(keyB == keyA)) return false;
                    }
                    return true;
                };
                ok = checkRecalls(prof1, prof2) && checkRecalls(prof2, prof1);
            }
            ms.sync[static_cast<size_t>(q1)][static_cast<size_t>(q2)] = ok;
            ms.sync[static_cast<size_t>(q2)][static_cast<size_t>(q1)] = ok;
        }
    }
    return ms;
}

std::optional<NsbWitness> find_non_sync_branch(const Mfa& m,
                                               const ContractedTables& tables,
                                               const MemSyncRelation& ms) {
    const int Q = m.stateCount;
    for (int q = 0; q < Q; ++q) {
        // all state pairs reachable from (q, q) by contracted computations
        // over the same consuming-label words
        std::vector<std::vector<bool>> visited(
            static_cast<size_t>(Q),
            std::vector<bool>(static_cast<size_t>(Q), false));
        std::deque<std::pair<int, int>> queue;
        visited[static_cast<size_t>(q)][static_cast<size_t>(q)] = true;
        queue.push_back({q, q});
        while (!queue.empty()) {
            auto [p1, p2] = queue.front();
            queue.pop_front();
            if (!ms.get(p1, p2)) return NsbWitness{q, p1, p2};
            const auto& cols1 = tables.byState[static_cast<size_t>(p1)];
            const auto& cols2 = tables.byState[static_cast<size_t>(p2)];
            for (const auto& [key, col1] : cols1) {
                auto it = cols2.find(key);
                if (it == cols2.end()) continue;
                for (int t1 : col1.targets)
                    for (int t2 : it->second.targets)
                        if (!visited[static_cast<size_t>(t1)]
                                    [static_cast<size_t>(t2)]) {
                            visited[static_cast<size_t>(t1)]
                                   [static_cast<size_t>(t2)] = true;
                            queue.push_back({t1, t2});
                        }
            }
        }
    }
    return std::nullopt;
}

bool has_non_sync_branch(const Mfa& m, const ContractedTables& tables,
                         const MemSyncRelation& ms) {
    return find_non_sync_branch(m, tables, ms).has_value();
}

bool is_memory_deterministic(const Mfa& m) {
    ContractedTables tables = build_contracted_tables(m);
    MemSyncRelation ms = compute_mem_sync(m, tables);
    return !has_non_sync_branch(m, tables, ms);
}

bool is_mdet_regex(const RegexAst& ast) {
    return is_memory_deterministic(build_crude_automaton(ast));
}

namespace {

struct ConfigLess {
    bool operator()(const Configuration& a, const Configuration& b) const {
        if (a.state != b.state) return a.state < b.state;
        if (a.pos != b.pos) return a.pos < b.pos;
        for (size_t i = 0; i < a.mems.size(); ++i) {
            const auto& x = a.mems[i];
            const auto& y = b.mems[i];
            if (x.open != y.open) return x.open < y.open;
            if (x.lo != y.lo) return x.lo < y.lo;
            if (x.hi != y.hi) return x.hi < y.hi;
        }
        return false;
    }
};

// All contracted successors of a configuration: non-consuming closure with
// instruction effects applied, then one consuming step.
void contracted_successors(const Mfa& m, const Word& w, const Configuration& c,
                           long long& budget,
                           std::set<Configuration, ConfigLess>& out) {
    std::set<Configuration, ConfigLess> closure;
    std::deque<Configuration> queue;
    Configuration start = c;
    closure.insert(start);
    queue.push_back(std::move(start));
    while (!queue.empty()) {
        Configuration cur = std::move(queue.front());
        queue.pop_front();
        if (--budget < 0)
            throw BudgetExceeded("bounded_sync_check budget exceeded");
        for (int ti : m.out[static_cast<size_t>(cur.state)]) {
            const Transition& t = m.transitions[static_cast<size_t>(ti)];
            auto next = step(m, w, cur, ti);
            if (!next) continue;
            if (t.label.consuming()) {
                out.insert(*next);
            } else if (closure.insert(*next).second) {
                queue.push_back(std::move(*next));
            }
        }
    }
}

bool differ_beyond_state(const Configuration& a, const Configuration& b) {
    return a.pos != b.pos || a.mems != b.mems;
}

std::optional<SyncViolation> check_word(const Mfa& m, const Word& w,
                                        long long& budget) {
    std::set<Configuration, ConfigLess> level;
    level.insert(initial_configuration(m));
    const long long maxSteps =
        (static_cast<long long>(w.size()) + 2) * (m.stateCount + 2);
    for (long long stepIdx = 0; !level.empty() && stepIdx <= maxSteps;
         ++stepIdx) {
        // two same-step configurations must agree on everything but the state
        const Configuration* first = nullptr;
        for (const auto& c : level) {
            if (first && differ_beyond_state(*first, c))
                return SyncViolation{w, static_cast<int>(stepIdx), *first, c};
            if (!first) first = &c;
        }
        std::set<Configuration, ConfigLess> next;
        for (const auto& c : level)
            contracted_successors(m, w, c, budget, next);
        level = std::move(next);
    }
    return std::nullopt;
}

std::optional<SyncViolation> enum_words(const Mfa& m,
                                        const std::vector<Symbol>& alphabet,
                                        Word& prefix, int maxlen,
                                        long long& budget) {
    if (auto v = check_word(m, prefix, budget)) return v;
    if (static_cast<int>(prefix.size()) == maxlen) return std::nullopt;
    for (const auto& s : alphabet) {
        prefix.push_back(s);
        auto v = enum_words(m, alphabet, prefix, maxlen, budget);
        prefix.pop_back();
        if (v) return v;
    }
    return std::nullopt;
}

}  // namespace

std::optional<SyncViolation> bounded_sync_check(const Mfa& m, int maxlen,
                                                long long budget) {
    std::vector<Symbol> alphabet = m.alphabet();
    Word prefix;
    return enum_words(m, alphabet, prefix, maxlen, budget);
}

}  // namespace rxm
