#include "rxm/avd.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>

namespace rxm {

VarReachability compute_reachability(const Mfa& m) {
    VarReachability r;
    const int k = m.memoryCount;
    const size_t Q = static_cast<size_t>(m.stateCount);
    r.pre.assign(static_cast<size_t>(k), std::vector<bool>(Q, false));
    r.post.assign(static_cast<size_t>(k), std::vector<bool>(Q, false));
    r.active.assign(Q, {});

    // reverse adjacency (transition indices)
    std::vector<std::vector<int>> rev(Q);
    for (size_t ti = 0; ti < m.transitions.size(); ++ti)
        rev[static_cast<size_t>(m.transitions[ti].to)].push_back(
            static_cast<int>(ti));

    for (int x = 1; x <= k; ++x) {
        // pre: forward BFS over (state, seen-open-of-x)
        {
            std::vector<std::array<bool, 2>> visited(Q, {false, false});
            std::deque<std::pair<int, int>> queue;
            visited[static_cast<size_t>(m.initial)][0] = true;
            queue.push_back({m.initial, 0});
            while (!queue.empty()) {
                auto [q, phase] = queue.front();
                queue.pop_front();
                for (int ti : m.out[static_cast<size_t>(q)]) {
                    const Transition& t =
                        m.transitions[static_cast<size_t>(ti)];
                    int np = phase;
                    if (t.label.kind == LabelKind::Open && t.label.mem == x)
                        np = 1;
                    if (!visited[static_cast<size_t>(t.to)]
                                [static_cast<size_t>(np)]) {
                        visited[static_cast<size_t>(t.to)]
                               [static_cast<size_t>(np)] = true;
                        queue.push_back({t.to, np});
                    }
                }
            }
            for (size_t q = 0; q < Q; ++q)
                r.pre[static_cast<size_t>(x) - 1][q] = visited[q][1];
        }
        // post: reverse reachability to recall(x) sources, avoiding o(x) edges
        {
            std::vector<bool> visited(Q, false);
            std::deque<int> queue;
            for (const auto& t : m.transitions)
                if (t.label.kind == LabelKind::Recall && t.label.mem == x &&
                    !visited[static_cast<size_t>(t.from)]) {
                    visited[static_cast<size_t>(t.from)] = true;
                    queue.push_back(t.from);
                }
            while (!queue.empty()) {
                int q = queue.front();
                queue.pop_front();
                for (int ti : rev[static_cast<size_t>(q)]) {
                    const Transition& t =
                        m.transitions[static_cast<size_t>(ti)];
                    if (t.label.kind == LabelKind::Open && t.label.mem == x)
                        continue;
                    if (!visited[static_cast<size_t>(t.from)]) {
                        visited[static_cast<size_t>(t.from)] = true;
                        queue.push_back(t.from);
                    }
                }
            }
            for (size_t q = 0; q < Q; ++q)
                r.post[static_cast<size_t>(x) - 1][q] = visited[q];
        }
    }
    for (size_t q = 0; q < Q; ++q)
        for (int x = 1; x <= k; ++x)
            if (r.pre[static_cast<size_t>(x) - 1][q] &&
                r.post[static_cast<size_t>(x) - 1][q])
                r.active[q].insert(x);
    return r;
}

AvdReport avd_report(const RegexAst& ast) {
    AvdReport rep;
    rep.mfa = build_crude_automaton(ast);
    rep.reach = compute_reachability(rep.mfa);
    for (int q = 0; q < rep.mfa.stateCount; ++q) {
        int node = rep.mfa.originNode[static_cast<size_t>(q)];
        if (node < 0 || rep.mfa.originTag[static_cast<size_t>(q)] != StateTag::In)
            continue;
        // is this node the child of a variable definition? its in-state has an
        // incoming open edge from the definition's in-state.
        bool defChild = false;
        for (const auto& t : rep.mfa.transitions)
            if (t.to == q && t.label.kind == LabelKind::Open) defChild = true;
        if (!defChild) continue;
        rep.activeAtDefChild[node] = rep.reach.active[static_cast<size_t>(q)];
        rep.avd = std::max(
            rep.avd,
            static_cast<int>(rep.reach.active[static_cast<size_t>(q)].size()));
    }
    return rep;
}

int avd(const RegexAst& ast) { return avd_report(ast).avd; }

namespace {

// Is there one path from the initial state to q that opens every variable in
// the mask's set at least once?
bool jointly_realizable(const Mfa& m, int q, const std::vector<int>& ys) {
    const size_t nbits = ys.size();
    const unsigned full = (1u << nbits) - 1u;
    std::vector<std::vector<bool>> visited(
        static_cast<size_t>(m.stateCount),
        std::vector<bool>(static_cast<size_t>(1u << nbits), false));
    std::deque<std::pair<int, unsigned>> queue;
    visited[static_cast<size_t>(m.initial)][0] = true;
    queue.push_back({m.initial, 0});
    while (!queue.empty()) {
        auto [s, mask] = queue.front();
        queue.pop_front();
        if (s == q && mask == full) return true;
        for (int ti : m.out[static_cast<size_t>(s)]) {
            const Transition& t = m.transitions[static_cast<size_t>(ti)];
            unsigned nm = mask;
            if (t.label.kind == LabelKind::Open)
                for (size_t i = 0; i < nbits; ++i)
                    if (ys[i] == t.label.mem) nm |= 1u << i;
            if (!visited[static_cast<size_t>(t.to)][nm]) {
                visited[static_cast<size_t>(t.to)][nm] = true;
                queue.push_back({t.to, nm});
            }
        }
    }
    return false;
}

}  // namespace

int savd_bruteforce(const RegexAst& ast) {
    if (ast.var_count() > 12)
        throw BudgetExceeded("savd brute force capped at 12 variables");
    AvdReport rep = avd_report(ast);
    const Mfa& m = rep.mfa;
    int best = 0;
    for (int q = 0; q < m.stateCount; ++q) {
        int node = m.originNode[static_cast<size_t>(q)];
        if (node < 0 || m.originTag[static_cast<size_t>(q)] != StateTag::In)
            continue;
        bool defChild = false;
        for (const auto& t : m.transitions)
            if (t.to == q && t.label.kind == LabelKind::Open) defChild = true;
        if (!defChild) continue;
        std::vector<int> act(rep.reach.active[static_cast<size_t>(q)].begin(),
                             rep.reach.active[static_cast<size_t>(q)].end());
        const size_t nbits = act.size();
        // subsets by descending size so the prune kicks in early
        std::vector<unsigned> subsets;
        for (unsigned mask = 0; mask < (1u << nbits); ++mask)
            subsets.push_back(mask);
        std::sort(subsets.begin(), subsets.end(), [](unsigned a, unsigned b) {
            return __builtin_popcount(a) > __builtin_popcount(b);
        });
        for (unsigned mask : subsets) {
            int size = __builtin_popcount(mask);
            if (size <= best) break;
            std::vector<int> ys;
            for (size_t i = 0; i < nbits; ++i)
                if (mask & (1u << i)) ys.push_back(act[i]);
            if (jointly_realizable(m, q, ys)) {
                best = size;
                break;
            }
        }
    }
    return best;
}

Mfa build_reuse_mfa(const RegexAst& ast, int k) {
    Mfa canonical = build_crude_automaton(ast);
    {
        AvdReport rep = avd_report(ast);
        if (rep.avd > k)
            throw std::invalid_argument(
                "active variable degree " + std::to_string(rep.avd) +
                " exceeds requested memory count " + std::to_string(k));
    }
    VarReachability reach = compute_reachability(canonical);

    Mfa out;
    out.memoryCount = k;
    using Key = std::pair<int, std::vector<int>>;  // (canonical state, slots)
    std::map<Key, int> ids;
    std::deque<Key> queue;

    auto scrub = [&](int p, std::vector<int> L) {
        for (auto& v : L)
            if (v != 0 && !reach.post[static_cast<size_t>(v) - 1]
                                     [static_cast<size_t>(p)])
                v = 0;
        return L;
    };
    auto get_state = [&](const Key& key) {
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = out.add_state();
        ids.emplace(key, id);
        if (canonical.is_accepting(key.first)) out.accepting.push_back(id);
        queue.push_back(key);
        return id;
    };

    Key start{canonical.initial,
              scrub(canonical.initial, std::vector<int>(
                                           static_cast<size_t>(k), 0))};
    out.initial = get_state(start);
    while (!queue.empty()) {
        Key key = std::move(queue.front());
        queue.pop_front();
        int id = ids[key];
        const auto& [q, L] = key;
        for (int ti : canonical.out[static_cast<size_t>(q)]) {
            const Transition& t = canonical.transitions[static_cast<size_t>(ti)];
            Label label = Label::eps();
            std::vector<int> newL = L;
            switch (t.label.kind) {
                case LabelKind::Eps:
                    break;
                case LabelKind::Char:
                    label = t.label;
                    break;
                case LabelKind::Recall: {
                    for (size_t s = 0; s < newL.size(); ++s)
                        if (newL[s] == t.label.mem)
                            label = Label::recall(static_cast<int>(s) + 1);
                    break;  // no slot: the variable is undefined, epsilon
                }
                case LabelKind::Open: {
                    int slot = -1;
                    for (size_t s = 0; s < newL.size(); ++s)
                        if (newL[s] == t.label.mem) slot = static_cast<int>(s);
                    if (slot < 0)
                        for (size_t s = 0; s < newL.size(); ++s)
                            if (newL[s] == 0) {
                                slot = static_cast<int>(s);
                                break;
                            }
                    if (slot >= 0) {
                        label = Label::open(slot + 1);
                        newL[static_cast<size_t>(slot)] = t.label.mem;
                    }  // no free slot: ignore the open
                    break;
                }
                case LabelKind::Close: {
                    for (size_t s = 0; s < newL.size(); ++s)
                        if (newL[s] == t.label.mem)
                            label = Label::close(static_cast<int>(s) + 1);
                    break;  // no slot: epsilon
                }
            }
            newL = scrub(t.to, std::move(newL));
            // no variable may occupy two slots
            for (size_t a = 0; a < newL.size(); ++a)
                for (size_t b = a + 1; b < newL.size(); ++b)
                    if (newL[a] != 0 && newL[a] == newL[b])
                        throw std::logic_error(
                            "duplicate variable in memory slot list");
            int target = get_state({t.to, std::move(newL)});
            out.add_edge(id, label, target);
        }
    }
    out.check();
    return out;
}

}  // namespace rxm
