#include "rxm/oracle.hpp"

#include <deque>
#include <map>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace rxm {

Word dereference(const std::vector<Label>& refword) {
    std::map<int, Word> env;
    std::vector<std::pair<int, Word>> open;  // stack of open brackets
    Word out;
    auto emit = [&](const Word& piece) {
        for (const auto& s : piece) {
            out.push_back(s);
            for (auto& fr : open) fr.second.push_back(s);
        }
    };
    for (const auto& l : refword) {
        switch (l.kind) {
            case LabelKind::Eps:
                break;
            case LabelKind::Char:
                emit({l.sym});
                break;
            case LabelKind::Recall: {
                auto it = env.find(l.mem);
                if (it != env.end()) emit(it->second);
                break;
            }
            case LabelKind::Open:
                open.push_back({l.mem, {}});
                break;
            case LabelKind::Close: {
                if (open.empty() || open.back().first != l.mem)
                    throw std::runtime_error("malformed bracketing");
                env[l.mem] = std::move(open.back().second);
                open.pop_back();
                break;
            }
        }
    }
    if (!open.empty()) throw std::runtime_error("malformed bracketing");
    return out;
}

namespace {

// Continuations are hash-consed lists; -1 is the empty continuation.
enum ContKind { kMatch = 0, kClose = 1, kLoop = 2 };

struct ContNode {
    int kind, a, b, next;
};

struct ContStore {
    std::vector<ContNode> nodes;
    std::map<std::tuple<int, int, int, int>, int> dedup;

    int cons(int kind, int a, int b, int next) {
        auto key = std::make_tuple(kind, a, b, next);
        auto it = dedup.find(key);
        if (it != dedup.end()) return it->second;
        nodes.push_back({kind, a, b, next});
        int id = static_cast<int>(nodes.size()) - 1;
        dedup.emplace(key, id);
        return id;
    }
};

struct State {
    int cont;
    int pos;
    std::vector<int> env;  // 2 ints per variable, -1/-1 = undefined
};

struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

std::vector<int> encode(const State& s) {
    std::vector<int> v;
    v.reserve(2 + s.env.size());
    v.push_back(s.cont);
    v.push_back(s.pos);
    v.insert(v.end(), s.env.begin(), s.env.end());
    return v;
}

struct Matcher {
    const RegexAst& ast;
    const Word& w;
    const int n;
    ContStore store;

    Matcher(const RegexAst& a, const Word& word)
        : ast(a), w(word), n(static_cast<int>(word.size())) {}

    void expand(const State& s, std::vector<State>& out) {
        // copy: cons() below may reallocate the node pool
        const ContNode head = store.nodes[static_cast<size_t>(s.cont)];
        if (head.kind == kClose) {
            State next = s;
            next.cont = head.next;
            next.env[static_cast<size_t>(head.a - 1) * 2] = head.b;
            next.env[static_cast<size_t>(head.a - 1) * 2 + 1] = s.pos;
            out.push_back(std::move(next));
            return;
        }
        if (head.kind == kLoop) {
            const AstNode& plus = ast.at(head.a);
            State exit = s;
            exit.cont = head.next;
            out.push_back(std::move(exit));
            State again = s;
            again.cont =
                store.cons(kMatch, plus.child[0], 0,
                           store.cons(kLoop, head.a, 0, head.next));
            out.push_back(std::move(again));
            return;
        }
        const AstNode& node = ast.at(head.a);
        switch (node.kind) {
            case NodeKind::Literal: {
                if (s.pos < n && w[static_cast<size_t>(s.pos)] == node.sym) {
                    State next = s;
                    next.cont = head.next;
                    next.pos = s.pos + 1;
                    out.push_back(std::move(next));
                }
                break;
            }
            case NodeKind::Epsilon: {
                State next = s;
                next.cont = head.next;
                out.push_back(std::move(next));
                break;
            }
            case NodeKind::VarRecall: {
                int lo = s.env[static_cast<size_t>(node.var - 1) * 2];
                int hi = s.env[static_cast<size_t>(node.var - 1) * 2 + 1];
                int len = (lo < 0) ? 0 : hi - lo;
                if (s.pos + len > n) break;
                bool ok = true;
                for (int i = 0; i < len; ++i)
                    if (w[static_cast<size_t>(lo + i)] !=
                        w[static_cast<size_t>(s.pos + i)]) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    State next = s;
                    next.cont = head.next;
                    next.pos = s.pos + len;
                    out.push_back(std::move(next));
                }
                break;
            }
            case NodeKind::Concat: {
                State next = s;
                next.cont =
                    store.cons(kMatch, node.child[0], 0,
                               store.cons(kMatch, node.child[1], 0, head.next));
                out.push_back(std::move(next));
                break;
            }
            case NodeKind::Alt: {
                for (int i = 0; i < 2; ++i) {
                    State next = s;
                    next.cont = store.cons(kMatch, node.child[i], 0, head.next);
                    out.push_back(std::move(next));
                }
                break;
            }
            case NodeKind::Plus: {
                State next = s;
                next.cont =
                    store.cons(kMatch, node.child[0], 0,
                               store.cons(kLoop, head.a, 0, head.next));
                out.push_back(std::move(next));
                break;
            }
            case NodeKind::VarDef: {
                State next = s;
                next.cont =
                    store.cons(kMatch, node.child[0], 0,
                               store.cons(kClose, node.var, s.pos, head.next));
                out.push_back(std::move(next));
                break;
            }
        }
    }
};

}  // namespace

bool oracle_match(const RegexAst& ast, const Word& w, long long budget) {
    Matcher m(ast, w);
    const int n = static_cast<int>(w.size());
    State start;
    start.cont = m.store.cons(kMatch, ast.root, 0, -1);
    start.pos = 0;
    start.env.assign(static_cast<size_t>(ast.var_count()) * 2, -1);
    std::unordered_set<std::vector<int>, VecHash> visited;
    std::deque<State> queue;
    visited.insert(encode(start));
    queue.push_back(std::move(start));
    std::vector<State> succ;
    while (!queue.empty()) {
        State s = std::move(queue.front());
        queue.pop_front();
        if (s.cont == -1) {
            if (s.pos == n) return true;
            continue;
        }
        succ.clear();
        m.expand(s, succ);
        for (auto& next : succ) {
            auto key = encode(next);
            if (visited.count(key)) continue;
            if (static_cast<long long>(visited.size()) >= budget)
                throw BudgetExceeded("oracle state budget exceeded");
            visited.insert(std::move(key));
            queue.push_back(std::move(next));
        }
    }
    return false;
}

namespace {

void enum_words(const RegexAst& ast, const std::vector<Symbol>& alphabet,
                int maxlen, Word& prefix, long long oracleBudget,
                long long& wordBudget, std::set<Word>& out) {
    if (--wordBudget < 0)
        throw BudgetExceeded("enumeration budget exceeded");
    if (oracle_match(ast, prefix, oracleBudget)) out.insert(prefix);
    if (static_cast<int>(prefix.size()) == maxlen) return;
    for (const auto& s : alphabet) {
        prefix.push_back(s);
        enum_words(ast, alphabet, maxlen, prefix, oracleBudget, wordBudget, out);
        prefix.pop_back();
    }
}

}  // namespace

std::set<Word> enumerate_language(const RegexAst& ast, int maxlen,
                                  const std::vector<Symbol>& alphabet,
                                  long long budget) {
    std::set<Word> out;
    Word prefix;
    long long wordBudget = budget;
    enum_words(ast, alphabet, maxlen, prefix, budget, wordBudget, out);
    return out;
}

}  // namespace rxm
