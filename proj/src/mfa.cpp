#include "rxm/mfa.hpp"

#include <cassert>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace rxm {

std::string Label::str() const {
    switch (kind) {
        case LabelKind::Char:
            return sym;
        case LabelKind::Eps:
            return "eps";
        case LabelKind::Recall:
            return "recall(" + std::to_string(mem) + ")";
        case LabelKind::Open:
            return "o(" + std::to_string(mem) + ")";
        case LabelKind::Close:
            return "c(" + std::to_string(mem) + ")";
    }
    return "?";
}

int Mfa::add_state() {
    out.emplace_back();
    originNode.push_back(-1);
    originTag.push_back(StateTag::None);
    return stateCount++;
}

void Mfa::add_edge(int from, Label label, int to) {
    out[static_cast<size_t>(from)].push_back(
        static_cast<int>(transitions.size()));
    transitions.push_back({from, std::move(label), to});
}

bool Mfa::is_accepting(int q) const {
    for (int f : accepting)
        if (f == q) return true;
    return false;
}

std::vector<Symbol> Mfa::alphabet() const {
    std::set<Symbol> syms;
    for (const auto& t : transitions)
        if (t.label.kind == LabelKind::Char) syms.insert(t.label.sym);
    return {syms.begin(), syms.end()};
}

void Mfa::check() const {
    auto stateOk = [&](int q) { return q >= 0 && q < stateCount; };
    if (!stateOk(initial)) throw std::runtime_error("initial state out of range");
    for (int f : accepting)
        if (!stateOk(f)) throw std::runtime_error("accepting state out of range");
    for (const auto& t : transitions) {
        if (!stateOk(t.from) || !stateOk(t.to))
            throw std::runtime_error("transition endpoint out of range");
        if ((t.label.kind == LabelKind::Recall ||
             t.label.kind == LabelKind::Open ||
             t.label.kind == LabelKind::Close) &&
            (t.label.mem < 1 || t.label.mem > memoryCount))
            throw std::runtime_error("memory index out of range");
        if (t.label.kind == LabelKind::Char && t.label.sym.empty())
            throw std::runtime_error("char transition without symbol");
    }
}

Configuration initial_configuration(const Mfa& m) {
    Configuration c;
    c.state = m.initial;
    c.pos = 0;
    c.mems.assign(static_cast<size_t>(m.memoryCount), MemEntry{});
    return c;
}

std::optional<Configuration> step(const Mfa& m, const Word& w,
                                  const Configuration& c, int transition) {
    const Transition& t = m.transitions[static_cast<size_t>(transition)];
    assert(t.from == c.state);
    Configuration next = c;
    next.state = t.to;
    const int n = static_cast<int>(w.size());
    switch (t.label.kind) {
        case LabelKind::Eps:
            break;
        case LabelKind::Char: {
            if (c.pos >= n || w[static_cast<size_t>(c.pos)] != t.label.sym)
                return std::nullopt;
            next.pos = c.pos + 1;
            break;
        }
        case LabelKind::Recall: {
            const MemEntry& e = c.mems[static_cast<size_t>(t.label.mem) - 1];
            if (e.open) return std::nullopt;
            int len = e.hi - e.lo;
            if (c.pos + len > n) return std::nullopt;
            for (int i = 0; i < len; ++i)
                if (w[static_cast<size_t>(e.lo + i)] !=
                    w[static_cast<size_t>(c.pos + i)])
                    return std::nullopt;
            next.pos = c.pos + len;
            break;
        }
        case LabelKind::Open: {
            MemEntry& e = next.mems[static_cast<size_t>(t.label.mem) - 1];
            e.open = true;
            e.lo = e.hi = c.pos;
            break;
        }
        case LabelKind::Close: {
            MemEntry& e = next.mems[static_cast<size_t>(t.label.mem) - 1];
            e.open = false;
            break;
        }
    }
    if (next.pos != c.pos) {
        for (auto& e : next.mems)
            if (e.open) e.hi = next.pos;
    }
    // open memories always extend to the consumption point
    for (const auto& e : next.mems) {
        (void)e;
        assert(!e.open || e.hi == next.pos);
    }
    return next;
}

namespace {

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

std::vector<int> encode(const Configuration& c) {
    std::vector<int> v;
    v.reserve(2 + c.mems.size() * 3);
    v.push_back(c.state);
    v.push_back(c.pos);
    for (const auto& e : c.mems) {
        v.push_back(e.open ? 1 : 0);
        v.push_back(e.lo);
        v.push_back(e.hi);
    }
    return v;
}

}  // namespace

bool mfa_accepts(const Mfa& m, const Word& w, long long budget) {
    const int n = static_cast<int>(w.size());
    std::unordered_set<std::vector<int>, VecHash> visited;
    std::deque<Configuration> queue;
    Configuration start = initial_configuration(m);
    visited.insert(encode(start));
    queue.push_back(std::move(start));
    while (!queue.empty()) {
        Configuration c = std::move(queue.front());
        queue.pop_front();
        if (c.pos == n && m.is_accepting(c.state)) return true;
        for (int ti : m.out[static_cast<size_t>(c.state)]) {
            auto next = step(m, w, c, ti);
            if (!next) continue;
            auto key = encode(*next);
            if (visited.count(key)) continue;
            if (static_cast<long long>(visited.size()) >= budget)
                throw BudgetExceeded("configuration budget exceeded");
            visited.insert(std::move(key));
            queue.push_back(std::move(*next));
        }
    }
    return false;
}

namespace {

struct NodeStates {
    int in = -1, inter = -1, out = -1;
};

}  // namespace

Mfa build_crude_automaton(const RegexAst& ast) {
    Mfa m;
    m.memoryCount = ast.var_count();
    std::vector<NodeStates> st(ast.nodes.size());
    // states only for nodes reachable from the root
    std::vector<int> order;
    {
        std::vector<int> stack = {ast.root};
        while (!stack.empty()) {
            int id = stack.back();
            stack.pop_back();
            order.push_back(id);
            const AstNode& n = ast.at(id);
            for (int c : n.child)
                if (c >= 0) stack.push_back(c);
        }
    }
    for (int id : order) {
        auto& s = st[static_cast<size_t>(id)];
        s.in = m.add_state();
        m.originNode[static_cast<size_t>(s.in)] = id;
        m.originTag[static_cast<size_t>(s.in)] = StateTag::In;
        if (ast.at(id).kind == NodeKind::Concat) {
            s.inter = m.add_state();
            m.originNode[static_cast<size_t>(s.inter)] = id;
            m.originTag[static_cast<size_t>(s.inter)] = StateTag::Inter;
        }
        s.out = m.add_state();
        m.originNode[static_cast<size_t>(s.out)] = id;
        m.originTag[static_cast<size_t>(s.out)] = StateTag::Out;
    }
    for (int id : order) {
        const AstNode& n = ast.at(id);
        const auto& s = st[static_cast<size_t>(id)];
        switch (n.kind) {
            case NodeKind::Literal:
                m.add_edge(s.in, Label::ch(n.sym), s.out);
                break;
            case NodeKind::Epsilon:
                m.add_edge(s.in, Label::eps(), s.out);
                break;
            case NodeKind::VarRecall:
                m.add_edge(s.in, Label::recall(n.var), s.out);
                break;
            case NodeKind::Concat: {
                const auto& r = st[static_cast<size_t>(n.child[0])];
                const auto& q = st[static_cast<size_t>(n.child[1])];
                m.add_edge(s.in, Label::eps(), r.in);
                m.add_edge(r.out, Label::eps(), s.inter);
                m.add_edge(s.inter, Label::eps(), q.in);
                m.add_edge(q.out, Label::eps(), s.out);
                break;
            }
            case NodeKind::Alt: {
                const auto& r = st[static_cast<size_t>(n.child[0])];
                const auto& q = st[static_cast<size_t>(n.child[1])];
                m.add_edge(s.in, Label::eps(), r.in);
                m.add_edge(s.in, Label::eps(), q.in);
                m.add_edge(r.out, Label::eps(), s.out);
                m.add_edge(q.out, Label::eps(), s.out);
                break;
            }
            case NodeKind::Plus: {
                const auto& r = st[static_cast<size_t>(n.child[0])];
                m.add_edge(s.in, Label::eps(), r.in);
                m.add_edge(r.out, Label::eps(), s.out);
                m.add_edge(s.out, Label::eps(), s.in);
                break;
            }
            case NodeKind::VarDef: {
                const auto& r = st[static_cast<size_t>(n.child[0])];
                m.add_edge(s.in, Label::open(n.var), r.in);
                m.add_edge(r.out, Label::close(n.var), s.out);
                break;
            }
        }
    }
    m.initial = st[static_cast<size_t>(ast.root)].in;
    m.accepting = {st[static_cast<size_t>(ast.root)].out};
    m.check();
    return m;
}

int state_of(const Mfa& m, int node, StateTag tag) {
    for (int q = 0; q < m.stateCount; ++q)
        if (m.originNode[static_cast<size_t>(q)] == node &&
            m.originTag[static_cast<size_t>(q)] == tag)
            return q;
    return -1;
}

bool nfa_view_accepts(const Mfa& m, const std::vector<Label>& labelWord) {
    const int n = static_cast<int>(labelWord.size());
    std::set<std::pair<int, int>> visited;
    std::deque<std::pair<int, int>> queue;
    queue.push_back({m.initial, 0});
    visited.insert({m.initial, 0});
    while (!queue.empty()) {
        auto [q, i] = queue.front();
        queue.pop_front();
        if (i == n && m.is_accepting(q)) return true;
        for (int ti : m.out[static_cast<size_t>(q)]) {
            const Transition& t = m.transitions[static_cast<size_t>(ti)];
            int ni;
            if (t.label.kind == LabelKind::Eps) {
                ni = i;
            } else if (i < n && t.label == labelWord[static_cast<size_t>(i)]) {
                ni = i + 1;
            } else {
                continue;
            }
            if (visited.insert({t.to, ni}).second) queue.push_back({t.to, ni});
        }
    }
    return false;
}

namespace {

std::set<int> eps_closure_states(const Mfa& m, const std::set<int>& from) {
    std::set<int> out = from;
    std::deque<int> queue(from.begin(), from.end());
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int ti : m.out[static_cast<size_t>(q)]) {
            const Transition& t = m.transitions[static_cast<size_t>(ti)];
            if (t.label.kind == LabelKind::Eps && out.insert(t.to).second)
                queue.push_back(t.to);
        }
    }
    return out;
}

void enumerate_rec(const Mfa& m, const std::set<int>& states,
                   std::vector<Label>& prefix, int maxlen, long long& budget,
                   std::vector<std::vector<Label>>& out) {
    if (--budget < 0) throw BudgetExceeded("nfa_view_language budget exceeded");
    for (int q : states)
        if (m.is_accepting(q)) {
            out.push_back(prefix);
            break;
        }
    if (static_cast<int>(prefix.size()) == maxlen) return;
    // collect candidate letters leaving the current state set
    std::vector<Label> letters;
    for (int q : states)
        for (int ti : m.out[static_cast<size_t>(q)]) {
            const Label& l = m.transitions[static_cast<size_t>(ti)].label;
            if (l.kind == LabelKind::Eps) continue;
            bool seen = false;
            for (const auto& x : letters)
                if (x == l) seen = true;
            if (!seen) letters.push_back(l);
        }
    for (const auto& l : letters) {
        std::set<int> next;
        for (int q : states)
            for (int ti : m.out[static_cast<size_t>(q)]) {
                const Transition& t = m.transitions[static_cast<size_t>(ti)];
                if (t.label == l) next.insert(t.to);
            }
        next = eps_closure_states(m, next);
        prefix.push_back(l);
        enumerate_rec(m, next, prefix, maxlen, budget, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<std::vector<Label>> nfa_view_language(const Mfa& m, int maxlen,
                                                  long long budget) {
    std::vector<std::vector<Label>> out;
    std::vector<Label> prefix;
    std::set<int> start = eps_closure_states(m, {m.initial});
    enumerate_rec(m, start, prefix, maxlen, budget, out);
    return out;
}

std::string export_json(const Mfa& m) {
    nlohmann::json j;
    j["memoryCount"] = m.memoryCount;
    j["initial"] = m.initial;
    j["accepting"] = m.accepting;
    j["states"] = m.stateCount;
    auto& arr = j["transitions"] = nlohmann::json::array();
    for (const auto& t : m.transitions) {
        nlohmann::json e;
        e["from"] = t.from;
        e["to"] = t.to;
        nlohmann::json lab;
        switch (t.label.kind) {
            case LabelKind::Char:
                lab["kind"] = "char";
                lab["sym"] = t.label.sym;
                break;
            case LabelKind::Eps:
                lab["kind"] = "eps";
                break;
            case LabelKind::Recall:
                lab["kind"] = "recall";
                lab["mem"] = t.label.mem;
                break;
            case LabelKind::Open:
                lab["kind"] = "open";
                lab["mem"] = t.label.mem;
                break;
            case LabelKind::Close:
                lab["kind"] = "close";
                lab["mem"] = t.label.mem;
                break;
        }
        e["label"] = std::move(lab);
        arr.push_back(std::move(e));
    }
    return j.dump(2);
}

Mfa import_json(const std::string& doc) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(doc);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("invalid JSON: ") + e.what());
    }
    Mfa m;
    try {
        int states = j.at("states").get<int>();
        if (states < 0) throw std::runtime_error("negative state count");
        for (int i = 0; i < states; ++i) m.add_state();
        m.memoryCount = j.at("memoryCount").get<int>();
        if (m.memoryCount < 0) throw std::runtime_error("negative memoryCount");
        m.initial = j.at("initial").get<int>();
        m.accepting = j.at("accepting").get<std::vector<int>>();
        for (const auto& e : j.at("transitions")) {
            int from = e.at("from").get<int>();
            int to = e.at("to").get<int>();
            const auto& lab = e.at("label");
            std::string kind = lab.at("kind").get<std::string>();
            Label l;
            if (kind == "char") {
                l = Label::ch(lab.at("sym").get<std::string>());
            } else if (kind == "eps") {
                l = Label::eps();
            } else if (kind == "recall") {
                l = Label::recall(lab.at("mem").get<int>());
            } else if (kind == "open") {
                l = Label::open(lab.at("mem").get<int>());
            } else if (kind == "close") {
                l = Label::close(lab.at("mem").get<int>());
            } else {
                throw std::runtime_error("unknown label kind '" + kind + "'");
            }
            if (from < 0 || from >= states || to < 0 || to >= states)
                throw std::runtime_error("transition endpoint out of range");
            m.add_edge(from, l, to);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("schema violation: ") + e.what());
    }
    m.check();
    return m;
}

std::string export_dot(const Mfa& m) {
    std::ostringstream os;
    os << "digraph mfa {\n  rankdir=LR;\n  __start [shape=point];\n";
    for (int q = 0; q < m.stateCount; ++q) {
        os << "  q" << q << " [shape="
           << (m.is_accepting(q) ? "doublecircle" : "circle") << "];\n";
    }
    os << "  __start -> q" << m.initial << ";\n";
    for (const auto& t : m.transitions) {
        std::string lab;
        switch (t.label.kind) {
            case LabelKind::Char:
                lab = t.label.sym;
                break;
            case LabelKind::Eps:
                lab = "eps";
                break;
            case LabelKind::Recall:
                lab = "r" + std::to_string(t.label.mem);
                break;
            case LabelKind::Open:
                lab = "o" + std::to_string(t.label.mem);
                break;
            case LabelKind::Close:
                lab = "c" + std::to_string(t.label.mem);
                break;
        }
        os << "  q" << t.from << " -> q" << t.to << " [label=\"" << lab
           << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace rxm
