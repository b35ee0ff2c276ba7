#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rxm/syntax.hpp"

namespace rxm {

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what)
        : std::runtime_error(what) {}
};

enum class LabelKind { Char, Eps, Recall, Open, Close };

struct Label {
    LabelKind kind = LabelKind::Eps;
    Symbol sym;   // Char
    int mem = 0;  // Recall/Open/Close, 1-based

    static Label ch(const Symbol& s) { return {LabelKind::Char, s, 0}; }
    static Label eps() { return {LabelKind::Eps, {}, 0}; }
    static Label recall(int m) { return {LabelKind::Recall, {}, m}; }
    static Label open(int m) { return {LabelKind::Open, {}, m}; }
    static Label close(int m) { return {LabelKind::Close, {}, m}; }

    bool consuming() const {
        return kind == LabelKind::Char || kind == LabelKind::Recall;
    }
    bool instruction() const {
        return kind == LabelKind::Open || kind == LabelKind::Close;
    }
    bool operator==(const Label& o) const {
        return kind == o.kind && sym == o.sym && mem == o.mem;
    }
    std::string str() const;
};

struct Transition {
    int from;
    Label label;
    int to;
};

// Origin annotation for canonical automata: which syntax-tree node a state
// belongs to and its role within that node.
enum class StateTag : uint8_t { In, Inter, Out, None };

struct Mfa {
    int stateCount = 0;
    int memoryCount = 0;
    int initial = 0;
    std::vector<int> accepting;
    std::vector<Transition> transitions;
    std::vector<std::vector<int>> out;  // state -> indices into transitions

    // Optional, populated by build_crude_automaton.
    std::vector<int> originNode;        // state -> ast node, -1 if unknown
    std::vector<StateTag> originTag;

    int add_state();
    void add_edge(int from, Label label, int to);
    bool is_accepting(int q) const;
    // Distinct Char symbols appearing on transitions, sorted.
    std::vector<Symbol> alphabet() const;
    void check() const;  // invariant check, throws on violation
};

struct MemEntry {
    bool open = false;
    int lo = 0, hi = 0;  // content = w[lo..hi)
    bool operator==(const MemEntry& o) const {
        return open == o.open && lo == o.lo && hi == o.hi;
    }
};

struct Configuration {
    int state = 0;
    int pos = 0;  // remaining input = w[pos..]
    std::vector<MemEntry> mems;
    bool operator==(const Configuration& o) const {
        return state == o.state && pos == o.pos && mems == o.mems;
    }
};

Configuration initial_configuration(const Mfa& m);

// Applies one raw transition; nullopt when the label's precondition fails.
std::optional<Configuration> step(const Mfa& m, const Word& w,
                                  const Configuration& c, int transition);

// BFS over the configuration graph.
bool mfa_accepts(const Mfa& m, const Word& w, long long budget = 10'000'000);

// Canonical automaton of a regex: per-node in/(inter)/out states with the
// standard edge wiring; open/close instructions on the edges the definition
// node contributes. Initial = root in-state, accepting = {root out-state}.
Mfa build_crude_automaton(const RegexAst& ast);
inline Mfa canonical_mfa(const RegexAst& ast) {
    return build_crude_automaton(ast);
}

// State lookup by origin (canonical automata only); -1 when absent.
int state_of(const Mfa& m, int node, StateTag tag);

// Reads the same graph as a classical NFA whose letters are the full labels
// (memory instructions and recalls are plain symbols, Eps is the only
// epsilon). True iff the label word is accepted.
bool nfa_view_accepts(const Mfa& m, const std::vector<Label>& labelWord);

// Enumerates the NFA-view language up to the given label-word length.
std::vector<std::vector<Label>> nfa_view_language(const Mfa& m, int maxlen,
                                                  long long budget = 1'000'000);

std::string export_json(const Mfa& m);
Mfa import_json(const std::string& doc);
std::string export_dot(const Mfa& m);

}  // namespace rxm
