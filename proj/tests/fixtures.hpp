#pragma once

// Shared fixtures for the unit tests and the acceptance runner.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "rxm/mfa.hpp"
#include "rxm/syntax.hpp"

namespace fixtures {

using rxm::Label;
using rxm::Mfa;
using rxm::Symbol;
using rxm::Word;

// Two-memory automaton for the language
//   { a^n b^m (a^n d)^k b^m | n,m,k >= 1 } u { a^n d^m a^n | n,m >= 1 }.
// Memory 1 holds a^n on the upper branch and epsilon on the lower one;
// memory 2 holds b^m (upper) or a^n (lower). The shared suffix then reads
// (recall(1) d)+ recall(2).
inline Mfa example1_mfa() {
    Mfa m;
    m.memoryCount = 2;
    int s0 = m.add_state();
    m.initial = s0;

    // upper branch: memory 1 := a^n, memory 2 := b^m
    int u1 = m.add_state();
    int u2 = m.add_state();
    int u3 = m.add_state();
    int u4 = m.add_state();
    int u5 = m.add_state();
    int join = m.add_state();
    m.add_edge(s0, Label::open(1), u1);
    m.add_edge(u1, Label::ch("a"), u2);
    m.add_edge(u2, Label::ch("a"), u2);
    m.add_edge(u2, Label::close(1), u3);
    m.add_edge(u3, Label::open(2), u4);
    m.add_edge(u4, Label::ch("b"), u5);
    m.add_edge(u5, Label::ch("b"), u5);
    m.add_edge(u5, Label::close(2), join);

    // lower branch: memory 1 := epsilon, memory 2 := a^n
    int l1 = m.add_state();
    int l2 = m.add_state();
    int l3 = m.add_state();
    int l4 = m.add_state();
    m.add_edge(s0, Label::open(1), l1);
    m.add_edge(l1, Label::close(1), l2);
    m.add_edge(l2, Label::open(2), l3);
    m.add_edge(l3, Label::ch("a"), l4);
    m.add_edge(l4, Label::ch("a"), l4);
    m.add_edge(l4, Label::close(2), join);

    // shared suffix: (recall(1) d)+ recall(2)
    int j1 = m.add_state();
    int j2 = m.add_state();
    int fin = m.add_state();
    m.add_edge(join, Label::recall(1), j1);
    m.add_edge(j1, Label::ch("d"), j2);
    m.add_edge(j2, Label::recall(1), j1);
    m.add_edge(j2, Label::recall(2), fin);
    m.accepting = {fin};
    m.check();
    return m;
}

inline bool example1_closed_form(const Word& w) {
    auto run = [&](size_t at, const Symbol& s) {
        size_t count = 0;
        while (at + count < w.size() && w[at + count] == s) ++count;
        return count;
    };
    // a^n b^m (a^n d)^k b^m
    {
        size_t n = run(0, "a");
        size_t m = run(n, "b");
        if (n >= 1 && m >= 1) {
            size_t at = n + m;
            size_t k = 0;
            while (run(at, "a") >= n && at + n < w.size() &&
                   w[at + n] == "d") {
                ++k;
                at += n + 1;
            }
            if (k >= 1 && run(at, "b") == m && at + m == w.size()) return true;
        }
    }
    // a^n d^m a^n
    {
        size_t n = run(0, "a");
        size_t m = run(n, "d");
        if (n >= 1 && m >= 1 && run(n + m, "a") == n &&
            n + m + n == w.size())
            return true;
    }
    return false;
}

// Same language as a pattern, for enumerate_language and oracle tests.
inline const char* example1_pattern() {
    return "$x{a+}$y{b+}($x d)+$y|$x{a+}d+$x";
}

// The four-variable pattern with avd 2 used throughout the reachability
// tests: ((z{a+b} x{b+}) | (x{a+}cx)+) x ((y{a+b+}y) | (u{c+}au)) z x{a+}b x.
inline const char* avd2_pattern() {
    return "($z{a+b}$x{b+}|($x{a+}c$x)+)$x($y{a+b+}$y|$u{c+}a$u)$z$x{a+}b$x";
}

// Renaming y to x here changes the language: "abacbbab" is lost.
inline const char* rename_pattern() {
    return "$x{a+}b$x($y c$y{b+})+$x{b+}a$x";
}

// avd 5 but only 3 variables ever defined together.
inline const char* savd3_pattern() {
    return "(($x{a+}$y{b+})|$z{c+}|($x{b+}$u{c+}))$v{a+}$x$y$z$u$v";
}

// Sequential definitions: avd equals the variable count.
inline const char* seq5_pattern() {
    return "$x1{a+}$x2{b+}$x3{c+}$x4{d+}$x5{e+}$x1$x2$x3$x4$x5";
}

// Independent alternatives: one memory suffices.
inline const char* alt3_pattern() {
    return "($x1{a+}|$x2{b+}|$x3{c+})$x1$x2$x3";
}

// Memory-deterministic chain whose second definition stores epsilon; probes
// the content reset of a memory opened and closed along one contracted step.
inline const char* reset_pattern() { return "$x{a}$x$x{~}b$x"; }

// Address-checking automaton over letters, digits, "_", "[add]" and ";".
// One memory records the first address; the second occurrence is recalled.
// letterCount/digitCount shrink the character groups to keep tests fast.
inline Mfa address_mfa(int letterCount = 26, int digitCount = 10) {
    std::vector<Symbol> letters, digits;
    for (int i = 0; i < letterCount; ++i)
        letters.push_back(std::string(1, static_cast<char>('a' + i)));
    for (int i = 0; i < digitCount; ++i)
        digits.push_back(std::string(1, static_cast<char>('0' + i)));
    const Symbol add = "[add]", semi = ";", space = "_";

    Mfa m;
    m.memoryCount = 1;
    auto loop = [&](int q, const std::vector<Symbol>& group) {
        for (const auto& s : group) m.add_edge(q, Label::ch(s), q);
    };
    auto arc = [&](int from, int to, const std::vector<Symbol>& group) {
        for (const auto& s : group) m.add_edge(from, Label::ch(s), to);
    };
    std::vector<Symbol> sigmaPrime = letters;
    sigmaPrime.insert(sigmaPrime.end(), digits.begin(), digits.end());
    sigmaPrime.push_back(space);
    std::vector<Symbol> sigma = sigmaPrime;
    sigma.push_back(add);
    sigma.push_back(semi);

    int start = m.add_state();
    m.initial = start;
    loop(start, sigmaPrime);
    int r1 = m.add_state();
    m.add_edge(start, Label::ch(add), r1);
    int r2 = m.add_state();
    m.add_edge(r1, Label::open(1), r2);

    // name: letter+
    int n1 = m.add_state();
    arc(r2, n1, letters);
    loop(n1, letters);

    // street: digit+ _ letter+  or  letter+ _ digit+
    int s1 = m.add_state(), s2 = m.add_state(), s3 = m.add_state();
    arc(n1, s1, digits);
    loop(s1, digits);
    m.add_edge(s1, Label::ch(space), s2);
    arc(s2, s3, letters);
    loop(s3, letters);
    int s4 = m.add_state(), s5 = m.add_state(), s6 = m.add_state();
    arc(n1, s4, letters);
    loop(s4, letters);
    m.add_edge(s4, Label::ch(space), s5);
    arc(s5, s6, digits);
    loop(s6, digits);
    int s7 = m.add_state();
    m.add_edge(s3, Label::eps(), s7);
    m.add_edge(s6, Label::eps(), s7);

    // city: letter* digit+ _ letter+  or  letter+ _ letter* digit+
    int c1 = m.add_state(), c2 = m.add_state(), c3 = m.add_state(),
        c4 = m.add_state();
    m.add_edge(s7, Label::eps(), c1);
    loop(c1, letters);
    arc(c1, c2, digits);
    loop(c2, digits);
    m.add_edge(c2, Label::ch(space), c3);
    arc(c3, c4, letters);
    loop(c4, letters);
    int c5 = m.add_state(), c6 = m.add_state(), c7 = m.add_state();
    arc(s7, c5, letters);
    loop(c5, letters);
    m.add_edge(c5, Label::ch(space), c6);
    loop(c6, letters);
    arc(c6, c7, digits);
    loop(c7, digits);
    int c8 = m.add_state();
    m.add_edge(c4, Label::eps(), c8);
    m.add_edge(c7, Label::eps(), c8);

    // country: letter+, then close and look for the second occurrence
    int co1 = m.add_state();
    arc(c8, co1, letters);
    loop(co1, letters);
    int co2 = m.add_state();
    m.add_edge(co1, Label::close(1), co2);
    int r3 = m.add_state();
    m.add_edge(co2, Label::ch(semi), r3);
    loop(r3, sigmaPrime);
    int r4 = m.add_state();
    m.add_edge(r3, Label::ch(add), r4);
    int r5 = m.add_state();
    m.add_edge(r4, Label::recall(1), r5);
    int r6 = m.add_state();
    m.add_edge(r5, Label::ch(semi), r6);
    loop(r6, sigma);
    m.accepting = {r6};
    m.check();
    return m;
}

// Named states of the address automaton, for table-level assertions.
struct AddressStates {
    int t = 19;        // co1: country letters of the first address
    int tPrime = 21;   // r3: scanning for the second [add]
    int s = 22;        // r4: the only state with a recall transition
    int tSecond = 23;  // r5: after the recall
};

inline bool ast_equal(const rxm::RegexAst& a, int na, const rxm::RegexAst& b,
                      int nb) {
    const auto& x = a.at(na);
    const auto& y = b.at(nb);
    if (x.kind != y.kind || x.sym != y.sym || x.var != y.var) return false;
    for (int i = 0; i < 2; ++i) {
        if ((x.child[i] < 0) != (y.child[i] < 0)) return false;
        if (x.child[i] >= 0 && !ast_equal(a, x.child[i], b, y.child[i]))
            return false;
    }
    return true;
}

inline bool ast_equal(const rxm::RegexAst& a, const rxm::RegexAst& b) {
    return a.varNames == b.varNames && ast_equal(a, a.root, b, b.root);
}

// Random regex over {a,b} with at most maxNodes syntax nodes and at most
// three variables. Variable definitions never nest their own variable.
class RandomRegex {
public:
    explicit RandomRegex(uint64_t seed) : rng_(seed) {}

    rxm::RegexAst next(int maxNodes = 25) {
        while (true) {
            rxm::AstBuilder b;
            budget_ = maxNodes;
            std::set<std::string> forbidden;
            int root = gen(b, 3, forbidden);
            rxm::RegexAst ast = b.finish(root);
            if (rxm::node_count(ast) <= maxNodes) return ast;
        }
    }

private:
    std::mt19937_64 rng_;
    int budget_ = 0;

    int pick(int n) {
        return static_cast<int>(rng_() % static_cast<uint64_t>(n));
    }

    int gen(rxm::AstBuilder& b, int depth, std::set<std::string>& forbidden) {
        --budget_;
        if (depth == 0 || budget_ <= 1) {
            switch (pick(4)) {
                case 0: return b.lit("a");
                case 1: return b.lit("b");
                case 2: return b.eps();
                default: {
                    std::string v(1, static_cast<char>('x' + pick(3)));
                    if (forbidden.count(v)) return b.lit("a");
                    return b.recall(v);
                }
            }
        }
        switch (pick(9)) {
            case 0: return b.lit("a");
            case 1: return b.lit("b");
            case 2: return b.eps();
            case 3: {
                int l = gen(b, depth - 1, forbidden);
                return b.cat(l, gen(b, depth - 1, forbidden));
            }
            case 4: {
                int l = gen(b, depth - 1, forbidden);
                return b.alt(l, gen(b, depth - 1, forbidden));
            }
            case 5: return b.plus(gen(b, depth - 1, forbidden));
            case 6: {
                std::string v(1, static_cast<char>('x' + pick(3)));
                if (forbidden.count(v)) return b.lit("b");
                forbidden.insert(v);
                int child = gen(b, depth - 1, forbidden);
                forbidden.erase(v);
                return b.def(v, child);
            }
            case 7: {
                std::string v(1, static_cast<char>('x' + pick(3)));
                if (forbidden.count(v)) return b.lit("a");
                return b.recall(v);
            }
            default: {
                // definition immediately recalled; keeps the corpus rich in
                // patterns with nonzero avd
                std::string v(1, static_cast<char>('x' + pick(3)));
                if (forbidden.count(v)) return b.lit("b");
                forbidden.insert(v);
                int child = gen(b, depth - 1, forbidden);
                forbidden.erase(v);
                return b.cat(b.def(v, child), b.recall(v));
            }
        }
    }
};

// All words over the alphabet with length <= maxlen, shortest first.
inline std::vector<Word> all_words(const std::vector<Symbol>& alphabet,
                                   int maxlen) {
    std::vector<Word> out = {{}};
    size_t levelStart = 0;
    for (int len = 1; len <= maxlen; ++len) {
        size_t levelEnd = out.size();
        for (size_t i = levelStart; i < levelEnd; ++i)
            for (const auto& s : alphabet) {
                Word w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        levelStart = levelEnd;
    }
    return out;
}

}  // namespace fixtures
