#include "rxm/testgen.hpp"

#include <cstdlib>
#include <map>
#include <stdexcept>

namespace rxm {

namespace {

void check_positive_cnf(const CnfInstance& cnf) {
    for (const auto& cl : cnf.clauses)
        for (int lit : cl)
            if (lit < 1 || lit > cnf.variableCount)
                throw std::invalid_argument("literal out of range");
}

void check_signed_cnf(const CnfInstance& cnf) {
    for (const auto& cl : cnf.clauses)
        for (int lit : cl)
            if (lit == 0 || lit > cnf.variableCount ||
                lit < -cnf.variableCount)
                throw std::invalid_argument("literal out of range");
}

}  // namespace

RegexAst gen_setcover_regex(int universeSize,
                            const std::vector<std::vector<int>>& subsets,
                            int k) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (subsets.empty()) throw std::invalid_argument("no subsets");
    for (const auto& s : subsets) {
        if (s.empty()) throw std::invalid_argument("empty subset");
        for (int e : s)
            if (e < 1 || e > universeSize)
                throw std::invalid_argument("element out of range");
    }
    AstBuilder b;
    std::vector<int> parts;
    parts.push_back(b.def("z", b.eps()));
    for (int rep = 0; rep < k; ++rep) {
        std::vector<int> branches;
        for (const auto& s : subsets) {
            std::vector<int> defs;
            for (int e : s)
                defs.push_back(b.def("x" + std::to_string(e), b.eps()));
            branches.push_back(b.cat(defs));
        }
        parts.push_back(b.alt(branches));
    }
    parts.push_back(b.lit("b"));
    for (int e = 1; e <= universeSize; ++e)
        parts.push_back(b.recall("x" + std::to_string(e)));
    parts.push_back(b.recall("z"));
    return b.finish(b.cat(parts));
}

OneInThree gen_1in3_mfa(const CnfInstance& cnf) {
    check_positive_cnf(cnf);
    const int n = cnf.variableCount;
    OneInThree out;
    Mfa& m = out.mfa;
    m.memoryCount = 2 * n;  // memory i: x_i, memory n+i: complement of x_i
    int cur = m.add_state();
    m.initial = cur;
    for (int i = 1; i <= n; ++i) {
        int join = m.add_state();
        for (int side = 0; side < 2; ++side) {
            int mem = (side == 0) ? i : n + i;
            int s1 = m.add_state();
            int s2 = m.add_state();
            int s3 = m.add_state();
            int s4 = m.add_state();
            m.add_edge(cur, Label::ch("a"), s1);
            m.add_edge(s1, Label::open(mem), s2);
            m.add_edge(s2, Label::ch("a"), s3);
            m.add_edge(s3, Label::close(mem), s4);
            m.add_edge(s4, Label::ch("b"), join);
        }
        cur = join;
    }
    for (const auto& cl : cnf.clauses) {
        for (int lit : cl) {
            int next = m.add_state();
            m.add_edge(cur, Label::recall(lit), next);
            cur = next;
        }
        int next = m.add_state();
        m.add_edge(cur, Label::ch("b"), next);
        cur = next;
    }
    m.accepting = {cur};
    m.check();
    for (int i = 0; i < n; ++i) {
        out.probe.push_back("a");
        out.probe.push_back("a");
        out.probe.push_back("b");
    }
    for (size_t j = 0; j < cnf.clauses.size(); ++j) {
        out.probe.push_back("a");
        out.probe.push_back("b");
    }
    return out;
}

void verify_1in3_restrictions(const Mfa& m) {
    for (const auto& t : m.transitions) {
        if (t.label.kind == LabelKind::Eps)
            throw std::logic_error("epsilon transition present");
        if (t.label.kind == LabelKind::Char && t.label.sym != "a" &&
            t.label.sym != "b")
            throw std::logic_error("alphabet is not {a,b}");
    }
    for (int q = 0; q < m.stateCount; ++q) {
        std::map<std::string, int> fanout;
        for (int ti : m.out[static_cast<size_t>(q)])
            ++fanout[m.transitions[static_cast<size_t>(ti)].label.str()];
        for (const auto& [label, count] : fanout) {
            if (label == "a") {
                if (count != 1 && count != 2)
                    throw std::logic_error("bad a-fanout");
            } else if (count > 1) {
                throw std::logic_error("state not restricted on " + label);
            }
        }
    }
}

Mfa gen_3sat_sync_mfa(const CnfInstance& cnf) {
    check_signed_cnf(cnf);
    if (cnf.clauses.empty())
        throw std::invalid_argument("empty clause list");
    const int n = cnf.variableCount;
    const int mCl = static_cast<int>(cnf.clauses.size());
    Mfa m;
    // memory i: x_i, memory n+i: complement, memory 2n+j: clause j record
    m.memoryCount = 2 * n + mCl;
    int cur = m.add_state();
    m.initial = cur;
    for (int i = 1; i <= n; ++i) {
        int join = m.add_state();
        // one branch stores a in x_i (and b in the complement), the other the
        // reverse; the consumed two-letter inputs ab/ba keep the automaton
        // deterministic with respect to contracted computations
        for (int side = 0; side < 2; ++side) {
            Symbol first = (side == 0) ? "a" : "b";
            Symbol second = (side == 0) ? "b" : "a";
            int s1 = m.add_state();
            int s2 = m.add_state();
            int s3 = m.add_state();
            int s4 = m.add_state();
            int s5 = m.add_state();
            m.add_edge(cur, Label::open(i), s1);
            m.add_edge(s1, Label::ch(first), s2);
            m.add_edge(s2, Label::close(i), s3);
            m.add_edge(s3, Label::open(n + i), s4);
            m.add_edge(s4, Label::ch(second), s5);
            m.add_edge(s5, Label::close(n + i), join);
        }
        cur = join;
    }
    for (int j = 0; j < mCl; ++j) {
        int g = m.add_state();
        int join = m.add_state();
        m.add_edge(cur, Label::open(2 * n + j + 1), g);
        for (int lit : cnf.clauses[static_cast<size_t>(j)]) {
            int mem = lit > 0 ? lit : n - lit;
            int h = m.add_state();
            m.add_edge(g, Label::recall(mem), h);
            m.add_edge(h, Label::close(2 * n + j + 1), join);
        }
        cur = join;
    }
    // final gadget: recalls of all clause records vs. the same number of
    // plain a's; afterwards one side rewrites clause record 1
    int u1 = cur;
    for (int j = 0; j < mCl; ++j) {
        int next = m.add_state();
        m.add_edge(u1, Label::recall(2 * n + j + 1), next);
        u1 = next;
    }
    int u2 = cur;
    for (int j = 0; j < mCl; ++j) {
        int next = m.add_state();
        m.add_edge(u2, Label::ch("a"), next);
        u2 = next;
    }
    int v1 = m.add_state();
    int v2 = m.add_state();
    int acc1 = m.add_state();
    m.add_edge(u1, Label::open(2 * n + 1), v1);
    m.add_edge(v1, Label::ch("b"), v2);
    m.add_edge(v2, Label::close(2 * n + 1), acc1);
    int acc2 = m.add_state();
    m.add_edge(u2, Label::ch("b"), acc2);
    m.accepting = {acc1, acc2};
    m.check();
    return m;
}

int gen_3sat_input_bound(const CnfInstance& cnf) {
    return 2 * cnf.variableCount + 2 * static_cast<int>(cnf.clauses.size()) + 1;
}

bool onein3_satisfiable(const CnfInstance& cnf) {
    check_positive_cnf(cnf);
    const int n = cnf.variableCount;
    for (unsigned assign = 0; assign < (1u << n); ++assign) {
        bool ok = true;
        for (const auto& cl : cnf.clauses) {
            int trueCount = 0;
            for (int lit : cl)
                if (assign & (1u << (lit - 1))) ++trueCount;
            if (trueCount != 1) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

bool sat_satisfiable(const CnfInstance& cnf) {
    check_signed_cnf(cnf);
    const int n = cnf.variableCount;
    for (unsigned assign = 0; assign < (1u << n); ++assign) {
        bool ok = true;
        for (const auto& cl : cnf.clauses) {
            bool clauseOk = false;
            for (int lit : cl) {
                bool value = (assign & (1u << (std::abs(lit) - 1))) != 0;
                if (lit < 0) value = !value;
                if (value) clauseOk = true;
            }
            if (!clauseOk) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

namespace {

bool cover_rec(int universeSize, const std::vector<std::vector<int>>& subsets,
               int k, size_t from, std::vector<int>& counts, int covered) {
    if (covered == universeSize) return true;
    if (k == 0) return false;
    for (size_t i = from; i < subsets.size(); ++i) {
        int added = 0;
        for (int e : subsets[i])
            if (counts[static_cast<size_t>(e) - 1]++ == 0) ++added;
        if (cover_rec(universeSize, subsets, k - 1, i, counts, covered + added))
            return true;
        for (int e : subsets[i])
            --counts[static_cast<size_t>(e) - 1];
    }
    return false;
}

}  // namespace

bool setcover_exists(int universeSize,
                     const std::vector<std::vector<int>>& subsets, int k) {
    std::vector<int> counts(static_cast<size_t>(universeSize), 0);
    return cover_rec(universeSize, subsets, k, 0, counts, 0);
}

}  // namespace rxm
