// Acceptance checks. Each criterion prints one PASS/FAIL line with its
// wall-clock time; the process exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "rxm/avd.hpp"
#include "rxm/mdet.hpp"
#include "rxm/oracle.hpp"
#include "rxm/sync_matcher.hpp"
#include "rxm/testgen.hpp"

using namespace rxm;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool ok, double seconds,
            const std::string& detail = "") {
    std::printf("%s: %2d %-34s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number,
                what.c_str(), seconds, detail.empty() ? "" : " ",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <typename F>
void criterion(int number, const std::string& what, F body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    report(number, what, ok, secs, detail);
}

// 1. Exhaustive comparison of the Example-1 automaton with its closed form.
bool c1(std::string& detail) {
    Mfa m = fixtures::example1_mfa();
    long long mismatches = 0, total = 0;
    for (const Word& w : fixtures::all_words({"a", "b", "d"}, 10)) {
        ++total;
        if (mfa_accepts(m, w) != fixtures::example1_closed_form(w)) {
            ++mismatches;
            if (detail.empty())
                detail = "first mismatch: \"" + word_to_string(w) + "\"";
        }
    }
    std::ostringstream d;
    d << total << " words, " << mismatches << " mismatches";
    if (detail.empty()) detail = d.str();
    return mismatches == 0;
}

// 2. Degree and active set of the two-memory example pattern.
bool c2(std::string& detail) {
    RegexAst ast = parse(fixtures::avd2_pattern());
    AvdReport rep = avd_report(ast);
    if (rep.avd != 2) {
        detail = "avd=" + std::to_string(rep.avd);
        return false;
    }
    int y = 0, z = 0;
    for (int v = 1; v <= ast.var_count(); ++v) {
        if (ast.varNames[static_cast<size_t>(v) - 1] == "y") y = v;
        if (ast.varNames[static_cast<size_t>(v) - 1] == "z") z = v;
    }
    for (size_t id = 0; id < ast.nodes.size(); ++id) {
        const AstNode& n = ast.nodes[id];
        if (n.kind != NodeKind::VarDef || n.var != y) continue;
        auto it = rep.activeAtDefChild.find(n.child[0]);
        bool ok = it != rep.activeAtDefChild.end() &&
                  it->second == std::set<int>{y, z};
        if (!ok) detail = "unexpected active set at the y definition";
        return ok;
    }
    detail = "no y definition found";
    return false;
}

// 3. Engine differential over a random corpus.
bool c3(std::string& detail) {
    fixtures::RandomRegex gen(20260824);
    auto words = fixtures::all_words({"a", "b"}, 8);
    long long checkedWords = 0;
    int reuseCovered = 0, syncCovered = 0;
    for (int i = 0; i < 500; ++i) {
        RegexAst ast = gen.next(25);
        Mfa crude = build_crude_automaton(ast);
        int k = avd(ast);
        bool mdet = is_mdet_regex(ast);
        Mfa reuse1, reuse2;
        if (k <= 1) reuse1 = build_reuse_mfa(ast, 1);
        if (k <= 2) reuse2 = build_reuse_mfa(ast, 2);
        ContractedTables tables;
        if (mdet) {
            tables = build_contracted_tables(crude);
            ++syncCovered;
        }
        if (k >= 1 && k <= 2) ++reuseCovered;
        for (const Word& w : words) {
            ++checkedWords;
            bool want = oracle_match(ast, w);
            if (mfa_accepts(crude, w) != want) {
                detail = "bfs disagrees on " + print(ast) + " / \"" +
                         word_to_string(w) + "\"";
                return false;
            }
            if (k <= 1 && mfa_accepts(reuse1, w) != want) {
                detail = "reuse(1) disagrees on " + print(ast) + " / \"" +
                         word_to_string(w) + "\"";
                return false;
            }
            if (k <= 2 && mfa_accepts(reuse2, w) != want) {
                detail = "reuse(2) disagrees on " + print(ast) + " / \"" +
                         word_to_string(w) + "\"";
                return false;
            }
            if (mdet) {
                LceIndex lce = LceIndex::build(w);
                if (sync_match(crude, tables, lce, w) != want) {
                    detail = "sync disagrees on " + print(ast) + " / \"" +
                             word_to_string(w) + "\"";
                    return false;
                }
            }
        }
    }
    std::ostringstream d;
    d << "500 regex, " << checkedWords << " word checks, reuse covered "
      << reuseCovered << ", sync covered " << syncCovered;
    detail = d.str();
    return reuseCovered > 0 && syncCovered > 0;
}

// 4. The address automaton is memory deterministic and the single-pass
// matcher agrees with the generic one on curated token strings.
bool c4(std::string& detail) {
    Mfa m = fixtures::address_mfa();
    if (!is_memory_deterministic(m)) {
        detail = "not memory deterministic";
        return false;
    }
    auto tokens = [](const std::string& s) {
        Word w;
        std::istringstream in(s);
        std::string tok;
        while (in >> tok) w.push_back(tok);
        return w;
    };
    const std::vector<std::string> addresses = {
        "[add] j 0 _ m 0 _ y u ;",
        "[add] a n n 1 _ e l m 2 _ o x f ;",
        "[add] b o b 7 _ a v e 1 0 _ n y c ;",
        "[add] z 9 9 _ r d 3 _ l a ;",
        "[add] k i m 5 _ s t _ r i o ;",
    };
    std::vector<Word> cases;
    for (const std::string& a : addresses) {
        cases.push_back(tokens(a + " " + a));              // valid repeat
        cases.push_back(tokens("x 1 " + a + " " + a));     // noisy prefix
        cases.push_back(tokens(a + " " + a + " q 2 ;"));   // noisy suffix
        cases.push_back(tokens(a));                        // single copy
        cases.push_back(tokens(a + " " + a + " " + a));    // triple copy
    }
    for (size_t i = 0; i + 1 < addresses.size(); ++i) {
        cases.push_back(tokens(addresses[i] + " " + addresses[i + 1]));
        cases.push_back(tokens(addresses[i + 1] + " " + addresses[i]));
    }
    for (const std::string& a : addresses) {
        std::string mutated = a;
        mutated[mutated.size() - 3] = 'q';  // change the last letter
        cases.push_back(tokens(a + " " + mutated));
        cases.push_back(
            tokens(a + " " + a.substr(0, a.size() - 2)));  // drop the ';'
        cases.push_back(tokens("_ " + a + " ; " + a));
    }
    cases.push_back(tokens(""));
    cases.push_back(tokens("[add] ;"));
    cases.push_back(tokens("; ;"));
    cases.push_back(tokens("[add] 1 a _ 2 b _ c ; [add] 1 a _ 2 b _ c ;"));
    if (cases.size() < 50) {
        detail = "only " + std::to_string(cases.size()) + " cases";
        return false;
    }
    ContractedTables tables = build_contracted_tables(m);
    int valid = 0;
    for (const Word& w : cases) {
        bool want = mfa_accepts(m, w);
        LceIndex lce = LceIndex::build(w);
        if (sync_match(m, tables, lce, w) != want) {
            detail = "disagreement on \"" + word_to_string(w) + "\"";
            return false;
        }
        if (want) ++valid;
    }
    std::ostringstream d;
    d << cases.size() << " strings, " << valid << " valid";
    detail = d.str();
    return valid > 0 && valid < static_cast<int>(cases.size());
}

// 5. Probe acceptance of the 1-in-3 automaton tracks satisfiability.
bool c5(std::string& detail) {
    std::mt19937_64 rng(505);
    int satCount = 0;
    for (int round = 0; round < 200; ++round) {
        int n = 1 + static_cast<int>(rng() % 4);
        int mCl = 1 + static_cast<int>(rng() % 3);
        CnfInstance cnf{n, {}};
        for (int j = 0; j < mCl; ++j)
            cnf.clauses.push_back({1 + static_cast<int>(rng() % n),
                                   1 + static_cast<int>(rng() % n),
                                   1 + static_cast<int>(rng() % n)});
        OneInThree g = gen_1in3_mfa(cnf);
        verify_1in3_restrictions(g.mfa);
        bool want = onein3_satisfiable(cnf);
        if (mfa_accepts(g.mfa, g.probe) != want) {
            detail = "mismatch on round " + std::to_string(round);
            return false;
        }
        if (want) ++satCount;
    }
    detail = "200 instances, " + std::to_string(satCount) + " satisfiable";
    return satCount > 0 && satCount < 200;
}

// 6. The bounded synchronisation check on the satisfiability gadget finds a
// violation exactly for satisfiable inputs.
bool c6(std::string& detail) {
    std::mt19937_64 rng(606);
    int satCount = 0, rounds = 50;
    for (int round = 0; round < rounds; ++round) {
        int n = 1 + static_cast<int>(rng() % 3);
        int mCl = 1 + static_cast<int>(rng() % 3);
        CnfInstance cnf{n, {}};
        for (int j = 0; j < mCl; ++j) {
            std::array<int, 3> cl;
            for (auto& lit : cl) {
                int v = 1 + static_cast<int>(rng() % n);
                lit = (rng() % 2) ? v : -v;
            }
            cnf.clauses.push_back(cl);
        }
        Mfa m = gen_3sat_sync_mfa(cnf);
        bool want = sat_satisfiable(cnf);
        bool got = bounded_sync_check(m, gen_3sat_input_bound(cnf),
                                      400'000'000)
                       .has_value();
        if (got != want) {
            detail = "mismatch on round " + std::to_string(round);
            return false;
        }
        if (want) ++satCount;
    }
    detail = std::to_string(rounds) + " instances, " +
             std::to_string(satCount) + " satisfiable";
    return satCount > 0 && satCount < rounds;
}

// 7. The strong degree of the set-cover pattern exceeds the universe size
// exactly when a small cover exists.
bool c7(std::string& detail) {
    std::mt19937_64 rng(707);
    int coverCount = 0, rounds = 80;
    for (int round = 0; round < rounds; ++round) {
        int universe = 1 + static_cast<int>(rng() % 5);
        int nSubsets = 1 + static_cast<int>(rng() % 4);
        std::vector<std::vector<int>> subsets;
        for (int i = 0; i < nSubsets; ++i) {
            std::vector<int> s;
            for (int e = 1; e <= universe; ++e)
                if (rng() % 2) s.push_back(e);
            if (s.empty()) s.push_back(1 + static_cast<int>(rng() % universe));
            subsets.push_back(s);
        }
        int k = 1 + static_cast<int>(rng() % 3);
        bool want = setcover_exists(universe, subsets, k);
        RegexAst ast = gen_setcover_regex(universe, subsets, k);
        if ((savd_bruteforce(ast) > universe) != want) {
            detail = "mismatch on round " + std::to_string(round);
            return false;
        }
        if (want) ++coverCount;
    }
    detail = std::to_string(rounds) + " instances, " +
             std::to_string(coverCount) + " with covers";
    return coverCount > 0 && coverCount < rounds;
}

// 8. The single-pass matcher scales roughly linearly in the input length.
bool c8(std::string& detail) {
    Mfa m = build_crude_automaton(parse("$x{(a|b)+}c$x"));
    ContractedTables tables = build_contracted_tables(m);
    auto make_input = [](int halfLen) {
        std::string half;
        half.reserve(static_cast<size_t>(halfLen));
        for (int i = 0; i < halfLen; ++i)
            half += (i % 3 == 0) ? 'a' : 'b';
        return to_word(half + "c" + half);
    };
    auto time_match = [&](const Word& w, int repeats) {
        double best = 1e18;
        for (int r = 0; r < repeats; ++r) {
            auto t0 = std::chrono::steady_clock::now();
            LceIndex lce = LceIndex::build(w);
            bool ok = sync_match(m, tables, lce, w);
            double s = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
            if (!ok) return -1.0;
            best = std::min(best, s);
        }
        return best;
    };
    Word small = make_input(10'000);    // |w| = 20001
    Word large = make_input(100'000);   // |w| = 200001
    double tSmall = time_match(small, 7);
    double tLarge = time_match(large, 3);
    if (tSmall < 0 || tLarge < 0) {
        detail = "matcher rejected its own input";
        return false;
    }
    double ratio = tLarge / std::max(tSmall, 1e-9);
    std::ostringstream d;
    d << "20k: " << tSmall << "s, 200k: " << tLarge << "s, ratio "
      << ratio;
    detail = d.str();
    return ratio <= 15.0;
}

// 9. No bounded synchronisation violation on any mdet corpus automaton.
bool c9(std::string& detail) {
    fixtures::RandomRegex gen(909);
    int covered = 0;
    for (int i = 0; i < 600 && covered < 50; ++i) {
        RegexAst ast = gen.next(25);
        if (!is_mdet_regex(ast)) continue;
        ++covered;
        Mfa m = build_crude_automaton(ast);
        if (bounded_sync_check(m, 8, 200'000'000).has_value()) {
            detail = "violation for " + print(ast);
            return false;
        }
    }
    detail = std::to_string(covered) + " mdet automata";
    return covered >= 50;
}

// 10. No definition state can reach a recall of its own variable without an
// intervening redefinition.
bool c10(std::string& detail) {
    std::vector<RegexAst> corpus;
    fixtures::RandomRegex gen(1010);
    for (int i = 0; i < 500; ++i) corpus.push_back(gen.next(25));
    for (const char* p :
         {fixtures::example1_pattern(), fixtures::avd2_pattern(),
          fixtures::rename_pattern(), fixtures::savd3_pattern(),
          fixtures::seq5_pattern(), fixtures::alt3_pattern(),
          fixtures::reset_pattern()})
        corpus.push_back(parse(p));
    long long checkedDefs = 0;
    for (const RegexAst& ast : corpus) {
        AvdReport rep = avd_report(ast);
        for (size_t id = 0; id < ast.nodes.size(); ++id) {
            const AstNode& n = ast.nodes[id];
            if (n.kind != NodeKind::VarDef) continue;
            int tIn = state_of(rep.mfa, static_cast<int>(id), StateTag::In);
            if (tIn < 0) continue;  // unreachable from the root
            ++checkedDefs;
            if (rep.reach.post[static_cast<size_t>(n.var) - 1]
                              [static_cast<size_t>(tIn)]) {
                detail = "violated by " + print(ast);
                return false;
            }
        }
    }
    detail = std::to_string(corpus.size()) + " regex, " +
             std::to_string(checkedDefs) + " definitions";
    return checkedDefs > 0;
}

}  // namespace

int main() {
    criterion(1, "fixture automaton language", c1);
    criterion(2, "active variable degree fixture", c2);
    criterion(3, "cross-engine differential", c3);
    criterion(4, "address automaton single pass", c4);
    criterion(5, "1-in-3 probe generator", c5);
    criterion(6, "satisfiability sync generator", c6);
    criterion(7, "set-cover degree generator", c7);
    criterion(8, "input-length scaling", c8);
    criterion(9, "mdet corpus synchronisation", c9);
    criterion(10, "definition self-recall exclusion", c10);
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}
