// Command-line front end: match, avd, mdet, gen, classify, export.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rxm/avd.hpp"
#include "rxm/mdet.hpp"
#include "rxm/oracle.hpp"
#include "rxm/sync_matcher.hpp"
#include "rxm/testgen.hpp"

using namespace rxm;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// Set-cover instance: first line "universeSize k", then one subset per line
// as space-separated elements.
void parse_setcover(const std::string& text, int& universe, int& k,
                    std::vector<std::vector<int>>& subsets) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty set-cover instance");
    std::istringstream head(line);
    if (!(head >> universe >> k))
        throw std::runtime_error("first line must be: universeSize k");
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<int> subset;
        int e;
        while (ls >> e) subset.push_back(e);
        if (!subset.empty()) subsets.push_back(subset);
    }
}

// CNF instance, DIMACS-like: one clause per line, three integers. Signs mean
// negation for the satisfiability generator; the 1-in-3 generator requires
// all literals positive. The variable count is the largest index used.
CnfInstance parse_cnf(const std::string& text) {
    std::istringstream in(text);
    CnfInstance cnf;
    cnf.variableCount = 1;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::array<int, 3> cl;
        if (!(ls >> cl[0] >> cl[1] >> cl[2])) {
            std::istringstream probe(line);
            std::string junk;
            if (probe >> junk)
                throw std::runtime_error("bad clause line: " + line);
            continue;  // blank line
        }
        for (int lit : cl)
            cnf.variableCount = std::max(cnf.variableCount, std::abs(lit));
        cnf.clauses.push_back(cl);
    }
    return cnf;
}

Word word_from_args(const std::string& inline_word,
                    const std::string& input_file) {
    if (!input_file.empty()) return to_word(read_file(input_file));
    return to_word(inline_word);
}

struct Classification {
    std::string pattern;
    bool parseOk = false;
    int varCount = 0;
    int avdValue = 0;
    bool mdet = false;
    std::string engine;
    long long ms = 0;
};

Classification classify_line(const std::string& pattern, int avdCap) {
    Classification rec;
    rec.pattern = pattern;
    auto t0 = std::chrono::steady_clock::now();
    try {
        RegexAst ast = parse(pattern);
        rec.parseOk = true;
        rec.varCount = ast.var_count();
        rec.avdValue = avd(ast);
        rec.mdet = is_mdet_regex(ast);
        if (rec.mdet)
            rec.engine = "sync";
        else if (rec.avdValue <= avdCap)
            rec.engine = "reuse-mfa(" + std::to_string(rec.avdValue) + ")";
        else
            rec.engine = "generic-bfs";
    } catch (const ParseError&) {
        rec.engine = "none";
    }
    rec.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - t0)
                 .count();
    return rec;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

int run(int argc, char** argv) {
    CLI::App app{"memory-automata regex toolkit"};
    app.require_subcommand(1);

    // match
    auto* match = app.add_subcommand("match", "match a word against a pattern");
    std::string pattern, word, engine = "auto", mfaFile, inputFile;
    int avdCap = 2;
    long long budget = 10'000'000;
    bool forceSync = false;
    match->add_option("pattern", pattern, "regex pattern (omit with --mfa)");
    match->add_option("word", word, "input word");
    match->add_option("--engine", engine)
        ->check(CLI::IsMember({"auto", "oracle", "bfs", "reuse", "sync"}));
    match->add_option("--avd-cap", avdCap);
    match->add_option("--budget", budget);
    match->add_flag("--force-sync", forceSync,
                    "run the sync matcher even on non-mdet input");
    match->add_option("--mfa", mfaFile, "match against an automaton file");
    match->add_option("--input-file", inputFile,
                      "read the word from a file (bytes become symbols)");

    // avd
    auto* avdCmd = app.add_subcommand("avd", "active variable degree");
    std::string avdPattern;
    bool withSavd = false;
    avdCmd->add_option("pattern", avdPattern)->required();
    avdCmd->add_flag("--savd", withSavd, "also compute the strong avd");

    // mdet
    auto* mdetCmd = app.add_subcommand("mdet", "memory determinism check");
    std::string mdetPattern, mdetMfaFile;
    mdetCmd->add_option("pattern", mdetPattern);
    mdetCmd->add_option("--mfa", mdetMfaFile);

    // gen
    auto* gen = app.add_subcommand("gen", "instance generators");
    gen->require_subcommand(1);
    std::string genInstance, genOut, probeOut;
    auto* genCover = gen->add_subcommand(
        "setcover", "regex whose strong avd encodes a set-cover instance");
    genCover->add_option("instance", genInstance)->required();
    genCover->add_option("--out", genOut);
    auto* genOneInThree = gen->add_subcommand(
        "onein3", "automaton accepting its probe iff 1-in-3 satisfiable");
    genOneInThree->add_option("instance", genInstance)->required();
    genOneInThree->add_option("--out", genOut);
    genOneInThree->add_option("--probe-out", probeOut);
    auto* genSatSync = gen->add_subcommand(
        "satsync", "automaton non-synchronised iff satisfiable");
    genSatSync->add_option("instance", genInstance)->required();
    genSatSync->add_option("--out", genOut);

    // classify
    auto* classify = app.add_subcommand("classify", "corpus to CSV");
    std::string corpusFile;
    int classifyCap = 2;
    classify->add_option("corpus", corpusFile)->required();
    classify->add_option("--avd-cap", classifyCap);

    // export
    auto* exportCmd = app.add_subcommand("export", "automaton JSON or DOT");
    std::string exportPattern, exportOut;
    bool asDot = false;
    exportCmd->add_option("pattern", exportPattern)->required();
    exportCmd->add_flag("--dot", asDot);
    exportCmd->add_option("--out", exportOut);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (*match) {
        // with --mfa the first positional argument is the word
        if (!mfaFile.empty() && word.empty()) std::swap(word, pattern);
        Word w = word_from_args(word, inputFile);
        bool accepted = false;
        std::string used = engine;
        if (!mfaFile.empty()) {
            Mfa m = import_json(read_file(mfaFile));
            if (engine == "sync" || (engine == "auto" &&
                                     is_memory_deterministic(m))) {
                if (engine == "sync" && !forceSync &&
                    !is_memory_deterministic(m)) {
                    std::cerr << "refusing: automaton is not "
                                 "memory-deterministic (use --force-sync)\n";
                    return 2;
                }
                ContractedTables tables = build_contracted_tables(m);
                LceIndex lce = LceIndex::build(w);
                accepted = sync_match(m, tables, lce, w);
                used = "sync";
            } else if (engine == "auto" || engine == "bfs") {
                accepted = mfa_accepts(m, w, budget);
                used = "generic-bfs";
            } else {
                std::cerr << "engine '" << engine
                          << "' needs a pattern, not an automaton\n";
                return 2;
            }
        } else {
            if (pattern.empty()) {
                std::cerr << "missing pattern\n";
                return 2;
            }
            RegexAst ast = parse(pattern);
            if (engine == "auto") {
                MatchOptions opts;
                opts.avdCap = avdCap;
                opts.budget = budget;
                EngineResult r = match_auto(ast, w, opts);
                accepted = r.accepted;
                used = r.engine;
            } else if (engine == "oracle") {
                accepted = oracle_match(ast, w, budget);
            } else if (engine == "bfs") {
                accepted = mfa_accepts(build_crude_automaton(ast), w, budget);
                used = "generic-bfs";
            } else if (engine == "reuse") {
                int k = std::max(avd(ast), 1);
                accepted = mfa_accepts(build_reuse_mfa(ast, k), w, budget);
                used = "reuse-mfa(" + std::to_string(k) + ")";
            } else {  // sync
                Mfa m = build_crude_automaton(ast);
                if (!forceSync && !is_memory_deterministic(m)) {
                    std::cerr << "refusing: pattern is not "
                                 "memory-deterministic (use --force-sync)\n";
                    return 2;
                }
                ContractedTables tables = build_contracted_tables(m);
                LceIndex lce = LceIndex::build(w);
                accepted = sync_match(m, tables, lce, w);
            }
        }
        std::cout << (accepted ? "match" : "no match") << "\n"
                  << "engine: " << used << "\n";
        return accepted ? 0 : 1;
    }

    if (*avdCmd) {
        RegexAst ast = parse(avdPattern);
        AvdReport rep = avd_report(ast);
        std::cout << "avd=" << rep.avd << "\n";
        for (size_t id = 0; id < ast.nodes.size(); ++id) {
            const AstNode& n = ast.nodes[id];
            if (n.kind != NodeKind::VarDef) continue;
            std::cout << "active at $" << ast.varNames[static_cast<size_t>(
                             n.var - 1)]
                      << " definition: {";
            bool first = true;
            auto it = rep.activeAtDefChild.find(n.child[0]);
            if (it != rep.activeAtDefChild.end()) {
                for (int v : it->second) {
                    if (!first) std::cout << ", ";
                    first = false;
                    std::cout << ast.varNames[static_cast<size_t>(v - 1)];
                }
            }
            std::cout << "}\n";
        }
        if (withSavd) {
            if (ast.var_count() > 12)
                std::cerr << "note: savd is brute force and exponential in "
                             "the variable count\n";
            std::cout << "savd=" << savd_bruteforce(ast) << "\n";
        }
        return 0;
    }

    if (*mdetCmd) {
        Mfa m;
        if (!mdetMfaFile.empty()) {
            m = import_json(read_file(mdetMfaFile));
        } else if (!mdetPattern.empty()) {
            m = build_crude_automaton(parse(mdetPattern));
        } else {
            std::cerr << "need a pattern or --mfa\n";
            return 2;
        }
        ContractedTables tables = build_contracted_tables(m);
        MemSyncRelation ms = compute_mem_sync(m, tables);
        auto witness = find_non_sync_branch(m, tables, ms);
        if (witness) {
            std::cout << "memory-deterministic: no\n"
                      << "witness: from state " << witness->q
                      << " the pair (" << witness->p1 << ", " << witness->p2
                      << ") is reachable but not memory synchronised\n";
            try {
                auto v = bounded_sync_check(m, 8, 5'000'000);
                if (v)
                    std::cout << "witness word: \""
                              << word_to_string(v->word) << "\"\n";
            } catch (const BudgetExceeded&) {
            }
        } else {
            std::cout << "memory-deterministic: yes\n";
        }
        return 0;
    }

    if (*genCover) {
        int universe = 0, k = 0;
        std::vector<std::vector<int>> subsets;
        parse_setcover(read_file(genInstance), universe, k, subsets);
        RegexAst ast = gen_setcover_regex(universe, subsets, k);
        write_output(genOut, print(ast));
        return 0;
    }
    if (*genOneInThree) {
        OneInThree g = gen_1in3_mfa(parse_cnf(read_file(genInstance)));
        write_output(genOut, export_json(g.mfa));
        if (!probeOut.empty()) write_output(probeOut, word_to_string(g.probe));
        return 0;
    }
    if (*genSatSync) {
        CnfInstance cnf = parse_cnf(read_file(genInstance));
        write_output(genOut, export_json(gen_3sat_sync_mfa(cnf)));
        return 0;
    }

    if (*classify) {
        std::istringstream in(read_file(corpusFile));
        std::cout << "pattern,parse_ok,var_count,avd,mdet,engine,ms\n";
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            Classification rec = classify_line(line, classifyCap);
            std::cout << csv_escape(rec.pattern) << ','
                      << (rec.parseOk ? "yes" : "no") << ',' << rec.varCount
                      << ',' << rec.avdValue << ','
                      << (rec.mdet ? "yes" : "no") << ',' << rec.engine << ','
                      << rec.ms << "\n";
        }
        return 0;
    }

    if (*exportCmd) {
        Mfa m = build_crude_automaton(parse(exportPattern));
        write_output(exportOut, asDot ? export_dot(m) : export_json(m));
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
