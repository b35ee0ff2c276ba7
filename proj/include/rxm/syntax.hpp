#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rxm {

// A terminal symbol. Patterns produce single-character symbols; programmatic
// automata may use multi-character tokens like "[add]".
using Symbol = std::string;
using Word = std::vector<Symbol>;

// Splits a plain string into single-character symbols.
Word to_word(const std::string& s);
std::string word_to_string(const Word& w);

enum class NodeKind { Concat, Alt, Plus, Literal, Epsilon, VarRecall, VarDef };

struct AstNode {
    NodeKind kind;
    Symbol sym;            // Literal
    int var = 0;           // VarDef / VarRecall, 1-based memory index
    int child[2] = {-1, -1};
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, size_t pos);
    size_t pos;
};

struct RegexAst {
    std::vector<AstNode> nodes;
    int root = -1;
    // varNames[i] is the name of variable i+1; variables are numbered in
    // first-occurrence order.
    std::vector<std::string> varNames;

    int var_count() const { return static_cast<int>(varNames.size()); }
    const AstNode& at(int id) const { return nodes[static_cast<size_t>(id)]; }

    // Terminal alphabet: all Literal symbols, sorted.
    std::vector<Symbol> alphabet() const;
};

// Helper for building syntax trees programmatically (used by generators and
// tests). Maintains the first-occurrence variable numbering automatically.
class AstBuilder {
public:
    int lit(const Symbol& s);
    int eps();
    int cat(int l, int r);
    int cat(const std::vector<int>& parts);  // epsilon when empty
    int alt(int l, int r);
    int alt(const std::vector<int>& parts);  // must be nonempty
    int plus(int child);
    int star(int child);  // desugars to (child+ | ~)
    int def(const std::string& name, int child);
    int recall(const std::string& name);
    RegexAst finish(int root);

private:
    int intern(const std::string& name);
    int add(AstNode n);
    RegexAst ast_;
};

RegexAst parse(const std::string& text);
std::string print(const RegexAst& ast);

// var(subtree): the set of variable indices defined or recalled in it.
std::set<int> vars_of(const RegexAst& ast, int node);
std::set<int> vars(const RegexAst& ast);

// Relabels every definition and recall of `from` as `to` and renumbers
// variables back into first-occurrence order. Throws ParseError if the result
// would define a variable inside its own definition.
RegexAst rename_variable(const RegexAst& ast, const std::string& from,
                         const std::string& to);

// Re-checks the structural invariants (arity, nesting side condition);
// throws ParseError on violation. Parsing and building always leave these
// satisfied; exposed for tests and for rename_variable.
void validate(const RegexAst& ast);

int node_count(const RegexAst& ast);

}  // namespace rxm
