#include "rxm/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace rxm {

Word to_word(const std::string& s) {
    Word w;
    w.reserve(s.size());
    for (char c : s) w.push_back(std::string(1, c));
    return w;
}

std::string word_to_string(const Word& w) {
    std::string s;
    for (const auto& sym : w) s += sym;
    return s;
}

ParseError::ParseError(const std::string& msg, size_t p)
    : std::runtime_error(msg + " (at position " + std::to_string(p) + ")"),
      pos(p) {}

std::vector<Symbol> RegexAst::alphabet() const {
    std::set<Symbol> syms;
    for (const auto& n : nodes)
        if (n.kind == NodeKind::Literal) syms.insert(n.sym);
    return {syms.begin(), syms.end()};
}

namespace {

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_meta(char c) {
    return std::string("|+*()~[]{}$\\").find(c) != std::string::npos;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)); }

struct Parser {
    const std::string& text;
    size_t pos = 0;
    RegexAst ast;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && is_space(text[pos])) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return text[pos];
    }

    int add(AstNode n) {
        ast.nodes.push_back(std::move(n));
        return static_cast<int>(ast.nodes.size()) - 1;
    }

    int intern(const std::string& name) {
        for (size_t i = 0; i < ast.varNames.size(); ++i)
            if (ast.varNames[i] == name) return static_cast<int>(i) + 1;
        ast.varNames.push_back(name);
        return static_cast<int>(ast.varNames.size());
    }

    int parse_alt() {
        int left = parse_concat();
        while (!eof() && peek() == '|') {
            ++pos;
            int right = parse_concat();
            AstNode n;
            n.kind = NodeKind::Alt;
            n.child[0] = left;
            n.child[1] = right;
            left = add(n);
        }
        return left;
    }

    bool at_concat_end() {
        if (eof()) return true;
        char c = peek();
        return c == '|' || c == ')' || c == '}';
    }

    int parse_concat() {
        if (at_concat_end())
            throw ParseError("empty subexpression (use ~ for epsilon)", pos);
        int left = parse_repeat();
        while (!at_concat_end()) {
            int right = parse_repeat();
            AstNode n;
            n.kind = NodeKind::Concat;
            n.child[0] = left;
            n.child[1] = right;
            left = add(n);
        }
        return left;
    }

    int parse_repeat() {
        int node = parse_atom();
        while (!eof() && (peek() == '+' || peek() == '*')) {
            char op = text[pos++];
            AstNode p;
            p.kind = NodeKind::Plus;
            p.child[0] = node;
            int plus = add(p);
            if (op == '+') {
                node = plus;
            } else {
                AstNode e;
                e.kind = NodeKind::Epsilon;
                int eps = add(e);
                AstNode a;
                a.kind = NodeKind::Alt;
                a.child[0] = plus;
                a.child[1] = eps;
                node = add(a);
            }
        }
        return node;
    }

    int parse_atom() {
        if (eof()) throw ParseError("unexpected end of pattern", pos);
        char c = peek();
        if (c == '(') {
            ++pos;
            int inner = parse_alt();
            if (eof() || peek() != ')')
                throw ParseError("unbalanced parenthesis", pos);
            ++pos;
            return inner;
        }
        if (c == '~') {
            ++pos;
            AstNode n;
            n.kind = NodeKind::Epsilon;
            return add(n);
        }
        if (c == '[') {
            ++pos;
            return parse_class();
        }
        if (c == '\\') {
            ++pos;
            if (pos >= text.size())
                throw ParseError("dangling escape", pos);
            AstNode n;
            n.kind = NodeKind::Literal;
            n.sym = std::string(1, text[pos++]);
            return add(n);
        }
        if (c == '$') {
            ++pos;
            return parse_var();
        }
        if (is_meta(c))
            throw ParseError(std::string("unexpected '") + c + "'", pos);
        ++pos;
        AstNode n;
        n.kind = NodeKind::Literal;
        n.sym = std::string(1, c);
        return add(n);
    }

    int parse_class() {
        std::vector<char> chars;
        while (pos < text.size() && text[pos] != ']') {
            char lo = text[pos];
            if (lo == '\\') {
                if (pos + 1 >= text.size())
                    throw ParseError("dangling escape in class", pos);
                lo = text[pos + 1];
                pos += 2;
            } else {
                ++pos;
            }
            if (pos + 1 < text.size() && text[pos] == '-' &&
                text[pos + 1] != ']') {
                char hi = text[pos + 1];
                pos += 2;
                if (hi < lo)
                    throw ParseError("inverted range in class", pos);
                for (char x = lo; x <= hi; ++x) chars.push_back(x);
            } else {
                chars.push_back(lo);
            }
        }
        if (pos >= text.size())
            throw ParseError("unterminated character class", pos);
        ++pos;  // ']'
        if (chars.empty())
            throw ParseError("empty character class", pos);
        int node = -1;
        for (char c : chars) {
            AstNode lit;
            lit.kind = NodeKind::Literal;
            lit.sym = std::string(1, c);
            int litId = add(lit);
            if (node < 0) {
                node = litId;
            } else {
                AstNode a;
                a.kind = NodeKind::Alt;
                a.child[0] = node;
                a.child[1] = litId;
                node = add(a);
            }
        }
        return node;
    }

    int parse_var() {
        size_t start = pos;
        if (pos >= text.size() || !is_name_start(text[pos]))
            throw ParseError("expected variable name after '$'", start);
        std::string name;
        while (pos < text.size() && is_name_char(text[pos]))
            name += text[pos++];
        int var = intern(name);
        if (!eof() && peek() == '{') {
            ++pos;
            int body = parse_alt();
            if (eof() || peek() != '}')
                throw ParseError("unbalanced brace", pos);
            ++pos;
            std::set<int> inner = vars_of_partial(body);
            if (inner.count(var))
                throw ParseError("variable '" + name +
                                     "' redefined inside its own definition",
                                 start);
            AstNode n;
            n.kind = NodeKind::VarDef;
            n.var = var;
            n.child[0] = body;
            return add(n);
        }
        AstNode n;
        n.kind = NodeKind::VarRecall;
        n.var = var;
        return add(n);
    }

    std::set<int> vars_of_partial(int node) {
        std::set<int> out;
        collect_vars(ast, node, out);
        return out;
    }

    static void collect_vars(const RegexAst& a, int node, std::set<int>& out) {
        const AstNode& n = a.at(node);
        if (n.kind == NodeKind::VarDef || n.kind == NodeKind::VarRecall)
            out.insert(n.var);
        for (int c : n.child)
            if (c >= 0) collect_vars(a, c, out);
    }
};

int arity(NodeKind k) {
    switch (k) {
        case NodeKind::Concat:
        case NodeKind::Alt:
            return 2;
        case NodeKind::Plus:
        case NodeKind::VarDef:
            return 1;
        default:
            return 0;
    }
}

// Renumbers variables into first-occurrence (pre-order) order and drops
// unused names.
void normalize_vars(RegexAst& ast) {
    std::vector<int> remap(ast.varNames.size() + 1, 0);
    std::vector<std::string> names;
    std::vector<int> stack = {ast.root};
    std::vector<int> order;
    // iterative pre-order
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        order.push_back(id);
        const AstNode& n = ast.at(id);
        for (int i = arity(n.kind) - 1; i >= 0; --i) stack.push_back(n.child[i]);
    }
    for (int id : order) {
        AstNode& n = ast.nodes[static_cast<size_t>(id)];
        if (n.kind == NodeKind::VarDef || n.kind == NodeKind::VarRecall) {
            if (remap[static_cast<size_t>(n.var)] == 0) {
                names.push_back(ast.varNames[static_cast<size_t>(n.var) - 1]);
                remap[static_cast<size_t>(n.var)] =
                    static_cast<int>(names.size());
            }
            n.var = remap[static_cast<size_t>(n.var)];
        }
    }
    ast.varNames = std::move(names);
}

}  // namespace

RegexAst parse(const std::string& text) {
    Parser p(text);
    int root = p.parse_alt();
    if (!p.eof())
        throw ParseError("trailing input", p.pos);
    p.ast.root = root;
    normalize_vars(p.ast);
    validate(p.ast);
    return std::move(p.ast);
}

std::set<int> vars_of(const RegexAst& ast, int node) {
    std::set<int> out;
    Parser::collect_vars(ast, node, out);
    return out;
}

std::set<int> vars(const RegexAst& ast) { return vars_of(ast, ast.root); }

void validate(const RegexAst& ast) {
    if (ast.root < 0 || ast.root >= static_cast<int>(ast.nodes.size()))
        throw ParseError("bad root", 0);
    for (size_t i = 0; i < ast.nodes.size(); ++i) {
        const AstNode& n = ast.nodes[i];
        int ar = arity(n.kind);
        for (int j = 0; j < 2; ++j) {
            if (j < ar) {
                if (n.child[j] < 0 ||
                    n.child[j] >= static_cast<int>(ast.nodes.size()))
                    throw ParseError("bad child index", 0);
            }
        }
        if (n.kind == NodeKind::VarDef || n.kind == NodeKind::VarRecall) {
            if (n.var < 1 || n.var > ast.var_count())
                throw ParseError("bad variable index", 0);
        }
        if (n.kind == NodeKind::VarDef) {
            std::set<int> inner = vars_of(ast, n.child[0]);
            if (inner.count(n.var))
                throw ParseError(
                    "variable '" + ast.varNames[static_cast<size_t>(n.var) - 1] +
                        "' redefined inside its own definition",
                    0);
        }
    }
}

int node_count(const RegexAst& ast) {
    std::vector<int> stack = {ast.root};
    int count = 0;
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        ++count;
        const AstNode& n = ast.at(id);
        for (int i = 0; i < arity(n.kind); ++i) stack.push_back(n.child[i]);
    }
    return count;
}

namespace {

struct Printed {
    std::string s;
    bool dangling;  // ends with a bare recall (next name char would glue)
};

std::string escape_sym(const Symbol& sym) {
    if (sym.size() != 1)
        throw std::runtime_error("cannot print multi-character symbol '" + sym +
                                 "'");
    char c = sym[0];
    if (is_meta(c) || is_space(c)) return std::string("\\") + c;
    return std::string(1, c);
}

int prec_of(const RegexAst& ast, int id) {
    switch (ast.at(id).kind) {
        case NodeKind::Alt:
            return 0;
        case NodeKind::Concat:
            return 1;
        case NodeKind::Plus:
            return 2;
        default:
            return 3;
    }
}

void join(Printed& left, const Printed& right, const std::string& sep) {
    left.s += sep;
    if (sep.empty() && left.dangling && !right.s.empty() &&
        is_name_char(right.s[0]))
        left.s += ' ';
    left.s += right.s;
    left.dangling = right.dangling;
}

Printed print_node(const RegexAst& ast, int id, int minPrec) {
    const AstNode& n = ast.at(id);
    Printed out{"", false};
    switch (n.kind) {
        case NodeKind::Literal:
            out.s = escape_sym(n.sym);
            break;
        case NodeKind::Epsilon:
            out.s = "~";
            break;
        case NodeKind::VarRecall:
            out.s = "$" + ast.varNames[static_cast<size_t>(n.var) - 1];
            out.dangling = true;
            break;
        case NodeKind::VarDef:
            out.s = "$" + ast.varNames[static_cast<size_t>(n.var) - 1] + "{" +
                    print_node(ast, n.child[0], 0).s + "}";
            break;
        case NodeKind::Plus: {
            Printed c = print_node(ast, n.child[0], 3);
            // '+' is not a name character, no glue risk
            out.s = c.s + "+";
            break;
        }
        case NodeKind::Concat: {
            out = print_node(ast, n.child[0], 1);
            Printed r = print_node(ast, n.child[1], 2);
            join(out, r, "");
            break;
        }
        case NodeKind::Alt: {
            out = print_node(ast, n.child[0], 0);
            Printed r = print_node(ast, n.child[1], 1);
            join(out, r, "|");
            break;
        }
    }
    if (prec_of(ast, id) < minPrec) {
        out.s = "(" + out.s + ")";
        out.dangling = false;
    }
    return out;
}

}  // namespace

std::string print(const RegexAst& ast) {
    return print_node(ast, ast.root, 0).s;
}

RegexAst rename_variable(const RegexAst& ast, const std::string& from,
                         const std::string& to) {
    int fromIdx = 0;
    for (size_t i = 0; i < ast.varNames.size(); ++i)
        if (ast.varNames[i] == from) fromIdx = static_cast<int>(i) + 1;
    RegexAst out = ast;
    if (fromIdx == 0) return out;
    int toIdx = 0;
    for (size_t i = 0; i < out.varNames.size(); ++i)
        if (out.varNames[i] == to) toIdx = static_cast<int>(i) + 1;
    if (toIdx == 0) {
        out.varNames[static_cast<size_t>(fromIdx) - 1] = to;
    } else {
        for (auto& n : out.nodes)
            if ((n.kind == NodeKind::VarDef || n.kind == NodeKind::VarRecall) &&
                n.var == fromIdx)
                n.var = toIdx;
    }
    normalize_vars(out);
    validate(out);
    return out;
}

// AstBuilder

int AstBuilder::add(AstNode n) {
    ast_.nodes.push_back(std::move(n));
    return static_cast<int>(ast_.nodes.size()) - 1;
}

int AstBuilder::intern(const std::string& name) {
    for (size_t i = 0; i < ast_.varNames.size(); ++i)
        if (ast_.varNames[i] == name) return static_cast<int>(i) + 1;
    ast_.varNames.push_back(name);
    return static_cast<int>(ast_.varNames.size());
}

int AstBuilder::lit(const Symbol& s) {
    AstNode n;
    n.kind = NodeKind::Literal;
    n.sym = s;
    return add(n);
}

int AstBuilder::eps() {
    AstNode n;
    n.kind = NodeKind::Epsilon;
    return add(n);
}

int AstBuilder::cat(int l, int r) {
    AstNode n;
    n.kind = NodeKind::Concat;
    n.child[0] = l;
    n.child[1] = r;
    return add(n);
}

int AstBuilder::cat(const std::vector<int>& parts) {
    if (parts.empty()) return eps();
    int acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) acc = cat(acc, parts[i]);
    return acc;
}

int AstBuilder::alt(int l, int r) {
    AstNode n;
    n.kind = NodeKind::Alt;
    n.child[0] = l;
    n.child[1] = r;
    return add(n);
}

int AstBuilder::alt(const std::vector<int>& parts) {
    if (parts.empty())
        throw std::runtime_error("alternation needs at least one branch");
    int acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) acc = alt(acc, parts[i]);
    return acc;
}

int AstBuilder::plus(int child) {
    AstNode n;
    n.kind = NodeKind::Plus;
    n.child[0] = child;
    return add(n);
}

int AstBuilder::star(int child) { return alt(plus(child), eps()); }

int AstBuilder::def(const std::string& name, int child) {
    AstNode n;
    n.kind = NodeKind::VarDef;
    n.var = intern(name);
    n.child[0] = child;
    return add(n);
}

int AstBuilder::recall(const std::string& name) {
    AstNode n;
    n.kind = NodeKind::VarRecall;
    n.var = intern(name);
    return add(n);
}

RegexAst AstBuilder::finish(int root) {
    ast_.root = root;
    normalize_vars(ast_);
    validate(ast_);
    return std::move(ast_);
}

}  // namespace rxm
