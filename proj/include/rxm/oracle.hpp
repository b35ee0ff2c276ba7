#pragma once

#include <set>

#include "rxm/mfa.hpp"
#include "rxm/syntax.hpp"

namespace rxm {

// Ground-truth semantics via the ref-word model. Nothing here is fast; the
// point is to be obviously correct and independent of the automaton engines.

// A ref-word is a label sequence over Char / Recall / Open / Close (Eps
// entries are ignored). Its dereference replaces each recall by the content
// bound by the nearest matching open/close pair to its left (epsilon when no
// pair exists). Throws on unbalanced or mismatched brackets.
Word dereference(const std::vector<Label>& refword);

// True iff w is in the language of the regex. Explicit BFS over
// (continuation, input position, environment) states.
bool oracle_match(const RegexAst& ast, const Word& w,
                  long long budget = 10'000'000);

// All words over the alphabet, up to maxlen, accepted by the regex.
std::set<Word> enumerate_language(const RegexAst& ast, int maxlen,
                                  const std::vector<Symbol>& alphabet,
                                  long long budget = 10'000'000);

}  // namespace rxm
