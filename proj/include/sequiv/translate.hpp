#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sequiv/ast.hpp"

namespace sequiv {

enum class Semantics { Classical, HereAndThere };

// Hands out variable names per prefix (Z/U for program sorts, I/J/K/Q/R for
// the val-level variables), skipping names that already occur in the rule.
class FreshNameSupply {
public:
    FreshNameSupply() = default;
    explicit FreshNameSupply(std::set<std::string> avoid) : avoid_(std::move(avoid)) {}

    TypedVar fresh(char prefix, Sort sort);

private:
    std::map<char, int> counters_;
    std::set<std::string> avoid_;
};

struct TranslationOutput {
    std::vector<FormulaPtr> formulas; // one per rule, in source order
    Semantics semantics = Semantics::Classical;
    std::set<Predicate> signature;
};

// val(t, Z): Z is one of the values of the program term t. The target
// variable must not occur in t.
FormulaPtr val(const TermPtr &t, const TypedVar &target, FreshNameSupply &fresh);

// Body and head translations.
FormulaPtr tau_b(const BodyLiteral &literal, FreshNameSupply &fresh);
FormulaPtr tau_h(const Head &head, FreshNameSupply &fresh);

// Universal closure of body -> head; an empty body contributes #true.
FormulaPtr tau_star_rule(const Rule &rule);

TranslationOutput tau_star_program(const Program &program);

// True when the rule uses "not", "not not", or a choice head; such rules
// switch the output semantics to here-and-there.
bool requires_ht_semantics(const Rule &rule);

} // namespace sequiv
