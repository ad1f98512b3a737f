#pragma once

#include <set>
#include <string>
#include <vector>

#include "sequiv/ast.hpp"
#include "sequiv/translate.hpp"

namespace sequiv {

// The primed copy p' of every predicate stands for the atom's value in the
// "there" world. Primed names are disjoint from the unprimed signature by
// construction (the parser rejects the reserved suffix).
struct PrimedSignature {
    enum class Style { TickSuffix, TextSuffix };

    std::set<Predicate> entries;
    Style style = Style::TickSuffix;

    bool contains(const std::string &name, int arity) const
    {
        return entries.count({name, arity}) != 0;
    }

    static std::string primed_name(const std::string &name, Style style)
    {
        return style == Style::TickSuffix ? name + "'" : name + "__prime__";
    }
};

struct HTTheory {
    std::vector<FormulaPtr> axioms;   // p -> p', universally closed per arity
    std::vector<FormulaPtr> formulas; // classical semantics throughout
    bool mapped = false;              // whether the here-and-there map ran
};

// Replaces every predicate atom with its primed twin; comparisons,
// quantifiers and constants pass through.
FormulaPtr prime(const FormulaPtr &f, const PrimedSignature &sig);

// The recursive definition extended to quantifiers: atoms and constants stay,
// "not x" becomes "not x'", and an implication additionally asserts the
// primed implication.
FormulaPtr sigma_star_def(const FormulaPtr &f, const PrimedSignature &sig);

// The two-pass variant: each formula is duplicated, the first copy primes
// only atoms under negation, the second copy primes every atom and renames
// its bound variables so the pair can be conjoined or listed.
std::vector<FormulaPtr> sigma_star_impl(const std::vector<FormulaPtr> &formulas,
                                        const PrimedSignature &sig);

// One closed implication per (name, arity), sorted by name then arity.
std::vector<FormulaPtr> prime_axioms(const std::set<Predicate> &signature);

// Classical output passes through untouched; here-and-there output gets the
// implemented sigma* plus the prime axioms over the given signature.
HTTheory apply_if_needed(const TranslationOutput &translation, const std::set<Predicate> &signature);

// Same, but with the semantics forced (two-program mode shares one flag).
HTTheory apply_with_semantics(const TranslationOutput &translation,
                              const std::set<Predicate> &signature, Semantics semantics);

} // namespace sequiv
