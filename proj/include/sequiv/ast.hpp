#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace sequiv {

// ---------------------------------------------------------------------------
// Program-level syntax: the mini-gringo dialect with tuples and pools.
// All AST values are immutable after construction and may be shared freely.
// ---------------------------------------------------------------------------

enum class ArithOp { Add, Sub, Mul, Div, Mod };
enum class Rel { Eq, Ne, Lt, Gt, Le, Ge };

const char *to_symbol(ArithOp op);
const char *to_symbol(Rel rel);

struct ProgramTerm;
using TermPtr = std::shared_ptr<const ProgramTerm>;

struct Numeral {
    long long value = 0;
};
struct SymbolicConstant {
    std::string name;
};
struct ProgramVariable {
    std::string name;
};
struct Infimum {};
struct Supremum {};
struct BinaryArith {
    ArithOp op;
    TermPtr left, right;
};
struct Interval {
    TermPtr lower, upper;
};
// Tuple terms have arity >= 2: unary tuples collapse to their element at
// construction, and the empty tuple exists only as an atom's argument list.
struct TermTuple {
    std::vector<TermPtr> elements;
};
struct TermPool {
    std::vector<TermPtr> alternatives; // >= 2
};

struct ProgramTerm {
    std::variant<Numeral, SymbolicConstant, ProgramVariable, Infimum, Supremum,
                 BinaryArith, Interval, TermTuple, TermPool>
        node;
};

TermPtr numeral(long long value);
TermPtr symbolic_constant(std::string name);
TermPtr program_variable(std::string name);
TermPtr infimum();
TermPtr supremum();
TermPtr arith(ArithOp op, TermPtr left, TermPtr right);
TermPtr interval(TermPtr lower, TermPtr upper);
TermPtr tuple(std::vector<TermPtr> elements);
TermPtr pool(std::vector<TermPtr> alternatives);

bool equal(const TermPtr &a, const TermPtr &b);
std::string to_string(const TermPtr &t);

// An ordinary atom p(t1, ..., tk) has exactly one alternative; a pooled atom
// p(t_1; ...; t_n) has one entry per alternative, each with its own arity.
struct Atom {
    std::string predicate;
    std::vector<std::vector<TermPtr>> alternatives{{}};

    bool pooled() const { return alternatives.size() > 1; }
};

enum class LiteralSign { Positive, Negated, DoublyNegated };

struct BodyAtomLiteral {
    LiteralSign sign = LiteralSign::Positive;
    Atom atom;
};
struct BodyComparison {
    Rel rel;
    TermPtr left, right;
};
using BodyLiteral = std::variant<BodyAtomLiteral, BodyComparison>;

struct Head {
    enum class Kind { Basic, Choice, Empty };
    Kind kind = Kind::Empty;
    std::optional<Atom> atom; // present unless Empty
};

struct Rule {
    Head head;
    std::vector<BodyLiteral> body;
};

struct Predicate {
    std::string name;
    int arity = 0;

    bool operator==(const Predicate &o) const { return name == o.name && arity == o.arity; }
    bool operator<(const Predicate &o) const
    {
        return name != o.name ? name < o.name : arity < o.arity;
    }
};

struct Program {
    std::vector<Rule> rules;
    std::set<Predicate> signature; // every (name, arity) occurring in a rule
};

// Builds a program and derives its predicate signature from the rules.
Program make_program(std::vector<Rule> rules);

bool equal(const Atom &a, const Atom &b);
bool equal(const BodyLiteral &a, const BodyLiteral &b);
bool equal(const Rule &a, const Rule &b);
bool equal(const Program &a, const Program &b);

// ---------------------------------------------------------------------------
// Formula-level syntax: two-sorted first-order formulas.
// ---------------------------------------------------------------------------

enum class Sort { Program, Integer };

struct TypedVar {
    std::string name;
    Sort sort = Sort::Program;

    bool operator==(const TypedVar &o) const { return name == o.name && sort == o.sort; }
    bool operator<(const TypedVar &o) const
    {
        return name != o.name ? name < o.name : sort < o.sort;
    }
};

struct FOTerm;
using FOTermPtr = std::shared_ptr<const FOTerm>;

struct FOVariable {
    TypedVar var;
};
struct IntegerLiteral {
    long long value = 0;
};
struct SymbolicLiteral {
    std::string name;
};
struct FOInfimum {};
struct FOSupremum {};
enum class FOArithOp { Add, Sub, Mul }; // "/" and "\" are compiled away by val
struct ArithApply {
    FOArithOp op;
    FOTermPtr left, right;
};
struct TupleApply {
    std::vector<FOTermPtr> elements; // arity >= 2
};

struct FOTerm {
    std::variant<FOVariable, IntegerLiteral, SymbolicLiteral, FOInfimum, FOSupremum,
                 ArithApply, TupleApply>
        node;
};

FOTermPtr fo_var(TypedVar v);
FOTermPtr fo_int(long long value);
FOTermPtr fo_symbol(std::string name);
FOTermPtr fo_infimum();
FOTermPtr fo_supremum();
FOTermPtr fo_arith(FOArithOp op, FOTermPtr left, FOTermPtr right);
FOTermPtr fo_tuple(std::vector<FOTermPtr> elements);

Sort sort_of(const FOTerm &t);
bool equal(const FOTermPtr &a, const FOTermPtr &b);
std::string to_string(const FOTermPtr &t);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Truth {};
struct Falsity {};
struct PredicateAtom {
    std::string predicate;
    bool primed = false;
    std::vector<FOTermPtr> args;
};
struct FOComparison {
    Rel rel;
    FOTermPtr left, right;
};
struct Not {
    FormulaPtr arg;
};
struct And {
    std::vector<FormulaPtr> args; // non-empty
};
struct Or {
    std::vector<FormulaPtr> args; // non-empty
};
struct Implies {
    FormulaPtr lhs, rhs;
};
struct Iff {
    FormulaPtr lhs, rhs;
};
struct ForAll {
    std::vector<TypedVar> vars; // names unique within the block
    FormulaPtr body;
};
struct Exists {
    std::vector<TypedVar> vars;
    FormulaPtr body;
};

struct Formula {
    std::variant<Truth, Falsity, PredicateAtom, FOComparison, Not, And, Or, Implies, Iff,
                 ForAll, Exists>
        node;
};

FormulaPtr truth();
FormulaPtr falsity();
FormulaPtr atom(std::string predicate, std::vector<FOTermPtr> args = {}, bool primed = false);
FormulaPtr comparison(Rel rel, FOTermPtr left, FOTermPtr right);
FormulaPtr negation(FormulaPtr arg);
FormulaPtr conjunction(std::vector<FormulaPtr> args);
FormulaPtr disjunction(std::vector<FormulaPtr> args);
FormulaPtr implication(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr equivalence(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr forall(std::vector<TypedVar> vars, FormulaPtr body);
FormulaPtr exists(std::vector<TypedVar> vars, FormulaPtr body);

bool equal(const FormulaPtr &a, const FormulaPtr &b);

// Single-line debug rendering with the internal variable names.
std::string to_string(const FormulaPtr &f);

// Free variables in first-occurrence order (no duplicates).
std::vector<TypedVar> free_variables(const FormulaPtr &f);

bool is_closed(const FormulaPtr &f);
bool contains_quantifier(const FormulaPtr &f);

// All variable names occurring in f, bound or free.
std::set<std::string> variable_names(const FormulaPtr &f);

// Capture-avoiding substitution of terms for free variables.
FOTermPtr substitute(const FOTermPtr &t, const std::map<TypedVar, FOTermPtr> &subst);
FormulaPtr substitute(const FormulaPtr &f, const std::map<TypedVar, FOTermPtr> &subst);

// Universally quantifies the free variables in first-occurrence order,
// renaming them to U-prefixed names. Closed input is returned unchanged.
FormulaPtr universal_closure(const FormulaPtr &f);

// Number of occurrences of "not", "and", "or", "->"; an n-ary And/Or counts
// as n-1 occurrences. Throws std::invalid_argument on non-propositional
// input (quantifiers, comparisons, "<->").
int logical_complexity(const FormulaPtr &f);

} // namespace sequiv
