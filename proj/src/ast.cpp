#include "sequiv/ast.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sequiv {

namespace {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

const char *to_symbol(ArithOp op)
{
    switch (op) {
        case ArithOp::Add: return "+";
        case ArithOp::Sub: return "-";
        case ArithOp::Mul: return "*";
        case ArithOp::Div: return "/";
        case ArithOp::Mod: return "\\";
    }
    return "?";
}

const char *to_symbol(Rel rel)
{
    switch (rel) {
        case Rel::Eq: return "=";
        case Rel::Ne: return "!=";
        case Rel::Lt: return "<";
        case Rel::Gt: return ">";
        case Rel::Le: return "<=";
        case Rel::Ge: return ">=";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Program terms
// ---------------------------------------------------------------------------

namespace {

TermPtr mk(ProgramTerm t) { return std::make_shared<const ProgramTerm>(std::move(t)); }

} // namespace

TermPtr numeral(long long value) { return mk({Numeral{value}}); }
TermPtr symbolic_constant(std::string name) { return mk({SymbolicConstant{std::move(name)}}); }
TermPtr program_variable(std::string name) { return mk({ProgramVariable{std::move(name)}}); }
TermPtr infimum() { return mk({Infimum{}}); }
TermPtr supremum() { return mk({Supremum{}}); }
TermPtr arith(ArithOp op, TermPtr left, TermPtr right)
{
    return mk({BinaryArith{op, std::move(left), std::move(right)}});
}
TermPtr interval(TermPtr lower, TermPtr upper)
{
    return mk({Interval{std::move(lower), std::move(upper)}});
}

TermPtr tuple(std::vector<TermPtr> elements)
{
    if (elements.size() == 1) {
        return elements.front();
    }
    return mk({TermTuple{std::move(elements)}});
}

TermPtr pool(std::vector<TermPtr> alternatives)
{
    if (alternatives.size() == 1) {
        return alternatives.front();
    }
    if (alternatives.size() < 2) {
        throw std::invalid_argument("pool requires at least one alternative");
    }
    return mk({TermPool{std::move(alternatives)}});
}

namespace {

bool term_vec_equal(const std::vector<TermPtr> &a, const std::vector<TermPtr> &b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!equal(a[i], b[i])) {
            return false;
        }
    }
    return true;
}

} // namespace

bool equal(const TermPtr &a, const TermPtr &b)
{
    if (a == b) {
        return true;
    }
    if (!a || !b || a->node.index() != b->node.index()) {
        return false;
    }
    return std::visit(
        overloaded{
            [&](const Numeral &x) { return x.value == std::get<Numeral>(b->node).value; },
            [&](const SymbolicConstant &x) {
                return x.name == std::get<SymbolicConstant>(b->node).name;
            },
            [&](const ProgramVariable &x) {
                return x.name == std::get<ProgramVariable>(b->node).name;
            },
            [&](const Infimum &) { return true; },
            [&](const Supremum &) { return true; },
            [&](const BinaryArith &x) {
                const auto &y = std::get<BinaryArith>(b->node);
                return x.op == y.op && equal(x.left, y.left) && equal(x.right, y.right);
            },
            [&](const Interval &x) {
                const auto &y = std::get<Interval>(b->node);
                return equal(x.lower, y.lower) && equal(x.upper, y.upper);
            },
            [&](const TermTuple &x) {
                return term_vec_equal(x.elements, std::get<TermTuple>(b->node).elements);
            },
            [&](const TermPool &x) {
                return term_vec_equal(x.alternatives, std::get<TermPool>(b->node).alternatives);
            },
        },
        a->node);
}

namespace {

// Precedence for the program-term printer: ";" 0, ".." 1, "+/-" 2, "*///\\" 3.
int term_prec(const ProgramTerm &t)
{
    return std::visit(overloaded{
                          [](const TermPool &) { return 0; },
                          [](const Interval &) { return 1; },
                          [](const BinaryArith &a) {
                              return a.op == ArithOp::Add || a.op == ArithOp::Sub ? 2 : 3;
                          },
                          [](const auto &) { return 4; },
                      },
                      t.node);
}

void print_term(std::ostream &os, const TermPtr &t, int min_prec)
{
    const int prec = term_prec(*t);
    const bool parens = prec < min_prec;
    if (parens) {
        os << "(";
    }
    std::visit(overloaded{
                   [&](const Numeral &x) { os << x.value; },
                   [&](const SymbolicConstant &x) { os << x.name; },
                   [&](const ProgramVariable &x) { os << x.name; },
                   [&](const Infimum &) { os << "#inf"; },
                   [&](const Supremum &) { os << "#sup"; },
                   [&](const BinaryArith &x) {
                       print_term(os, x.left, prec);
                       os << to_symbol(x.op);
                       // Left-associative: the right operand needs one level more.
                       print_term(os, x.right, prec + 1);
                   },
                   [&](const Interval &x) {
                       print_term(os, x.lower, prec + 1);
                       os << "..";
                       print_term(os, x.upper, prec + 1);
                   },
                   [&](const TermTuple &x) {
                       os << "(";
                       for (std::size_t i = 0; i < x.elements.size(); ++i) {
                           if (i > 0) {
                               os << ", ";
                           }
                           print_term(os, x.elements[i], 0);
                       }
                       os << ")";
                   },
                   [&](const TermPool &x) {
                       for (std::size_t i = 0; i < x.alternatives.size(); ++i) {
                           if (i > 0) {
                               os << "; ";
                           }
                           print_term(os, x.alternatives[i], 1);
                       }
                   },
               },
               t->node);
    if (parens) {
        os << ")";
    }
}

} // namespace

std::string to_string(const TermPtr &t)
{
    std::ostringstream os;
    print_term(os, t, 0);
    return os.str();
}

bool equal(const Atom &a, const Atom &b)
{
    if (a.predicate != b.predicate || a.alternatives.size() != b.alternatives.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.alternatives.size(); ++i) {
        if (!term_vec_equal(a.alternatives[i], b.alternatives[i])) {
            return false;
        }
    }
    return true;
}

bool equal(const BodyLiteral &a, const BodyLiteral &b)
{
    if (a.index() != b.index()) {
        return false;
    }
    if (const auto *x = std::get_if<BodyAtomLiteral>(&a)) {
        const auto &y = std::get<BodyAtomLiteral>(b);
        return x->sign == y.sign && equal(x->atom, y.atom);
    }
    const auto &x = std::get<BodyComparison>(a);
    const auto &y = std::get<BodyComparison>(b);
    return x.rel == y.rel && equal(x.left, y.left) && equal(x.right, y.right);
}

bool equal(const Rule &a, const Rule &b)
{
    if (a.head.kind != b.head.kind || a.body.size() != b.body.size()) {
        return false;
    }
    if (a.head.atom.has_value() != b.head.atom.has_value()) {
        return false;
    }
    if (a.head.atom && !equal(*a.head.atom, *b.head.atom)) {
        return false;
    }
    for (std::size_t i = 0; i < a.body.size(); ++i) {
        if (!equal(a.body[i], b.body[i])) {
            return false;
        }
    }
    return true;
}

bool equal(const Program &a, const Program &b)
{
    if (a.rules.size() != b.rules.size() || a.signature != b.signature) {
        return false;
    }
    for (std::size_t i = 0; i < a.rules.size(); ++i) {
        if (!equal(a.rules[i], b.rules[i])) {
            return false;
        }
    }
    return true;
}

Program make_program(std::vector<Rule> rules)
{
    Program p;
    p.rules = std::move(rules);
    auto add_atom = [&](const Atom &a) {
        for (const auto &alt : a.alternatives) {
            p.signature.insert({a.predicate, static_cast<int>(alt.size())});
        }
    };
    for (const auto &r : p.rules) {
        if (r.head.atom) {
            add_atom(*r.head.atom);
        }
        for (const auto &lit : r.body) {
            if (const auto *al = std::get_if<BodyAtomLiteral>(&lit)) {
                add_atom(al->atom);
            }
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// First-order terms
// ---------------------------------------------------------------------------

namespace {

FOTermPtr mkt(FOTerm t) { return std::make_shared<const FOTerm>(std::move(t)); }

} // namespace

FOTermPtr fo_var(TypedVar v) { return mkt({FOVariable{std::move(v)}}); }
FOTermPtr fo_int(long long value) { return mkt({IntegerLiteral{value}}); }
FOTermPtr fo_symbol(std::string name) { return mkt({SymbolicLiteral{std::move(name)}}); }
FOTermPtr fo_infimum() { return mkt({FOInfimum{}}); }
FOTermPtr fo_supremum() { return mkt({FOSupremum{}}); }
FOTermPtr fo_arith(FOArithOp op, FOTermPtr left, FOTermPtr right)
{
    return mkt({ArithApply{op, std::move(left), std::move(right)}});
}
FOTermPtr fo_tuple(std::vector<FOTermPtr> elements)
{
    if (elements.size() < 2) {
        throw std::invalid_argument("tuple terms have arity >= 2");
    }
    return mkt({TupleApply{std::move(elements)}});
}

Sort sort_of(const FOTerm &t)
{
    return std::visit(overloaded{
                          [](const FOVariable &v) { return v.var.sort; },
                          [](const IntegerLiteral &) { return Sort::Integer; },
                          [](const ArithApply &) { return Sort::Integer; },
                          [](const auto &) { return Sort::Program; },
                      },
                      t.node);
}

namespace {

bool fo_vec_equal(const std::vector<FOTermPtr> &a, const std::vector<FOTermPtr> &b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!equal(a[i], b[i])) {
            return false;
        }
    }
    return true;
}

} // namespace

bool equal(const FOTermPtr &a, const FOTermPtr &b)
{
    if (a == b) {
        return true;
    }
    if (!a || !b || a->node.index() != b->node.index()) {
        return false;
    }
    return std::visit(
        overloaded{
            [&](const FOVariable &x) { return x.var == std::get<FOVariable>(b->node).var; },
            [&](const IntegerLiteral &x) {
                return x.value == std::get<IntegerLiteral>(b->node).value;
            },
            [&](const SymbolicLiteral &x) {
                return x.name == std::get<SymbolicLiteral>(b->node).name;
            },
            [&](const FOInfimum &) { return true; },
            [&](const FOSupremum &) { return true; },
            [&](const ArithApply &x) {
                const auto &y = std::get<ArithApply>(b->node);
                return x.op == y.op && equal(x.left, y.left) && equal(x.right, y.right);
            },
            [&](const TupleApply &x) {
                return fo_vec_equal(x.elements, std::get<TupleApply>(b->node).elements);
            },
        },
        a->node);
}

namespace {

int fo_prec(const FOTerm &t)
{
    return std::visit(overloaded{
                          [](const ArithApply &a) { return a.op == FOArithOp::Mul ? 2 : 1; },
                          [](const auto &) { return 3; },
                      },
                      t.node);
}

const char *to_symbol(FOArithOp op)
{
    switch (op) {
        case FOArithOp::Add: return "+";
        case FOArithOp::Sub: return "-";
        case FOArithOp::Mul: return "*";
    }
    return "?";
}

void print_fo_term(std::ostream &os, const FOTermPtr &t, int min_prec)
{
    const int prec = fo_prec(*t);
    const bool parens = prec < min_prec;
    if (parens) {
        os << "(";
    }
    std::visit(overloaded{
                   [&](const FOVariable &x) { os << x.var.name; },
                   [&](const IntegerLiteral &x) { os << x.value; },
                   [&](const SymbolicLiteral &x) { os << x.name; },
                   [&](const FOInfimum &) { os << "#inf"; },
                   [&](const FOSupremum &) { os << "#sup"; },
                   [&](const ArithApply &x) {
                       print_fo_term(os, x.left, prec);
                       os << " " << to_symbol(x.op) << " ";
                       print_fo_term(os, x.right, prec + 1);
                   },
                   [&](const TupleApply &x) {
                       os << "(";
                       for (std::size_t i = 0; i < x.elements.size(); ++i) {
                           if (i > 0) {
                               os << ", ";
                           }
                           print_fo_term(os, x.elements[i], 0);
                       }
                       os << ")";
                   },
               },
               t->node);
    if (parens) {
        os << ")";
    }
}

} // namespace

std::string to_string(const FOTermPtr &t)
{
    std::ostringstream os;
    print_fo_term(os, t, 0);
    return os.str();
}

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

namespace {

FormulaPtr mkf(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

} // namespace

FormulaPtr truth() { return mkf({Truth{}}); }
FormulaPtr falsity() { return mkf({Falsity{}}); }
FormulaPtr atom(std::string predicate, std::vector<FOTermPtr> args, bool primed)
{
    return mkf({PredicateAtom{std::move(predicate), primed, std::move(args)}});
}
FormulaPtr comparison(Rel rel, FOTermPtr left, FOTermPtr right)
{
    return mkf({FOComparison{rel, std::move(left), std::move(right)}});
}
FormulaPtr negation(FormulaPtr arg) { return mkf({Not{std::move(arg)}}); }
FormulaPtr conjunction(std::vector<FormulaPtr> args)
{
    if (args.empty()) {
        throw std::invalid_argument("conjunction requires at least one operand");
    }
    return mkf({And{std::move(args)}});
}
FormulaPtr disjunction(std::vector<FormulaPtr> args)
{
    if (args.empty()) {
        throw std::invalid_argument("disjunction requires at least one operand");
    }
    return mkf({Or{std::move(args)}});
}
FormulaPtr implication(FormulaPtr lhs, FormulaPtr rhs)
{
    return mkf({Implies{std::move(lhs), std::move(rhs)}});
}
FormulaPtr equivalence(FormulaPtr lhs, FormulaPtr rhs)
{
    return mkf({Iff{std::move(lhs), std::move(rhs)}});
}
FormulaPtr forall(std::vector<TypedVar> vars, FormulaPtr body)
{
    if (vars.empty()) {
        return body;
    }
    return mkf({ForAll{std::move(vars), std::move(body)}});
}
FormulaPtr exists(std::vector<TypedVar> vars, FormulaPtr body)
{
    if (vars.empty()) {
        return body;
    }
    return mkf({Exists{std::move(vars), std::move(body)}});
}

namespace {

bool formula_vec_equal(const std::vector<FormulaPtr> &a, const std::vector<FormulaPtr> &b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!equal(a[i], b[i])) {
            return false;
        }
    }
    return true;
}

} // namespace

bool equal(const FormulaPtr &a, const FormulaPtr &b)
{
    if (a == b) {
        return true;
    }
    if (!a || !b || a->node.index() != b->node.index()) {
        return false;
    }
    return std::visit(
        overloaded{
            [&](const Truth &) { return true; },
            [&](const Falsity &) { return true; },
            [&](const PredicateAtom &x) {
                const auto &y = std::get<PredicateAtom>(b->node);
                return x.predicate == y.predicate && x.primed == y.primed &&
                       fo_vec_equal(x.args, y.args);
            },
            [&](const FOComparison &x) {
                const auto &y = std::get<FOComparison>(b->node);
                return x.rel == y.rel && equal(x.left, y.left) && equal(x.right, y.right);
            },
            [&](const Not &x) { return equal(x.arg, std::get<Not>(b->node).arg); },
            [&](const And &x) { return formula_vec_equal(x.args, std::get<And>(b->node).args); },
            [&](const Or &x) { return formula_vec_equal(x.args, std::get<Or>(b->node).args); },
            [&](const Implies &x) {
                const auto &y = std::get<Implies>(b->node);
                return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
            },
            [&](const Iff &x) {
                const auto &y = std::get<Iff>(b->node);
                return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
            },
            [&](const ForAll &x) {
                const auto &y = std::get<ForAll>(b->node);
                return x.vars == y.vars && equal(x.body, y.body);
            },
            [&](const Exists &x) {
                const auto &y = std::get<Exists>(b->node);
                return x.vars == y.vars && equal(x.body, y.body);
            },
        },
        a->node);
}

namespace {

bool self_delimited(const Formula &f)
{
    // These print their own surrounding parentheses.
    return std::holds_alternative<FOComparison>(f.node) || std::holds_alternative<And>(f.node) ||
           std::holds_alternative<Or>(f.node) || std::holds_alternative<Implies>(f.node) ||
           std::holds_alternative<Iff>(f.node);
}

void print_formula(std::ostream &os, const FormulaPtr &f)
{
    auto print_quantified = [&](const char *kw, const std::vector<TypedVar> &vars,
                                const FormulaPtr &body) {
        os << kw;
        for (const auto &v : vars) {
            os << " " << v.name;
        }
        os << " ";
        if (self_delimited(*body)) {
            print_formula(os, body);
        }
        else {
            os << "(";
            print_formula(os, body);
            os << ")";
        }
    };
    auto print_nary = [&](const std::vector<FormulaPtr> &args, const char *sep) {
        os << "(";
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i > 0) {
                os << " " << sep << " ";
            }
            print_formula(os, args[i]);
        }
        os << ")";
    };
    std::visit(overloaded{
                   [&](const Truth &) { os << "#true"; },
                   [&](const Falsity &) { os << "#false"; },
                   [&](const PredicateAtom &x) {
                       os << x.predicate;
                       if (x.primed) {
                           os << "'";
                       }
                       if (!x.args.empty()) {
                           os << "(";
                           for (std::size_t i = 0; i < x.args.size(); ++i) {
                               if (i > 0) {
                                   os << ", ";
                               }
                               print_fo_term(os, x.args[i], 0);
                           }
                           os << ")";
                       }
                   },
                   [&](const FOComparison &x) {
                       os << "(";
                       print_fo_term(os, x.left, 0);
                       os << " " << to_symbol(x.rel) << " ";
                       print_fo_term(os, x.right, 0);
                       os << ")";
                   },
                   [&](const Not &x) {
                       os << "not ";
                       print_formula(os, x.arg);
                   },
                   [&](const And &x) { print_nary(x.args, "and"); },
                   [&](const Or &x) { print_nary(x.args, "or"); },
                   [&](const Implies &x) {
                       os << "(";
                       print_formula(os, x.lhs);
                       os << " -> ";
                       print_formula(os, x.rhs);
                       os << ")";
                   },
                   [&](const Iff &x) {
                       os << "(";
                       print_formula(os, x.lhs);
                       os << " <-> ";
                       print_formula(os, x.rhs);
                       os << ")";
                   },
                   [&](const ForAll &x) { print_quantified("forall", x.vars, x.body); },
                   [&](const Exists &x) { print_quantified("exists", x.vars, x.body); },
               },
               f->node);
}

} // namespace

std::string to_string(const FormulaPtr &f)
{
    std::ostringstream os;
    print_formula(os, f);
    return os.str();
}

namespace {

void term_variables(const FOTermPtr &t, std::vector<TypedVar> &out)
{
    std::visit(overloaded{
                   [&](const FOVariable &x) { out.push_back(x.var); },
                   [&](const ArithApply &x) {
                       term_variables(x.left, out);
                       term_variables(x.right, out);
                   },
                   [&](const TupleApply &x) {
                       for (const auto &e : x.elements) {
                           term_variables(e, out);
                       }
                   },
                   [&](const auto &) {},
               },
               t->node);
}

void collect_free(const FormulaPtr &f, std::set<TypedVar> &bound, std::vector<TypedVar> &order,
                  std::set<TypedVar> &seen)
{
    auto on_var = [&](const TypedVar &v) {
        if (bound.count(v) == 0 && seen.insert(v).second) {
            order.push_back(v);
        }
    };
    auto on_term = [&](const FOTermPtr &t) {
        std::vector<TypedVar> vars;
        term_variables(t, vars);
        for (const auto &v : vars) {
            on_var(v);
        }
    };
    auto on_block = [&](const std::vector<TypedVar> &vars, const FormulaPtr &body) {
        std::vector<TypedVar> newly;
        for (const auto &v : vars) {
            if (bound.insert(v).second) {
                newly.push_back(v);
            }
        }
        collect_free(body, bound, order, seen);
        for (const auto &v : newly) {
            bound.erase(v);
        }
    };
    std::visit(overloaded{
                   [&](const Truth &) {},
                   [&](const Falsity &) {},
                   [&](const PredicateAtom &x) {
                       for (const auto &a : x.args) {
                           on_term(a);
                       }
                   },
                   [&](const FOComparison &x) {
                       on_term(x.left);
                       on_term(x.right);
                   },
                   [&](const Not &x) { collect_free(x.arg, bound, order, seen); },
                   [&](const And &x) {
                       for (const auto &a : x.args) {
                           collect_free(a, bound, order, seen);
                       }
                   },
                   [&](const Or &x) {
                       for (const auto &a : x.args) {
                           collect_free(a, bound, order, seen);
                       }
                   },
                   [&](const Implies &x) {
                       collect_free(x.lhs, bound, order, seen);
                       collect_free(x.rhs, bound, order, seen);
                   },
                   [&](const Iff &x) {
                       collect_free(x.lhs, bound, order, seen);
                       collect_free(x.rhs, bound, order, seen);
                   },
                   [&](const ForAll &x) { on_block(x.vars, x.body); },
                   [&](const Exists &x) { on_block(x.vars, x.body); },
               },
               f->node);
}

} // namespace

std::vector<TypedVar> free_variables(const FormulaPtr &f)
{
    std::set<TypedVar> bound;
    std::set<TypedVar> seen;
    std::vector<TypedVar> order;
    collect_free(f, bound, order, seen);
    return order;
}

bool is_closed(const FormulaPtr &f) { return free_variables(f).empty(); }

bool contains_quantifier(const FormulaPtr &f)
{
    return std::visit(
        overloaded{
            [&](const Not &x) { return contains_quantifier(x.arg); },
            [&](const And &x) {
                return std::any_of(x.args.begin(), x.args.end(),
                                   [](const FormulaPtr &a) { return contains_quantifier(a); });
            },
            [&](const Or &x) {
                return std::any_of(x.args.begin(), x.args.end(),
                                   [](const FormulaPtr &a) { return contains_quantifier(a); });
            },
            [&](const Implies &x) {
                return contains_quantifier(x.lhs) || contains_quantifier(x.rhs);
            },
            [&](const Iff &x) { return contains_quantifier(x.lhs) || contains_quantifier(x.rhs); },
            [&](const ForAll &) { return true; },
            [&](const Exists &) { return true; },
            [&](const auto &) { return false; },
        },
        f->node);
}

namespace {

void collect_names(const FormulaPtr &f, std::set<std::string> &out)
{
    auto on_term = [&](const FOTermPtr &t) {
        std::vector<TypedVar> vars;
        term_variables(t, vars);
        for (const auto &v : vars) {
            out.insert(v.name);
        }
    };
    std::visit(overloaded{
                   [&](const PredicateAtom &x) {
                       for (const auto &a : x.args) {
                           on_term(a);
                       }
                   },
                   [&](const FOComparison &x) {
                       on_term(x.left);
                       on_term(x.right);
                   },
                   [&](const Not &x) { collect_names(x.arg, out); },
                   [&](const And &x) {
                       for (const auto &a : x.args) {
                           collect_names(a, out);
                       }
                   },
                   [&](const Or &x) {
                       for (const auto &a : x.args) {
                           collect_names(a, out);
                       }
                   },
                   [&](const Implies &x) {
                       collect_names(x.lhs, out);
                       collect_names(x.rhs, out);
                   },
                   [&](const Iff &x) {
                       collect_names(x.lhs, out);
                       collect_names(x.rhs, out);
                   },
                   [&](const ForAll &x) {
                       for (const auto &v : x.vars) {
                           out.insert(v.name);
                       }
                       collect_names(x.body, out);
                   },
                   [&](const Exists &x) {
                       for (const auto &v : x.vars) {
                           out.insert(v.name);
                       }
                       collect_names(x.body, out);
                   },
                   [&](const auto &) {},
               },
               f->node);
}

} // namespace

std::set<std::string> variable_names(const FormulaPtr &f)
{
    std::set<std::string> out;
    collect_names(f, out);
    return out;
}

FOTermPtr substitute(const FOTermPtr &t, const std::map<TypedVar, FOTermPtr> &subst)
{
    if (subst.empty()) {
        return t;
    }
    return std::visit(
        overloaded{
            [&](const FOVariable &x) -> FOTermPtr {
                auto it = subst.find(x.var);
                return it != subst.end() ? it->second : t;
            },
            [&](const ArithApply &x) -> FOTermPtr {
                return fo_arith(x.op, substitute(x.left, subst), substitute(x.right, subst));
            },
            [&](const TupleApply &x) -> FOTermPtr {
                std::vector<FOTermPtr> elems;
                elems.reserve(x.elements.size());
                for (const auto &e : x.elements) {
                    elems.push_back(substitute(e, subst));
                }
                return fo_tuple(std::move(elems));
            },
            [&](const auto &) -> FOTermPtr { return t; },
        },
        t->node);
}

namespace {

std::set<std::string> replacement_names(const std::map<TypedVar, FOTermPtr> &subst)
{
    std::set<std::string> names;
    for (const auto &[var, term] : subst) {
        std::vector<TypedVar> vars;
        term_variables(term, vars);
        for (const auto &v : vars) {
            names.insert(v.name);
        }
    }
    return names;
}

FormulaPtr substitute_impl(const FormulaPtr &f, std::map<TypedVar, FOTermPtr> subst)
{
    if (subst.empty()) {
        return f;
    }
    auto sub_block = [&](const std::vector<TypedVar> &vars, const FormulaPtr &body,
                         bool universal) -> FormulaPtr {
        auto inner = subst;
        for (const auto &v : vars) {
            inner.erase(v);
        }
        // Rename binders that would capture a variable of a replacement term.
        const auto captured = replacement_names(inner);
        std::vector<TypedVar> new_vars = vars;
        std::map<TypedVar, FOTermPtr> renames;
        if (!captured.empty()) {
            auto used = variable_names(body);
            used.insert(captured.begin(), captured.end());
            for (auto &v : new_vars) {
                if (captured.count(v.name) != 0) {
                    int n = 0;
                    std::string fresh;
                    do {
                        fresh = v.name + "_" + std::to_string(++n);
                    } while (used.count(fresh) != 0);
                    used.insert(fresh);
                    TypedVar nv{fresh, v.sort};
                    renames.emplace(v, fo_var(nv));
                    v = nv;
                }
            }
        }
        FormulaPtr new_body = body;
        if (!renames.empty()) {
            new_body = substitute_impl(new_body, renames);
        }
        new_body = substitute_impl(new_body, inner);
        return universal ? forall(std::move(new_vars), std::move(new_body))
                         : exists(std::move(new_vars), std::move(new_body));
    };
    auto sub_vec = [&](const std::vector<FormulaPtr> &args) {
        std::vector<FormulaPtr> out;
        out.reserve(args.size());
        for (const auto &a : args) {
            out.push_back(substitute_impl(a, subst));
        }
        return out;
    };
    return std::visit(
        overloaded{
            [&](const PredicateAtom &x) -> FormulaPtr {
                std::vector<FOTermPtr> args;
                args.reserve(x.args.size());
                for (const auto &a : x.args) {
                    args.push_back(substitute(a, subst));
                }
                return atom(x.predicate, std::move(args), x.primed);
            },
            [&](const FOComparison &x) -> FormulaPtr {
                return comparison(x.rel, substitute(x.left, subst), substitute(x.right, subst));
            },
            [&](const Not &x) -> FormulaPtr { return negation(substitute_impl(x.arg, subst)); },
            [&](const And &x) -> FormulaPtr { return conjunction(sub_vec(x.args)); },
            [&](const Or &x) -> FormulaPtr { return disjunction(sub_vec(x.args)); },
            [&](const Implies &x) -> FormulaPtr {
                return implication(substitute_impl(x.lhs, subst), substitute_impl(x.rhs, subst));
            },
            [&](const Iff &x) -> FormulaPtr {
                return equivalence(substitute_impl(x.lhs, subst), substitute_impl(x.rhs, subst));
            },
            [&](const ForAll &x) -> FormulaPtr { return sub_block(x.vars, x.body, true); },
            [&](const Exists &x) -> FormulaPtr { return sub_block(x.vars, x.body, false); },
            [&](const auto &) -> FormulaPtr { return f; },
        },
        f->node);
}

} // namespace

FormulaPtr substitute(const FormulaPtr &f, const std::map<TypedVar, FOTermPtr> &subst)
{
    return substitute_impl(f, subst);
}

FormulaPtr universal_closure(const FormulaPtr &f)
{
    const auto free = free_variables(f);
    if (free.empty()) {
        return f;
    }
    const auto used = variable_names(f);
    std::map<TypedVar, FOTermPtr> renames;
    std::vector<TypedVar> closure_vars;
    std::set<std::string> taken;
    int counter = 0;
    for (const auto &v : free) {
        std::string name;
        do {
            name = "U" + std::to_string(++counter);
            // A candidate is available if nothing else in the formula uses it;
            // the variable keeping its own U-name is fine.
        } while ((used.count(name) != 0 && name != v.name) || taken.count(name) != 0);
        taken.insert(name);
        TypedVar cv{name, v.sort};
        closure_vars.push_back(cv);
        if (!(cv == v)) {
            renames.emplace(v, fo_var(cv));
        }
    }
    return forall(std::move(closure_vars), substitute(f, renames));
}

int logical_complexity(const FormulaPtr &f)
{
    return std::visit(
        overloaded{
            [&](const Truth &) { return 0; },
            [&](const Falsity &) { return 0; },
            [&](const PredicateAtom &) { return 0; },
            [&](const FOComparison &) -> int {
                throw std::invalid_argument("logical_complexity: comparisons are not propositional");
            },
            [&](const Not &x) { return 1 + logical_complexity(x.arg); },
            [&](const And &x) {
                int n = static_cast<int>(x.args.size()) - 1;
                for (const auto &a : x.args) {
                    n += logical_complexity(a);
                }
                return n;
            },
            [&](const Or &x) {
                int n = static_cast<int>(x.args.size()) - 1;
                for (const auto &a : x.args) {
                    n += logical_complexity(a);
                }
                return n;
            },
            [&](const Implies &x) {
                return 1 + logical_complexity(x.lhs) + logical_complexity(x.rhs);
            },
            [&](const Iff &) -> int {
                throw std::invalid_argument("logical_complexity: '<->' is not propositional");
            },
            [&](const ForAll &) -> int {
                throw std::invalid_argument("logical_complexity: input is quantified");
            },
            [&](const Exists &) -> int {
                throw std::invalid_argument("logical_complexity: input is quantified");
            },
        },
        f->node);
}

} // namespace sequiv
