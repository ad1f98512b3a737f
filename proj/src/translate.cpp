#include "sequiv/translate.hpp"

#include <stdexcept>
#include <variant>

namespace sequiv {

namespace {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

void term_variable_names(const TermPtr &t, std::set<std::string> &out)
{
    std::visit(overloaded{
                   [&](const ProgramVariable &v) { out.insert(v.name); },
                   [&](const BinaryArith &a) {
                       term_variable_names(a.left, out);
                       term_variable_names(a.right, out);
                   },
                   [&](const Interval &i) {
                       term_variable_names(i.lower, out);
                       term_variable_names(i.upper, out);
                   },
                   [&](const TermTuple &tt) {
                       for (const auto &e : tt.elements) {
                           term_variable_names(e, out);
                       }
                   },
                   [&](const TermPool &p) {
                       for (const auto &a : p.alternatives) {
                           term_variable_names(a, out);
                       }
                   },
                   [&](const auto &) {},
               },
               t->node);
}

std::set<std::string> rule_variable_names(const Rule &rule)
{
    std::set<std::string> names;
    auto on_atom = [&](const Atom &a) {
        for (const auto &alt : a.alternatives) {
            for (const auto &t : alt) {
                term_variable_names(t, names);
            }
        }
    };
    if (rule.head.atom) {
        on_atom(*rule.head.atom);
    }
    for (const auto &lit : rule.body) {
        std::visit(overloaded{
                       [&](const BodyAtomLiteral &al) { on_atom(al.atom); },
                       [&](const BodyComparison &c) {
                           term_variable_names(c.left, names);
                           term_variable_names(c.right, names);
                       },
                   },
                   lit);
    }
    return names;
}

FormulaPtr var_eq(const TypedVar &z, FOTermPtr rhs)
{
    return comparison(Rel::Eq, fo_var(z), std::move(rhs));
}

} // namespace

TypedVar FreshNameSupply::fresh(char prefix, Sort sort)
{
    std::string name;
    do {
        name = std::string(1, prefix) + std::to_string(++counters_[prefix]);
    } while (avoid_.count(name) != 0);
    return {name, sort};
}

FormulaPtr val(const TermPtr &t, const TypedVar &target, FreshNameSupply &fresh)
{
    return std::visit(
        overloaded{
            [&](const Numeral &n) { return var_eq(target, fo_int(n.value)); },
            [&](const SymbolicConstant &c) { return var_eq(target, fo_symbol(c.name)); },
            [&](const ProgramVariable &v) {
                return var_eq(target, fo_var({v.name, Sort::Program}));
            },
            [&](const Infimum &) { return var_eq(target, fo_infimum()); },
            [&](const Supremum &) { return var_eq(target, fo_supremum()); },
            [&](const BinaryArith &a) -> FormulaPtr {
                switch (a.op) {
                    case ArithOp::Add:
                    case ArithOp::Sub:
                    case ArithOp::Mul: {
                        const auto i = fresh.fresh('I', Sort::Integer);
                        const auto j = fresh.fresh('J', Sort::Integer);
                        const FOArithOp op = a.op == ArithOp::Add   ? FOArithOp::Add
                                             : a.op == ArithOp::Sub ? FOArithOp::Sub
                                                                    : FOArithOp::Mul;
                        return exists({i, j},
                                      conjunction({
                                          var_eq(target, fo_arith(op, fo_var(i), fo_var(j))),
                                          val(a.left, i, fresh),
                                          val(a.right, j, fresh),
                                      }));
                    }
                    case ArithOp::Div:
                    case ArithOp::Mod: {
                        // I = J * Q + R with J != 0, 0 <= R < Q; "/" names the
                        // quotient and "\" the remainder.
                        const auto i = fresh.fresh('I', Sort::Integer);
                        const auto j = fresh.fresh('J', Sort::Integer);
                        const auto q = fresh.fresh('Q', Sort::Integer);
                        const auto r = fresh.fresh('R', Sort::Integer);
                        const auto &result = a.op == ArithOp::Div ? q : r;
                        return exists(
                            {i, j, q, r},
                            conjunction({
                                var_eq(i, fo_arith(FOArithOp::Add,
                                                   fo_arith(FOArithOp::Mul, fo_var(j), fo_var(q)),
                                                   fo_var(r))),
                                val(a.left, i, fresh),
                                val(a.right, j, fresh),
                                comparison(Rel::Ne, fo_var(j), fo_int(0)),
                                comparison(Rel::Ge, fo_var(r), fo_int(0)),
                                comparison(Rel::Lt, fo_var(r), fo_var(q)),
                                var_eq(target, fo_var(result)),
                            }));
                    }
                }
                throw std::logic_error("unreachable arithmetic operator");
            },
            [&](const Interval &iv) {
                const auto i = fresh.fresh('I', Sort::Integer);
                const auto j = fresh.fresh('J', Sort::Integer);
                const auto k = fresh.fresh('K', Sort::Integer);
                return exists({i, j, k}, conjunction({
                                             val(iv.lower, i, fresh),
                                             val(iv.upper, j, fresh),
                                             comparison(Rel::Le, fo_var(i), fo_var(k)),
                                             comparison(Rel::Le, fo_var(k), fo_var(j)),
                                             var_eq(target, fo_var(k)),
                                         }));
            },
            [&](const TermTuple &tt) {
                std::vector<TypedVar> vars;
                vars.reserve(tt.elements.size());
                for (std::size_t n = 0; n < tt.elements.size(); ++n) {
                    vars.push_back(fresh.fresh('I', Sort::Program));
                }
                std::vector<FOTermPtr> elems;
                elems.reserve(vars.size());
                for (const auto &v : vars) {
                    elems.push_back(fo_var(v));
                }
                std::vector<FormulaPtr> conj;
                conj.push_back(var_eq(target, fo_tuple(std::move(elems))));
                for (std::size_t n = 0; n < tt.elements.size(); ++n) {
                    conj.push_back(val(tt.elements[n], vars[n], fresh));
                }
                return exists(std::move(vars), conjunction(std::move(conj)));
            },
            [&](const TermPool &p) {
                std::vector<TypedVar> vars;
                vars.reserve(p.alternatives.size());
                for (std::size_t n = 0; n < p.alternatives.size(); ++n) {
                    vars.push_back(fresh.fresh('I', Sort::Program));
                }
                std::vector<FormulaPtr> conj;
                for (std::size_t n = 0; n < p.alternatives.size(); ++n) {
                    conj.push_back(val(p.alternatives[n], vars[n], fresh));
                }
                std::vector<FormulaPtr> options;
                options.reserve(vars.size());
                for (const auto &v : vars) {
                    options.push_back(var_eq(target, fo_var(v)));
                }
                conj.push_back(disjunction(std::move(options)));
                return exists(std::move(vars), conjunction(std::move(conj)));
            },
        },
        t->node);
}

namespace {

FormulaPtr plain_atom(const std::string &predicate, const std::vector<TypedVar> &vars)
{
    std::vector<FOTermPtr> args;
    args.reserve(vars.size());
    for (const auto &v : vars) {
        args.push_back(fo_var(v));
    }
    return atom(predicate, std::move(args));
}

FormulaPtr signed_atom(LiteralSign sign, FormulaPtr a)
{
    switch (sign) {
        case LiteralSign::Positive: return a;
        case LiteralSign::Negated: return negation(std::move(a));
        case LiteralSign::DoublyNegated: return negation(negation(std::move(a)));
    }
    throw std::logic_error("unreachable literal sign");
}

// tau_b for one alternative of an atom.
FormulaPtr tau_b_simple(LiteralSign sign, const std::string &predicate,
                        const std::vector<TermPtr> &terms, FreshNameSupply &fresh)
{
    if (terms.empty()) {
        return signed_atom(sign, atom(predicate));
    }
    std::vector<TypedVar> vars;
    vars.reserve(terms.size());
    for (std::size_t n = 0; n < terms.size(); ++n) {
        vars.push_back(fresh.fresh('Z', Sort::Program));
    }
    std::vector<FormulaPtr> conj;
    for (std::size_t n = 0; n < terms.size(); ++n) {
        conj.push_back(val(terms[n], vars[n], fresh));
    }
    conj.push_back(signed_atom(sign, plain_atom(predicate, vars)));
    return exists(std::move(vars), conjunction(std::move(conj)));
}

// tau_h for one alternative of an atom.
FormulaPtr tau_h_simple(Head::Kind kind, const std::string &predicate,
                        const std::vector<TermPtr> &terms, FreshNameSupply &fresh)
{
    auto consequent = [&](const std::vector<TypedVar> &vars) {
        FormulaPtr a = plain_atom(predicate, vars);
        if (kind == Head::Kind::Choice) {
            return disjunction({a, negation(a)});
        }
        return a;
    };
    if (terms.empty()) {
        return consequent({});
    }
    std::vector<TypedVar> vars;
    vars.reserve(terms.size());
    for (std::size_t n = 0; n < terms.size(); ++n) {
        vars.push_back(fresh.fresh('Z', Sort::Program));
    }
    std::vector<FormulaPtr> vals;
    for (std::size_t n = 0; n < terms.size(); ++n) {
        vals.push_back(val(terms[n], vars[n], fresh));
    }
    FormulaPtr antecedent = vals.size() == 1 ? vals.front() : conjunction(std::move(vals));
    FormulaPtr body = implication(std::move(antecedent), consequent(vars));
    return forall(std::move(vars), std::move(body));
}

} // namespace

FormulaPtr tau_b(const BodyLiteral &literal, FreshNameSupply &fresh)
{
    return std::visit(
        overloaded{
            [&](const BodyAtomLiteral &al) -> FormulaPtr {
                if (!al.atom.pooled()) {
                    return tau_b_simple(al.sign, al.atom.predicate, al.atom.alternatives.front(),
                                        fresh);
                }
                // A pooled atom distributes disjunctively, for all signs.
                std::vector<FormulaPtr> options;
                options.reserve(al.atom.alternatives.size());
                for (const auto &alt : al.atom.alternatives) {
                    options.push_back(tau_b_simple(al.sign, al.atom.predicate, alt, fresh));
                }
                return disjunction(std::move(options));
            },
            [&](const BodyComparison &c) -> FormulaPtr {
                const auto z1 = fresh.fresh('Z', Sort::Program);
                const auto z2 = fresh.fresh('Z', Sort::Program);
                return exists({z1, z2}, conjunction({
                                            val(c.left, z1, fresh),
                                            val(c.right, z2, fresh),
                                            comparison(c.rel, fo_var(z1), fo_var(z2)),
                                        }));
            },
        },
        literal);
}

FormulaPtr tau_h(const Head &head, FreshNameSupply &fresh)
{
    if (head.kind == Head::Kind::Empty) {
        return falsity();
    }
    const Atom &a = *head.atom;
    if (!a.pooled()) {
        return tau_h_simple(head.kind, a.predicate, a.alternatives.front(), fresh);
    }
    // A pooled atom in the head distributes conjunctively.
    std::vector<FormulaPtr> parts;
    parts.reserve(a.alternatives.size());
    for (const auto &alt : a.alternatives) {
        parts.push_back(tau_h_simple(head.kind, a.predicate, alt, fresh));
    }
    return conjunction(std::move(parts));
}

FormulaPtr tau_star_rule(const Rule &rule)
{
    FreshNameSupply fresh{rule_variable_names(rule)};
    std::vector<FormulaPtr> body;
    body.reserve(rule.body.size());
    for (const auto &lit : rule.body) {
        body.push_back(tau_b(lit, fresh));
    }
    FormulaPtr antecedent = body.empty()    ? truth()
                            : body.size() == 1 ? body.front()
                                               : conjunction(std::move(body));
    return universal_closure(implication(std::move(antecedent), tau_h(rule.head, fresh)));
}

bool requires_ht_semantics(const Rule &rule)
{
    if (rule.head.kind == Head::Kind::Choice) {
        return true;
    }
    for (const auto &lit : rule.body) {
        if (const auto *al = std::get_if<BodyAtomLiteral>(&lit)) {
            if (al->sign != LiteralSign::Positive) {
                return true;
            }
        }
    }
    return false;
}

TranslationOutput tau_star_program(const Program &program)
{
    TranslationOutput out;
    out.signature = program.signature;
    for (const auto &rule : program.rules) {
        out.formulas.push_back(tau_star_rule(rule));
        if (requires_ht_semantics(rule)) {
            out.semantics = Semantics::HereAndThere;
        }
    }
    return out;
}

} // namespace sequiv
