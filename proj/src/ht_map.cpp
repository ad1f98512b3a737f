#include "sequiv/ht_map.hpp"

#include <cctype>
#include <map>
#include <stdexcept>
#include <variant>

namespace sequiv {

namespace {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

std::vector<FormulaPtr> map_vec(const std::vector<FormulaPtr> &args,
                                const std::function<FormulaPtr(const FormulaPtr &)> &fn)
{
    std::vector<FormulaPtr> out;
    out.reserve(args.size());
    for (const auto &a : args) {
        out.push_back(fn(a));
    }
    return out;
}

} // namespace

FormulaPtr prime(const FormulaPtr &f, const PrimedSignature &sig)
{
    std::function<FormulaPtr(const FormulaPtr &)> go = [&](const FormulaPtr &g) -> FormulaPtr {
        return std::visit(
            overloaded{
                [&](const PredicateAtom &x) -> FormulaPtr {
                    if (x.primed) {
                        throw std::invalid_argument("prime: '" + x.predicate +
                                                    "' is already primed");
                    }
                    if (!sig.contains(x.predicate, static_cast<int>(x.args.size()))) {
                        throw std::invalid_argument("prime: unknown predicate '" + x.predicate +
                                                    "/" + std::to_string(x.args.size()) + "'");
                    }
                    return atom(x.predicate, x.args, true);
                },
                [&](const Not &x) -> FormulaPtr { return negation(go(x.arg)); },
                [&](const And &x) -> FormulaPtr { return conjunction(map_vec(x.args, go)); },
                [&](const Or &x) -> FormulaPtr { return disjunction(map_vec(x.args, go)); },
                [&](const Implies &x) -> FormulaPtr {
                    return implication(go(x.lhs), go(x.rhs));
                },
                [&](const Iff &x) -> FormulaPtr { return equivalence(go(x.lhs), go(x.rhs)); },
                [&](const ForAll &x) -> FormulaPtr { return forall(x.vars, go(x.body)); },
                [&](const Exists &x) -> FormulaPtr { return exists(x.vars, go(x.body)); },
                [&](const auto &) -> FormulaPtr { return g; },
            },
            g->node);
    };
    return go(f);
}

FormulaPtr sigma_star_def(const FormulaPtr &f, const PrimedSignature &sig)
{
    std::function<FormulaPtr(const FormulaPtr &)> go = [&](const FormulaPtr &g) -> FormulaPtr {
        return std::visit(
            overloaded{
                [&](const PredicateAtom &x) -> FormulaPtr {
                    if (x.primed) {
                        throw std::invalid_argument("sigma*: input contains primed predicate '" +
                                                    x.predicate + "'");
                    }
                    return g;
                },
                [&](const Not &x) -> FormulaPtr { return negation(prime(x.arg, sig)); },
                [&](const And &x) -> FormulaPtr { return conjunction(map_vec(x.args, go)); },
                [&](const Or &x) -> FormulaPtr { return disjunction(map_vec(x.args, go)); },
                [&](const Implies &x) -> FormulaPtr {
                    return conjunction({implication(go(x.lhs), go(x.rhs)),
                                        implication(prime(x.lhs, sig), prime(x.rhs, sig))});
                },
                [&](const Iff &) -> FormulaPtr {
                    throw std::invalid_argument("sigma*: '<->' is not part of the input language");
                },
                [&](const ForAll &x) -> FormulaPtr { return forall(x.vars, go(x.body)); },
                [&](const Exists &x) -> FormulaPtr { return exists(x.vars, go(x.body)); },
                [&](const auto &) -> FormulaPtr { return g; },
            },
            g->node);
    };
    return go(f);
}

namespace {

// Prime exactly the atoms that occur beneath a negation.
FormulaPtr prime_negated(const FormulaPtr &f, const PrimedSignature &sig, bool under_not)
{
    return std::visit(
        overloaded{
            [&](const PredicateAtom &x) -> FormulaPtr {
                if (!under_not) {
                    return f;
                }
                if (x.primed) {
                    throw std::invalid_argument("sigma*: input contains primed predicate '" +
                                                x.predicate + "'");
                }
                if (!sig.contains(x.predicate, static_cast<int>(x.args.size()))) {
                    throw std::invalid_argument("sigma*: unknown predicate '" + x.predicate + "/" +
                                                std::to_string(x.args.size()) + "'");
                }
                return atom(x.predicate, x.args, true);
            },
            [&](const Not &x) -> FormulaPtr {
                return negation(prime_negated(x.arg, sig, true));
            },
            [&](const And &x) -> FormulaPtr {
                std::vector<FormulaPtr> out;
                out.reserve(x.args.size());
                for (const auto &a : x.args) {
                    out.push_back(prime_negated(a, sig, under_not));
                }
                return conjunction(std::move(out));
            },
            [&](const Or &x) -> FormulaPtr {
                std::vector<FormulaPtr> out;
                out.reserve(x.args.size());
                for (const auto &a : x.args) {
                    out.push_back(prime_negated(a, sig, under_not));
                }
                return disjunction(std::move(out));
            },
            [&](const Implies &x) -> FormulaPtr {
                return implication(prime_negated(x.lhs, sig, under_not),
                                   prime_negated(x.rhs, sig, under_not));
            },
            [&](const Iff &x) -> FormulaPtr {
                return equivalence(prime_negated(x.lhs, sig, under_not),
                                   prime_negated(x.rhs, sig, under_not));
            },
            [&](const ForAll &x) -> FormulaPtr {
                return forall(x.vars, prime_negated(x.body, sig, under_not));
            },
            [&](const Exists &x) -> FormulaPtr {
                return exists(x.vars, prime_negated(x.body, sig, under_not));
            },
            [&](const auto &) -> FormulaPtr { return f; },
        },
        f->node);
}

// Splits "Z12" into ("Z", 12); a name without a numeric suffix keeps its
// whole text as the prefix.
std::pair<std::string, int> split_indexed_name(const std::string &name)
{
    std::size_t i = name.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(name[i - 1]))) {
        --i;
    }
    if (i == name.size()) {
        return {name, 0};
    }
    return {name.substr(0, i), std::stoi(name.substr(i))};
}

// Renames every bound variable to the next free index of its prefix,
// continuing the numbering already used in the formula.
FormulaPtr freshen_bound(const FormulaPtr &f)
{
    std::map<std::string, int> next;
    for (const auto &name : variable_names(f)) {
        auto [prefix, index] = split_indexed_name(name);
        auto it = next.find(prefix);
        if (it == next.end() || it->second < index) {
            next[prefix] = index;
        }
    }
    std::function<FormulaPtr(const FormulaPtr &, std::map<TypedVar, FOTermPtr>)> go =
        [&](const FormulaPtr &g, std::map<TypedVar, FOTermPtr> env) -> FormulaPtr {
        auto on_block = [&](const std::vector<TypedVar> &vars, const FormulaPtr &body,
                            bool universal) -> FormulaPtr {
            std::vector<TypedVar> fresh_vars;
            fresh_vars.reserve(vars.size());
            for (const auto &v : vars) {
                auto [prefix, index] = split_indexed_name(v.name);
                TypedVar nv{prefix + std::to_string(++next[prefix]), v.sort};
                env[v] = fo_var(nv);
                fresh_vars.push_back(nv);
            }
            FormulaPtr nb = go(body, env);
            return universal ? forall(std::move(fresh_vars), std::move(nb))
                             : exists(std::move(fresh_vars), std::move(nb));
        };
        return std::visit(
            overloaded{
                [&](const PredicateAtom &x) -> FormulaPtr {
                    std::vector<FOTermPtr> args;
                    args.reserve(x.args.size());
                    for (const auto &a : x.args) {
                        args.push_back(substitute(a, env));
                    }
                    return atom(x.predicate, std::move(args), x.primed);
                },
                [&](const FOComparison &x) -> FormulaPtr {
                    return comparison(x.rel, substitute(x.left, env), substitute(x.right, env));
                },
                [&](const Not &x) -> FormulaPtr { return negation(go(x.arg, env)); },
                [&](const And &x) -> FormulaPtr {
                    std::vector<FormulaPtr> out;
                    out.reserve(x.args.size());
                    for (const auto &a : x.args) {
                        out.push_back(go(a, env));
                    }
                    return conjunction(std::move(out));
                },
                [&](const Or &x) -> FormulaPtr {
                    std::vector<FormulaPtr> out;
                    out.reserve(x.args.size());
                    for (const auto &a : x.args) {
                        out.push_back(go(a, env));
                    }
                    return disjunction(std::move(out));
                },
                [&](const Implies &x) -> FormulaPtr {
                    return implication(go(x.lhs, env), go(x.rhs, env));
                },
                [&](const Iff &x) -> FormulaPtr {
                    return equivalence(go(x.lhs, env), go(x.rhs, env));
                },
                [&](const ForAll &x) -> FormulaPtr { return on_block(x.vars, x.body, true); },
                [&](const Exists &x) -> FormulaPtr { return on_block(x.vars, x.body, false); },
                [&](const auto &) -> FormulaPtr { return g; },
            },
            g->node);
    };
    return go(f, {});
}

} // namespace

std::vector<FormulaPtr> sigma_star_impl(const std::vector<FormulaPtr> &formulas,
                                        const PrimedSignature &sig)
{
    std::vector<FormulaPtr> out;
    out.reserve(2 * formulas.size());
    for (const auto &f : formulas) {
        out.push_back(prime_negated(f, sig, false));
        out.push_back(freshen_bound(prime(f, sig)));
    }
    return out;
}

std::vector<FormulaPtr> prime_axioms(const std::set<Predicate> &signature)
{
    std::vector<FormulaPtr> axioms;
    for (const auto &pred : signature) { // std::set iterates name-then-arity
        if (pred.arity == 0) {
            axioms.push_back(implication(atom(pred.name), atom(pred.name, {}, true)));
            continue;
        }
        std::vector<TypedVar> vars;
        std::vector<FOTermPtr> args;
        for (int i = 1; i <= pred.arity; ++i) {
            vars.push_back({"Z" + std::to_string(i), Sort::Program});
            args.push_back(fo_var(vars.back()));
        }
        axioms.push_back(forall(
            std::move(vars), implication(atom(pred.name, args), atom(pred.name, args, true))));
    }
    return axioms;
}

HTTheory apply_with_semantics(const TranslationOutput &translation,
                              const std::set<Predicate> &signature, Semantics semantics)
{
    HTTheory theory;
    if (semantics == Semantics::Classical) {
        theory.formulas = translation.formulas;
        return theory;
    }
    PrimedSignature sig{signature, PrimedSignature::Style::TickSuffix};
    theory.axioms = prime_axioms(signature);
    theory.formulas = sigma_star_impl(translation.formulas, sig);
    theory.mapped = true;
    return theory;
}

HTTheory apply_if_needed(const TranslationOutput &translation, const std::set<Predicate> &signature)
{
    return apply_with_semantics(translation, signature, translation.semantics);
}

} // namespace sequiv
