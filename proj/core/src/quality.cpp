#include "omd/quality.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "omd/errors.hpp"

namespace omd {

namespace {

// R(X1..Xn) -> R'(X1..Xn) with distinct variables and no builtins.
bool nickname_shape(const Tgd& tgd, const std::set<std::string>& sources) {
    if (tgd.body.size() != 1 || tgd.head.size() != 1 || !tgd.builtins.empty()) return false;
    const Atom& body = tgd.body.front();
    const Atom& head = tgd.head.front();
    if (!sources.count(body.predicate)) return false;
    if (head.predicate != ContextualOntology::nickname_of(body.predicate)) return false;
    if (body.args != head.args) return false;
    std::set<std::string> seen;
    for (const Term& t : body.args)
        if (!t.is_variable() || !seen.insert(t.name()).second) return false;
    return true;
}

void require_full_rule(const Tgd& tgd, const std::string& kind) {
    if (tgd.head.size() != 1)
        throw LayeringViolation(kind + " rule must have a single head atom: " + tgd.to_string());
    if (!tgd.existential_variables().empty())
        throw LayeringViolation(kind + " rule must not invent values: " + tgd.to_string());
}

// Fully resolves a term through a substitution with chains (X -> Y, Y -> c).
Term resolve(Term t, const Assignment& subst) {
    while (t.is_variable()) {
        auto it = subst.find(t.name());
        if (it == subst.end()) break;
        if (it->second == t) break;
        t = it->second;
    }
    return t;
}

// Most general unifier of two argument lists (no nulls involved). Returns
// std::nullopt when unification fails.
std::optional<Assignment> unify(const std::vector<Term>& a, const std::vector<Term>& b) {
    if (a.size() != b.size()) return std::nullopt;
    Assignment subst;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Term x = resolve(a[i], subst);
        Term y = resolve(b[i], subst);
        if (x == y) continue;
        if (x.is_variable())
            subst[x.name()] = y;
        else if (y.is_variable())
            subst[y.name()] = x;
        else
            return std::nullopt;
    }
    // Compress chains so plain substitution suffices afterwards.
    for (auto& [var, term] : subst) term = resolve(term, subst);
    return subst;
}

Tgd standardize_apart(const Tgd& rule, std::size_t serial) {
    Assignment rename;
    std::set<std::string> vars = rule.body_variables();
    for (const std::string& v : rule.head_variables()) vars.insert(v);
    for (const std::string& v : vars)
        rename.emplace(v, Term::variable("U" + std::to_string(serial) + "_" + v));
    Tgd out = rule;
    for (Atom& a : out.body) a = substitute(a, rename);
    for (Atom& a : out.head) a = substitute(a, rename);
    for (BuiltinLiteral& b : out.builtins) {
        b.lhs = substitute(b.lhs, rename);
        b.rhs = substitute(b.rhs, rename);
    }
    return out;
}

ConjunctiveQuery apply_subst(const ConjunctiveQuery& cq, const Assignment& subst) {
    ConjunctiveQuery out = cq;
    for (Term& t : out.head_terms) t = substitute(t, subst);
    for (Atom& a : out.body) a = substitute(a, subst);
    for (BuiltinLiteral& b : out.builtins) {
        b.lhs = substitute(b.lhs, subst);
        b.rhs = substitute(b.rhs, subst);
    }
    return out;
}

}  // namespace

Program ContextualOntology::chase_program() const {
    Program p = context;
    p.tgds.clear();
    p.queries.clear();
    std::set<std::string> sources(source_predicates.begin(), source_predicates.end());
    for (const Tgd& t : context.tgds)
        if (t.role == RuleRole::Core && !nickname_shape(t, sources)) p.tgds.push_back(t);
    p.tgds.insert(p.tgds.end(), nickname_rules.begin(), nickname_rules.end());
    return p;
}

ContextualOntology build_context(const Program& context) {
    ContextualOntology co;
    co.context = context;
    std::set<std::string> sources;
    for (const PredicateDecl& d : context.sources) {
        sources.insert(d.predicate);
        co.source_arity[d.predicate] = d.arity;
    }
    co.source_predicates.assign(sources.begin(), sources.end());
    for (const PredicateDecl& d : context.externals) co.external_predicates.insert(d.predicate);

    std::set<std::string> nicknamed;  // sources with a provided nickname rule
    for (const Tgd& tgd : context.tgds) {
        switch (tgd.role) {
            case RuleRole::Core:
            case RuleRole::Nickname:
                if (nickname_shape(tgd, sources)) {
                    Tgd rule = tgd;
                    rule.role = RuleRole::Nickname;
                    nicknamed.insert(rule.body.front().predicate);
                    co.nickname_rules.push_back(std::move(rule));
                }
                break;
            case RuleRole::QualityDef:
                require_full_rule(tgd, "quality definition");
                co.quality_defs.push_back(tgd);
                co.quality_predicates.insert(tgd.head.front().predicate);
                break;
            case RuleRole::QualityVersion:
                require_full_rule(tgd, "quality version");
                co.quality_versions.push_back(tgd);
                break;
        }
    }

    for (const std::string& source : co.source_predicates) {
        if (nicknamed.count(source)) continue;
        Tgd rule;
        rule.role = RuleRole::Nickname;
        std::vector<Term> args;
        for (std::size_t i = 0; i < co.source_arity[source]; ++i)
            args.push_back(Term::variable("X" + std::to_string(i + 1)));
        rule.body.push_back({source, args});
        rule.head.push_back({ContextualOntology::nickname_of(source), args});
        co.nickname_rules.push_back(std::move(rule));
    }

    std::set<std::string> nickname_preds, quality_version_preds;
    for (const std::string& s : co.source_predicates) {
        nickname_preds.insert(ContextualOntology::nickname_of(s));
        quality_version_preds.insert(ContextualOntology::quality_version_of(s));
    }

    for (const Tgd& rule : co.quality_versions) {
        const Atom& head = rule.head.front();
        std::string source;
        for (const std::string& s : co.source_predicates)
            if (ContextualOntology::quality_version_of(s) == head.predicate) source = s;
        if (source.empty())
            throw LayeringViolation("quality version rule head " + head.predicate +
                                    " is not the quality version of a declared source");
        if (head.args.size() != co.source_arity[source])
            throw ArityMismatch("quality version " + head.predicate + " has arity " +
                                std::to_string(head.args.size()) + " but source " + source +
                                " has arity " + std::to_string(co.source_arity[source]));
        bool uses_nickname = false;
        for (const Atom& a : rule.body)
            if (a.predicate == ContextualOntology::nickname_of(source)) uses_nickname = true;
        if (!uses_nickname)
            throw LayeringViolation("quality version rule for " + source +
                                    " must read from the nickname " +
                                    ContextualOntology::nickname_of(source));
    }

    for (const std::string& source : co.source_predicates) {
        bool defined = false;
        for (const Tgd& rule : co.quality_versions)
            if (rule.head.front().predicate == ContextualOntology::quality_version_of(source))
                defined = true;
        if (!defined)
            throw MissingQualityVersion("source " + source + " has no quality version rule " +
                                        ContextualOntology::quality_version_of(source));
    }

    for (const Tgd& rule : co.quality_defs) {
        const std::string& head = rule.head.front().predicate;
        if (sources.count(head) || nickname_preds.count(head) || quality_version_preds.count(head))
            throw LayeringViolation("quality definition may not define " + head +
                                    ": the predicate belongs to the source layer");
    }

    for (const Tgd& tgd : context.tgds) {
        if (tgd.role != RuleRole::Core || nickname_shape(tgd, sources)) continue;
        for (const Atom& h : tgd.head)
            if (sources.count(h.predicate))
                throw LayeringViolation("core rule writes into the source relation " +
                                        h.predicate);
        auto mentions_quality = [&](const Atom& a) {
            return co.quality_predicates.count(a.predicate) ||
                   quality_version_preds.count(a.predicate);
        };
        for (const Atom& a : tgd.body)
            if (mentions_quality(a))
                throw LayeringViolation("core rule mentions the quality-layer predicate " +
                                        a.predicate);
        for (const Atom& a : tgd.head)
            if (mentions_quality(a))
                throw LayeringViolation("core rule mentions the quality-layer predicate " +
                                        a.predicate);
    }

    return co;
}

UnionQuery rewrite_to_quality(const ContextualOntology& context, const UnionQuery& query) {
    std::set<std::string> sources(context.source_predicates.begin(),
                                  context.source_predicates.end());
    UnionQuery out = query;
    for (ConjunctiveQuery& cq : out.disjuncts)
        for (Atom& a : cq.body)
            if (sources.count(a.predicate))
                a.predicate = ContextualOntology::quality_version_of(a.predicate);
    return out;
}

UnionQuery unfold(const ContextualOntology& context, const UnionQuery& query) {
    std::map<std::string, std::vector<Tgd>> defs;
    for (const Tgd& rule : context.quality_versions)
        defs[rule.head.front().predicate].push_back(rule);
    for (const Tgd& rule : context.quality_defs)
        defs[rule.head.front().predicate].push_back(rule);

    // Static recursion check over the definition graph.
    {
        std::map<std::string, int> state;  // 0 new, 1 on stack, 2 done
        std::function<void(const std::string&)> visit = [&](const std::string& pred) {
            state[pred] = 1;
            for (const Tgd& rule : defs.at(pred)) {
                for (const Atom& a : rule.body) {
                    if (!defs.count(a.predicate)) continue;
                    int s = state[a.predicate];
                    if (s == 1)
                        throw RecursiveDefinition("quality predicate " + a.predicate +
                                                  " is defined recursively");
                    if (s == 0) visit(a.predicate);
                }
            }
            state[pred] = 2;
        };
        for (const auto& [pred, rules] : defs)
            if (state[pred] == 0) visit(pred);
    }

    std::set<std::string> sources(context.source_predicates.begin(),
                                  context.source_predicates.end());
    std::set<std::string> fact_preds;
    for (const Atom& f : context.context.facts) fact_preds.insert(f.predicate);
    auto pass_through = [&](const std::string& pred) {
        return context.quality_predicates.count(pred) &&
               (context.external_predicates.count(pred) || fact_preds.count(pred));
    };

    std::size_t serial = 0;
    std::vector<ConjunctiveQuery> result;
    std::function<void(const ConjunctiveQuery&, std::size_t)> process =
        [&](const ConjunctiveQuery& cq, std::size_t start) {
            for (std::size_t i = start; i < cq.body.size(); ++i) {
                const Atom& atom = cq.body[i];
                if (!defs.count(atom.predicate)) {
                    // A quality version of an undeclared source cannot be
                    // unfolded and has no extension of its own.
                    if (atom.predicate.size() > 2 &&
                        atom.predicate.rfind("_q") == atom.predicate.size() - 2 &&
                        !sources.count(atom.predicate.substr(0, atom.predicate.size() - 2)))
                        throw UndefinedQualityPredicate("no definition for " + atom.predicate);
                    continue;
                }
                if (pass_through(atom.predicate)) process(cq, i + 1);
                for (const Tgd& rule : defs.at(atom.predicate)) {
                    Tgd fresh = standardize_apart(rule, ++serial);
                    auto mgu = unify(fresh.head.front().args, atom.args);
                    if (!mgu) continue;
                    ConjunctiveQuery next;
                    next.head_terms = cq.head_terms;
                    next.body.insert(next.body.end(), cq.body.begin(), cq.body.begin() + i);
                    next.body.insert(next.body.end(), fresh.body.begin(), fresh.body.end());
                    next.body.insert(next.body.end(), cq.body.begin() + i + 1, cq.body.end());
                    next.builtins = cq.builtins;
                    next.builtins.insert(next.builtins.end(), fresh.builtins.begin(),
                                         fresh.builtins.end());
                    process(apply_subst(next, *mgu), i);
                }
                return;
            }
            result.push_back(cq);
        };
    for (const ConjunctiveQuery& cq : query.disjuncts) process(cq, 0);

    UnionQuery out;
    out.disjuncts = std::move(result);
    return out;
}

AnswerSet quality_answers(const ContextualOntology& context, const Instance& source_data,
                          const UnionQuery& query, const AnswerOptions& options) {
    UnionQuery unfolded = unfold(context, rewrite_to_quality(context, query));
    return certain_answers(context.chase_program(), source_data, unfolded, options);
}

Instance core_quality_version(const ContextualOntology& context, const Instance& source_data,
                              const AnswerOptions& options) {
    Instance out;
    for (const std::string& source : context.source_predicates) {
        std::size_t arity = context.source_arity.at(source);
        ConjunctiveQuery cq;
        for (std::size_t i = 0; i < arity; ++i)
            cq.head_terms.push_back(Term::variable("X" + std::to_string(i + 1)));
        cq.body.push_back({source, cq.head_terms});
        UnionQuery query;
        query.disjuncts.push_back(std::move(cq));
        AnswerSet answers = quality_answers(context, source_data, query, options);
        if (answers.trivially_true)
            throw Error("InconsistentContext",
                        "the context contradicts the data, so the quality version is not "
                        "defined: " +
                            answers.note);
        for (const std::vector<Term>& tuple : answers.tuples) out.insert({source, tuple});
    }
    return out;
}

}  // namespace omd
