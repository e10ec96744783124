#include "omd/homomorphism.hpp"

#include <algorithm>
#include <stdexcept>

#include "omd/errors.hpp"

namespace omd {

namespace {

// Matches pattern args against a stored tuple, extending theta. Records the
// variables bound by this call so the caller can undo them.
bool match_args(const std::vector<Term>& pargs, const std::vector<Term>& tuple,
                Assignment& theta, std::vector<std::string>& bound_here) {
    for (std::size_t i = 0; i < pargs.size(); ++i) {
        const Term& p = pargs[i];
        const Term& t = tuple[i];
        if (p.is_variable()) {
            auto it = theta.find(p.name());
            if (it == theta.end()) {
                theta.emplace(p.name(), t);
                bound_here.push_back(p.name());
            } else if (!(it->second == t)) {
                return false;
            }
        } else if (!(p == t)) {
            return false;
        }
    }
    return true;
}

// Candidate tuples for a (partially) substituted pattern atom, narrowed by
// the longest ground prefix. Stored tuples never contain variables, and a
// variable sentinel sorts above every ground term, so [prefix+min,
// prefix+sentinel) brackets exactly the tuples sharing the prefix.
std::pair<Instance::TupleSet::const_iterator, Instance::TupleSet::const_iterator>
candidate_range(const Instance::TupleSet& tuples, const std::vector<Term>& pargs) {
    std::size_t k = 0;
    while (k < pargs.size() && !pargs[k].is_variable()) ++k;
    if (k == 0) return {tuples.begin(), tuples.end()};
    std::vector<Term> lo(pargs.begin(), pargs.begin() + k);
    std::vector<Term> hi = lo;
    lo.resize(pargs.size(), Term::constant(""));
    hi.resize(pargs.size(), Term::variable(""));
    return {tuples.lower_bound(lo), tuples.upper_bound(hi)};
}

bool search(const std::vector<Atom>& pattern, std::size_t index, const Instance& instance,
            Assignment& theta, std::vector<Assignment>* out, bool stop_at_first) {
    if (index == pattern.size()) {
        if (out) out->push_back(theta);
        return true;
    }
    Atom current = substitute(pattern[index], theta);
    const auto& tuples = instance.tuples(current.predicate);
    if (current.ground()) {
        if (tuples.count(current.args) == 0) return false;
        return search(pattern, index + 1, instance, theta, out, stop_at_first);
    }
    auto [lo, hi] = candidate_range(tuples, current.args);
    bool found = false;
    for (auto it = lo; it != hi; ++it) {
        std::vector<std::string> bound_here;
        if (match_args(current.args, *it, theta, bound_here)) {
            if (search(pattern, index + 1, instance, theta, out, stop_at_first)) {
                found = true;
                if (stop_at_first) {
                    for (const auto& v : bound_here) theta.erase(v);
                    return true;
                }
            }
        }
        for (const auto& v : bound_here) theta.erase(v);
    }
    return found;
}

}  // namespace

std::vector<Assignment> find_homomorphisms(const std::vector<Atom>& pattern,
                                           const Instance& instance,
                                           const Assignment& partial) {
    std::vector<Assignment> results;
    Assignment theta = partial;
    search(pattern, 0, instance, theta, &results, false);
    std::sort(results.begin(), results.end());
    results.erase(std::unique(results.begin(), results.end()), results.end());
    return results;
}

bool has_homomorphism(const std::vector<Atom>& pattern, const Instance& instance,
                      const Assignment& partial) {
    Assignment theta = partial;
    return search(pattern, 0, instance, theta, nullptr, true);
}

bool eval_builtin(BuiltinOp op, const Term& lhs, const Term& rhs) {
    // Labeled nulls are unordered and unidentifiable: every comparison that
    // touches one is false.
    if (lhs.is_null() || rhs.is_null()) return false;
    if (lhs.is_variable() || rhs.is_variable())
        throw Error("UnsafeBuiltin", "builtin comparison over an unbound variable");
    const std::string& a = lhs.name();
    const std::string& b = rhs.name();
    switch (op) {
        case BuiltinOp::Eq: return a == b;
        case BuiltinOp::Neq: return a != b;
        case BuiltinOp::Le: return a <= b;
        case BuiltinOp::Lt: return a < b;
    }
    return false;
}

TupleSetAnswers evaluate_cq(const ConjunctiveQuery& query, const Instance& instance) {
    TupleSetAnswers answers;
    for (const Assignment& theta : find_homomorphisms(query.body, instance)) {
        bool pass = true;
        for (const BuiltinLiteral& b : query.builtins) {
            if (!eval_builtin(b.op, substitute(b.lhs, theta), substitute(b.rhs, theta))) {
                pass = false;
                break;
            }
        }
        if (!pass) continue;
        std::vector<Term> row;
        row.reserve(query.head_terms.size());
        for (const Term& t : query.head_terms) row.push_back(substitute(t, theta));
        answers.insert(std::move(row));
    }
    return answers;
}

TupleSetAnswers evaluate_ucq(const UnionQuery& query, const Instance& instance) {
    TupleSetAnswers answers;
    for (const ConjunctiveQuery& cq : query.disjuncts) {
        TupleSetAnswers part = evaluate_cq(cq, instance);
        answers.insert(part.begin(), part.end());
    }
    return answers;
}

TupleSetAnswers strip_null_answers(const TupleSetAnswers& answers) {
    TupleSetAnswers out;
    for (const auto& row : answers) {
        bool has_null = false;
        for (const Term& t : row)
            if (t.is_null()) {
                has_null = true;
                break;
            }
        if (!has_null) out.insert(row);
    }
    return out;
}

}  // namespace omd
