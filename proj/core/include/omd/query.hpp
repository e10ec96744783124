#ifndef OMD_QUERY_HPP
#define OMD_QUERY_HPP

#include <set>
#include <string>
#include <vector>

#include "omd/term.hpp"

namespace omd {

// Comparison predicates usable in query bodies and in quality-definition
// rule bodies. Constants are compared by their canonical names (timestamps
// normalize to a lexicographically ordered form at parse time, so the string
// order is the intended temporal order). Any comparison that touches a
// labeled null is false: nulls are not ordered, and this keeps certain-answer
// evaluation sound.
enum class BuiltinOp { Eq, Neq, Le, Lt };

struct BuiltinLiteral {
    BuiltinOp op = BuiltinOp::Eq;
    Term lhs;
    Term rhs;

    std::string to_string() const;

    friend bool operator==(const BuiltinLiteral&, const BuiltinLiteral&) = default;
    friend auto operator<=>(const BuiltinLiteral&, const BuiltinLiteral&) = default;
};

// Evaluates a builtin over ground terms.
bool eval_builtin(BuiltinOp op, const Term& lhs, const Term& rhs);

// A conjunctive query. `head_terms` are the output terms (usually the free
// variables, but unfolding may pin some of them to constants); an empty head
// makes the query boolean. Every variable in a builtin or in the head must
// occur in some body atom.
struct ConjunctiveQuery {
    std::vector<Term> head_terms;
    std::vector<Atom> body;
    std::vector<BuiltinLiteral> builtins;

    bool boolean() const { return head_terms.empty(); }
    std::string to_string() const;

    friend bool operator==(const ConjunctiveQuery&, const ConjunctiveQuery&) = default;
};

// A union of conjunctive queries. All disjuncts share the head arity.
struct UnionQuery {
    std::vector<ConjunctiveQuery> disjuncts;

    bool boolean() const {
        return disjuncts.empty() || disjuncts.front().boolean();
    }
    std::string to_string() const;

    friend bool operator==(const UnionQuery&, const UnionQuery&) = default;
};

// Query answers: a sorted set of tuples. A boolean query answers {()} (a
// single empty tuple) or the empty set.
using TupleSetAnswers = std::set<std::vector<Term>>;

}  // namespace omd

#endif  // OMD_QUERY_HPP
