#ifndef OMD_HOMOMORPHISM_HPP
#define OMD_HOMOMORPHISM_HPP

#include <vector>

#include "omd/instance.hpp"
#include "omd/query.hpp"
#include "omd/term.hpp"

namespace omd {

// All extensions of `partial` that map every pattern atom into the instance.
// Constants and labeled nulls in the pattern match only themselves. The
// result is sorted lexicographically (by variable name, then bound term) and
// duplicate-free, so enumeration order is deterministic.
std::vector<Assignment> find_homomorphisms(const std::vector<Atom>& pattern,
                                           const Instance& instance,
                                           const Assignment& partial = {});

// True when at least one homomorphism exists (stops at the first).
bool has_homomorphism(const std::vector<Atom>& pattern, const Instance& instance,
                      const Assignment& partial = {});

// Evaluates a conjunctive query: homomorphisms of the body, filtered by the
// builtins, projected onto the head terms. A boolean query yields {()} or {}.
TupleSetAnswers evaluate_cq(const ConjunctiveQuery& query, const Instance& instance);

// Union of the disjunct answers.
TupleSetAnswers evaluate_ucq(const UnionQuery& query, const Instance& instance);

// Drops every tuple that contains a labeled null (certain answers carry
// constants only).
TupleSetAnswers strip_null_answers(const TupleSetAnswers& answers);

}  // namespace omd

#endif  // OMD_HOMOMORPHISM_HPP
