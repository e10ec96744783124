#ifndef OMD_ANSWERING_HPP
#define OMD_ANSWERING_HPP

#include <optional>
#include <string>
#include <vector>

#include "omd/chase.hpp"
#include "omd/homomorphism.hpp"
#include "omd/program.hpp"
#include "omd/query.hpp"

namespace omd {

// Certain answers to a query. When the data contradicts the constraints
// (failing chase or an entailed denial), every query is trivially certain
// and `trivially_true` is set with an explanation. `incomplete` flags
// answers computed from a truncated chase: they are sound but may miss
// tuples.
struct AnswerSet {
    TupleSetAnswers tuples;
    bool trivially_true = false;
    bool incomplete = false;
    std::string note;  // failure witness / truncation warning, if any

    // Boolean reading: a boolean query is certain when it is trivially true
    // or the empty tuple was derived.
    bool boolean_value() const {
        return trivially_true || tuples.count(std::vector<Term>{}) > 0;
    }
};

struct AnswerOptions {
    ChaseOptions chase;
    // Include the single-parent equalities and referential denials induced
    // by the declarations, plus (optionally) categorical keys.
    bool with_basic_constraints = true;
    bool with_categorical_keys = false;
    // When every equality rule passes the syntactic separability condition,
    // answer over the rule-only chase and detect failure through inequality
    // probes built from the equality bodies, instead of interleaving.
    bool separability_fastpath = false;
};

// Certain-answer pipeline: chase with eager equalities; a failing chase or
// an entailed denial constraint makes every query trivially certain;
// otherwise evaluate each union branch over the chased instance, union the
// tuples, and strip answers containing labeled nulls.
AnswerSet certain_answers(const Program& program, const Instance& data,
                          const UnionQuery& query, const AnswerOptions& options = {});

// Consistency of the data with the constraints. Indeterminate when the
// chase was truncated before any violation was found.
enum class Consistency { Consistent, Inconsistent, Indeterminate };

struct ConsistencyResult {
    Consistency verdict = Consistency::Consistent;
    std::string witness;
};

ConsistencyResult is_consistent(const Program& program, const Instance& data,
                                const AnswerOptions& options = {});

// Probes whether enforcing the equality rules changes certain answers:
// chases with and without them and compares the given probe queries.
enum class SeparabilityProbeOutcome {
    ConsistentWithAgreement,
    Disagreement,
    ChaseFailed,
    Indeterminate,  // a chase was truncated before the comparison settled
};

struct SeparabilityProbeResult {
    SeparabilityProbeOutcome outcome = SeparabilityProbeOutcome::ConsistentWithAgreement;
    std::optional<UnionQuery> disagreeing_query;
    std::string note;
};

SeparabilityProbeResult semantic_separability_probe(const Program& program,
                                                    const Instance& data,
                                                    const std::vector<UnionQuery>& probes,
                                                    const AnswerOptions& options = {});

}  // namespace omd

#endif  // OMD_ANSWERING_HPP
