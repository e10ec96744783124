#include "omd/answering.hpp"

#include <sstream>

#include "omd/analysis.hpp"
#include "omd/md_ontology.hpp"

namespace omd {

namespace {

std::string describe_assignment(const Assignment& a) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& [var, term] : a) {
        if (!first) out << ", ";
        first = false;
        out << var << " -> " << term.to_string();
    }
    out << "}";
    return out.str();
}

// The program extended with the declaration-induced constraints.
Program augment(const Program& program, const AnswerOptions& options) {
    Program augmented = program;
    BasicConstraints base = generate_basic_constraints(program, false);
    if (options.with_basic_constraints) {
        augmented.ncs.insert(augmented.ncs.end(), base.ncs.begin(), base.ncs.end());
        augmented.egds.insert(augmented.egds.end(), base.egds.begin(), base.egds.end());
    }
    if (options.with_categorical_keys) {
        BasicConstraints full = generate_basic_constraints(program, true);
        augmented.egds.insert(augmented.egds.end(), full.egds.begin() + base.egds.size(),
                              full.egds.end());
    }
    return augmented;
}

bool all_egds_syntactically_separable(const Program& program) {
    if (program.egds.empty()) return true;
    MDOntology ontology = MDOntology::from_program(program);
    for (const Egd& egd : program.egds)
        if (check_separability_syntactic(ontology, egd) != SeparabilityVerdict::Separable)
            return false;
    return true;
}

// Does an equality rule fire on two distinct constants in this instance?
// Nulls compare false under !=, which is exactly the wanted reading: only
// constant/constant clashes are hard failures.
std::optional<FailureWitness> constant_clash(const Program& program, const Instance& instance) {
    for (std::size_t ei = 0; ei < program.egds.size(); ++ei) {
        const Egd& egd = program.egds[ei];
        for (const Assignment& h : find_homomorphisms(egd.body, instance)) {
            const Term& a = h.at(egd.lhs);
            const Term& b = h.at(egd.rhs);
            if (a.is_constant() && b.is_constant() && !(a == b))
                return FailureWitness{ei, a.name(), b.name(), h};
        }
    }
    return std::nullopt;
}

AnswerSet answers_over(const Program& program, const ChaseResult& chase, const UnionQuery& query,
                       bool egds_checked_inside) {
    AnswerSet out;
    if (chase.outcome == ChaseOutcome::Failed) {
        out.trivially_true = true;
        out.note = chase.failure ? chase.failure->to_string() : "chase failed";
        return out;
    }
    if (!egds_checked_inside) {
        if (auto clash = constant_clash(program, chase.instance)) {
            out.trivially_true = true;
            out.note = clash->to_string();
            return out;
        }
    }
    std::vector<NcViolation> violations = check_ncs(program, chase.instance);
    if (!violations.empty()) {
        out.trivially_true = true;
        std::ostringstream note;
        note << "denial constraint " << violations.front().nc_index << " violated under "
             << describe_assignment(violations.front().witness);
        out.note = note.str();
        return out;
    }
    if (chase.outcome == ChaseOutcome::Truncated) {
        out.incomplete = true;
        out.note = "chase truncated; answers are sound but may be incomplete";
    }
    out.tuples = strip_null_answers(evaluate_ucq(query, chase.instance));
    return out;
}

}  // namespace

AnswerSet certain_answers(const Program& program, const Instance& data, const UnionQuery& query,
                          const AnswerOptions& options) {
    Program augmented = augment(program, options);
    if (options.separability_fastpath && !augmented.egds.empty() &&
        all_egds_syntactically_separable(augmented)) {
        // Rule-only chase; equality rules are consulted afterwards purely as
        // failure detectors, which separability makes sound.
        Program rules_only = augmented;
        rules_only.egds.clear();
        ChaseResult chase = run_chase(rules_only, data, options.chase);
        return answers_over(augmented, chase, query, /*egds_checked_inside=*/false);
    }
    ChaseResult chase = run_chase(augmented, data, options.chase);
    return answers_over(augmented, chase, query, /*egds_checked_inside=*/true);
}

ConsistencyResult is_consistent(const Program& program, const Instance& data,
                                const AnswerOptions& options) {
    Program augmented = augment(program, options);
    ChaseResult chase = run_chase(augmented, data, options.chase);
    if (chase.outcome == ChaseOutcome::Failed)
        return {Consistency::Inconsistent,
                chase.failure ? chase.failure->to_string() : "chase failed"};
    std::vector<NcViolation> violations = check_ncs(augmented, chase.instance);
    if (!violations.empty()) {
        std::ostringstream witness;
        witness << "denial constraint " << violations.front().nc_index << " violated under "
                << describe_assignment(violations.front().witness);
        return {Consistency::Inconsistent, witness.str()};
    }
    if (chase.outcome == ChaseOutcome::Truncated)
        return {Consistency::Indeterminate,
                "chase truncated before the constraints could be fully checked"};
    return {Consistency::Consistent, ""};
}

SeparabilityProbeResult semantic_separability_probe(const Program& program, const Instance& data,
                                                    const std::vector<UnionQuery>& probes,
                                                    const AnswerOptions& options) {
    Program augmented = augment(program, options);
    Program without_egds = augmented;
    without_egds.egds.clear();

    AnswerOptions inner = options;
    inner.with_basic_constraints = false;
    inner.with_categorical_keys = false;
    inner.separability_fastpath = false;

    SeparabilityProbeResult result;
    for (const UnionQuery& probe : probes) {
        AnswerSet with = certain_answers(augmented, data, probe, inner);
        AnswerSet without = certain_answers(without_egds, data, probe, inner);
        if (with.trivially_true) {
            result.outcome = SeparabilityProbeOutcome::ChaseFailed;
            result.note = with.note;
            return result;
        }
        if (with.incomplete || without.incomplete) {
            result.outcome = SeparabilityProbeOutcome::Indeterminate;
            result.note = with.incomplete ? with.note : without.note;
            return result;
        }
        bool differ = without.trivially_true || with.tuples != without.tuples;
        if (differ) {
            result.outcome = SeparabilityProbeOutcome::Disagreement;
            result.disagreeing_query = probe;
            result.note = "enforcing the equality rules changes the answers";
            return result;
        }
    }
    result.outcome = SeparabilityProbeOutcome::ConsistentWithAgreement;
    return result;
}

}  // namespace omd
