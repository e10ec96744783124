#ifndef OMD_QUALITY_HPP
#define OMD_QUALITY_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "omd/answering.hpp"
#include "omd/instance.hpp"
#include "omd/program.hpp"

namespace omd {

// A contextual ontology for data-quality query answering. The source
// predicates (schema under assessment) are mirrored by nickname predicates
// (R -> R') that let context rules extend source data without polluting it;
// quality predicates are defined from contextual/external data; and each
// source predicate has a quality version R_q defined from its nickname plus
// quality conditions.
struct ContextualOntology {
    Program context;  // declarations, dimensional core, facts, all rules
    std::vector<std::string> source_predicates;       // sorted
    std::map<std::string, std::size_t> source_arity;  // by predicate
    std::vector<Tgd> nickname_rules;                  // R(x) -> R'(x)
    std::vector<Tgd> quality_defs;                    // define quality predicates
    std::vector<Tgd> quality_versions;                // define R_q
    std::set<std::string> quality_predicates;         // heads of quality_defs
    std::set<std::string> external_predicates;        // declared @external

    static std::string nickname_of(const std::string& source) { return source + "'"; }
    static std::string quality_version_of(const std::string& source) { return source + "_q"; }

    // The chase program: dimensional core + nickname rules + constraints
    // (no quality layers; those are unfolded into the query instead).
    Program chase_program() const;
};

// Builds and checks a contextual ontology from a parsed context program.
//  - every @source predicate gains a nickname rule if the file does not
//    provide one, and must have at least one @quality_version rule
//    (MissingQualityVersion otherwise);
//  - quality-version rules must be named R_q for a declared source R and use
//    the nickname R' in their body (LayeringViolation otherwise);
//  - source predicates may not occur in core-rule heads, and quality
//    predicates may not occur in core rules at all (LayeringViolation);
//  - arities are checked throughout (ArityMismatch).
ContextualOntology build_context(const Program& context);

// Replaces every source-predicate atom of the query by its quality version.
UnionQuery rewrite_to_quality(const ContextualOntology& context, const UnionQuery& query);

// Unfolds defined predicates (quality versions and quality predicates)
// through their non-recursive definitions: each defining rule is
// standardized apart, its head unified with the atom, and the instantiated
// body spliced in; a quality predicate with external facts additionally
// keeps a pass-through branch. Throws RecursiveDefinition /
// UndefinedQualityPredicate.
UnionQuery unfold(const ContextualOntology& context, const UnionQuery& query);

// Quality answers: rewrite to quality versions, unfold to a union query over
// nicknames, context data, and external predicates, then take certain
// answers over the chase program with the source data D plus the context's
// own facts.
AnswerSet quality_answers(const ContextualOntology& context, const Instance& source_data,
                          const UnionQuery& query, const AnswerOptions& options = {});

// The quality version of the source instance: for every source predicate,
// the quality answers to its open atomic query, emitted under the original
// predicate name.
Instance core_quality_version(const ContextualOntology& context, const Instance& source_data,
                              const AnswerOptions& options = {});

}  // namespace omd

#endif  // OMD_QUALITY_HPP
