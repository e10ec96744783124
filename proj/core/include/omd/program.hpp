#ifndef OMD_PROGRAM_HPP
#define OMD_PROGRAM_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "omd/query.hpp"
#include "omd/term.hpp"

namespace omd {

// --- Rules -----------------------------------------------------------------

// Existential rule (tuple-generating dependency). Head variables absent from
// the body are existentially quantified. Heads are conjunctive at the source
// level; normalize_program() splits them before analysis or chasing.
// `role` records how a rule entered a contextual ontology.
enum class RuleRole { Core, Nickname, QualityDef, QualityVersion };

struct Tgd {
    std::vector<Atom> body;
    std::vector<Atom> head;
    std::vector<BuiltinLiteral> builtins;  // body-side comparisons
    RuleRole role = RuleRole::Core;

    std::set<std::string> body_variables() const;
    std::set<std::string> head_variables() const;
    // Head variables with no body occurrence, in first-appearance order.
    std::vector<std::string> existential_variables() const;

    std::string to_string() const;
    friend bool operator==(const Tgd&, const Tgd&) = default;
};

// Equality-generating dependency: body -> X = Y. Both head variables must
// occur in the body.
struct Egd {
    std::vector<Atom> body;
    std::string lhs;
    std::string rhs;

    std::string to_string() const;
    friend bool operator==(const Egd&, const Egd&) = default;
};

// Denial constraint: body -> #false. Body literals may be negated (`not P`),
// but only over closed predicates (category membership and child-parent
// relations).
struct NcLiteral {
    Atom atom;
    bool negated = false;

    friend bool operator==(const NcLiteral&, const NcLiteral&) = default;
};

struct Nc {
    std::vector<NcLiteral> body;
    std::vector<BuiltinLiteral> builtins;

    std::string to_string() const;
    friend bool operator==(const Nc&, const Nc&) = default;
};

// --- Declarations ----------------------------------------------------------

// One child-parent edge of a dimension schema, with the binary predicate that
// carries its instance data.
struct DimensionEdge {
    std::string child;      // category name
    std::string parent;     // category name
    std::string predicate;  // child-parent predicate name

    friend bool operator==(const DimensionEdge&, const DimensionEdge&) = default;
};

struct DimensionDecl {
    std::string name;
    std::vector<DimensionEdge> edges;

    friend bool operator==(const DimensionDecl&, const DimensionDecl&) = default;
};

// Categorical predicate R(C1, ..., Cm; A1, ..., An): the positions before the
// semicolon are typed by categories, the rest are plain attributes.
struct CategoricalDecl {
    std::string predicate;
    std::vector<std::string> categories;  // category name per categorical position
    std::vector<std::string> attributes;  // labels for the remaining positions

    std::size_t arity() const { return categories.size() + attributes.size(); }
    friend bool operator==(const CategoricalDecl&, const CategoricalDecl&) = default;
};

// Contextual-ontology declarations: predicates of the source schema (to be
// quality-filtered) and externally supplied predicates.
struct PredicateDecl {
    std::string predicate;
    std::size_t arity = 0;

    friend bool operator==(const PredicateDecl&, const PredicateDecl&) = default;
};

// --- Program ---------------------------------------------------------------

// A parsed program file: declarations, ground facts (in file order), rules,
// constraints, and any queries the file carries. Parsing and serialization
// round-trip this structure.
struct Program {
    std::vector<DimensionDecl> dimensions;
    std::vector<CategoricalDecl> categoricals;
    std::vector<PredicateDecl> sources;    // @source
    std::vector<PredicateDecl> externals;  // @external
    std::vector<Atom> facts;
    std::vector<Tgd> tgds;
    std::vector<Egd> egds;
    std::vector<Nc> ncs;
    std::vector<UnionQuery> queries;

    bool is_md() const { return !dimensions.empty() || !categoricals.empty(); }

    // Declared categorical predicate, if any.
    const CategoricalDecl* categorical(const std::string& predicate) const;
    // Dimension edge carried by a child-parent predicate, if any.
    const DimensionEdge* child_parent_edge(const std::string& predicate) const;
    const DimensionDecl* dimension_of_category(const std::string& category) const;
    bool is_category(const std::string& name) const;
    bool is_child_parent(const std::string& name) const;
    // Closed predicates: category membership and child-parent predicates.
    bool is_closed_predicate(const std::string& name) const;
    // Number of category-typed positions of a predicate (0 if not
    // categorical).
    std::size_t categorical_positions(const std::string& predicate) const;

    friend bool operator==(const Program&, const Program&) = default;
};

// Splits conjunctive heads into single-atom heads via a fresh auxiliary
// predicate: body -> Aux(all head vars), then one rule Aux -> Hi per original
// head atom. Programs whose rules are already single-headed pass through
// unchanged. The auxiliary predicate name avoids collisions with declared or
// used predicates.
Program normalize_program(const Program& program);

// Consistent-arity check over declarations, facts, rules, and queries.
// Throws ArityMismatch on conflict.
void check_arities(const Program& program);

}  // namespace omd

#endif  // OMD_PROGRAM_HPP
