#ifndef OMD_MD_ONTOLOGY_HPP
#define OMD_MD_ONTOLOGY_HPP

#include <map>
#include <string>
#include <vector>

#include "omd/dimension.hpp"
#include "omd/program.hpp"

namespace omd {

// The multidimensional part of a program: dimension schemas plus instances,
// categorical predicate declarations, and the dimensional rules.
struct MDOntology {
    std::vector<DimensionSchema> schemas;
    std::map<std::string, DimensionInstance> instances;  // by dimension name
    std::vector<CategoricalDecl> categoricals;

    static MDOntology from_program(const Program& program);

    const DimensionSchema* schema_for_category(const std::string& category) const;
    const DimensionSchema* schema_for_edge_predicate(const std::string& predicate) const;
};

// Basic constraints induced by the declarations:
//  - per child-parent predicate P on edge (K, K'):
//      P(X, Y), not K(X)  -> #false
//      P(X, Y), not K'(Y) -> #false
//      P(X, Y1), P(X, Y2) -> Y1 = Y2          (single parent)
//  - per categorical position R[i] typed by K:
//      R(..., Xi, ...), not K(Xi) -> #false
//  - with `with_categorical_keys`: per categorical predicate R with m
//    category positions and n attribute positions, n equalities making the
//    category positions a key:
//      R(X1..Xm; Y1..Yn), R(X1..Xm; Y1'..Yn') -> Yi = Yi'
struct BasicConstraints {
    std::vector<Nc> ncs;
    std::vector<Egd> egds;
};

BasicConstraints generate_basic_constraints(const Program& program,
                                            bool with_categorical_keys = false);

// Shape checks for a dimensional rule:
//  - body atoms use categorical or child-parent predicates only;
//  - the head is a single categorical atom;
//  - existential head variables sit only in attribute (non-category)
//    positions;
//  - every join variable (repeated in the body) occurs only in category
//    positions of categorical atoms or in child-parent atoms;
//  - head category-position variables come from body category positions or
//    child-parent atoms;
//  - head attribute variables that are not existential come from body
//    attribute positions.
ValidationReport validate_dimensional_tgd(const MDOntology& ontology, const Tgd& tgd);

// Direction of dimensional navigation performed by a rule, with the number
// of child-parent steps walked per dimension.
enum class NavigationKind { Static, Upward, Downward, Mixed };

struct NavigationInfo {
    NavigationKind kind = NavigationKind::Static;
    // dimension name -> longest upward / downward chain the rule walks
    std::map<std::string, int> upward_steps;
    std::map<std::string, int> downward_steps;
};

NavigationInfo classify_navigation(const MDOntology& ontology, const Tgd& tgd);

// Full program validation used by the CLI: arity consistency, dimension
// schema/instance invariants, dimensional-rule shape for core rules over
// dimensional predicates, and safety of negated literals.
ValidationReport validate_program(const Program& program);

}  // namespace omd

#endif  // OMD_MD_ONTOLOGY_HPP
