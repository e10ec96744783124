#ifndef OMD_DIMENSION_HPP
#define OMD_DIMENSION_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "omd/instance.hpp"
#include "omd/program.hpp"

namespace omd {

// Schema side of a dimension: categories with an irreflexive child-parent
// relation whose transitive closure is a lattice-shaped partial order with a
// unique top and a unique base category.
struct DimensionSchema {
    std::string name;
    std::vector<std::string> categories;  // sorted, derived from edges
    std::vector<DimensionEdge> edges;

    bool has_category(const std::string& c) const;
    std::vector<std::string> parents(const std::string& c) const;
    std::vector<std::string> children(const std::string& c) const;
    // Unique category with no child edge (the finest level), if well formed.
    std::optional<std::string> base() const;
    // Unique category with no parent edge (the top level), if well formed.
    std::optional<std::string> top() const;

    static DimensionSchema from_decl(const DimensionDecl& decl);
};

// Instance side: members per category and the child-parent member pairs per
// edge predicate.
struct DimensionInstance {
    // category -> members
    std::map<std::string, std::set<std::string>> members;
    // edge predicate -> (child member, parent member) pairs
    std::map<std::string, std::set<std::pair<std::string, std::string>>> links;

    std::optional<std::string> category_of(const std::string& member) const;
};

// One validation finding; `invariant` is a stable tag, `witness` names the
// offending categories/members.
struct ValidationFinding {
    std::string invariant;
    std::string witness;
    std::string message;

    friend bool operator==(const ValidationFinding&, const ValidationFinding&) = default;
};

struct ValidationReport {
    std::vector<ValidationFinding> findings;
    bool ok() const { return findings.empty(); }
};

// Collects the dimension instances of a program: members come from unary
// category facts, links from child-parent predicate facts.
DimensionInstance collect_dimension_instance(const DimensionSchema& schema,
                                             const std::vector<Atom>& facts);

// Checks every schema invariant (irreflexivity, no shortcut edges, unique
// base, unique top reachable from every category, acyclicity) and every
// instance invariant (membership partitioning, links parallel to the schema
// edge, single parent per edge predicate, unique top member reachable from
// every member).
ValidationReport validate_dimension(const DimensionSchema& schema,
                                    const DimensionInstance& instance);

// Roll-up relation from `from_category` to `to_category`: the member pairs
// related by the transitive closure of the child-parent data restricted to
// those levels. Throws Error("NotComparable") when the schema does not order
// the two categories.
std::set<std::pair<std::string, std::string>> rollup(const DimensionSchema& schema,
                                                     const DimensionInstance& instance,
                                                     const std::string& from_category,
                                                     const std::string& to_category);

}  // namespace omd

#endif  // OMD_DIMENSION_HPP
