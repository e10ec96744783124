#ifndef OMD_ANALYSIS_HPP
#define OMD_ANALYSIS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "omd/md_ontology.hpp"
#include "omd/program.hpp"

namespace omd {

// A predicate position, 1-based: P[i].
struct Position {
    std::string predicate;
    int index = 0;  // 1-based

    std::string to_string() const;
    friend bool operator==(const Position&, const Position&) = default;
    friend auto operator<=>(const Position&, const Position&) = default;
};

// Position dependency graph. Ordinary edges propagate values a rule copies
// from body to head; special edges point at positions where a rule invents a
// fresh value. Special edges leave every body position of every body
// variable: a body atom that keeps firing on freshly invented values
// re-triggers the invention even when the triggering variable is dropped
// from the head, so those positions feed the invention too.
struct DependencyGraph {
    struct Edge {
        Position from;
        Position to;
        bool special = false;

        friend bool operator==(const Edge&, const Edge&) = default;
        friend auto operator<=>(const Edge&, const Edge&) = default;
    };

    std::vector<Position> positions;  // sorted, all positions of the program
    std::vector<Edge> edges;          // sorted, duplicate-free

    bool has_edge(const Position& from, const Position& to, bool special) const;
};

// Requires single-atom heads (normalize_program first).
DependencyGraph build_dependency_graph(const Program& program);

// Rank of a position: the largest number of special edges on any walk ending
// there; infinite when a special edge lies on a cycle that reaches the
// position.
struct Rank {
    bool infinite = false;
    int value = 0;  // meaningful when finite

    static Rank finite(int v) { return Rank{false, v}; }
    static Rank inf() { return Rank{true, 0}; }

    std::string to_string() const { return infinite ? "inf" : std::to_string(value); }
    friend bool operator==(const Rank&, const Rank&) = default;
};

using RankMap = std::map<Position, Rank>;

RankMap compute_ranks(const DependencyGraph& graph);

// Weak acyclicity: every position has finite rank.
bool is_weakly_acyclic(const Program& program);

// Variable marking. A body variable is marked when some derivation can drop
// its value; repeated marked variables are what break stickiness. Flags are
// per rule and per variable (every occurrence of one variable in one body
// shares the flag).
struct MarkedProgram {
    Program program;  // normalized, single-atom heads
    // marked[rule index] = set of marked body variables of that rule
    std::vector<std::set<std::string>> marked;

    bool is_marked(std::size_t rule_index, const std::string& var) const;
    std::string to_string() const;  // rules with marked variables suffixed ^
};

MarkedProgram mark_variables(const Program& program);

// Sticky: no rule repeats a marked variable in its body.
bool is_sticky(const Program& program);

// Weakly sticky: every repeated body variable is non-marked or occurs at a
// finite-rank position in that body.
bool is_weakly_sticky(const Program& program);

// Syntactic separability condition for one equality rule: both head
// variables occur in the body at category-typed positions (category
// positions of categorical atoms, child-parent atoms, or unary membership
// atoms). Rules never invent values at such positions, so the equalities can
// only compare constants: enforcing them cannot change query answers on
// consistent data and the verdict is Separable. Otherwise the check is
// inconclusive (never "not separable").
enum class SeparabilityVerdict { Separable, Unknown };

SeparabilityVerdict check_separability_syntactic(const MDOntology& ontology, const Egd& egd);

// Functional-dependency conflict test between a rule and an equality rule of
// FD shape (two atoms of one predicate sharing the determinant positions,
// head equating one determined position). Non-conflicting when (a) the rule
// head is not an atom of the FD's predicate, or (b) the universally
// quantified head positions do not cover the determinant, or (c) they equal
// the determinant exactly and every existential head variable occurs just
// once.
enum class FdVerdict { NonConflicting, Conflicting, NotAnFd };

struct FdCheck {
    std::size_t tgd_index = 0;
    std::size_t egd_index = 0;
    FdVerdict verdict = FdVerdict::NotAnFd;
    std::string reason;
};

std::vector<FdCheck> check_non_conflicting_fds(const Program& program);

// Aggregate classification used by the CLI.
struct Classification {
    DependencyGraph graph;
    RankMap ranks;
    MarkedProgram marking;
    bool weakly_acyclic = false;
    bool sticky = false;
    bool weakly_sticky = false;
    std::vector<SeparabilityVerdict> egd_separability;  // per egd
};

Classification classify_program(const Program& program);

}  // namespace omd

#endif  // OMD_ANALYSIS_HPP
