#ifndef OMD_CHASE_HPP
#define OMD_CHASE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "omd/instance.hpp"
#include "omd/program.hpp"

namespace omd {

// Chase configuration. The restricted variant applies a rule only when no
// extension of the trigger already satisfies the head; the oblivious variant
// applies every (rule, assignment) pair exactly once and must be bounded
// (max_steps or max_null_depth), because it diverges on rule sets whose
// restricted chase terminates. Equality rules interleave eagerly by default:
// they run to quiescence before the first and after every rule application.
enum class ChaseVariant { Restricted, Oblivious };
enum class EgdInterleaving { Eager, None };

struct ChaseOptions {
    ChaseVariant variant = ChaseVariant::Restricted;
    std::uint64_t max_steps = 0;       // 0 = unbounded
    std::uint64_t max_null_depth = 0;  // 0 = unbounded
    bool subsume_dominated = false;
    EgdInterleaving egd_interleaving = EgdInterleaving::Eager;
};

enum class ChaseOutcome { Terminated, Truncated, Failed };

// Witness of a hard failure: an equality step tried to identify two distinct
// constants.
struct FailureWitness {
    std::size_t egd_index = 0;
    std::string lhs;
    std::string rhs;
    Assignment trigger;

    std::string to_string() const;
};

struct ChaseStats {
    std::uint64_t tgd_steps = 0;
    std::uint64_t egd_merges = 0;
    std::uint64_t nulls_created = 0;
    std::uint64_t levels = 0;
    std::uint64_t subsumed = 0;
};

struct ChaseResult {
    ChaseOutcome outcome = ChaseOutcome::Terminated;
    Instance instance;
    ChaseStats stats;
    std::optional<FailureWitness> failure;
    // Final value of every labeled null that an equality step merged away.
    std::map<std::uint64_t, Term> null_substitution;
};

// Runs the chase over the program's rules and equalities, starting from
// `data`. Scheduling is canonical and deterministic: triggers are collected
// level by level and applied in (rule index, assignment) lexicographic
// order, so reruns are bit-identical. Denial constraints are not consulted
// here; see check_ncs. Throws std::invalid_argument for an unbounded
// oblivious run.
ChaseResult run_chase(const Program& program, const Instance& data,
                      const ChaseOptions& options = {});

// Denial-constraint check over an instance. Positive literals are evaluated
// as a conjunctive pattern; negated literals must use closed predicates
// (category membership / child-parent) and hold when the instantiated atom
// is absent from the closed extension. Throws NegatedOpenPredicate.
struct NcViolation {
    std::size_t nc_index = 0;
    Assignment witness;
};

std::vector<NcViolation> check_ncs(const Program& program, const Instance& instance);

// True when some atom of the instance maps into another atom under a
// homomorphism that fixes constants (used by the subsumption option; exposed
// for tests).
bool atom_dominates(const Atom& dominator, const Atom& dominated);

}  // namespace omd

#endif  // OMD_CHASE_HPP
