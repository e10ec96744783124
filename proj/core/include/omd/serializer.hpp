#ifndef OMD_SERIALIZER_HPP
#define OMD_SERIALIZER_HPP

#include <string>

#include "omd/instance.hpp"
#include "omd/program.hpp"

namespace omd {

// Canonical program text. parse_program(serialize_program(p)) == p for every
// program accepted by the parser; element order is preserved.
std::string serialize_program(const Program& program);

// Sorted instance dump: one fact per line in (predicate, args) order, plain
// comma argument lists (re-readable without declarations). When
// `canonical_nulls` is set, labeled nulls are renumbered ?z1, ?z2, ... by
// first occurrence in the sorted order, which makes dumps insensitive to the
// engine's internal null counter.
std::string serialize_instance(const Instance& instance, bool canonical_nulls = true);

// Renumbers labeled nulls by first occurrence in sorted atom order. This is
// a stable relabeling (deterministic input gives deterministic output), not
// a graph canonizer; tests that compare instances up to arbitrary null
// renaming search for an explicit bijection instead.
Instance canonicalize_nulls(const Instance& instance);

std::string serialize_query(const UnionQuery& query);

}  // namespace omd

#endif  // OMD_SERIALIZER_HPP
