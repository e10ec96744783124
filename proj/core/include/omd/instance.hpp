#ifndef OMD_INSTANCE_HPP
#define OMD_INSTANCE_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "omd/term.hpp"

namespace omd {

// A database instance: a set of ground atoms (constants and labeled nulls).
// Tuples are stored per predicate in sorted sets, so iteration is always in
// (predicate, args) order and two equal instances dump identically. Copying
// an instance snapshots it.
class Instance {
public:
    using TupleSet = std::set<std::vector<Term>>;

    Instance() = default;
    explicit Instance(const std::vector<Atom>& atoms) {
        for (const Atom& a : atoms) insert(a);
    }

    // Returns true when the atom was not present before. Rejects non-ground
    // atoms.
    bool insert(const Atom& atom);
    bool erase(const Atom& atom);
    bool contains(const Atom& atom) const;

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    const std::map<std::string, TupleSet>& relations() const { return rels_; }
    // Tuples of one predicate; the empty set if the predicate is absent.
    const TupleSet& tuples(const std::string& predicate) const;

    // All atoms in (predicate, args) order.
    std::vector<Atom> atoms() const;

    // Sorted set of constants and labeled nulls appearing anywhere.
    std::set<Term> active_domain() const;

    // Replaces every occurrence of `from` by `to` (used when an equality step
    // merges a labeled null into another term). Duplicate collapses shrink
    // the instance.
    void replace_term(const Term& from, const Term& to);

    // Number of atoms in which `t` occurs.
    std::size_t occurrence_count(const Term& t) const;

    void merge(const Instance& other) {
        for (const Atom& a : other.atoms()) insert(a);
    }

    friend bool operator==(const Instance& a, const Instance& b) {
        return a.rels_ == b.rels_;
    }

private:
    std::map<std::string, TupleSet> rels_;
    std::size_t size_ = 0;
};

}  // namespace omd

#endif  // OMD_INSTANCE_HPP
