#ifndef OMD_TERM_HPP
#define OMD_TERM_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace omd {

// A term is a constant, a labeled null (?zN, invented by the chase), or a
// variable. Values are immutable once built. The ordering is total and
// deterministic: constants (by name) < labeled nulls (by id) < variables
// (by name); it drives every sorted container in the library, so iteration
// order is reproducible across runs.
enum class TermKind : std::uint8_t { Constant = 0, Null = 1, Variable = 2 };

class Term {
public:
    Term() : kind_(TermKind::Constant) {}

    static Term constant(std::string name) {
        Term t;
        t.kind_ = TermKind::Constant;
        t.text_ = std::move(name);
        return t;
    }
    static Term null(std::uint64_t id) {
        Term t;
        t.kind_ = TermKind::Null;
        t.id_ = id;
        return t;
    }
    static Term variable(std::string name) {
        Term t;
        t.kind_ = TermKind::Variable;
        t.text_ = std::move(name);
        return t;
    }

    TermKind kind() const { return kind_; }
    bool is_constant() const { return kind_ == TermKind::Constant; }
    bool is_null() const { return kind_ == TermKind::Null; }
    bool is_variable() const { return kind_ == TermKind::Variable; }

    // Name of a constant or variable; empty for labeled nulls.
    const std::string& name() const { return text_; }
    // Id of a labeled null; 0 otherwise.
    std::uint64_t null_id() const { return id_; }

    // Printable form: constant name, ?zN, or variable name.
    std::string to_string() const;

    friend bool operator==(const Term& a, const Term& b) {
        return a.kind_ == b.kind_ && a.id_ == b.id_ && a.text_ == b.text_;
    }
    friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
        if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
        if (a.kind_ == TermKind::Null) return a.id_ <=> b.id_;
        return a.text_ <=> b.text_;
    }

private:
    TermKind kind_;
    std::string text_;
    std::uint64_t id_ = 0;
};

// An atom P(t1, ..., tn). Positions are 1-based throughout the library, so
// P[i] denotes the i-th argument of P.
struct Atom {
    std::string predicate;
    std::vector<Term> args;

    Atom() = default;
    Atom(std::string pred, std::vector<Term> arguments)
        : predicate(std::move(pred)), args(std::move(arguments)) {}

    bool ground() const {
        for (const Term& t : args)
            if (t.is_variable()) return false;
        return true;
    }
    bool has_null() const {
        for (const Term& t : args)
            if (t.is_null()) return true;
        return false;
    }

    std::string to_string() const;

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.predicate == b.predicate && a.args == b.args;
    }
    friend std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
        if (auto c = a.predicate <=> b.predicate; c != 0) return c;
        return a.args <=> b.args;
    }
};

// A variable assignment. std::map keys are sorted by variable name, so the
// built-in lexicographic map comparison yields the deterministic assignment
// order promised by the homomorphism finder.
using Assignment = std::map<std::string, Term>;

// Applies an assignment to a term / atom / atom list. Unbound variables are
// left in place.
Term substitute(const Term& term, const Assignment& theta);
Atom substitute(const Atom& atom, const Assignment& theta);
std::vector<Atom> substitute(const std::vector<Atom>& atoms, const Assignment& theta);

}  // namespace omd

#endif  // OMD_TERM_HPP
