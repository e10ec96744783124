#include "omd/term.hpp"

#include <sstream>

namespace omd {

namespace {

bool plain_word(const std::string& s) {
    if (s.empty()) return false;
    char c0 = s[0];
    if (!(c0 >= 'a' && c0 <= 'z') && c0 != '_') return false;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (c >= '0' && c <= '9') || c == '_' || c == '\'';
        if (!ok) return false;
    }
    return true;
}

bool plain_datum(const std::string& s) {
    // Digit-led literals: numbers and canonical date/time forms. Must end in
    // a digit so a trailing '.' always terminates the fact.
    if (s.empty() || !(s[0] >= '0' && s[0] <= '9')) return false;
    for (char c : s) {
        bool ok = (c >= '0' && c <= '9') || c == ':' || c == '/' || c == '.' || c == '-';
        if (!ok) return false;
    }
    return s.back() >= '0' && s.back() <= '9';
}

}  // namespace

std::string Term::to_string() const {
    switch (kind_) {
        case TermKind::Null:
            return "?z" + std::to_string(id_);
        case TermKind::Variable:
            return text_;
        case TermKind::Constant:
        default:
            if (plain_word(text_) || plain_datum(text_)) return text_;
            std::string out = "\"";
            for (char c : text_) {
                if (c == '"' || c == '\\') out.push_back('\\');
                out.push_back(c);
            }
            out.push_back('"');
            return out;
    }
}

std::string Atom::to_string() const {
    std::ostringstream out;
    out << predicate << '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out << ", ";
        out << args[i].to_string();
    }
    out << ')';
    return out.str();
}

Term substitute(const Term& term, const Assignment& theta) {
    if (term.is_variable()) {
        auto it = theta.find(term.name());
        if (it != theta.end()) return it->second;
    }
    return term;
}

Atom substitute(const Atom& atom, const Assignment& theta) {
    Atom out;
    out.predicate = atom.predicate;
    out.args.reserve(atom.args.size());
    for (const Term& t : atom.args) out.args.push_back(substitute(t, theta));
    return out;
}

std::vector<Atom> substitute(const std::vector<Atom>& atoms, const Assignment& theta) {
    std::vector<Atom> out;
    out.reserve(atoms.size());
    for (const Atom& a : atoms) out.push_back(substitute(a, theta));
    return out;
}

}  // namespace omd
