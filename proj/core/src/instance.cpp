#include "omd/instance.hpp"

#include <stdexcept>

namespace omd {

bool Instance::insert(const Atom& atom) {
    if (!atom.ground())
        throw std::invalid_argument("instance atoms must be ground: " + atom.to_string());
    auto [it, added] = rels_[atom.predicate].insert(atom.args);
    if (added) ++size_;
    return added;
}

bool Instance::erase(const Atom& atom) {
    auto it = rels_.find(atom.predicate);
    if (it == rels_.end()) return false;
    if (it->second.erase(atom.args) == 0) return false;
    --size_;
    if (it->second.empty()) rels_.erase(it);
    return true;
}

bool Instance::contains(const Atom& atom) const {
    auto it = rels_.find(atom.predicate);
    return it != rels_.end() && it->second.count(atom.args) > 0;
}

const Instance::TupleSet& Instance::tuples(const std::string& predicate) const {
    static const TupleSet empty;
    auto it = rels_.find(predicate);
    return it == rels_.end() ? empty : it->second;
}

std::vector<Atom> Instance::atoms() const {
    std::vector<Atom> out;
    out.reserve(size_);
    for (const auto& [pred, tuples] : rels_)
        for (const auto& args : tuples) out.emplace_back(pred, args);
    return out;
}

std::set<Term> Instance::active_domain() const {
    std::set<Term> dom;
    for (const auto& [pred, tuples] : rels_)
        for (const auto& args : tuples)
            for (const Term& t : args) dom.insert(t);
    return dom;
}

void Instance::replace_term(const Term& from, const Term& to) {
    if (from == to) return;
    for (auto& [pred, tuples] : rels_) {
        TupleSet rewritten;
        bool touched = false;
        for (const auto& args : tuples) {
            std::vector<Term> copy = args;
            bool hit = false;
            for (Term& t : copy)
                if (t == from) {
                    t = to;
                    hit = true;
                }
            touched = touched || hit;
            rewritten.insert(std::move(copy));
        }
        if (touched) {
            size_ -= tuples.size();
            size_ += rewritten.size();
            tuples = std::move(rewritten);
        }
    }
}

std::size_t Instance::occurrence_count(const Term& t) const {
    std::size_t n = 0;
    for (const auto& [pred, tuples] : rels_)
        for (const auto& args : tuples)
            for (const Term& arg : args)
                if (arg == t) {
                    ++n;
                    break;  // count atoms, not positions
                }
    return n;
}

}  // namespace omd
