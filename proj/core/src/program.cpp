#include "omd/program.hpp"

#include <algorithm>
#include <sstream>

#include "omd/errors.hpp"

namespace omd {

namespace {

void add_vars(const Atom& atom, std::set<std::string>& vars) {
    for (const Term& t : atom.args)
        if (t.is_variable()) vars.insert(t.name());
}

std::string join_atoms(const std::vector<Atom>& atoms) {
    std::ostringstream out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) out << ", ";
        out << atoms[i].to_string();
    }
    return out.str();
}

}  // namespace

std::set<std::string> Tgd::body_variables() const {
    std::set<std::string> vars;
    for (const Atom& a : body) add_vars(a, vars);
    return vars;
}

std::set<std::string> Tgd::head_variables() const {
    std::set<std::string> vars;
    for (const Atom& a : head) add_vars(a, vars);
    return vars;
}

std::vector<std::string> Tgd::existential_variables() const {
    std::set<std::string> body_vars = body_variables();
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const Atom& a : head)
        for (const Term& t : a.args)
            if (t.is_variable() && body_vars.count(t.name()) == 0 && seen.insert(t.name()).second)
                out.push_back(t.name());
    return out;
}

std::string Tgd::to_string() const {
    std::ostringstream out;
    out << join_atoms(body);
    for (const BuiltinLiteral& b : builtins) out << ", " << b.to_string();
    out << " -> " << join_atoms(head);
    return out.str();
}

std::string Egd::to_string() const {
    return join_atoms(body) + " -> " + lhs + " = " + rhs;
}

std::string Nc::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (i) out << ", ";
        if (body[i].negated) out << "not ";
        out << body[i].atom.to_string();
    }
    for (const BuiltinLiteral& b : builtins) out << ", " << b.to_string();
    out << " -> #false";
    return out.str();
}

const CategoricalDecl* Program::categorical(const std::string& predicate) const {
    for (const CategoricalDecl& c : categoricals)
        if (c.predicate == predicate) return &c;
    return nullptr;
}

const DimensionEdge* Program::child_parent_edge(const std::string& predicate) const {
    for (const DimensionDecl& d : dimensions)
        for (const DimensionEdge& e : d.edges)
            if (e.predicate == predicate) return &e;
    return nullptr;
}

const DimensionDecl* Program::dimension_of_category(const std::string& category) const {
    for (const DimensionDecl& d : dimensions)
        for (const DimensionEdge& e : d.edges)
            if (e.child == category || e.parent == category) return &d;
    return nullptr;
}

bool Program::is_category(const std::string& name) const {
    return dimension_of_category(name) != nullptr;
}

bool Program::is_child_parent(const std::string& name) const {
    return child_parent_edge(name) != nullptr;
}

bool Program::is_closed_predicate(const std::string& name) const {
    return is_category(name) || is_child_parent(name);
}

std::size_t Program::categorical_positions(const std::string& predicate) const {
    const CategoricalDecl* c = categorical(predicate);
    return c ? c->categories.size() : 0;
}

namespace {

std::set<std::string> used_predicate_names(const Program& p) {
    std::set<std::string> names;
    for (const auto& d : p.dimensions)
        for (const auto& e : d.edges) {
            names.insert(e.predicate);
            names.insert(e.child);
            names.insert(e.parent);
        }
    for (const auto& c : p.categoricals) names.insert(c.predicate);
    for (const auto& s : p.sources) names.insert(s.predicate);
    for (const auto& s : p.externals) names.insert(s.predicate);
    for (const auto& f : p.facts) names.insert(f.predicate);
    auto scan_atoms = [&](const std::vector<Atom>& atoms) {
        for (const auto& a : atoms) names.insert(a.predicate);
    };
    for (const auto& t : p.tgds) {
        scan_atoms(t.body);
        scan_atoms(t.head);
    }
    for (const auto& e : p.egds) scan_atoms(e.body);
    for (const auto& n : p.ncs)
        for (const auto& lit : n.body) names.insert(lit.atom.predicate);
    for (const auto& q : p.queries)
        for (const auto& cq : q.disjuncts) scan_atoms(cq.body);
    return names;
}

}  // namespace

Program normalize_program(const Program& program) {
    bool needed = false;
    for (const Tgd& t : program.tgds)
        if (t.head.size() > 1) needed = true;
    if (!needed) return program;

    Program out = program;
    out.tgds.clear();
    std::set<std::string> taken = used_predicate_names(program);
    int counter = 0;
    for (const Tgd& t : program.tgds) {
        if (t.head.size() <= 1) {
            out.tgds.push_back(t);
            continue;
        }
        std::string aux;
        do {
            aux = "Aux_" + std::to_string(++counter);
        } while (taken.count(aux));
        taken.insert(aux);

        // Head variables in first-appearance order become the auxiliary
        // atom's arguments; existentials stay existential in the first rule.
        std::vector<Term> aux_args;
        std::set<std::string> seen;
        for (const Atom& h : t.head)
            for (const Term& term : h.args)
                if (term.is_variable() && seen.insert(term.name()).second)
                    aux_args.push_back(term);

        Tgd collect;
        collect.body = t.body;
        collect.builtins = t.builtins;
        collect.head = {Atom(aux, aux_args)};
        collect.role = t.role;
        out.tgds.push_back(std::move(collect));

        for (const Atom& h : t.head) {
            Tgd expand;
            expand.body = {Atom(aux, aux_args)};
            expand.head = {h};
            expand.role = t.role;
            out.tgds.push_back(std::move(expand));
        }
    }
    return out;
}

void check_arities(const Program& program) {
    std::map<std::string, std::size_t> arity;
    auto note = [&](const std::string& pred, std::size_t n, const std::string& where) {
        auto [it, added] = arity.emplace(pred, n);
        if (!added && it->second != n)
            throw ArityMismatch("predicate " + pred + " used with arity " + std::to_string(n) +
                                " in " + where + " but previously with arity " +
                                std::to_string(it->second));
    };
    for (const auto& d : program.dimensions)
        for (const auto& e : d.edges) {
            note(e.predicate, 2, "dimension " + d.name);
            note(e.child, 1, "dimension " + d.name);
            note(e.parent, 1, "dimension " + d.name);
        }
    for (const auto& c : program.categoricals)
        note(c.predicate, c.arity(), "categorical declaration");
    for (const auto& s : program.sources) note(s.predicate, s.arity, "source declaration");
    for (const auto& s : program.externals) note(s.predicate, s.arity, "external declaration");
    for (const auto& f : program.facts) note(f.predicate, f.args.size(), "fact");
    auto scan = [&](const std::vector<Atom>& atoms, const std::string& where) {
        for (const auto& a : atoms) note(a.predicate, a.args.size(), where);
    };
    for (const auto& t : program.tgds) {
        scan(t.body, "rule body");
        scan(t.head, "rule head");
    }
    for (const auto& e : program.egds) scan(e.body, "equality body");
    for (const auto& n : program.ncs)
        for (const auto& lit : n.body)
            note(lit.atom.predicate, lit.atom.args.size(), "denial body");
    for (const auto& q : program.queries)
        for (const auto& cq : q.disjuncts) scan(cq.body, "query body");
}

}  // namespace omd
