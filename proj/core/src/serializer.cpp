#include "omd/serializer.hpp"

#include <map>
#include <sstream>

namespace omd {

namespace {

// Emits an atom, inserting the ';' marker when its predicate is declared
// categorical in `program`.
std::string atom_text(const Atom& atom, const Program* program) {
    const CategoricalDecl* decl = program ? program->categorical(atom.predicate) : nullptr;
    if (!decl || decl->categories.size() >= atom.args.size()) return atom.to_string();
    std::ostringstream out;
    out << atom.predicate << "(";
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
        if (i == decl->categories.size())
            out << "; ";
        else if (i > 0)
            out << ", ";
        out << atom.args[i].to_string();
    }
    out << ")";
    return out.str();
}

std::string body_text(const std::vector<Atom>& atoms, const std::vector<BuiltinLiteral>& builtins,
                      const Program* program) {
    std::ostringstream out;
    bool first = true;
    for (const Atom& a : atoms) {
        if (!first) out << ", ";
        first = false;
        out << atom_text(a, program);
    }
    for (const BuiltinLiteral& b : builtins) {
        if (!first) out << ", ";
        first = false;
        out << b.to_string();
    }
    return out.str();
}

}  // namespace

std::string serialize_program(const Program& program) {
    std::ostringstream out;
    for (const DimensionDecl& dim : program.dimensions) {
        out << "@dimension " << dim.name << " {\n";
        for (const DimensionEdge& e : dim.edges)
            out << "    " << e.child << " -> " << e.parent << " via " << e.predicate << ".\n";
        out << "}\n";
    }
    for (const CategoricalDecl& decl : program.categoricals) {
        out << "@categorical " << decl.predicate << "(";
        for (std::size_t i = 0; i < decl.categories.size(); ++i) {
            if (i > 0) out << ", ";
            out << decl.categories[i];
        }
        out << ";";
        for (std::size_t i = 0; i < decl.attributes.size(); ++i) {
            out << (i > 0 ? ", " : " ");
            out << decl.attributes[i];
        }
        out << ").\n";
    }
    for (const PredicateDecl& d : program.sources)
        out << "@source " << d.predicate << "/" << d.arity << ".\n";
    for (const PredicateDecl& d : program.externals)
        out << "@external " << d.predicate << "/" << d.arity << ".\n";
    for (const Atom& fact : program.facts) out << atom_text(fact, &program) << ".\n";
    for (const Tgd& tgd : program.tgds) {
        if (tgd.role == RuleRole::QualityDef) out << "@quality_def ";
        if (tgd.role == RuleRole::QualityVersion) out << "@quality_version ";
        out << body_text(tgd.body, tgd.builtins, &program) << " -> ";
        for (std::size_t i = 0; i < tgd.head.size(); ++i) {
            if (i > 0) out << ", ";
            out << atom_text(tgd.head[i], &program);
        }
        out << ".\n";
    }
    for (const Egd& egd : program.egds)
        out << body_text(egd.body, {}, &program) << " -> " << egd.lhs << " = " << egd.rhs << ".\n";
    for (const Nc& nc : program.ncs) {
        bool first = true;
        for (const NcLiteral& lit : nc.body) {
            if (!first) out << ", ";
            first = false;
            if (lit.negated) out << "not ";
            out << atom_text(lit.atom, &program);
        }
        for (const BuiltinLiteral& b : nc.builtins) {
            if (!first) out << ", ";
            first = false;
            out << b.to_string();
        }
        out << " -> #false.\n";
    }
    for (const UnionQuery& q : program.queries) out << serialize_query(q) << "\n";
    return out.str();
}

Instance canonicalize_nulls(const Instance& instance) {
    std::map<std::uint64_t, Term> rename;
    std::uint64_t next = 1;
    for (const Atom& a : instance.atoms())
        for (const Term& t : a.args)
            if (t.is_null() && !rename.count(t.null_id())) rename.emplace(t.null_id(), Term::null(next++));
    Instance out;
    for (const Atom& a : instance.atoms()) {
        Atom b = a;
        for (Term& t : b.args)
            if (t.is_null()) t = rename.at(t.null_id());
        out.insert(b);
    }
    return out;
}

std::string serialize_instance(const Instance& instance, bool canonical_nulls) {
    const Instance* source = &instance;
    Instance renamed;
    if (canonical_nulls) {
        renamed = canonicalize_nulls(instance);
        source = &renamed;
    }
    std::ostringstream out;
    for (const Atom& a : source->atoms()) out << a.to_string() << ".\n";
    return out.str();
}

std::string serialize_query(const UnionQuery& query) {
    return query.to_string() + ".";
}

}  // namespace omd
