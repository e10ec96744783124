#include "omd/md_ontology.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "omd/errors.hpp"

namespace omd {

namespace {

struct DimensionalVocabulary {
    std::set<std::string> categorical;              // declared categorical predicates
    std::set<std::string> category;                 // unary membership predicates
    std::map<std::string, const DimensionEdge*> cp;  // child-parent predicate -> edge
    std::map<std::string, std::string> dimension_of_category;

    explicit DimensionalVocabulary(const MDOntology& ontology) {
        for (const CategoricalDecl& d : ontology.categoricals) categorical.insert(d.predicate);
        for (const DimensionSchema& s : ontology.schemas) {
            for (const std::string& c : s.categories) {
                category.insert(c);
                dimension_of_category[c] = s.name;
            }
            for (const DimensionEdge& e : s.edges) cp.emplace(e.predicate, &e);
        }
    }

    bool dimensional_predicate(const Atom& a) const {
        return categorical.count(a.predicate) || cp.count(a.predicate) ||
               (category.count(a.predicate) && a.args.size() == 1);
    }
};

// Variable occurrences in the body, split by position kind.
struct BodyOccurrences {
    // variable -> categories it occupies (category positions of categorical
    // atoms or unary membership atoms)
    std::map<std::string, std::set<std::string>> category_positions;
    std::set<std::string> attribute_position_vars;
    std::set<std::string> cp_atom_vars;
    std::map<std::string, int> occurrences;  // total occurrences in body atoms
};

BodyOccurrences collect_body_occurrences(const MDOntology& ontology,
                                         const DimensionalVocabulary& vocab, const Tgd& tgd) {
    BodyOccurrences out;
    for (const Atom& a : tgd.body) {
        for (const Term& t : a.args)
            if (t.is_variable()) ++out.occurrences[t.name()];
        if (vocab.cp.count(a.predicate)) {
            for (const Term& t : a.args)
                if (t.is_variable()) out.cp_atom_vars.insert(t.name());
            continue;
        }
        if (vocab.category.count(a.predicate) && a.args.size() == 1) {
            if (a.args[0].is_variable())
                out.category_positions[a.args[0].name()].insert(a.predicate);
            continue;
        }
        const CategoricalDecl* decl = nullptr;
        for (const CategoricalDecl& d : ontology.categoricals)
            if (d.predicate == a.predicate) decl = &d;
        if (!decl) continue;
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (!a.args[i].is_variable()) continue;
            if (i < decl->categories.size())
                out.category_positions[a.args[i].name()].insert(decl->categories[i]);
            else
                out.attribute_position_vars.insert(a.args[i].name());
        }
    }
    return out;
}

}  // namespace

MDOntology MDOntology::from_program(const Program& program) {
    MDOntology ontology;
    for (const DimensionDecl& decl : program.dimensions) {
        DimensionSchema schema = DimensionSchema::from_decl(decl);
        ontology.instances[schema.name] = collect_dimension_instance(schema, program.facts);
        ontology.schemas.push_back(std::move(schema));
    }
    ontology.categoricals = program.categoricals;
    return ontology;
}

const DimensionSchema* MDOntology::schema_for_category(const std::string& category) const {
    for (const DimensionSchema& s : schemas)
        if (s.has_category(category)) return &s;
    return nullptr;
}

const DimensionSchema* MDOntology::schema_for_edge_predicate(const std::string& predicate) const {
    for (const DimensionSchema& s : schemas)
        for (const DimensionEdge& e : s.edges)
            if (e.predicate == predicate) return &s;
    return nullptr;
}

BasicConstraints generate_basic_constraints(const Program& program, bool with_categorical_keys) {
    BasicConstraints out;
    Term x = Term::variable("X"), y = Term::variable("Y");
    Term y1 = Term::variable("Y1"), y2 = Term::variable("Y2");
    for (const DimensionDecl& dim : program.dimensions) {
        for (const DimensionEdge& e : dim.edges) {
            Atom link{e.predicate, {x, y}};
            Nc child_nc;
            child_nc.body.push_back({link, false});
            child_nc.body.push_back({Atom{e.child, {x}}, true});
            out.ncs.push_back(std::move(child_nc));
            Nc parent_nc;
            parent_nc.body.push_back({link, false});
            parent_nc.body.push_back({Atom{e.parent, {y}}, true});
            out.ncs.push_back(std::move(parent_nc));
            Egd single_parent;
            single_parent.body.push_back(Atom{e.predicate, {x, y1}});
            single_parent.body.push_back(Atom{e.predicate, {x, y2}});
            single_parent.lhs = "Y1";
            single_parent.rhs = "Y2";
            out.egds.push_back(std::move(single_parent));
        }
    }
    for (const CategoricalDecl& decl : program.categoricals) {
        std::vector<Term> args;
        for (std::size_t i = 0; i < decl.categories.size(); ++i)
            args.push_back(Term::variable("X" + std::to_string(i + 1)));
        for (std::size_t i = 0; i < decl.attributes.size(); ++i)
            args.push_back(Term::variable("Y" + std::to_string(i + 1)));
        for (std::size_t i = 0; i < decl.categories.size(); ++i) {
            Nc nc;
            nc.body.push_back({Atom{decl.predicate, args}, false});
            nc.body.push_back({Atom{decl.categories[i], {args[i]}}, true});
            out.ncs.push_back(std::move(nc));
        }
        if (with_categorical_keys && !decl.attributes.empty()) {
            std::vector<Term> primed = args;
            for (std::size_t i = 0; i < decl.attributes.size(); ++i)
                primed[decl.categories.size() + i] =
                    Term::variable("Z" + std::to_string(i + 1));
            for (std::size_t i = 0; i < decl.attributes.size(); ++i) {
                Egd key;
                key.body.push_back(Atom{decl.predicate, args});
                key.body.push_back(Atom{decl.predicate, primed});
                key.lhs = "Y" + std::to_string(i + 1);
                key.rhs = "Z" + std::to_string(i + 1);
                out.egds.push_back(std::move(key));
            }
        }
    }
    return out;
}

ValidationReport validate_dimensional_tgd(const MDOntology& ontology, const Tgd& tgd) {
    ValidationReport report;
    auto add = [&](const std::string& invariant, const std::string& witness,
                   const std::string& message) {
        report.findings.push_back({invariant, witness, message});
    };
    DimensionalVocabulary vocab(ontology);

    if (tgd.head.size() != 1 || !vocab.categorical.count(tgd.head.front().predicate)) {
        add("rule-head-single-categorical",
            tgd.head.empty() ? "" : tgd.head.front().predicate,
            "a dimensional rule has a single categorical head atom");
        return report;
    }
    const Atom& head = tgd.head.front();
    const CategoricalDecl* head_decl = nullptr;
    for (const CategoricalDecl& d : ontology.categoricals)
        if (d.predicate == head.predicate) head_decl = &d;

    for (const Atom& a : tgd.body)
        if (!vocab.dimensional_predicate(a))
            add("rule-body-predicates", a.predicate,
                "body atom " + a.to_string() +
                    " uses a predicate that is neither categorical, child-parent, nor a category");

    BodyOccurrences body = collect_body_occurrences(ontology, vocab, tgd);
    std::vector<std::string> existential_list = tgd.existential_variables();
    std::set<std::string> existential(existential_list.begin(), existential_list.end());

    std::size_t m = head_decl ? head_decl->categories.size() : head.args.size();
    for (std::size_t i = 0; i < head.args.size(); ++i) {
        const Term& arg = head.args[i];
        if (!arg.is_variable()) continue;
        const std::string& v = arg.name();
        bool is_category_position = i < m;
        if (existential.count(v)) {
            if (is_category_position)
                add("rule-existential-positions", v,
                    "existential variable " + v + " sits in category position " +
                        std::to_string(i + 1) + " of " + head.predicate);
            continue;
        }
        if (is_category_position) {
            if (!body.category_positions.count(v) && !body.cp_atom_vars.count(v))
                add("rule-head-category-variables", v,
                    "head category variable " + v +
                        " does not come from a body category position or child-parent atom");
        } else {
            if (!body.attribute_position_vars.count(v))
                add("rule-head-attribute-variables", v,
                    "head attribute variable " + v +
                        " does not come from a body attribute position");
        }
    }

    for (const auto& [v, count] : body.occurrences) {
        if (count < 2) continue;
        if (body.attribute_position_vars.count(v))
            add("rule-join-variables", v,
                "join variable " + v + " occurs in an attribute position");
    }
    return report;
}

NavigationInfo classify_navigation(const MDOntology& ontology, const Tgd& tgd) {
    NavigationInfo info;
    if (tgd.head.size() != 1) return info;
    const Atom& head = tgd.head.front();
    const CategoricalDecl* head_decl = nullptr;
    for (const CategoricalDecl& d : ontology.categoricals)
        if (d.predicate == head.predicate) head_decl = &d;
    if (!head_decl) return info;

    DimensionalVocabulary vocab(ontology);
    BodyOccurrences body = collect_body_occurrences(ontology, vocab, tgd);

    // Child-parent body atoms as (child term, parent term, dimension) triples.
    struct Link {
        Term child, parent;
        std::string dimension;
    };
    std::vector<Link> links;
    for (const Atom& a : tgd.body) {
        auto it = vocab.cp.find(a.predicate);
        if (it == vocab.cp.end() || a.args.size() != 2) continue;
        auto dit = vocab.dimension_of_category.find(it->second->child);
        links.push_back({a.args[0], a.args[1],
                         dit == vocab.dimension_of_category.end() ? "" : dit->second});
    }

    auto anchored = [&](const Term& t) {
        return t.is_variable() && body.category_positions.count(t.name());
    };

    // Walks chains of child-parent atoms from `start`, moving to the parent
    // when `up` is set and to the child otherwise. Returns the longest chain
    // ending at a term that also occurs in a body category position, or 0.
    std::function<int(const Term&, bool, std::set<std::string>&)> longest_chain =
        [&](const Term& start, bool up, std::set<std::string>& seen) -> int {
        int best = 0;
        for (const Link& link : links) {
            const Term& near = up ? link.child : link.parent;
            const Term& far = up ? link.parent : link.child;
            if (!(near == start)) continue;
            std::string key = far.to_string();
            if (!seen.insert(key).second) continue;
            int via = anchored(far) ? 1 : 0;
            int extended = longest_chain(far, up, seen);
            if (extended > 0) via = std::max(via, 1 + extended);
            best = std::max(best, via);
            seen.erase(key);
        }
        return best;
    };

    for (std::size_t i = 0; i < head_decl->categories.size() && i < head.args.size(); ++i) {
        const Term& arg = head.args[i];
        if (!arg.is_variable()) continue;
        const std::string& category = head_decl->categories[i];
        auto dit = vocab.dimension_of_category.find(category);
        std::string dimension = dit == vocab.dimension_of_category.end() ? category : dit->second;
        std::set<std::string> seen;
        // Head variable reached by walking up from the head level: the body
        // anchors it at a coarser level, so the rule navigates downward.
        int down = longest_chain(arg, /*up=*/true, seen);
        seen.clear();
        int upward = longest_chain(arg, /*up=*/false, seen);
        if (down > 0) {
            int& slot = info.downward_steps[dimension];
            slot = std::max(slot, down);
        }
        if (upward > 0) {
            int& slot = info.upward_steps[dimension];
            slot = std::max(slot, upward);
        }
    }

    bool has_up = !info.upward_steps.empty();
    bool has_down = !info.downward_steps.empty();
    if (has_up && has_down)
        info.kind = NavigationKind::Mixed;
    else if (has_up)
        info.kind = NavigationKind::Upward;
    else if (has_down)
        info.kind = NavigationKind::Downward;
    else
        info.kind = NavigationKind::Static;
    return info;
}

ValidationReport validate_program(const Program& program) {
    ValidationReport report;
    auto add = [&](ValidationFinding f, const std::string& prefix) {
        f.message = prefix + f.message;
        report.findings.push_back(std::move(f));
    };

    try {
        check_arities(program);
    } catch (const ArityMismatch& e) {
        report.findings.push_back({"arity", "", e.what()});
        return report;
    }

    MDOntology ontology = MDOntology::from_program(program);
    for (const DimensionSchema& schema : ontology.schemas) {
        ValidationReport r = validate_dimension(schema, ontology.instances.at(schema.name));
        for (ValidationFinding& f : r.findings)
            add(std::move(f), "dimension " + schema.name + ": ");
    }

    DimensionalVocabulary vocab(ontology);
    for (const Tgd& tgd : program.tgds) {
        if (tgd.role != RuleRole::Core) continue;
        bool categorical_head = !tgd.head.empty();
        for (const Atom& h : tgd.head)
            if (!vocab.categorical.count(h.predicate)) categorical_head = false;
        if (!categorical_head) continue;
        ValidationReport r = validate_dimensional_tgd(ontology, tgd);
        for (ValidationFinding& f : r.findings)
            add(std::move(f), "rule " + tgd.to_string() + ": ");
    }

    for (const Nc& nc : program.ncs)
        for (const NcLiteral& lit : nc.body)
            if (lit.negated && !program.is_closed_predicate(lit.atom.predicate))
                report.findings.push_back(
                    {"nc-closed-negation", lit.atom.predicate,
                     "negated literal over open predicate " + lit.atom.predicate});

    return report;
}

}  // namespace omd
