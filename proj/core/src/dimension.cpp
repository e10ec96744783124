#include "omd/dimension.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

#include "omd/errors.hpp"

namespace omd {

namespace {

std::string term_name(const Term& t) {
    return t.is_constant() ? t.name() : t.to_string();
}

// Categories reachable from `start` by walking child -> parent edges
// (including `start` itself).
std::set<std::string> reachable_up(const DimensionSchema& schema, const std::string& start) {
    std::set<std::string> seen = {start};
    std::deque<std::string> queue = {start};
    while (!queue.empty()) {
        std::string c = queue.front();
        queue.pop_front();
        for (const DimensionEdge& e : schema.edges)
            if (e.child == c && seen.insert(e.parent).second) queue.push_back(e.parent);
    }
    return seen;
}

std::string join(const std::set<std::string>& items) {
    std::ostringstream out;
    bool first = true;
    for (const std::string& s : items) {
        if (!first) out << ", ";
        first = false;
        out << s;
    }
    return out.str();
}

}  // namespace

bool DimensionSchema::has_category(const std::string& c) const {
    return std::binary_search(categories.begin(), categories.end(), c);
}

std::vector<std::string> DimensionSchema::parents(const std::string& c) const {
    std::set<std::string> out;
    for (const DimensionEdge& e : edges)
        if (e.child == c) out.insert(e.parent);
    return {out.begin(), out.end()};
}

std::vector<std::string> DimensionSchema::children(const std::string& c) const {
    std::set<std::string> out;
    for (const DimensionEdge& e : edges)
        if (e.parent == c) out.insert(e.child);
    return {out.begin(), out.end()};
}

std::optional<std::string> DimensionSchema::base() const {
    std::optional<std::string> found;
    for (const std::string& c : categories) {
        if (!children(c).empty()) continue;
        if (found) return std::nullopt;
        found = c;
    }
    return found;
}

std::optional<std::string> DimensionSchema::top() const {
    std::optional<std::string> found;
    for (const std::string& c : categories) {
        if (!parents(c).empty()) continue;
        if (found) return std::nullopt;
        found = c;
    }
    return found;
}

DimensionSchema DimensionSchema::from_decl(const DimensionDecl& decl) {
    DimensionSchema schema;
    schema.name = decl.name;
    schema.edges = decl.edges;
    std::set<std::string> cats;
    for (const DimensionEdge& e : decl.edges) {
        cats.insert(e.child);
        cats.insert(e.parent);
    }
    schema.categories.assign(cats.begin(), cats.end());
    return schema;
}

std::optional<std::string> DimensionInstance::category_of(const std::string& member) const {
    for (const auto& [category, set] : members)
        if (set.count(member)) return category;
    return std::nullopt;
}

DimensionInstance collect_dimension_instance(const DimensionSchema& schema,
                                             const std::vector<Atom>& facts) {
    DimensionInstance instance;
    std::set<std::string> edge_preds;
    for (const DimensionEdge& e : schema.edges) edge_preds.insert(e.predicate);
    for (const std::string& c : schema.categories) instance.members[c];
    for (const Atom& fact : facts) {
        if (fact.args.size() == 1 && schema.has_category(fact.predicate)) {
            instance.members[fact.predicate].insert(term_name(fact.args[0]));
        } else if (fact.args.size() == 2 && edge_preds.count(fact.predicate)) {
            instance.links[fact.predicate].insert(
                {term_name(fact.args[0]), term_name(fact.args[1])});
        }
    }
    return instance;
}

ValidationReport validate_dimension(const DimensionSchema& schema,
                                    const DimensionInstance& instance) {
    ValidationReport report;
    auto add = [&](const std::string& invariant, const std::string& witness,
                   const std::string& message) {
        report.findings.push_back({invariant, witness, message});
    };

    // --- schema invariants ---
    for (const DimensionEdge& e : schema.edges)
        if (e.child == e.parent)
            add("schema-irreflexive", e.child,
                "category " + e.child + " is its own parent via " + e.predicate);

    // Acyclicity over child -> parent edges (self-loops reported above).
    {
        std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
        std::function<bool(const std::string&)> dfs = [&](const std::string& c) -> bool {
            state[c] = 1;
            for (const DimensionEdge& e : schema.edges) {
                if (e.child != c || e.parent == c) continue;
                int s = state[e.parent];
                if (s == 1) {
                    add("schema-acyclic", e.parent,
                        "category " + e.parent + " lies on a child-parent cycle");
                    return true;
                }
                if (s == 0 && dfs(e.parent)) return true;
            }
            state[c] = 2;
            return false;
        };
        for (const std::string& c : schema.categories)
            if (state[c] == 0 && dfs(c)) break;
    }

    // No shortcut edges: an edge may not duplicate a longer upward path.
    for (const DimensionEdge& e : schema.edges) {
        for (const std::string& mid : schema.parents(e.child)) {
            if (mid == e.parent || mid == e.child) continue;
            std::set<std::string> up = reachable_up(schema, mid);
            if (up.count(e.parent)) {
                add("schema-no-shortcut", e.child + " -> " + e.parent,
                    "edge " + e.child + " -> " + e.parent +
                        " shortcuts a longer path through " + mid);
                break;
            }
        }
    }

    {
        std::set<std::string> bases, tops;
        for (const std::string& c : schema.categories) {
            if (schema.children(c).empty()) bases.insert(c);
            if (schema.parents(c).empty()) tops.insert(c);
        }
        if (bases.size() != 1)
            add("schema-unique-base", join(bases),
                "expected exactly one base category, found " + std::to_string(bases.size()));
        if (tops.size() != 1)
            add("schema-unique-top", join(tops),
                "expected exactly one top category, found " + std::to_string(tops.size()));
        if (tops.size() == 1) {
            const std::string& top = *tops.begin();
            for (const std::string& c : schema.categories)
                if (!reachable_up(schema, c).count(top))
                    add("schema-top-reachable", c,
                        "category " + c + " cannot reach the top category " + top);
        }
    }

    // --- instance invariants ---
    {
        std::map<std::string, std::set<std::string>> categories_of;
        for (const auto& [category, set] : instance.members)
            for (const std::string& m : set) categories_of[m].insert(category);
        for (const auto& [member, cats] : categories_of)
            if (cats.size() > 1)
                add("instance-membership-partition", member,
                    "member " + member + " belongs to several categories: " + join(cats));
    }

    for (const DimensionEdge& e : schema.edges) {
        auto it = instance.links.find(e.predicate);
        if (it == instance.links.end()) continue;
        std::map<std::string, std::set<std::string>> parents_of;
        for (const auto& [child, parent] : it->second) {
            parents_of[child].insert(parent);
            auto cit = instance.members.find(e.child);
            if (cit == instance.members.end() || !cit->second.count(child))
                add("instance-link-members", child,
                    e.predicate + " links " + child + " which is not a member of " + e.child);
            auto pit = instance.members.find(e.parent);
            if (pit == instance.members.end() || !pit->second.count(parent))
                add("instance-link-members", parent,
                    e.predicate + " links " + parent + " which is not a member of " + e.parent);
        }
        for (const auto& [child, parents] : parents_of)
            if (parents.size() > 1)
                add("instance-single-parent", child,
                    child + " has several parents via " + e.predicate + ": " + join(parents));
    }

    if (auto top = schema.top()) {
        auto tit = instance.members.find(*top);
        std::set<std::string> top_members =
            tit == instance.members.end() ? std::set<std::string>{} : tit->second;
        if (top_members.size() != 1) {
            add("instance-top-member", join(top_members),
                "expected exactly one member of the top category " + *top + ", found " +
                    std::to_string(top_members.size()));
        } else {
            const std::string& top_member = *top_members.begin();
            // Upward closure over all links.
            for (const auto& [category, set] : instance.members) {
                for (const std::string& m : set) {
                    std::set<std::string> seen = {m};
                    std::deque<std::string> queue = {m};
                    bool reached = (m == top_member);
                    while (!queue.empty() && !reached) {
                        std::string cur = queue.front();
                        queue.pop_front();
                        for (const auto& [pred, pairs] : instance.links)
                            for (const auto& [child, parent] : pairs)
                                if (child == cur && seen.insert(parent).second) {
                                    if (parent == top_member) reached = true;
                                    queue.push_back(parent);
                                }
                    }
                    if (!reached)
                        add("instance-top-reachable", m,
                            "member " + m + " of " + category + " cannot reach " + top_member);
                }
            }
        }
    }

    return report;
}

std::set<std::pair<std::string, std::string>> rollup(const DimensionSchema& schema,
                                                     const DimensionInstance& instance,
                                                     const std::string& from_category,
                                                     const std::string& to_category) {
    if (!schema.has_category(from_category) || !schema.has_category(to_category) ||
        !reachable_up(schema, from_category).count(to_category))
        throw Error("NotComparable", "dimension " + schema.name + " does not order " +
                                         from_category + " below " + to_category);

    std::set<std::pair<std::string, std::string>> result;
    auto fit = instance.members.find(from_category);
    if (fit == instance.members.end()) return result;
    auto tit = instance.members.find(to_category);
    const std::set<std::string> empty;
    const std::set<std::string>& targets = tit == instance.members.end() ? empty : tit->second;

    for (const std::string& start : fit->second) {
        std::set<std::string> seen = {start};
        std::deque<std::string> queue = {start};
        while (!queue.empty()) {
            std::string cur = queue.front();
            queue.pop_front();
            if (targets.count(cur)) result.insert({start, cur});
            for (const auto& [pred, pairs] : instance.links)
                for (const auto& [child, parent] : pairs)
                    if (child == cur && seen.insert(parent).second) queue.push_back(parent);
        }
    }
    return result;
}

}  // namespace omd
