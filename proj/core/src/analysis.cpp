#include "omd/analysis.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace omd {

namespace {

// Every (predicate, arity) pair used anywhere in the program.
std::map<std::string, std::size_t> collect_arities(const Program& program) {
    std::map<std::string, std::size_t> arities;
    auto note = [&](const std::string& pred, std::size_t arity) {
        auto [it, inserted] = arities.emplace(pred, arity);
        if (!inserted) it->second = std::max(it->second, arity);
    };
    for (const DimensionDecl& d : program.dimensions)
        for (const DimensionEdge& e : d.edges) {
            note(e.child, 1);
            note(e.parent, 1);
            note(e.predicate, 2);
        }
    for (const CategoricalDecl& d : program.categoricals) note(d.predicate, d.arity());
    for (const PredicateDecl& d : program.sources) note(d.predicate, d.arity);
    for (const PredicateDecl& d : program.externals) note(d.predicate, d.arity);
    for (const Atom& a : program.facts) note(a.predicate, a.args.size());
    for (const Tgd& t : program.tgds) {
        for (const Atom& a : t.body) note(a.predicate, a.args.size());
        for (const Atom& a : t.head) note(a.predicate, a.args.size());
    }
    for (const Egd& e : program.egds)
        for (const Atom& a : e.body) note(a.predicate, a.args.size());
    for (const Nc& n : program.ncs)
        for (const NcLiteral& l : n.body) note(l.atom.predicate, l.atom.args.size());
    for (const UnionQuery& q : program.queries)
        for (const ConjunctiveQuery& cq : q.disjuncts)
            for (const Atom& a : cq.body) note(a.predicate, a.args.size());
    return arities;
}

// variable -> positions it occupies in a list of atoms
std::map<std::string, std::vector<Position>> variable_positions(const std::vector<Atom>& atoms) {
    std::map<std::string, std::vector<Position>> out;
    for (const Atom& a : atoms)
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (a.args[i].is_variable())
                out[a.args[i].name()].push_back({a.predicate, static_cast<int>(i + 1)});
    return out;
}

std::map<std::string, int> body_occurrence_counts(const std::vector<Atom>& atoms) {
    std::map<std::string, int> counts;
    for (const Atom& a : atoms)
        for (const Term& t : a.args)
            if (t.is_variable()) ++counts[t.name()];
    return counts;
}

bool repeated_marked_variable(const MarkedProgram& marking) {
    for (std::size_t r = 0; r < marking.program.tgds.size(); ++r)
        for (const auto& [var, count] : body_occurrence_counts(marking.program.tgds[r].body))
            if (count >= 2 && marking.is_marked(r, var)) return true;
    return false;
}

}  // namespace

std::string Position::to_string() const {
    return predicate + "[" + std::to_string(index) + "]";
}

bool DependencyGraph::has_edge(const Position& from, const Position& to, bool special) const {
    Edge probe{from, to, special};
    return std::binary_search(edges.begin(), edges.end(), probe);
}

DependencyGraph build_dependency_graph(const Program& program) {
    DependencyGraph graph;
    for (const auto& [pred, arity] : collect_arities(program))
        for (std::size_t i = 1; i <= arity; ++i)
            graph.positions.push_back({pred, static_cast<int>(i)});
    std::sort(graph.positions.begin(), graph.positions.end());

    for (const Tgd& tgd : program.tgds) {
        if (tgd.head.size() != 1)
            throw std::invalid_argument(
                "dependency graph needs single-atom heads; normalize the program first");
        const Atom& head = tgd.head.front();
        auto body_pos = variable_positions(tgd.body);
        auto head_pos = variable_positions({head});
        std::set<std::string> body_vars;
        for (const auto& [v, _] : body_pos) body_vars.insert(v);

        std::vector<Position> invention_targets;
        for (const auto& [v, positions] : head_pos)
            if (!body_vars.count(v))
                invention_targets.insert(invention_targets.end(), positions.begin(),
                                         positions.end());

        for (const auto& [v, from_positions] : body_pos) {
            auto hit = head_pos.find(v);
            for (const Position& from : from_positions) {
                if (hit != head_pos.end())
                    for (const Position& to : hit->second)
                        graph.edges.push_back({from, to, false});
                for (const Position& to : invention_targets)
                    graph.edges.push_back({from, to, true});
            }
        }
    }
    std::sort(graph.edges.begin(), graph.edges.end());
    graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end()), graph.edges.end());
    return graph;
}

RankMap compute_ranks(const DependencyGraph& graph) {
    const std::size_t n = graph.positions.size();
    std::map<Position, int> id;
    for (std::size_t i = 0; i < n; ++i) id[graph.positions[i]] = static_cast<int>(i);

    struct Arc {
        int to;
        bool special;
    };
    std::vector<std::vector<Arc>> out(n);
    for (const DependencyGraph::Edge& e : graph.edges) {
        auto f = id.find(e.from), t = id.find(e.to);
        if (f == id.end() || t == id.end()) continue;
        out[f->second].push_back({t->second, e.special});
    }

    // Tarjan strongly connected components; components are numbered so that
    // every cross-component arc goes from a higher number to a lower one.
    std::vector<int> comp(n, -1), low(n, 0), index(n, -1);
    std::vector<int> stack;
    std::vector<bool> on_stack(n, false);
    int next_index = 0, component_count = 0;
    std::function<void(int)> strongconnect = [&](int v) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
        for (const Arc& a : out[v]) {
            if (index[a.to] < 0) {
                strongconnect(a.to);
                low[v] = std::min(low[v], low[a.to]);
            } else if (on_stack[a.to]) {
                low[v] = std::min(low[v], index[a.to]);
            }
        }
        if (low[v] == index[v]) {
            while (true) {
                int w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w] = component_count;
                if (w == v) break;
            }
            ++component_count;
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] < 0) strongconnect(static_cast<int>(v));

    std::vector<bool> infinite(component_count, false);
    for (std::size_t v = 0; v < n; ++v)
        for (const Arc& a : out[v])
            if (comp[v] == comp[a.to] && a.special) infinite[comp[v]] = true;

    // Process components in topological order (descending component number):
    // longest special-edge count reaching the component, and downstream
    // propagation of infiniteness.
    std::vector<int> value(component_count, 0);
    for (int c = component_count - 1; c >= 0; --c) {
        for (std::size_t v = 0; v < n; ++v) {
            if (comp[v] != c) continue;
            for (const Arc& a : out[v]) {
                int d = comp[a.to];
                if (d == c) continue;
                if (infinite[c]) infinite[d] = true;
                value[d] = std::max(value[d], value[c] + (a.special ? 1 : 0));
            }
        }
    }

    RankMap ranks;
    for (std::size_t v = 0; v < n; ++v)
        ranks[graph.positions[v]] =
            infinite[comp[v]] ? Rank::inf() : Rank::finite(value[comp[v]]);
    return ranks;
}

bool is_weakly_acyclic(const Program& program) {
    RankMap ranks = compute_ranks(build_dependency_graph(normalize_program(program)));
    for (const auto& [pos, rank] : ranks)
        if (rank.infinite) return false;
    return true;
}

bool MarkedProgram::is_marked(std::size_t rule_index, const std::string& var) const {
    return rule_index < marked.size() && marked[rule_index].count(var) > 0;
}

std::string MarkedProgram::to_string() const {
    std::ostringstream out;
    for (std::size_t r = 0; r < program.tgds.size(); ++r) {
        const Tgd& tgd = program.tgds[r];
        auto term_text = [&](const Term& t) {
            std::string s = t.to_string();
            if (t.is_variable() && is_marked(r, t.name())) s += "^";
            return s;
        };
        auto atom_text = [&](const Atom& a) {
            std::string s = a.predicate + "(";
            for (std::size_t i = 0; i < a.args.size(); ++i) {
                if (i > 0) s += ", ";
                s += term_text(a.args[i]);
            }
            return s + ")";
        };
        for (std::size_t i = 0; i < tgd.body.size(); ++i) {
            if (i > 0) out << ", ";
            out << atom_text(tgd.body[i]);
        }
        out << " -> ";
        for (std::size_t i = 0; i < tgd.head.size(); ++i) {
            if (i > 0) out << ", ";
            out << tgd.head[i].to_string();
        }
        out << ".\n";
    }
    return out.str();
}

MarkedProgram mark_variables(const Program& program) {
    MarkedProgram result;
    result.program = normalize_program(program);
    const std::vector<Tgd>& tgds = result.program.tgds;
    result.marked.resize(tgds.size());

    // A variable whose value the head drops is marked.
    for (std::size_t r = 0; r < tgds.size(); ++r) {
        std::set<std::string> head_vars = tgds[r].head_variables();
        for (const std::string& v : tgds[r].body_variables())
            if (!head_vars.count(v)) result.marked[r].insert(v);
    }

    // A variable propagated into a position where some rule reads a marked
    // variable becomes marked too.
    bool changed = true;
    while (changed) {
        changed = false;
        std::set<Position> marked_positions;
        for (std::size_t r = 0; r < tgds.size(); ++r) {
            auto positions = variable_positions(tgds[r].body);
            for (const std::string& v : result.marked[r]) {
                auto it = positions.find(v);
                if (it == positions.end()) continue;
                marked_positions.insert(it->second.begin(), it->second.end());
            }
        }
        for (std::size_t r = 0; r < tgds.size(); ++r) {
            auto head_positions = variable_positions(tgds[r].head);
            for (const auto& [v, positions] : head_positions) {
                if (result.marked[r].count(v)) continue;
                bool hits = false;
                for (const Position& p : positions)
                    if (marked_positions.count(p)) hits = true;
                if (hits && tgds[r].body_variables().count(v)) {
                    result.marked[r].insert(v);
                    changed = true;
                }
            }
        }
    }
    return result;
}

bool is_sticky(const Program& program) {
    return !repeated_marked_variable(mark_variables(program));
}

bool is_weakly_sticky(const Program& program) {
    MarkedProgram marking = mark_variables(program);
    RankMap ranks = compute_ranks(build_dependency_graph(marking.program));
    for (std::size_t r = 0; r < marking.program.tgds.size(); ++r) {
        const Tgd& tgd = marking.program.tgds[r];
        auto counts = body_occurrence_counts(tgd.body);
        auto positions = variable_positions(tgd.body);
        for (const auto& [var, count] : counts) {
            if (count < 2 || !marking.is_marked(r, var)) continue;
            bool finite_somewhere = false;
            for (const Position& p : positions[var]) {
                auto it = ranks.find(p);
                if (it != ranks.end() && !it->second.infinite) finite_somewhere = true;
            }
            if (!finite_somewhere) return false;
        }
    }
    return true;
}

SeparabilityVerdict check_separability_syntactic(const MDOntology& ontology, const Egd& egd) {
    std::set<std::string> category_preds, cp_preds;
    for (const DimensionSchema& s : ontology.schemas) {
        category_preds.insert(s.categories.begin(), s.categories.end());
        for (const DimensionEdge& e : s.edges) cp_preds.insert(e.predicate);
    }
    auto category_typed = [&](const std::string& var) {
        for (const Atom& a : egd.body) {
            if (cp_preds.count(a.predicate) ||
                (category_preds.count(a.predicate) && a.args.size() == 1)) {
                for (const Term& t : a.args)
                    if (t.is_variable() && t.name() == var) return true;
                continue;
            }
            for (const CategoricalDecl& d : ontology.categoricals) {
                if (d.predicate != a.predicate) continue;
                for (std::size_t i = 0; i < d.categories.size() && i < a.args.size(); ++i)
                    if (a.args[i].is_variable() && a.args[i].name() == var) return true;
            }
        }
        return false;
    };
    if (category_typed(egd.lhs) && category_typed(egd.rhs)) return SeparabilityVerdict::Separable;
    return SeparabilityVerdict::Unknown;
}

std::vector<FdCheck> check_non_conflicting_fds(const Program& program) {
    Program normalized = normalize_program(program);
    std::vector<FdCheck> out;
    for (std::size_t ei = 0; ei < normalized.egds.size(); ++ei) {
        const Egd& egd = normalized.egds[ei];

        // Recognize the functional-dependency shape: two all-variable atoms
        // of one predicate agreeing exactly on the determinant positions,
        // head equating the two variables of one other position.
        std::string reason;
        std::set<std::size_t> determinant;
        std::optional<std::size_t> determined;
        bool fd = egd.body.size() == 2 && egd.body[0].predicate == egd.body[1].predicate &&
                  egd.body[0].args.size() == egd.body[1].args.size();
        if (!fd) {
            reason = "body is not two atoms of one predicate";
        } else {
            for (const Atom& a : egd.body)
                for (const Term& t : a.args)
                    if (!t.is_variable()) fd = false;
            if (!fd) {
                reason = "body atoms contain non-variables";
            } else {
                const Atom& first = egd.body[0];
                const Atom& second = egd.body[1];
                for (std::size_t i = 0; i < first.args.size(); ++i) {
                    const std::string& a = first.args[i].name();
                    const std::string& b = second.args[i].name();
                    if (a == b) {
                        determinant.insert(i);
                    } else if ((a == egd.lhs && b == egd.rhs) || (a == egd.rhs && b == egd.lhs)) {
                        if (determined) {
                            fd = false;
                            reason = "equated variables occur at several positions";
                            break;
                        }
                        determined = i;
                    }
                }
                if (fd && !determined) {
                    fd = false;
                    reason = "equated variables do not share a position";
                }
            }
        }
        if (!fd) {
            out.push_back({0, ei, FdVerdict::NotAnFd, reason});
            continue;
        }

        const std::string& pred = egd.body[0].predicate;
        for (std::size_t si = 0; si < normalized.tgds.size(); ++si) {
            const Tgd& tgd = normalized.tgds[si];
            const Atom& head = tgd.head.front();
            if (head.predicate != pred) {
                out.push_back({si, ei, FdVerdict::NonConflicting,
                               "rule head is not a " + pred + " atom"});
                continue;
            }
            std::set<std::string> body_vars = tgd.body_variables();
            std::set<std::size_t> universal_positions;
            for (std::size_t i = 0; i < head.args.size(); ++i) {
                const Term& t = head.args[i];
                if (!t.is_variable() || body_vars.count(t.name()))
                    universal_positions.insert(i);
            }
            bool covers = std::includes(universal_positions.begin(), universal_positions.end(),
                                        determinant.begin(), determinant.end());
            if (!covers) {
                out.push_back({si, ei, FdVerdict::NonConflicting,
                               "universal head positions do not cover the determinant"});
                continue;
            }
            if (universal_positions != determinant) {
                out.push_back({si, ei, FdVerdict::Conflicting,
                               "universal head positions strictly cover the determinant"});
                continue;
            }
            std::map<std::string, int> existential_counts;
            for (const Term& t : head.args)
                if (t.is_variable() && !body_vars.count(t.name()))
                    ++existential_counts[t.name()];
            bool repeated = false;
            std::string witness;
            for (const auto& [v, count] : existential_counts)
                if (count > 1) {
                    repeated = true;
                    witness = v;
                }
            if (repeated)
                out.push_back({si, ei, FdVerdict::Conflicting,
                               "existential variable " + witness + " occurs twice in the head"});
            else
                out.push_back({si, ei, FdVerdict::NonConflicting,
                               "universal head positions equal the determinant and every "
                               "existential occurs once"});
        }
    }
    return out;
}

Classification classify_program(const Program& program) {
    Classification c;
    c.marking = mark_variables(program);
    c.graph = build_dependency_graph(c.marking.program);
    c.ranks = compute_ranks(c.graph);
    c.weakly_acyclic = true;
    for (const auto& [pos, rank] : c.ranks)
        if (rank.infinite) c.weakly_acyclic = false;
    c.sticky = !repeated_marked_variable(c.marking);
    c.weakly_sticky = is_weakly_sticky(program);
    MDOntology ontology = MDOntology::from_program(program);
    for (const Egd& egd : program.egds)
        c.egd_separability.push_back(check_separability_syntactic(ontology, egd));
    return c;
}

}  // namespace omd
