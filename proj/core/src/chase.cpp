#include "omd/chase.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "omd/errors.hpp"
#include "omd/homomorphism.hpp"

namespace omd {

namespace {

struct Candidate {
    std::size_t rule = 0;
    Assignment trigger;

    friend bool operator<(const Candidate& a, const Candidate& b) {
        if (a.rule != b.rule) return a.rule < b.rule;
        return a.trigger < b.trigger;
    }
};

class ChaseRun {
public:
    ChaseRun(const Program& program, const Instance& data, const ChaseOptions& options)
        : program_(program), options_(options) {
        if (options.variant == ChaseVariant::Oblivious && options.max_steps == 0 &&
            options.max_null_depth == 0)
            throw std::invalid_argument(
                "the oblivious chase needs max_steps or max_null_depth: it diverges even on "
                "rule sets whose restricted chase terminates");
        result_.instance = data;
        for (const Atom& fact : program.facts) result_.instance.insert(fact);
    }

    ChaseResult run() {
        if (!egd_quiescence()) return finish();
        while (true) {
            std::vector<Candidate> candidates = collect_candidates();
            std::uint64_t applied_this_level = 0;
            suppressed_this_round_ = false;
            for (const Candidate& c : candidates) {
                const Tgd& tgd = program_.tgds[c.rule];
                if (!applicable(tgd, c)) continue;
                if (options_.max_steps > 0 && result_.stats.tgd_steps >= options_.max_steps) {
                    result_.outcome = ChaseOutcome::Truncated;
                    return finish();
                }
                if (depth_exceeded(tgd, c.trigger)) {
                    suppressed_this_round_ = true;
                    continue;
                }
                apply(tgd, c);
                ++applied_this_level;
                if (!egd_quiescence()) return finish();
            }
            if (applied_this_level == 0) {
                result_.outcome = suppressed_this_round_ ? ChaseOutcome::Truncated
                                                         : ChaseOutcome::Terminated;
                return finish();
            }
            ++result_.stats.levels;
            if (options_.subsume_dominated) subsume();
        }
    }

private:
    // Candidates against a snapshot of the current instance, in (rule index,
    // assignment) order. Homomorphism enumeration is already sorted per rule.
    std::vector<Candidate> collect_candidates() {
        std::vector<Candidate> out;
        const Instance snapshot = result_.instance;
        for (std::size_t r = 0; r < program_.tgds.size(); ++r) {
            const Tgd& tgd = program_.tgds[r];
            for (Assignment& h : find_homomorphisms(tgd.body, snapshot)) {
                bool pass = true;
                for (const BuiltinLiteral& b : tgd.builtins)
                    if (!eval_builtin(b.op, substitute(b.lhs, h), substitute(b.rhs, h)))
                        pass = false;
                if (pass) out.push_back({r, std::move(h)});
            }
        }
        return out;
    }

    bool applicable(const Tgd& tgd, const Candidate& c) {
        if (options_.variant == ChaseVariant::Oblivious) return !applied_.count(c);
        // Restricted: skip when some extension of the trigger already
        // satisfies the head in the live instance.
        return !has_homomorphism(tgd.head, result_.instance, c.trigger);
    }

    bool depth_exceeded(const Tgd& tgd, const Assignment& trigger) {
        if (options_.max_null_depth == 0) return false;
        if (tgd.existential_variables().empty()) return false;
        std::uint64_t depth = 0;
        for (const auto& [var, term] : trigger)
            if (term.is_null()) {
                auto it = null_depth_.find(term.null_id());
                if (it != null_depth_.end()) depth = std::max(depth, it->second);
            }
        return depth + 1 > options_.max_null_depth;
    }

    void apply(const Tgd& tgd, const Candidate& c) {
        Assignment extended = c.trigger;
        std::uint64_t trigger_depth = 0;
        for (const auto& [var, term] : c.trigger)
            if (term.is_null()) {
                auto it = null_depth_.find(term.null_id());
                if (it != null_depth_.end()) trigger_depth = std::max(trigger_depth, it->second);
            }
        for (const std::string& var : tgd.existential_variables()) {
            Term fresh = Term::null(next_null_++);
            null_depth_[fresh.null_id()] = trigger_depth + 1;
            ++result_.stats.nulls_created;
            extended.emplace(var, fresh);
        }
        for (const Atom& h : tgd.head) result_.instance.insert(substitute(h, extended));
        ++result_.stats.tgd_steps;
        if (options_.variant == ChaseVariant::Oblivious) applied_.insert(c);
    }

    // Applies every equality rule until none fires. Merging rewrites the
    // instance in place; the scan restarts after each merge so homomorphisms
    // are never stale. Returns false on hard failure.
    bool egd_quiescence() {
        if (program_.egds.empty() || options_.egd_interleaving == EgdInterleaving::None)
            return true;
        bool progress = true;
        while (progress) {
            progress = false;
            for (std::size_t ei = 0; ei < program_.egds.size() && !progress; ++ei) {
                const Egd& egd = program_.egds[ei];
                for (const Assignment& h : find_homomorphisms(egd.body, result_.instance)) {
                    Term a = h.at(egd.lhs);
                    Term b = h.at(egd.rhs);
                    if (a == b) continue;
                    if (a.is_constant() && b.is_constant()) {
                        result_.outcome = ChaseOutcome::Failed;
                        result_.failure = FailureWitness{ei, a.name(), b.name(), h};
                        return false;
                    }
                    Term keep, lose;
                    if (a.is_constant() || (a.is_null() && b.is_null() && a.null_id() < b.null_id())) {
                        keep = a;
                        lose = b;
                    } else {
                        keep = b;
                        lose = a;
                    }
                    merge(lose, keep);
                    progress = true;
                    break;
                }
            }
        }
        return true;
    }

    void merge(const Term& lose, const Term& keep) {
        result_.instance.replace_term(lose, keep);
        merges_.emplace(lose.null_id(), keep);
        ++result_.stats.egd_merges;
        if (options_.variant == ChaseVariant::Oblivious) {
            // Keep the applied-trigger log aligned with the rewritten terms so
            // a merged trigger does not fire a second time.
            std::set<Candidate> rewritten;
            for (const Candidate& c : applied_) {
                Candidate r = c;
                for (auto& [var, term] : r.trigger)
                    if (term == lose) term = keep;
                rewritten.insert(std::move(r));
            }
            applied_ = std::move(rewritten);
        }
    }

    // Drops atoms that map into another atom while their nulls occur nowhere
    // else, so no join partner is lost.
    void subsume() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Atom& a : result_.instance.atoms()) {
                bool private_nulls = true;
                bool has_null = false;
                for (const Term& t : a.args)
                    if (t.is_null()) {
                        has_null = true;
                        if (result_.instance.occurrence_count(t) != 1) private_nulls = false;
                    }
                if (!has_null || !private_nulls) continue;
                bool dominated = false;
                for (const std::vector<Term>& tuple : result_.instance.tuples(a.predicate)) {
                    Atom b{a.predicate, tuple};
                    if (b == a) continue;
                    if (atom_dominates(b, a)) {
                        dominated = true;
                        break;
                    }
                }
                if (dominated) {
                    result_.instance.erase(a);
                    ++result_.stats.subsumed;
                    changed = true;
                    break;
                }
            }
        }
    }

    ChaseResult finish() {
        // Resolve merge chains to final values.
        for (auto& [id, target] : merges_) {
            Term t = target;
            while (t.is_null()) {
                auto it = merges_.find(t.null_id());
                if (it == merges_.end()) break;
                t = it->second;
            }
            target = t;
        }
        result_.null_substitution = std::move(merges_);
        return std::move(result_);
    }

    const Program& program_;
    ChaseOptions options_;
    ChaseResult result_;
    std::uint64_t next_null_ = 1;
    std::map<std::uint64_t, std::uint64_t> null_depth_;
    std::map<std::uint64_t, Term> merges_;
    std::set<Candidate> applied_;
    bool suppressed_this_round_ = false;
};

}  // namespace

std::string FailureWitness::to_string() const {
    std::ostringstream out;
    out << "equality rule " << egd_index << " equates distinct constants " << lhs << " and "
        << rhs;
    return out.str();
}

ChaseResult run_chase(const Program& program, const Instance& data, const ChaseOptions& options) {
    ChaseRun run(program, data, options);
    return run.run();
}

std::vector<NcViolation> check_ncs(const Program& program, const Instance& instance) {
    for (const Nc& nc : program.ncs)
        for (const NcLiteral& lit : nc.body)
            if (lit.negated && !program.is_closed_predicate(lit.atom.predicate))
                throw NegatedOpenPredicate("negated literal over open predicate " +
                                           lit.atom.predicate +
                                           "; negation is closed-world and only category "
                                           "membership and child-parent predicates are closed");
    std::vector<NcViolation> out;
    for (std::size_t ni = 0; ni < program.ncs.size(); ++ni) {
        const Nc& nc = program.ncs[ni];
        std::vector<Atom> positive;
        for (const NcLiteral& lit : nc.body)
            if (!lit.negated) positive.push_back(lit.atom);
        for (const Assignment& h : find_homomorphisms(positive, instance)) {
            bool pass = true;
            for (const BuiltinLiteral& b : nc.builtins)
                if (!eval_builtin(b.op, substitute(b.lhs, h), substitute(b.rhs, h))) pass = false;
            for (const NcLiteral& lit : nc.body)
                if (pass && lit.negated && instance.contains(substitute(lit.atom, h)))
                    pass = false;
            if (pass) out.push_back({ni, h});
        }
    }
    return out;
}

bool atom_dominates(const Atom& dominator, const Atom& dominated) {
    if (dominator.predicate != dominated.predicate ||
        dominator.args.size() != dominated.args.size())
        return false;
    std::map<std::uint64_t, Term> mapping;
    for (std::size_t i = 0; i < dominated.args.size(); ++i) {
        const Term& from = dominated.args[i];
        const Term& to = dominator.args[i];
        if (from.is_null()) {
            auto [it, inserted] = mapping.emplace(from.null_id(), to);
            if (!inserted && !(it->second == to)) return false;
        } else if (!(from == to)) {
            return false;
        }
    }
    return true;
}

}  // namespace omd
