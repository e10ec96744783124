// Acceptance gate: one criterion per headline behavior of the library, each
// reported as a single PASS/FAIL line with its wall time. The process exit
// code is the number of failed criteria.

#include <omd/analysis.hpp>
#include <omd/answering.hpp>
#include <omd/chase.hpp>
#include <omd/md_ontology.hpp>
#include <omd/parser.hpp>
#include <omd/quality.hpp>
#include <omd/serializer.hpp>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace omd;
using namespace omd::testing;

namespace {

struct Check {
    std::vector<std::string> failures;

    void expect(bool condition, const std::string& what) {
        if (!condition) failures.push_back(what);
    }

    template <typename T>
    void equal(const T& got, const T& want, const std::string& what) {
        if (!(got == want)) failures.push_back(what);
    }
};

Program fixture_program(const std::string& rel) {
    return parse_program(fixture_text(rel));
}

UnionQuery fixture_query(const std::string& rel) { return parse_query(fixture_text(rel)); }

Term c(const std::string& s) { return Term::constant(s); }

// --- criterion 1: canonical chase runs reproduce the golden dumps ---------

void chase_goldens(Check& ck) {
    Program collapse = fixture_program("collapse_pair.dlp");
    ChaseResult r = run_chase(collapse, Instance{}, {});
    ck.expect(r.outcome == ChaseOutcome::Terminated, "collapse chase should terminate");
    ck.equal(serialize_instance(r.instance), fixture_text("golden/collapse_pair.chase.dump"),
             "collapse chase dump differs from the golden dump");
    ck.expect(equal_up_to_null_renaming(
                  r.instance, parse_instance(fixture_text("golden/collapse_pair.chase.dump"))),
              "collapse chase should equal the golden instance up to null renaming");

    ChaseOptions obl;
    obl.variant = ChaseVariant::Oblivious;
    obl.max_steps = 3;
    ChaseResult s = run_chase(fixture_program("successor_chain.dlp"), Instance{}, obl);
    ck.expect(s.outcome == ChaseOutcome::Truncated, "bounded oblivious run should truncate");
    ck.equal(serialize_instance(s.instance),
             fixture_text("golden/successor_chain.oblivious3.dump"),
             "oblivious successor dump differs from the golden dump");

    ChaseResult f = run_chase(fixture_program("collapse_pair_failing.dlp"), Instance{}, {});
    ck.expect(f.outcome == ChaseOutcome::Failed, "clashing program should fail the chase");
    ck.expect(f.failure.has_value() && f.failure->lhs == "a" && f.failure->rhs == "b",
              "failure witness should equate constants a and b");
}

// --- criterion 2: program classification ----------------------------------

void classification(Check& ck) {
    struct Row {
        const char* file;
        bool wa, sticky, ws;
    };
    const Row rows[] = {
        {"reachability.dlp", true, false, true},
        {"successor_chain.dlp", false, true, true},
        {"one_step_copy.dlp", true, true, true},
        {"collapse_pair.dlp", true, true, true},
        {"join_marking.dlp", true, false, true},
        {"guarded_loop.dlp", false, false, true},
        {"unguarded_loop.dlp", false, false, false},
        {"hospital.dlp", false, false, true},
        {"same_shift.dlp", false, false, false},
    };
    for (const Row& row : rows) {
        Classification got = classify_program(fixture_program(row.file));
        std::ostringstream what;
        what << row.file << ": expected WA=" << row.wa << " sticky=" << row.sticky
             << " WS=" << row.ws << ", got WA=" << got.weakly_acyclic
             << " sticky=" << got.sticky << " WS=" << got.weakly_sticky;
        ck.expect(got.weakly_acyclic == row.wa && got.sticky == row.sticky &&
                      got.weakly_sticky == row.ws,
                  what.str());
    }

    MarkedProgram join = mark_variables(fixture_program("join_marking.dlp"));
    ck.expect(join.marked.size() == 3 && join.marked[0] == std::set<std::string>{"X", "Z"} &&
                  join.marked[1] == std::set<std::string>{"X", "Z"} && join.marked[2].empty(),
              "join-rule marking should be {X,Z}, {X,Z}, {}");

    Classification hosp = classify_program(fixture_program("hospital.dlp"));
    std::set<Position> infinite;
    for (const auto& [position, rank] : hosp.ranks)
        if (rank.infinite) infinite.insert(position);
    ck.expect(infinite == std::set<Position>{Position{"Shifts", 4}, Position{"WorkSchedules", 4}},
              "hospital infinite ranks should be exactly Shifts[4] and WorkSchedules[4]");
}

// --- criterion 3: generated dimensional programs validate and stay WS -----

void random_dimensional(Check& ck) {
    std::mt19937_64 rng(170842);
    for (int i = 0; i < 100; ++i) {
        Program p = random_md_program(rng);
        MDOntology ont = MDOntology::from_program(p);
        for (const Tgd& tgd : p.tgds)
            ck.expect(validate_dimensional_tgd(ont, tgd).ok(),
                      "generated rule should be validator-clean: " + tgd.to_string());
        ck.expect(validate_program(p).ok(), "generated program should validate");
        if (!is_weakly_sticky(p)) {
            ck.expect(false, "generated dimensional program escaped the weakly-sticky class:\n" +
                                 serialize_program(p));
            break;
        }
    }
}

// --- criterion 4: quality filtering pipeline ------------------------------

void quality_pipeline(Check& ck) {
    Instance data = parse_instance(fixture_text("quality/temperatures.facts"));
    UnionQuery ward = fixture_query("quality/ward_temps.q");

    ContextualOntology base = build_context(fixture_program("quality/patient_monitoring.dlp"));
    AnswerSet a = quality_answers(base, data, ward);
    ck.equal(a.tuples, TupleSetAnswers{{c("37.0")}},
             "quality answers for the patient window should be {37.0}");

    ContextualOntology supply =
        build_context(fixture_program("quality/patient_monitoring_supply.dlp"));
    AnswerSet b = quality_answers(supply, data, ward);
    ck.equal(b.tuples, TupleSetAnswers{{c("37.0")}},
             "supplier-extended quality answers should be {37.0}");

    ck.equal(serialize_instance(core_quality_version(base, data)),
             fixture_text("golden/patient_monitoring.coreq.facts"),
             "base quality version of the source table differs from the golden dump");
    ck.equal(serialize_instance(core_quality_version(supply, data)),
             fixture_text("golden/patient_monitoring_supply.coreq.facts"),
             "supplier quality version of the source table differs from the golden dump");
}

// --- criterion 5: dimensional propagation answers -------------------------

void dimensional_propagation(Check& ck) {
    Program p = fixture_program("hospital.dlp");
    UnionQuery q = fixture_query("hospital_shifts.q");
    AnswerSet plain = certain_answers(p, Instance{}, q);
    ck.equal(plain.tuples, TupleSetAnswers{{c("w1")}, {c("w2")}},
             "schedule propagation should staff exactly w1 and w2");
    AnswerOptions pruned;
    pruned.chase.subsume_dominated = true;
    ck.equal(certain_answers(p, Instance{}, q, pruned).tuples, plain.tuples,
             "dominated-atom pruning must not change certain answers");
}

// --- criterion 6: equality separability probes ----------------------------

void separability_probes(Check& ck) {
    SeparabilityProbeResult collapse = semantic_separability_probe(
        fixture_program("collapse_pair.dlp"), Instance{}, {fixture_query("collapse_pair.q")});
    ck.expect(collapse.outcome == SeparabilityProbeOutcome::Disagreement,
              "equating the invented pair changes the collapse answer");

    Program board = fixture_program("board.dlp");
    UnionQuery boardQ = fixture_query("board.q");
    AnswerOptions keyed;
    keyed.with_categorical_keys = true;
    SeparabilityProbeResult probe =
        semantic_separability_probe(board, Instance{}, {boardQ}, keyed);
    ck.expect(probe.outcome == SeparabilityProbeOutcome::Disagreement,
              "key equalities change the board answer");
    BasicConstraints full = generate_basic_constraints(board, true);
    Program boardKeyed = board;
    boardKeyed.egds.insert(boardKeyed.egds.end(), full.egds.begin(), full.egds.end());
    ChaseResult merged = run_chase(boardKeyed, Instance{}, {});
    ck.expect(merged.outcome == ChaseOutcome::Terminated,
              "board chase with keys should terminate without failing");
    ck.expect(certain_answers(board, Instance{}, boardQ, keyed).boolean_value(),
              "with keys the board query is certainly true");
    ck.expect(!certain_answers(board, Instance{}, boardQ).boolean_value(),
              "without keys the board query is not certain");

    SeparabilityProbeResult therm = semantic_separability_probe(
        fixture_program("thermometer.dlp"), Instance{}, {fixture_query("thermometer.q")});
    ck.expect(therm.outcome == SeparabilityProbeOutcome::ConsistentWithAgreement,
              "the category-typed thermometer equality does not change answers");
}

// --- criterion 7: oracle cross-checks -------------------------------------

void oracle_battery(Check& ck) {
    std::mt19937_64 rng(900913);

    for (int i = 0; i < 500 && ck.failures.size() < 5; ++i) {
        std::vector<Atom> pattern = random_pattern(rng);
        Instance instance = random_instance(rng);
        if (find_homomorphisms(pattern, instance) != brute_force_homomorphisms(pattern, instance))
            ck.expect(false, "homomorphism search disagrees with the oracle (case " +
                                 std::to_string(i) + ")");
    }

    for (int i = 0; i < 200 && ck.failures.size() < 5; ++i) {
        Program p = random_datalog_program(rng);
        ChaseResult chased = run_chase(p, Instance{}, {});
        Instance fixpoint = datalog_fixpoint(p.tgds, Instance{p.facts});
        if (!(chased.outcome == ChaseOutcome::Terminated && chased.instance == fixpoint)) {
            ck.expect(false, "chase disagrees with the datalog fixpoint (case " +
                                 std::to_string(i) + ")");
            continue;
        }
        UnionQuery q = random_query_for(p, rng);
        if (certain_answers(p, Instance{}, q).tuples != brute_force_ucq(q, fixpoint))
            ck.expect(false, "certain answers disagree with the fixpoint evaluation (case " +
                                 std::to_string(i) + ")");
    }

    const std::vector<std::pair<std::string, std::size_t>> vocabulary = {{"P", 2}, {"U", 1}};
    const std::vector<Term> domain = {c("a"), c("b"), c("c")};
    ChaseOptions bounded;
    bounded.max_steps = 200;
    int verified = 0;
    int guard = 0;
    while (verified < 50 && guard++ < 1000 && ck.failures.size() < 5) {
        Program p = random_existential_program(rng);
        ChaseResult r = run_chase(p, Instance{}, bounded);
        if (r.outcome != ChaseOutcome::Terminated) continue;
        ++verified;
        if (!is_model(r.instance, p)) {
            ck.expect(false, "terminated chase is not a model:\n" + serialize_program(p));
            continue;
        }
        std::vector<Atom> pattern = instance_as_pattern(r.instance);
        bool universal = true;
        for_each_model(p, Instance{p.facts}, vocabulary, domain, [&](const Instance& m) {
            if (!has_homomorphism(pattern, m)) universal = false;
        });
        ck.expect(universal, "terminated chase should map into every model:\n" +
                                 serialize_program(p));
    }
    ck.expect(verified == 50, "expected 50 terminated runs for the universality check");

    Instance data = parse_instance(fixture_text("quality/temperatures.facts"));
    for (const char* rel :
         {"quality/patient_monitoring.dlp", "quality/patient_monitoring_supply.dlp"}) {
        ContextualOntology ctx = build_context(fixture_program(rel));
        for (const char* queryRel : {"quality/ward_temps.q", "quality/raw_range.q"}) {
            UnionQuery q = fixture_query(queryRel);
            AnswerSet direct = quality_answers(ctx, data, q);
            AnswerSet material = quality_answers_by_materialization(ctx, data, q);
            ck.expect(direct.tuples == material.tuples,
                      std::string("quality answers disagree between unfolding and "
                                  "materialization for ") +
                          rel + " / " + queryRel);
        }
    }
}

// --- criterion 8: serialization identity and rerun determinism ------------

void serialization_determinism(Check& ck) {
    for (const std::string& rel : fixture_files({".dlp"})) {
        Program once = parse_program(fixture_text(rel));
        Program twice = parse_program(serialize_program(once));
        ck.expect(once == twice, "program round-trip changed " + rel);
    }
    for (const std::string& rel : fixture_files({".q"})) {
        for (const UnionQuery& q : parse_queries(fixture_text(rel)))
            ck.expect(parse_query(serialize_query(q)) == q, "query round-trip changed " + rel);
    }
    for (const std::string& rel : fixture_files({".facts", ".dump"})) {
        Instance once = parse_instance(fixture_text(rel));
        ck.expect(parse_instance(serialize_instance(once)) == once,
                  "instance round-trip changed " + rel);
    }

    ChaseOptions bounded;
    bounded.max_steps = 300;
    for (const std::string& rel : fixture_files({".dlp"})) {
        Program p = parse_program(fixture_text(rel));
        ChaseResult a = run_chase(p, Instance{}, bounded);
        ChaseResult b = run_chase(p, Instance{}, bounded);
        ck.expect(serialize_instance(a.instance, false) == serialize_instance(b.instance, false),
                  "chase rerun produced a different instance for " + rel);
    }
}

struct Criterion {
    std::string name;
    std::function<void(Check&)> run;
    long long budget_ms;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"chase reproduces the golden dumps and the failure witness", chase_goldens, 1000},
        {"termination and stickiness classification match the frozen verdicts", classification,
         1000},
        {"generated dimensional programs validate and stay weakly sticky", random_dimensional,
         30000},
        {"quality filtering answers and quality versions match the golden data",
         quality_pipeline, 2000},
        {"unit schedules propagate to exactly the unit's wards", dimensional_propagation, 1000},
        {"separability probes detect when equalities change answers", separability_probes, 2000},
        {"library results agree with the independent oracles", oracle_battery, 120000},
        {"serialization round-trips and chase reruns are bit-identical",
         serialization_determinism, 5000},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& criterion = criteria[i];
        Check ck;
        auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(ck);
        } catch (const std::exception& e) {
            ck.expect(false, std::string("unexpected exception: ") + e.what());
        }
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        if (elapsed > criterion.budget_ms)
            ck.expect(false, "took " + std::to_string(elapsed) + " ms, budget " +
                                 std::to_string(criterion.budget_ms) + " ms");
        bool ok = ck.failures.empty();
        if (!ok) ++failed;
        std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": "
                  << criterion.name << " (" << elapsed << " ms)\n";
        for (const std::string& f : ck.failures) std::cout << "      - " << f << "\n";
    }
    std::cout << (failed == 0 ? "all criteria passed" : "criteria failed: ")
              << (failed == 0 ? "" : std::to_string(failed)) << "\n";
    return failed;
}
