#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <omd/answering.hpp>
#include <omd/parser.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace omd;

namespace {
Term c(const std::string& s) { return Term::constant(s); }

Program fixture_program(const std::string& rel) {
    return parse_program(omd::testing::fixture_text(rel));
}

UnionQuery fixture_query(const std::string& rel) {
    return parse_query(omd::testing::fixture_text(rel));
}
}  // namespace

TEST_CASE("unit schedules propagate to every ward of the unit") {
    Program p = fixture_program("hospital.dlp");
    UnionQuery q = fixture_query("hospital_shifts.q");
    AnswerSet ans = certain_answers(p, Instance{}, q);
    CHECK_FALSE(ans.trivially_true);
    CHECK_FALSE(ans.incomplete);
    CHECK(ans.tuples == TupleSetAnswers{{c("w1")}, {c("w2")}});

    // Pruning dominated atoms must not change certain answers.
    AnswerOptions pruned;
    pruned.chase.subsume_dominated = true;
    CHECK(certain_answers(p, Instance{}, q, pruned).tuples == ans.tuples);

    // The invented speciality value is a labeled null, so asking for
    // specialities certainly yields nothing new.
    UnionQuery speciality = parse_query("?(T) :- WorkSchedules(U, 2016/09/06, helen, T).\n");
    CHECK(certain_answers(p, Instance{}, speciality).tuples.empty());
}

TEST_CASE("categorical keys decide the board query") {
    Program p = fixture_program("board.dlp");
    UnionQuery q = fixture_query("board.q");

    AnswerSet plain = certain_answers(p, Instance{}, q);
    CHECK_FALSE(plain.trivially_true);
    CHECK_FALSE(plain.boolean_value());

    AnswerOptions keyed;
    keyed.with_categorical_keys = true;
    AnswerSet merged = certain_answers(p, Instance{}, q, keyed);
    CHECK_FALSE(merged.trivially_true);
    CHECK(merged.boolean_value());
    CHECK(merged.tuples == TupleSetAnswers{std::vector<Term>{}});
}

TEST_CASE("boolean queries read derived facts even with null arguments") {
    Program p = fixture_program("collapse_pair.dlp");
    UnionQuery q = fixture_query("collapse_pair.q");
    AnswerSet ans = certain_answers(p, Instance{}, q);
    CHECK_FALSE(ans.trivially_true);
    CHECK(ans.boolean_value());
    // The open variant is stripped: P holds only of a null in one position.
    UnionQuery open = parse_query("?(X, Y) :- P(X, Y).\n");
    CHECK(certain_answers(p, Instance{}, open).tuples.empty());
    UnionQuery first = parse_query("?(X) :- P(X, Y).\n");
    CHECK(certain_answers(p, Instance{}, first).tuples == TupleSetAnswers{{c("b")}});
}

TEST_CASE("a failing chase makes every query trivially certain") {
    Program p = fixture_program("collapse_pair_failing.dlp");
    UnionQuery q = fixture_query("collapse_pair.q");
    AnswerSet ans = certain_answers(p, Instance{}, q);
    CHECK(ans.trivially_true);
    CHECK(ans.boolean_value());
    CHECK(ans.tuples.empty());
    CHECK(ans.note == "equality rule 0 equates distinct constants a and b");
}

TEST_CASE("an entailed denial constraint makes every query trivially certain") {
    Program p = fixture_program("hospital.dlp");
    UnionQuery q = fixture_query("hospital_shifts.q");
    // w9 is no declared ward, so the generated membership denial fires.
    Instance data = parse_instance("Shifts(w9, sep/6/2016, helen, night).\n");
    AnswerSet ans = certain_answers(p, data, q);
    CHECK(ans.trivially_true);
    CHECK(ans.note.rfind("denial constraint 11 violated under", 0) == 0);

    // Without the generated constraints the stray ward is simply data.
    AnswerOptions bare;
    bare.with_basic_constraints = false;
    AnswerSet loose = certain_answers(p, data, q, bare);
    CHECK_FALSE(loose.trivially_true);
    CHECK(loose.tuples == TupleSetAnswers{{c("w1")}, {c("w2")}, {c("w9")}});
}

TEST_CASE("truncated chases flag their answers as incomplete") {
    Program p = fixture_program("successor_chain.dlp");
    UnionQuery q = parse_query("?() :- S(X, Y, Z).\n");
    AnswerOptions opts;
    opts.chase.max_steps = 2;
    AnswerSet ans = certain_answers(p, Instance{}, q, opts);
    CHECK(ans.incomplete);
    CHECK(ans.note == "chase truncated; answers are sound but may be incomplete");
}

TEST_CASE("consistency verdicts cover all three outcomes") {
    Program hosp = fixture_program("hospital.dlp");
    CHECK(is_consistent(hosp, Instance{}).verdict == Consistency::Consistent);

    Instance bad = parse_instance("Shifts(w9, sep/6/2016, helen, night).\n");
    ConsistencyResult nc = is_consistent(hosp, bad);
    CHECK(nc.verdict == Consistency::Inconsistent);
    CHECK(nc.witness.rfind("denial constraint 11", 0) == 0);

    ConsistencyResult clash = is_consistent(fixture_program("collapse_pair_failing.dlp"), Instance{});
    CHECK(clash.verdict == Consistency::Inconsistent);
    CHECK(clash.witness == "equality rule 0 equates distinct constants a and b");

    AnswerOptions tight;
    tight.chase.max_steps = 2;
    ConsistencyResult cut = is_consistent(fixture_program("successor_chain.dlp"), Instance{}, tight);
    CHECK(cut.verdict == Consistency::Indeterminate);
}

TEST_CASE("the semantic probe detects equality rules that change answers") {
    Program collapse = fixture_program("collapse_pair.dlp");
    SeparabilityProbeResult r = semantic_separability_probe(
        collapse, Instance{}, {fixture_query("collapse_pair.q")});
    CHECK(r.outcome == SeparabilityProbeOutcome::Disagreement);
    REQUIRE(r.disagreeing_query.has_value());
    CHECK(r.note == "enforcing the equality rules changes the answers");

    Program board = fixture_program("board.dlp");
    AnswerOptions keyed;
    keyed.with_categorical_keys = true;
    SeparabilityProbeResult b = semantic_separability_probe(
        board, Instance{}, {fixture_query("board.q")}, keyed);
    CHECK(b.outcome == SeparabilityProbeOutcome::Disagreement);

    Program therm = fixture_program("thermometer.dlp");
    SeparabilityProbeResult t = semantic_separability_probe(
        therm, Instance{}, {fixture_query("thermometer.q")});
    CHECK(t.outcome == SeparabilityProbeOutcome::ConsistentWithAgreement);
    CHECK_FALSE(t.disagreeing_query.has_value());

    Program hosp = fixture_program("hospital.dlp");
    SeparabilityProbeResult h = semantic_separability_probe(
        hosp, Instance{}, {fixture_query("hospital_shifts.q")});
    CHECK(h.outcome == SeparabilityProbeOutcome::ConsistentWithAgreement);

    SeparabilityProbeResult f = semantic_separability_probe(
        fixture_program("collapse_pair_failing.dlp"), Instance{},
        {fixture_query("collapse_pair.q")});
    CHECK(f.outcome == SeparabilityProbeOutcome::ChaseFailed);

    AnswerOptions tight;
    tight.chase.max_steps = 2;
    SeparabilityProbeResult cut = semantic_separability_probe(
        fixture_program("successor_chain.dlp"), Instance{},
        {parse_query("?() :- S(X, Y, Z).\n")}, tight);
    CHECK(cut.outcome == SeparabilityProbeOutcome::Indeterminate);
}

TEST_CASE("the separability fastpath answers like the interleaved pipeline") {
    Program therm = fixture_program("thermometer.dlp");
    UnionQuery q = fixture_query("thermometer.q");
    AnswerSet slow = certain_answers(therm, Instance{}, q);
    AnswerOptions fast;
    fast.separability_fastpath = true;
    AnswerSet quick = certain_answers(therm, Instance{}, q, fast);
    CHECK(slow.tuples == TupleSetAnswers{{c("b1")}});
    CHECK(quick.tuples == slow.tuples);
    CHECK_FALSE(quick.trivially_true);

    Program hosp = fixture_program("hospital.dlp");
    UnionQuery hq = fixture_query("hospital_shifts.q");
    CHECK(certain_answers(hosp, Instance{}, hq, fast).tuples ==
          certain_answers(hosp, Instance{}, hq).tuples);

    // Mixed thermometer types in one unit: the clash surfaces on both routes
    // with the same witness.
    Instance mixed = parse_instance("Therm(w2, b2, sara).\n");
    AnswerSet slowClash = certain_answers(therm, mixed, q);
    AnswerSet quickClash = certain_answers(therm, mixed, q, fast);
    CHECK(slowClash.trivially_true);
    CHECK(quickClash.trivially_true);
    CHECK(slowClash.note == "equality rule 0 equates distinct constants b1 and b2");
    CHECK(quickClash.note == slowClash.note);
}
