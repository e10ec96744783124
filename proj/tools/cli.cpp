#include "cli.hpp"

#include <omd/analysis.hpp>
#include <omd/answering.hpp>
#include <omd/chase.hpp>
#include <omd/errors.hpp>
#include <omd/md_ontology.hpp>
#include <omd/parser.hpp>
#include <omd/quality.hpp>
#include <omd/serializer.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace omd::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("IoError", "cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void spill(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("IoError", "cannot write " + path.string());
    out << text;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

const char* outcome_word(ChaseOutcome outcome) {
    switch (outcome) {
        case ChaseOutcome::Terminated: return "terminated";
        case ChaseOutcome::Truncated: return "truncated";
        case ChaseOutcome::Failed: return "failed";
    }
    return "unknown";
}

const char* verdict_word(SeparabilityVerdict v) {
    return v == SeparabilityVerdict::Separable ? "separable" : "unknown";
}

// Flags shared by every subcommand that runs the chase.
struct ChaseFlags {
    std::string variant = "restricted";
    std::uint64_t max_steps = 0;
    std::uint64_t max_null_depth = 0;
    bool subsume = false;
};

void add_chase_flags(CLI::App* cmd, ChaseFlags& flags) {
    cmd->add_option("--variant", flags.variant, "Chase variant")
        ->check(CLI::IsMember({"restricted", "oblivious"}))
        ->default_str("restricted");
    cmd->add_option("--max-steps", flags.max_steps,
                    "Stop after this many rule applications (0 = unbounded)");
    cmd->add_option("--max-null-depth", flags.max_null_depth,
                    "Suppress applications nesting fresh values deeper than this "
                    "(0 = unbounded)");
    cmd->add_flag("--subsume", flags.subsume,
                  "Drop atoms dominated by a more general atom");
}

ChaseOptions to_chase_options(const ChaseFlags& flags) {
    ChaseOptions options;
    options.variant =
        flags.variant == "oblivious" ? ChaseVariant::Oblivious : ChaseVariant::Restricted;
    options.max_steps = flags.max_steps;
    options.max_null_depth = flags.max_null_depth;
    options.subsume_dominated = flags.subsume;
    return options;
}

// --- answers ---------------------------------------------------------------

bool is_boolean_query(const UnionQuery& query) {
    return query.disjuncts.empty() || query.disjuncts.front().head_terms.empty();
}

// Prints one answer set; returns the exit code it implies.
int print_answers(const UnionQuery& query, const AnswerSet& answers, std::ostream& out,
                  std::ostream& err) {
    if (answers.trivially_true) {
        if (!answers.note.empty()) err << answers.note << "\n";
        err << "inconsistent: every answer is trivially certain\n";
        if (is_boolean_query(query)) out << "TRUE\n";
        return 5;
    }
    if (is_boolean_query(query)) {
        out << (answers.boolean_value() ? "TRUE" : "FALSE") << "\n";
    } else {
        for (const std::vector<Term>& row : answers.tuples) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "\t" : "") << row[i].to_string();
            out << "\n";
        }
    }
    if (answers.incomplete) {
        if (!answers.note.empty()) err << answers.note << "\n";
        return 3;
    }
    return 0;
}

int combine_codes(int a, int b) {
    if (a == 5 || b == 5) return 5;
    if (a == 3 || b == 3) return 3;
    return a ? a : b;
}

// --- validate --------------------------------------------------------------

int do_validate(const std::string& program_path, bool as_json, std::ostream& out) {
    Program program = parse_program(slurp(program_path));
    ValidationReport report = validate_program(program);
    if (as_json) {
        json findings = json::array();
        for (const ValidationFinding& f : report.findings)
            findings.push_back(
                {{"invariant", f.invariant}, {"witness", f.witness}, {"message", f.message}});
        json j = {{"schema_version", 1},
                  {"command", "validate"},
                  {"ok", report.ok()},
                  {"findings", findings}};
        out << j.dump(2) << "\n";
    } else if (report.ok()) {
        out << "ok\n";
    } else {
        for (const ValidationFinding& f : report.findings)
            out << f.invariant << ": " << f.message << " [" << f.witness << "]\n";
    }
    return report.ok() ? 0 : 2;
}

// --- classify --------------------------------------------------------------

int do_classify(const std::string& program_path, bool as_json, std::ostream& out) {
    Program program = parse_program(slurp(program_path));
    Classification c = classify_program(program);
    if (as_json) {
        json ranks = json::object();
        for (const auto& [position, rank] : c.ranks)
            ranks[position.to_string()] = rank.to_string();
        json separability = json::array();
        for (SeparabilityVerdict v : c.egd_separability) separability.push_back(verdict_word(v));
        json j = {{"schema_version", 1},
                  {"command", "classify"},
                  {"weakly_acyclic", c.weakly_acyclic},
                  {"sticky", c.sticky},
                  {"weakly_sticky", c.weakly_sticky},
                  {"ranks", ranks},
                  {"marked_program", c.marking.to_string()},
                  {"egd_separability", separability}};
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "ranks:\n";
    for (const auto& [position, rank] : c.ranks)
        out << "  " << position.to_string() << ": " << rank.to_string() << "\n";
    out << "marked program:\n";
    std::istringstream marked(c.marking.to_string());
    for (std::string line; std::getline(marked, line);) out << "  " << line << "\n";
    out << "WA: " << yes_no(c.weakly_acyclic) << ", Sticky: " << yes_no(c.sticky)
        << ", WS: " << yes_no(c.weakly_sticky) << "\n";
    if (!c.egd_separability.empty()) {
        out << "equality rule separability:\n";
        for (std::size_t i = 0; i < c.egd_separability.size(); ++i)
            out << "  " << i << ": " << verdict_word(c.egd_separability[i]) << "\n";
    }
    return 0;
}

// --- chase -----------------------------------------------------------------

int do_chase(const std::string& program_path, const std::string& data_path,
             const ChaseFlags& flags, const std::string& dump_path, std::ostream& out,
             std::ostream& err) {
    Program program = parse_program(slurp(program_path));
    Instance start;
    if (!data_path.empty()) start = parse_instance(slurp(data_path));
    ChaseResult result = run_chase(program, start, to_chase_options(flags));
    out << "outcome: " << outcome_word(result.outcome) << "\n"
        << "atoms: " << result.instance.size() << "\n"
        << "rule steps: " << result.stats.tgd_steps << "\n"
        << "equality merges: " << result.stats.egd_merges << "\n"
        << "nulls created: " << result.stats.nulls_created << "\n"
        << "levels: " << result.stats.levels << "\n"
        << "subsumed: " << result.stats.subsumed << "\n";
    if (!dump_path.empty()) {
        std::string text = serialize_instance(result.instance);
        if (dump_path == "-")
            out << text;
        else
            spill(dump_path, text);
    }
    switch (result.outcome) {
        case ChaseOutcome::Terminated: return 0;
        case ChaseOutcome::Truncated: return 3;
        case ChaseOutcome::Failed:
            if (result.failure) err << result.failure->to_string() << "\n";
            return 4;
    }
    return 0;
}

// --- ask -------------------------------------------------------------------

int do_ask(const std::string& program_path, const std::string& query_path,
           const std::string& data_path, const ChaseFlags& flags, bool categorical_keys,
           std::ostream& out, std::ostream& err) {
    Program program = parse_program(slurp(program_path));
    std::vector<UnionQuery> queries = parse_queries(slurp(query_path));
    Instance data;
    if (!data_path.empty()) data = parse_instance(slurp(data_path));
    AnswerOptions options;
    options.chase = to_chase_options(flags);
    options.with_categorical_keys = categorical_keys;
    int code = 0;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        if (queries.size() > 1) out << "% query " << (i + 1) << "\n";
        AnswerSet answers = certain_answers(program, data, queries[i], options);
        code = combine_codes(code, print_answers(queries[i], answers, out, err));
    }
    return code;
}

// --- quality / coreq -------------------------------------------------------

int do_quality(const std::string& context_path, const std::string& source_path,
               const std::string& query_path, std::ostream& out, std::ostream& err) {
    ContextualOntology context = build_context(parse_program(slurp(context_path)));
    Instance data = parse_instance(slurp(source_path));
    std::vector<UnionQuery> queries = parse_queries(slurp(query_path));
    int code = 0;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        if (queries.size() > 1) out << "% query " << (i + 1) << "\n";
        AnswerSet answers = quality_answers(context, data, queries[i]);
        code = combine_codes(code, print_answers(queries[i], answers, out, err));
    }
    return code;
}

int do_coreq(const std::string& context_path, const std::string& source_path,
             const std::string& output_path, std::ostream& out) {
    ContextualOntology context = build_context(parse_program(slurp(context_path)));
    Instance data = parse_instance(slurp(source_path));
    std::string text = serialize_instance(core_quality_version(context, data));
    if (output_path.empty() || output_path == "-")
        out << text;
    else
        spill(output_path, text);
    return 0;
}

// --- selftest --------------------------------------------------------------

std::string render_tuples(const TupleSetAnswers& tuples) {
    std::ostringstream s;
    s << "{";
    bool first_row = true;
    for (const std::vector<Term>& row : tuples) {
        s << (first_row ? "" : ", ") << "(";
        for (std::size_t i = 0; i < row.size(); ++i) s << (i ? ", " : "") << row[i].to_string();
        s << ")";
        first_row = false;
    }
    s << "}";
    return s.str();
}

void check_answers(const json& expect, const AnswerSet& answers,
                   std::vector<std::string>& problems) {
    if (expect.contains("answers")) {
        TupleSetAnswers want;
        for (const json& row : expect.at("answers")) {
            std::vector<Term> tuple;
            for (const json& value : row) tuple.push_back(Term::constant(value.get<std::string>()));
            want.insert(tuple);
        }
        if (answers.trivially_true)
            problems.push_back("expected concrete answers but they are trivially certain: " +
                               answers.note);
        else if (answers.tuples != want)
            problems.push_back("answers differ: got " + render_tuples(answers.tuples) +
                               ", want " + render_tuples(want));
    }
    if (expect.contains("boolean")) {
        bool want = expect.at("boolean").get<bool>();
        if (answers.boolean_value() != want)
            problems.push_back(std::string("boolean answer differs: got ") +
                               (answers.boolean_value() ? "true" : "false"));
    }
}

void run_selftest_case(const fs::path& root, const json& c,
                       std::vector<std::string>& problems) {
    const std::string command = c.at("command").get<std::string>();
    const json options = c.value("options", json::object());
    const json expect = c.value("expect", json::object());

    ChaseOptions chase_options;
    if (options.value("variant", std::string{"restricted"}) == "oblivious")
        chase_options.variant = ChaseVariant::Oblivious;
    chase_options.max_steps = options.value("max_steps", std::uint64_t{0});
    chase_options.max_null_depth = options.value("max_null_depth", std::uint64_t{0});
    chase_options.subsume_dominated = options.value("subsume", false);

    auto load_program = [&] {
        return parse_program(slurp(root / c.at("program").get<std::string>()));
    };
    auto load_query = [&] {
        return parse_query(slurp(root / c.at("query").get<std::string>()));
    };
    auto load_context = [&] {
        return build_context(parse_program(slurp(root / c.at("context").get<std::string>())));
    };
    auto load_source = [&] {
        return parse_instance(slurp(root / c.at("source").get<std::string>()));
    };

    if (command == "chase") {
        ChaseResult result = run_chase(load_program(), Instance{}, chase_options);
        if (expect.contains("outcome")) {
            std::string want = expect.at("outcome").get<std::string>();
            if (outcome_word(result.outcome) != want)
                problems.push_back("outcome differs: got " +
                                   std::string(outcome_word(result.outcome)) + ", want " + want);
        }
        if (expect.contains("dump")) {
            std::string want = slurp(root / expect.at("dump").get<std::string>());
            if (serialize_instance(result.instance) != want)
                problems.push_back("chased instance differs from golden dump");
        }
        if (expect.contains("failure_lhs") || expect.contains("failure_rhs")) {
            if (!result.failure) {
                problems.push_back("expected a failure witness");
            } else {
                if (expect.contains("failure_lhs") &&
                    result.failure->lhs != expect.at("failure_lhs").get<std::string>())
                    problems.push_back("failure lhs differs: got " + result.failure->lhs);
                if (expect.contains("failure_rhs") &&
                    result.failure->rhs != expect.at("failure_rhs").get<std::string>())
                    problems.push_back("failure rhs differs: got " + result.failure->rhs);
            }
        }
    } else if (command == "ask") {
        AnswerOptions answer_options;
        answer_options.chase = chase_options;
        answer_options.with_categorical_keys = options.value("categorical_keys", false);
        AnswerSet answers =
            certain_answers(load_program(), Instance{}, load_query(), answer_options);
        check_answers(expect, answers, problems);
    } else if (command == "classify") {
        Classification cl = classify_program(load_program());
        auto check_flag = [&](const char* key, bool got) {
            if (expect.contains(key) && expect.at(key).get<bool>() != got)
                problems.push_back(std::string(key) + " differs: got " + (got ? "true" : "false"));
        };
        check_flag("weakly_acyclic", cl.weakly_acyclic);
        check_flag("sticky", cl.sticky);
        check_flag("weakly_sticky", cl.weakly_sticky);
    } else if (command == "quality") {
        AnswerSet answers = quality_answers(load_context(), load_source(), load_query());
        check_answers(expect, answers, problems);
    } else if (command == "coreq") {
        Instance quality_instance = core_quality_version(load_context(), load_source());
        std::string want = slurp(root / expect.at("facts").get<std::string>());
        if (serialize_instance(quality_instance) != want)
            problems.push_back("quality version differs from golden facts");
    } else if (command == "validate") {
        ValidationReport report = validate_program(load_program());
        if (expect.contains("ok") && report.ok() != expect.at("ok").get<bool>())
            problems.push_back(std::string("ok differs: got ") +
                               (report.ok() ? "true" : "false"));
    } else {
        problems.push_back("unknown command: " + command);
    }
}

int do_selftest(const std::string& fixtures, std::ostream& out, std::ostream& err) {
    const fs::path root = fixtures;
    json manifest = json::parse(slurp(root / "selftest.manifest"));
    if (manifest.value("schema_version", 0) != 1) {
        err << "unsupported selftest manifest schema\n";
        return 2;
    }
    int failures = 0;
    int total = 0;
    for (const json& c : manifest.at("cases")) {
        ++total;
        const std::string name = c.value("name", "unnamed");
        std::vector<std::string> problems;
        try {
            run_selftest_case(root, c, problems);
        } catch (const std::exception& e) {
            problems.push_back(std::string("exception: ") + e.what());
        }
        if (problems.empty()) {
            out << "PASS " << name << "\n";
        } else {
            ++failures;
            out << "FAIL " << name << "\n";
            for (const std::string& p : problems) out << "     " << p << "\n";
        }
    }
    out << total << " cases, " << failures << " failed\n";
    return failures;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"deductive engine for ontological multidimensional data"};
    app.name("omd");
    app.require_subcommand(1);

    // validate
    std::string validate_program_path;
    bool validate_json = false;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "Check a program against the dimensional well-formedness rules");
    validate_cmd->add_option("program", validate_program_path, "Program file")->required();
    validate_cmd->add_flag("--json", validate_json, "Machine-readable report");

    // classify
    std::string classify_program_path;
    bool classify_json = false;
    CLI::App* classify_cmd =
        app.add_subcommand("classify", "Report position ranks, variable marking, and rule classes");
    classify_cmd->add_option("program", classify_program_path, "Program file")->required();
    classify_cmd->add_flag("--json", classify_json, "Machine-readable report");

    // chase
    std::string chase_program_path, chase_data_path, chase_dump_path;
    ChaseFlags chase_flags;
    CLI::App* chase_cmd = app.add_subcommand("chase", "Run the chase and report the outcome");
    chase_cmd->add_option("program", chase_program_path, "Program file")->required();
    chase_cmd->add_option("data", chase_data_path, "Extra facts file");
    add_chase_flags(chase_cmd, chase_flags);
    chase_cmd->add_option("--dump", chase_dump_path,
                          "Write the chased instance as sorted facts (- for stdout)");

    // ask
    std::string ask_program_path, ask_query_path, ask_data_path;
    ChaseFlags ask_flags;
    bool ask_keys = false;
    CLI::App* ask_cmd = app.add_subcommand("ask", "Certain answers to a query");
    ask_cmd->add_option("program", ask_program_path, "Program file")->required();
    ask_cmd->add_option("query", ask_query_path, "Query file")->required();
    ask_cmd->add_option("data", ask_data_path, "Extra facts file");
    add_chase_flags(ask_cmd, ask_flags);
    ask_cmd->add_flag("--categorical-keys", ask_keys,
                      "Also enforce the categorical key equalities");

    // quality
    std::string quality_context_path, quality_source_path, quality_query_path;
    CLI::App* quality_cmd =
        app.add_subcommand("quality", "Quality answers to a query over a contextual ontology");
    quality_cmd->add_option("--context", quality_context_path, "Context program file")
        ->required();
    quality_cmd->add_option("--source", quality_source_path, "Source facts file")->required();
    quality_cmd->add_option("--query", quality_query_path, "Query file")->required();

    // coreq
    std::string coreq_context_path, coreq_source_path, coreq_output_path;
    CLI::App* coreq_cmd =
        app.add_subcommand("coreq", "Emit the quality version of the source data as sorted facts");
    coreq_cmd->add_option("--context", coreq_context_path, "Context program file")->required();
    coreq_cmd->add_option("--source", coreq_source_path, "Source facts file")->required();
    coreq_cmd->add_option("--output", coreq_output_path, "Output file (default stdout)");

    // selftest
    std::string selftest_fixtures = "fixtures";
    std::uint64_t selftest_seed = 0;
    CLI::App* selftest_cmd =
        app.add_subcommand("selftest", "Replay the fixture manifest against the engine");
    selftest_cmd->add_option("--fixtures", selftest_fixtures, "Fixtures directory")
        ->default_str("fixtures");
    selftest_cmd->add_option("--seed", selftest_seed,
                             "Reserved; the engine is deterministic and ignores it");

    std::vector<const char*> argv;
    argv.push_back("omd");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (validate_cmd->parsed()) return do_validate(validate_program_path, validate_json, out);
        if (classify_cmd->parsed()) return do_classify(classify_program_path, classify_json, out);
        if (chase_cmd->parsed())
            return do_chase(chase_program_path, chase_data_path, chase_flags, chase_dump_path,
                            out, err);
        if (ask_cmd->parsed())
            return do_ask(ask_program_path, ask_query_path, ask_data_path, ask_flags, ask_keys,
                          out, err);
        if (quality_cmd->parsed())
            return do_quality(quality_context_path, quality_source_path, quality_query_path, out,
                              err);
        if (coreq_cmd->parsed())
            return do_coreq(coreq_context_path, coreq_source_path, coreq_output_path, out);
        if (selftest_cmd->parsed()) return do_selftest(selftest_fixtures, out, err);
    } catch (const Error& e) {
        err << e.kind() << ": " << e.what() << "\n";
        return e.kind() == "InconsistentContext" ? 5 : 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace omd::cli
