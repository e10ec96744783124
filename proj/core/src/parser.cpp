#include "omd/parser.hpp"

#include <cctype>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "omd/errors.hpp"

namespace omd {

namespace {

const std::map<std::string, int> kMonths = {
    {"jan", 1}, {"feb", 2}, {"mar", 3}, {"apr", 4},  {"may", 5},  {"jun", 6},
    {"jul", 7}, {"aug", 8}, {"sep", 9}, {"oct", 10}, {"nov", 11}, {"dec", 12},
};

enum class TokType {
    Ident,      // identifier (case decides variable vs constant in term position)
    Datum,      // digit-led or month-led date/number literal
    String,     // quoted constant
    NullMark,   // ?zN (text holds N)
    Directive,  // @word (text holds word)
    Punct,      // ( ) { } , ; . | / ? #false and operators -> :- = != <= < >= >
    End,
};

struct Token {
    TokType type = TokType::End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }
    bool at(TokType type) const { return current_.type == type; }
    bool at_punct(const std::string& p) const {
        return current_.type == TokType::Punct && current_.text == p;
    }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw SyntaxError(message, current_.line, current_.col);
    }

private:
    void advance() {
        skip_trivia();
        int line = line_, col = col_;
        if (pos_ >= text_.size()) {
            current_ = {TokType::End, "", line, col};
            return;
        }
        char c = text_[pos_];
        if (c == '"') {
            lex_string(line, col);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            lex_datum(line, col);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            lex_ident(line, col);
        } else if (c == '@') {
            get();
            std::string word;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                word.push_back(get());
            if (word.empty()) throw SyntaxError("stray '@'", line, col);
            current_ = {TokType::Directive, word, line, col};
        } else if (c == '?') {
            // ?zN is a labeled null; a bare '?' introduces a query head.
            if (pos_ + 2 < text_.size() && text_[pos_ + 1] == 'z' &&
                std::isdigit(static_cast<unsigned char>(text_[pos_ + 2]))) {
                get();
                get();
                std::string digits;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    digits.push_back(get());
                current_ = {TokType::NullMark, digits, line, col};
            } else {
                get();
                current_ = {TokType::Punct, "?", line, col};
            }
        } else {
            lex_punct(line, col);
        }
    }

    void skip_trivia() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') get();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                get();
            } else {
                break;
            }
        }
    }

    void lex_string(int line, int col) {
        get();  // opening quote
        std::string value;
        while (true) {
            if (pos_ >= text_.size()) throw SyntaxError("unterminated string", line, col);
            char c = get();
            if (c == '"') break;
            if (c == '\\') {
                if (pos_ >= text_.size()) throw SyntaxError("unterminated string", line, col);
                value.push_back(get());
            } else {
                value.push_back(c);
            }
        }
        current_ = {TokType::String, value, line, col};
    }

    // Digit-led literal: numbers (37.0) and date/time forms
    // (12:10-sep/1/2016, 2016/09/01-12:10). A '.' joins only onto a digit,
    // so the clause-terminating '.' is never swallowed; '-' joins only onto
    // a digit or lower-case letter, so '->' stays an arrow.
    void lex_datum(int line, int col) {
        std::string value;
        value.push_back(get());
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            char next = pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0';
            if (std::isdigit(static_cast<unsigned char>(c)) || (c >= 'a' && c <= 'z') ||
                c == ':' || c == '/') {
                value.push_back(get());
            } else if (c == '.' && std::isdigit(static_cast<unsigned char>(next))) {
                value.push_back(get());
            } else if (c == '-' && (std::isdigit(static_cast<unsigned char>(next)) ||
                                    (next >= 'a' && next <= 'z'))) {
                value.push_back(get());
            } else {
                break;
            }
        }
        current_ = {TokType::Datum, value, line, col};
    }

    void lex_ident(int line, int col) {
        std::string value;
        value.push_back(get());
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')
                value.push_back(get());
            else
                break;
        }
        // Month-led dates (sep/1/2016) read as one literal.
        if (kMonths.count(value) && pos_ + 1 < text_.size() && text_[pos_] == '/' &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            while (pos_ < text_.size() &&
                   (text_[pos_] == '/' || std::isdigit(static_cast<unsigned char>(text_[pos_]))))
                value.push_back(get());
            current_ = {TokType::Datum, value, line, col};
            return;
        }
        current_ = {TokType::Ident, value, line, col};
    }

    void lex_punct(int line, int col) {
        char c = get();
        std::string value(1, c);
        char next = pos_ < text_.size() ? text_[pos_] : '\0';
        if (c == '-' && next == '>') {
            value.push_back(get());
        } else if (c == ':' && next == '-') {
            value.push_back(get());
        } else if ((c == '!' || c == '<' || c == '>') && next == '=') {
            value.push_back(get());
        } else if (c == '#') {
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
                value.push_back(get());
        }
        static const std::set<std::string> known = {"(",  ")",  "{", "}",  ",",  ";",
                                                    ".",  "|",  "/", "->", ":-", "=",
                                                    "!=", "<=", "<", ">=", ">",  "#false"};
        if (!known.count(value))
            throw SyntaxError("unexpected character sequence '" + value + "'", line, col);
        current_ = {TokType::Punct, value, line, col};
    }

    char get() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_;
};

bool uppercase_start(const std::string& s) {
    return !s.empty() && s[0] >= 'A' && s[0] <= 'Z';
}

std::string pad2(int v) {
    std::string s = std::to_string(v);
    return s.size() < 2 ? "0" + s : s;
}

}  // namespace

std::string normalize_datetime(const std::string& text) {
    static const std::regex time_date(
        R"(^([0-9]{1,2}):([0-9]{2})-([a-z]{3})/([0-9]{1,2})/([0-9]{4})$)");
    static const std::regex date_only(R"(^([a-z]{3})/([0-9]{1,2})/([0-9]{4})$)");
    std::smatch m;
    if (std::regex_match(text, m, time_date)) {
        auto month = kMonths.find(m[3].str());
        if (month == kMonths.end()) return text;
        return m[5].str() + "/" + pad2(month->second) + "/" + pad2(std::stoi(m[4].str())) + "-" +
               pad2(std::stoi(m[1].str())) + ":" + m[2].str();
    }
    if (std::regex_match(text, m, date_only)) {
        auto month = kMonths.find(m[1].str());
        if (month == kMonths.end()) return text;
        return m[3].str() + "/" + pad2(month->second) + "/" + pad2(std::stoi(m[2].str()));
    }
    return text;
}

namespace {

// Body literal kinds collected while parsing a clause.
struct BodyParts {
    std::vector<NcLiteral> literals;  // positive and negated atoms
    std::vector<BuiltinLiteral> builtins;

    bool has_negation() const {
        for (const auto& l : literals)
            if (l.negated) return true;
        return false;
    }
    std::vector<Atom> positive_atoms() const {
        std::vector<Atom> out;
        for (const auto& l : literals)
            if (!l.negated) out.push_back(l.atom);
        return out;
    }
};

class Parser {
public:
    enum class Mode { ProgramFile, InstanceFile, QueryFile };

    Parser(const std::string& text, Mode mode) : lex_(text), mode_(mode) {}

    Program parse_program_file() {
        while (!lex_.at(TokType::End)) parse_item();
        finalize_program();
        return std::move(program_);
    }

    std::vector<Atom> parse_instance_file() {
        std::vector<Atom> atoms;
        while (!lex_.at(TokType::End)) {
            Token at = lex_.peek();
            Atom a = parse_atom(/*allow_nulls=*/true);
            expect_punct(".");
            if (!a.ground())
                throw SyntaxError("instance atoms must be ground", at.line, at.col);
            atoms.push_back(std::move(a));
        }
        return atoms;
    }

    std::vector<UnionQuery> parse_query_file() {
        std::vector<UnionQuery> queries;
        while (!lex_.at(TokType::End)) {
            expect_punct("?");
            queries.push_back(parse_query_clause());
        }
        return queries;
    }

private:
    // --- items --------------------------------------------------------------

    void parse_item() {
        if (lex_.at(TokType::Directive)) {
            Token d = lex_.take();
            if (d.text == "dimension") {
                parse_dimension_block();
            } else if (d.text == "categorical") {
                parse_categorical_decl();
            } else if (d.text == "source") {
                program_.sources.push_back(parse_pred_arity_decl());
            } else if (d.text == "external") {
                program_.externals.push_back(parse_pred_arity_decl());
            } else if (d.text == "quality_def") {
                parse_clause(RuleRole::QualityDef);
            } else if (d.text == "quality_version") {
                parse_clause(RuleRole::QualityVersion);
            } else {
                throw SyntaxError("unknown directive '@" + d.text + "'", d.line, d.col);
            }
            return;
        }
        if (lex_.at_punct("?")) {
            lex_.take();
            program_.queries.push_back(parse_query_clause());
            return;
        }
        parse_clause(RuleRole::Core);
    }

    void parse_dimension_block() {
        Token name = expect(TokType::Ident, "dimension name");
        DimensionDecl decl;
        decl.name = name.text;
        expect_punct("{");
        while (!lex_.at_punct("}")) {
            DimensionEdge edge;
            edge.child = expect(TokType::Ident, "child category").text;
            expect_punct("->");
            edge.parent = expect(TokType::Ident, "parent category").text;
            Token via = expect(TokType::Ident, "'via'");
            if (via.text != "via")
                throw SyntaxError("expected 'via' in dimension edge", via.line, via.col);
            edge.predicate = expect(TokType::Ident, "child-parent predicate").text;
            expect_punct(".");
            decl.edges.push_back(std::move(edge));
        }
        expect_punct("}");
        program_.dimensions.push_back(std::move(decl));
    }

    void parse_categorical_decl() {
        Token name = expect(TokType::Ident, "categorical predicate name");
        CategoricalDecl decl;
        decl.predicate = name.text;
        expect_punct("(");
        bool after_split = false;
        bool expect_name = true;
        while (!lex_.at_punct(")")) {
            if (lex_.at_punct(";")) {
                if (after_split)
                    throw SyntaxError("more than one ';' in categorical declaration",
                                      lex_.peek().line, lex_.peek().col);
                lex_.take();
                after_split = true;
                expect_name = true;
                continue;
            }
            if (lex_.at_punct(",")) {
                lex_.take();
                expect_name = true;
                continue;
            }
            Token n = expect(TokType::Ident, "category or attribute name");
            if (!expect_name)
                throw SyntaxError("expected ',' or ';'", n.line, n.col);
            expect_name = false;
            if (after_split)
                decl.attributes.push_back(n.text);
            else
                decl.categories.push_back(n.text);
        }
        expect_punct(")");
        expect_punct(".");
        if (decl.categories.empty())
            throw SyntaxError("categorical declaration needs at least one category position",
                              name.line, name.col);
        program_.categoricals.push_back(std::move(decl));
    }

    PredicateDecl parse_pred_arity_decl() {
        Token name = expect(TokType::Ident, "predicate name");
        expect_punct("/");
        Token arity = expect(TokType::Datum, "arity");
        PredicateDecl decl;
        decl.predicate = name.text;
        try {
            decl.arity = static_cast<std::size_t>(std::stoul(arity.text));
        } catch (const std::exception&) {
            throw SyntaxError("invalid arity '" + arity.text + "'", arity.line, arity.col);
        }
        expect_punct(".");
        return decl;
    }

    // --- clauses ------------------------------------------------------------

    void parse_clause(RuleRole role) {
        Token start = lex_.peek();
        BodyParts body = parse_body(/*allow_negation=*/true, /*allow_builtins=*/true);
        if (lex_.at_punct(".")) {
            lex_.take();
            // A bare clause is a fact.
            if (role != RuleRole::Core)
                throw SyntaxError("quality annotations apply to rules, not facts", start.line,
                                  start.col);
            if (body.literals.size() != 1 || body.has_negation() || !body.builtins.empty())
                throw SyntaxError("expected '->' after rule body", start.line, start.col);
            const Atom& a = body.literals.front().atom;
            if (!a.ground())
                throw SyntaxError("facts must be ground", start.line, start.col);
            program_.facts.push_back(a);
            return;
        }
        expect_punct("->");
        if (lex_.at_punct("#false")) {
            lex_.take();
            expect_punct(".");
            if (role != RuleRole::Core)
                throw SyntaxError("quality annotations apply to rules, not constraints",
                                  start.line, start.col);
            Nc nc;
            nc.body = std::move(body.literals);
            nc.builtins = std::move(body.builtins);
            program_.ncs.push_back(std::move(nc));
            return;
        }
        // Either an equality head (X = Y) or a (possibly conjunctive) atom
        // head. Both start with an identifier; '=' vs '(' decides.
        Token first = expect(TokType::Ident, "rule head");
        if (lex_.at_punct("=")) {
            lex_.take();
            Token second = expect(TokType::Ident, "equality right-hand side");
            expect_punct(".");
            if (role != RuleRole::Core)
                throw SyntaxError("quality annotations apply to rules, not equalities",
                                  start.line, start.col);
            if (!uppercase_start(first.text) || !uppercase_start(second.text))
                throw SyntaxError("equality heads relate two variables", first.line, first.col);
            if (body.has_negation())
                throw NegationOutsideNC("negated literal in an equality-rule body at line " +
                                        std::to_string(start.line));
            if (!body.builtins.empty())
                throw SyntaxError("builtins are not allowed in equality-rule bodies", start.line,
                                  start.col);
            Egd egd;
            egd.body = body.positive_atoms();
            egd.lhs = first.text;
            egd.rhs = second.text;
            std::set<std::string> body_vars;
            for (const Atom& a : egd.body)
                for (const Term& t : a.args)
                    if (t.is_variable()) body_vars.insert(t.name());
            if (!body_vars.count(egd.lhs) || !body_vars.count(egd.rhs))
                throw ExistentialInEgd("equality head variable missing from the body at line " +
                                       std::to_string(start.line));
            program_.egds.push_back(std::move(egd));
            return;
        }
        // Atom head(s).
        if (body.has_negation())
            throw NegationOutsideNC("negated literal outside a denial constraint at line " +
                                    std::to_string(start.line));
        Tgd tgd;
        tgd.role = role;
        tgd.body = body.positive_atoms();
        tgd.builtins = std::move(body.builtins);
        tgd.head.push_back(finish_atom(first));
        while (lex_.at_punct(",")) {
            lex_.take();
            tgd.head.push_back(parse_atom(/*allow_nulls=*/false));
        }
        expect_punct(".");
        if (tgd.body.empty())
            throw SyntaxError("rule body must contain at least one atom", start.line, start.col);
        program_.tgds.push_back(std::move(tgd));
    }

    UnionQuery parse_query_clause() {
        // '?' has been consumed by the caller.
        expect_punct("(");
        std::vector<Term> head;
        while (!lex_.at_punct(")")) {
            if (!head.empty()) expect_punct(",");
            head.push_back(parse_term(/*allow_nulls=*/false));
        }
        expect_punct(")");
        expect_punct(":-");
        UnionQuery query;
        while (true) {
            Token start = lex_.peek();
            BodyParts body = parse_body(/*allow_negation=*/false, /*allow_builtins=*/true);
            ConjunctiveQuery cq;
            cq.head_terms = head;
            cq.body = body.positive_atoms();
            cq.builtins = std::move(body.builtins);
            check_query_safety(cq, start);
            query.disjuncts.push_back(std::move(cq));
            if (lex_.at_punct("|")) {
                lex_.take();
                continue;
            }
            expect_punct(".");
            break;
        }
        return query;
    }

    void check_query_safety(const ConjunctiveQuery& cq, const Token& where) {
        std::set<std::string> atom_vars;
        for (const Atom& a : cq.body)
            for (const Term& t : a.args)
                if (t.is_variable()) atom_vars.insert(t.name());
        for (const Term& t : cq.head_terms)
            if (t.is_variable() && !atom_vars.count(t.name()))
                throw SyntaxError("query head variable " + t.name() +
                                      " does not occur in the body",
                                  where.line, where.col);
        for (const BuiltinLiteral& b : cq.builtins)
            for (const Term* t : {&b.lhs, &b.rhs})
                if (t->is_variable() && !atom_vars.count(t->name()))
                    throw SyntaxError("comparison variable " + t->name() +
                                          " does not occur in any body atom",
                                      where.line, where.col);
    }

    // --- literals and atoms -------------------------------------------------

    BodyParts parse_body(bool allow_negation, bool allow_builtins) {
        BodyParts out;
        while (true) {
            parse_body_literal(out, allow_negation, allow_builtins);
            if (lex_.at_punct(",")) {
                lex_.take();
                continue;
            }
            break;
        }
        return out;
    }

    void parse_body_literal(BodyParts& out, bool allow_negation, bool allow_builtins) {
        Token start = lex_.peek();
        if (lex_.at(TokType::Ident) && start.text == "not") {
            lex_.take();
            if (!allow_negation)
                throw NegationOutsideNC("negated literal outside a denial constraint at line " +
                                        std::to_string(start.line));
            NcLiteral lit;
            lit.negated = true;
            lit.atom = parse_atom(/*allow_nulls=*/false);
            out.literals.push_back(std::move(lit));
            return;
        }
        if (lex_.at(TokType::Ident)) {
            Token name = lex_.take();
            if (lex_.at_punct("(")) {
                NcLiteral lit;
                lit.atom = finish_atom(name);
                out.literals.push_back(std::move(lit));
                return;
            }
            // Not an atom: must be the left side of a comparison.
            parse_builtin_tail(out, token_term(name), allow_builtins, start);
            return;
        }
        // Datum/string-led literal can only start a comparison.
        Term lhs = parse_term(/*allow_nulls=*/false);
        parse_builtin_tail(out, lhs, allow_builtins, start);
    }

    void parse_builtin_tail(BodyParts& out, Term lhs, bool allow_builtins, const Token& start) {
        if (!allow_builtins)
            throw SyntaxError("comparison is not allowed here", start.line, start.col);
        Token op = lex_.take();
        if (op.type != TokType::Punct)
            throw SyntaxError("expected comparison operator", op.line, op.col);
        BuiltinLiteral b;
        b.lhs = std::move(lhs);
        bool swap = false;
        if (op.text == "=") {
            b.op = BuiltinOp::Eq;
        } else if (op.text == "!=") {
            b.op = BuiltinOp::Neq;
        } else if (op.text == "<=") {
            b.op = BuiltinOp::Le;
        } else if (op.text == "<") {
            b.op = BuiltinOp::Lt;
        } else if (op.text == ">=") {
            b.op = BuiltinOp::Le;
            swap = true;
        } else if (op.text == ">") {
            b.op = BuiltinOp::Lt;
            swap = true;
        } else {
            throw SyntaxError("expected comparison operator, got '" + op.text + "'", op.line,
                              op.col);
        }
        b.rhs = parse_term(/*allow_nulls=*/false);
        if (swap) std::swap(b.lhs, b.rhs);
        out.builtins.push_back(std::move(b));
    }

    Atom parse_atom(bool allow_nulls) {
        Token name = expect(TokType::Ident, "predicate name");
        if (!lex_.at_punct("("))
            throw SyntaxError("expected '(' after predicate " + name.text, name.line, name.col);
        return finish_atom(name, allow_nulls);
    }

    // Parses the argument list of an atom whose predicate token has been
    // consumed. A single ';' may split the arguments of a declared
    // categorical predicate at its category/attribute boundary.
    Atom finish_atom(const Token& name, bool allow_nulls = false) {
        expect_punct("(");
        Atom atom;
        atom.predicate = name.text;
        int split = -1;
        bool expect_term = true;
        while (!lex_.at_punct(")")) {
            if (lex_.at_punct(";")) {
                Token semi = lex_.take();
                if (split >= 0)
                    throw SyntaxError("more than one ';' in atom", semi.line, semi.col);
                split = static_cast<int>(atom.args.size());
                expect_term = true;
                continue;
            }
            if (lex_.at_punct(",")) {
                lex_.take();
                expect_term = true;
                continue;
            }
            Token at = lex_.peek();
            if (!expect_term) throw SyntaxError("expected ',' or ';'", at.line, at.col);
            expect_term = false;
            atom.args.push_back(parse_term(allow_nulls));
        }
        expect_punct(")");
        if (split >= 0) {
            if (mode_ != Mode::ProgramFile)
                throw SyntaxError("';' is only meaningful with categorical declarations",
                                  name.line, name.col);
            const CategoricalDecl* decl = program_.categorical(name.text);
            if (!decl)
                throw SyntaxError("';' in atom of undeclared categorical predicate " + name.text,
                                  name.line, name.col);
            if (static_cast<std::size_t>(split) != decl->categories.size())
                throw SyntaxError("';' splits " + name.text + " at position " +
                                      std::to_string(split) + " but the declaration has " +
                                      std::to_string(decl->categories.size()) +
                                      " category positions",
                                  name.line, name.col);
        }
        return atom;
    }

    Term parse_term(bool allow_nulls) {
        Token t = lex_.take();
        switch (t.type) {
            case TokType::Ident:
            case TokType::Datum:
            case TokType::String:
                return token_term(t);
            case TokType::NullMark:
                if (!allow_nulls)
                    throw SyntaxError("labeled nulls are only allowed in instance files", t.line,
                                      t.col);
                return Term::null(std::stoull(t.text));
            default:
                throw SyntaxError("expected a term, got '" + t.text + "'", t.line, t.col);
        }
    }

    Term token_term(const Token& t) {
        if (t.type == TokType::Ident && uppercase_start(t.text)) return Term::variable(t.text);
        if (t.type == TokType::Datum) return Term::constant(normalize_datetime(t.text));
        return Term::constant(t.text);
    }

    // --- finalization -------------------------------------------------------

    void finalize_program() {
        check_arities(program_);
        check_categorical_heads();
        check_nc_safety();
        check_rule_builtin_safety();
    }

    void check_rule_builtin_safety() {
        for (const Tgd& tgd : program_.tgds) {
            if (tgd.builtins.empty()) continue;
            std::set<std::string> atom_vars;
            for (const Atom& a : tgd.body)
                for (const Term& t : a.args)
                    if (t.is_variable()) atom_vars.insert(t.name());
            for (const BuiltinLiteral& b : tgd.builtins)
                for (const Term* t : {&b.lhs, &b.rhs})
                    if (t->is_variable() && !atom_vars.count(t->name()))
                        throw SyntaxError("comparison variable " + t->name() +
                                              " of a rule does not occur in any body atom",
                                          1, 1);
        }
    }

    // A rule may not invent a value in a category-typed position.
    void check_categorical_heads() {
        for (const Tgd& tgd : program_.tgds) {
            std::set<std::string> body_vars = tgd.body_variables();
            for (const Atom& h : tgd.head) {
                const CategoricalDecl* decl = program_.categorical(h.predicate);
                if (!decl) continue;
                for (std::size_t i = 0; i < decl->categories.size() && i < h.args.size(); ++i) {
                    const Term& arg = h.args[i];
                    if (arg.is_variable() && !body_vars.count(arg.name()))
                        throw ExistentialInCategoricalPosition(
                            "rule head " + h.to_string() + " invents a value in category position " +
                            std::to_string(i + 1) + " (" + decl->categories[i] + ")");
                }
            }
        }
    }

    // Negated literals must be grounded by the positive part.
    void check_nc_safety() {
        for (const Nc& nc : program_.ncs) {
            std::set<std::string> positive_vars;
            for (const NcLiteral& lit : nc.body)
                if (!lit.negated)
                    for (const Term& t : lit.atom.args)
                        if (t.is_variable()) positive_vars.insert(t.name());
            for (const NcLiteral& lit : nc.body)
                if (lit.negated)
                    for (const Term& t : lit.atom.args)
                        if (t.is_variable() && !positive_vars.count(t.name()))
                            throw SyntaxError("variable " + t.name() +
                                                  " of a negated literal has no positive occurrence",
                                              1, 1);
            for (const BuiltinLiteral& b : nc.builtins)
                for (const Term* t : {&b.lhs, &b.rhs})
                    if (t->is_variable() && !positive_vars.count(t->name()))
                        throw SyntaxError("comparison variable " + t->name() +
                                              " of a denial constraint has no positive occurrence",
                                          1, 1);
        }
    }

    Token expect(TokType type, const std::string& what) {
        if (!lex_.at(type))
            throw SyntaxError("expected " + what + ", got '" + lex_.peek().text + "'",
                              lex_.peek().line, lex_.peek().col);
        return lex_.take();
    }

    void expect_punct(const std::string& p) {
        if (!lex_.at_punct(p))
            throw SyntaxError("expected '" + p + "', got '" + lex_.peek().text + "'",
                              lex_.peek().line, lex_.peek().col);
        lex_.take();
    }

    Lexer lex_;
    Mode mode_;
    Program program_;
};

}  // namespace

Program parse_program(const std::string& text) {
    Parser parser(text, Parser::Mode::ProgramFile);
    return parser.parse_program_file();
}

std::vector<Atom> parse_instance_atoms(const std::string& text) {
    Parser parser(text, Parser::Mode::InstanceFile);
    return parser.parse_instance_file();
}

Instance parse_instance(const std::string& text) {
    return Instance(parse_instance_atoms(text));
}

std::vector<UnionQuery> parse_queries(const std::string& text) {
    Parser parser(text, Parser::Mode::QueryFile);
    return parser.parse_query_file();
}

UnionQuery parse_query(const std::string& text) {
    std::vector<UnionQuery> queries = parse_queries(text);
    if (queries.size() != 1)
        throw SyntaxError("expected exactly one query, found " + std::to_string(queries.size()),
                          1, 1);
    return queries.front();
}

}  // namespace omd
