#ifndef OMD_PARSER_HPP
#define OMD_PARSER_HPP

#include <string>
#include <vector>

#include "omd/instance.hpp"
#include "omd/program.hpp"

namespace omd {

// Parses a program file (declarations, facts, rules, constraints, queries).
// Grammar summary:
//   % comment to end of line
//   @dimension name { Child -> Parent via EdgePred. ... }
//   @categorical Pred(Cat1, Cat2; Attr1, Attr2).
//   @source Pred/arity.      @external Pred/arity.
//   @quality_def   body -> QPred(args).        (quality predicate definition)
//   @quality_version body -> Pred_q(args).     (quality version definition)
//   fact:        Pred(c1, ..., cn).
//   rule:        body -> head.                 (head may be conjunctive)
//   equality:    body -> X = Y.
//   denial:      body, not Closed(X) -> #false.
//   query:       ?(X, Y) :- body | body.      (| separates union branches)
// Variables are capitalized identifiers; constants are lower-case
// identifiers, quoted strings, numbers, or date/time literals. Date and time
// literals (12:10-sep/1/2016, sep/1/2016) are normalized to the canonical
// lexicographically ordered form (2016/09/01-12:10, 2016/09/01) on parse.
// Throws SyntaxError / ArityMismatch / NegationOutsideNC / ExistentialInEgd /
// ExistentialInCategoricalPosition.
Program parse_program(const std::string& text);

// Parses a facts file: ground atoms only. Labeled-null tokens (?zN) are
// accepted so engine dumps can be re-read.
std::vector<Atom> parse_instance_atoms(const std::string& text);
Instance parse_instance(const std::string& text);

// Parses a query file: one or more ?(...) :- ... queries.
std::vector<UnionQuery> parse_queries(const std::string& text);
// Convenience: file must contain exactly one query.
UnionQuery parse_query(const std::string& text);

// Normalizes one date/time literal if it matches a recognized layout;
// returns the input unchanged otherwise. Exposed for tests.
std::string normalize_datetime(const std::string& text);

}  // namespace omd

#endif  // OMD_PARSER_HPP
