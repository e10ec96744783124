#ifndef OMD_ERRORS_HPP
#define OMD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace omd {

// Base class for every error raised by the library. `kind()` gives a stable
// machine-readable tag; `what()` carries the human-readable description.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

// Lexical or grammatical problem in an input file. Locations are 1-based.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, int line, int column)
        : Error("SyntaxError",
                message + " (line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ")"),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// A predicate is used with two different arities, or an atom disagrees with
// its declaration.
class ArityMismatch : public Error {
public:
    explicit ArityMismatch(const std::string& message)
        : Error("ArityMismatch", message) {}
};

// `not` is only legal in the body of a denial constraint.
class NegationOutsideNC : public Error {
public:
    explicit NegationOutsideNC(const std::string& message)
        : Error("NegationOutsideNC", message) {}
};

// An equality head uses a variable that does not occur in the rule body.
class ExistentialInEgd : public Error {
public:
    explicit ExistentialInEgd(const std::string& message)
        : Error("ExistentialInEgd", message) {}
};

// A rule head of a declared categorical predicate invents a value in a
// category-typed position.
class ExistentialInCategoricalPosition : public Error {
public:
    explicit ExistentialInCategoricalPosition(const std::string& message)
        : Error("ExistentialInCategoricalPosition", message) {}
};

// A negated body atom refers to a predicate that is not closed (only category
// membership and child-parent predicates have closed extensions).
class NegatedOpenPredicate : public Error {
public:
    explicit NegatedOpenPredicate(const std::string& message)
        : Error("NegatedOpenPredicate", message) {}
};

// Contextual-ontology construction errors.
class LayeringViolation : public Error {
public:
    explicit LayeringViolation(const std::string& message)
        : Error("LayeringViolation", message) {}
};

class MissingQualityVersion : public Error {
public:
    explicit MissingQualityVersion(const std::string& message)
        : Error("MissingQualityVersion", message) {}
};

class RecursiveDefinition : public Error {
public:
    explicit RecursiveDefinition(const std::string& message)
        : Error("RecursiveDefinition", message) {}
};

class UndefinedQualityPredicate : public Error {
public:
    explicit UndefinedQualityPredicate(const std::string& message)
        : Error("UndefinedQualityPredicate", message) {}
};

}  // namespace omd

#endif  // OMD_ERRORS_HPP
