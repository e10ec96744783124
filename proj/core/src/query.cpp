#include "omd/query.hpp"

#include <sstream>

namespace omd {

namespace {

const char* op_text(BuiltinOp op) {
    switch (op) {
        case BuiltinOp::Eq: return "=";
        case BuiltinOp::Neq: return "!=";
        case BuiltinOp::Le: return "<=";
        case BuiltinOp::Lt: return "<";
    }
    return "?";
}

}  // namespace

std::string BuiltinLiteral::to_string() const {
    return lhs.to_string() + " " + op_text(op) + " " + rhs.to_string();
}

std::string ConjunctiveQuery::to_string() const {
    std::ostringstream out;
    out << "?(";
    for (std::size_t i = 0; i < head_terms.size(); ++i) {
        if (i) out << ", ";
        out << head_terms[i].to_string();
    }
    out << ") :- ";
    bool first = true;
    for (const Atom& a : body) {
        if (!first) out << ", ";
        first = false;
        out << a.to_string();
    }
    for (const BuiltinLiteral& b : builtins) {
        if (!first) out << ", ";
        first = false;
        out << b.to_string();
    }
    return out.str();
}

std::string UnionQuery::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < disjuncts.size(); ++i) {
        if (i == 0) {
            out << disjuncts[i].to_string();
            continue;
        }
        // Later branches repeat only the body after '|'.
        out << " | ";
        const ConjunctiveQuery& cq = disjuncts[i];
        bool first = true;
        for (const Atom& a : cq.body) {
            if (!first) out << ", ";
            first = false;
            out << a.to_string();
        }
        for (const BuiltinLiteral& b : cq.builtins) {
            if (!first) out << ", ";
            first = false;
            out << b.to_string();
        }
    }
    return out.str();
}

}  // namespace omd
