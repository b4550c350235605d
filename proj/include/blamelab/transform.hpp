#pragma once

// Source-to-source rewrites that are valid for pure programs, and a differ
// that runs two programs and compares what they do.

#include "blamelab/interpreter.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace blamelab {

struct TransformReport {
    TermPtr original;
    TermPtr transformed;
    std::vector<Span> sites;  // spans of the rewritten occurrences
};

class TransformError : public std::runtime_error {
public:
    enum class Kind { UnknownBinding };
    TransformError(Kind kind, std::string what) : std::runtime_error(std::move(what)), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Subterms smaller than this are never hoisted.
inline constexpr std::size_t kCseMinSize = 3;

/// Hoists repeated alpha-equivalent subterms (same free-variable binders)
/// into `let cseN = ... in` at their lowest common ancestor, largest first,
/// until nothing repeats. Contract constructors are left in place.
TransformReport cse(const TermPtr& t);

/// Substitutes the first `let name = ...` into its body and drops the let.
/// Applications of the substituted definition to arguments are
/// beta-reduced. Throws TransformError(UnknownBinding).
TransformReport inline_binding(const TermPtr& t, const std::string& name);

/// Rewrites every annotation's contract into disjunctive normal form.
TransformReport dnf_pass(const TermPtr& t);

/// Substitutes `replacement` for free occurrences of `name`, renaming
/// binders that would capture its free variables.
TermPtr substitute(const TermPtr& t, const std::string& name, const TermPtr& replacement);

struct DiffVerdict {
    Outcome left;
    Outcome right;
    bool agree = false;
    std::string description;
};

/// Agreement: equal exported JSON (or both successful and non-exportable),
/// blame of the same polarity, or crashes of the same kind.
bool outcomes_agree(const Outcome& a, const Outcome& b);

DiffVerdict compare_behaviors(const TermPtr& a, const TermPtr& b, Strategy s);

}  // namespace blamelab
