#pragma once

// One-shot evaluation of whole programs, with every failure mode folded into
// an Outcome value.

#include "blamelab/contracts.hpp"

#include <optional>
#include <string>

namespace blamelab {

struct Outcome {
    enum class Kind { Success, Blame, Crash, SyntaxError };
    Kind kind = Kind::Success;

    std::optional<std::string> json;  // success with an exportable value
    std::string rendered;             // success: human-readable value
    std::optional<BlameReport> blame;
    std::optional<Crash> crash;
    std::string syntax_message;

    bool is_success() const { return kind == Kind::Success; }
    bool is_blame() const { return kind == Kind::Blame; }
    bool is_crash() const { return kind == Kind::Crash; }
};

/// Crashes raised while installing a contract rather than while running code.
bool is_attach_error(CrashKind kind);

/// Evaluates in a fresh Runtime and deep-forces the result.
Outcome run_program(const TermPtr& program, Strategy strategy);
Outcome run_source(std::string_view text, std::string file_name, Strategy strategy);

/// Compact verdict: `success(<json>)`, `success`, `blame(positive)`,
/// `crash(TypeError)`, `attach-error(AmbiguousUnion)` or `syntax-error`.
std::string describe(const Outcome& o);

/// Full text for humans: the value, the blame report or the crash message.
std::string render_outcome(const Outcome& o, bool color = false);

/// CLI exit status: 0 success, 1 blame, 2 crash, 3 syntax error.
int exit_status(const Outcome& o);

}  // namespace blamelab
