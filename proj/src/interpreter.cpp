#include "blamelab/interpreter.hpp"

namespace blamelab {

bool is_attach_error(CrashKind kind) { return kind == CrashKind::AmbiguousUnion || kind == CrashKind::NotAnArrow; }

Outcome run_program(const TermPtr& program, Strategy strategy) {
    Outcome out;
    Runtime rt(strategy);
    try {
        Value v = rt.eval(program);
        rt.deep_force(v);
        try {
            out.json = export_json(rt, v);
        } catch (const CrashError& e) {
            if (e.crash().kind != CrashKind::ExportError) throw;
        }
        out.rendered = render_value(v);
    } catch (const BlameError& e) {
        out.kind = Outcome::Kind::Blame;
        out.blame = e.report();
    } catch (const CrashError& e) {
        out.kind = Outcome::Kind::Crash;
        out.crash = e.crash();
    }
    return out;
}

Outcome run_source(std::string_view text, std::string file_name, Strategy strategy) {
    TermPtr program;
    try {
        program = parse_program(make_source(std::move(file_name), std::string(text)));
    } catch (const SyntaxError& e) {
        Outcome out;
        out.kind = Outcome::Kind::SyntaxError;
        out.syntax_message = e.span().valid() ? e.span().location() + ": " + e.what() : std::string(e.what());
        return out;
    }
    return run_program(program, strategy);
}

std::string describe(const Outcome& o) {
    switch (o.kind) {
    case Outcome::Kind::Success: return o.json ? "success(" + *o.json + ")" : "success";
    case Outcome::Kind::Blame:
        return o.blame->label.polarity == Polarity::Positive ? "blame(positive)" : "blame(negative)";
    case Outcome::Kind::Crash: {
        std::string kind(crash_kind_name(o.crash->kind));
        return is_attach_error(o.crash->kind) ? "attach-error(" + kind + ")" : "crash(" + kind + ")";
    }
    case Outcome::Kind::SyntaxError: return "syntax-error";
    }
    return "?";
}

std::string render_outcome(const Outcome& o, bool color) {
    switch (o.kind) {
    case Outcome::Kind::Success: return (o.json ? *o.json : o.rendered) + "\n";
    case Outcome::Kind::Blame: return render_report(*o.blame, color);
    case Outcome::Kind::Crash: {
        const Crash& c = *o.crash;
        std::string out = "error: " + std::string(crash_kind_name(c.kind)) + ": " + c.message + "\n";
        if (c.span.valid()) out += "  --> " + c.span.location() + "\n";
        return out;
    }
    case Outcome::Kind::SyntaxError: return "error: " + o.syntax_message + "\n";
    }
    return {};
}

int exit_status(const Outcome& o) {
    switch (o.kind) {
    case Outcome::Kind::Success: return 0;
    case Outcome::Kind::Blame: return 1;
    case Outcome::Kind::Crash: return 2;
    case Outcome::Kind::SyntaxError: return 3;
    }
    return 2;
}

}  // namespace blamelab
