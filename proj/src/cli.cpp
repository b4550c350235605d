#include "blamelab/cli.hpp"

#include "blamelab/connectives.hpp"
#include "blamelab/transform.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <ostream>
#include <unistd.h>

namespace blamelab {

namespace {

constexpr int kUsageError = 64;

struct Options {
    std::string strategy = "stateful";
    bool no_color = false;
    bool json = false;
    bool dnf = false;
    std::string file, other, dir, pass;
};

Strategy strategy_of(const Options& o) { return *parse_strategy(o.strategy); }

TermPtr parse_file(const std::string& path) { return parse_program(make_source(path, read_file(path))); }

nlohmann::json outcome_json(const Outcome& o) {
    nlohmann::json j;
    j["outcome"] = describe(o);
    if (o.is_success() && o.json) j["value"] = nlohmann::json::parse(*o.json);
    if (o.is_success() && !o.json) j["value"] = o.rendered;
    if (o.is_blame()) {
        const auto& l = o.blame->label;
        j["polarity"] = l.polarity == Polarity::Positive ? "positive" : "negative";
        j["location"] = l.span.location();
        j["message"] = o.blame->message;
        j["witness"] = o.blame->witness;
        auto path = nlohmann::json::array();
        for (const auto& s : l.path) path.push_back(render_step(s));
        j["path"] = path;
        if (l.contract) j["contract"] = render_contract(*l.contract);
    }
    if (o.is_crash()) {
        j["kind"] = crash_kind_name(o.crash->kind);
        j["message"] = o.crash->message;
        if (o.crash->span.valid()) j["location"] = o.crash->span.location();
    }
    if (o.kind == Outcome::Kind::SyntaxError) j["message"] = o.syntax_message;
    return j;
}

void collect_annotations(const TermPtr& t, std::vector<TermPtr>& out) {
    if (const auto* annot = t->as<Term::Annot>()) out.push_back(annot->contract);
    if (const auto* let = t->as<Term::Let>(); let && let->contract) out.push_back(let->contract);
    for (const auto& k : children(*t)) collect_annotations(k, out);
}

int cmd_dnf(const Options& o, std::ostream& out) {
    std::vector<TermPtr> contracts;
    collect_annotations(parse_file(o.file), contracts);
    for (const auto& c : contracts) {
        out << c->span.location() << ": " << pretty_print(*c) << "  =>  " << pretty_print(*dnf_normalize(c)) << "\n";
    }
    return 0;
}

int cmd_run(const Options& o, bool export_only, std::ostream& out, std::ostream& err) {
    if (o.dnf) return cmd_dnf(o, out);
    Outcome result = run_source(read_file(o.file), o.file, strategy_of(o));
    if (export_only && result.is_success() && !result.json) {
        // Re-run to get the export failure with its message.
        Runtime rt(strategy_of(o));
        try {
            export_json(rt, rt.eval(parse_file(o.file)));
        } catch (const CrashError& e) {
            result.kind = Outcome::Kind::Crash;
            result.crash = e.crash();
        } catch (const BlameError& e) {
            result.kind = Outcome::Kind::Blame;
            result.blame = e.report();
        }
    }
    if (o.json) {
        out << outcome_json(result).dump() << "\n";
    } else if (result.is_success()) {
        out << render_outcome(result);
    } else {
        err << render_outcome(result, !o.no_color && isatty(2));
    }
    return exit_status(result);
}

int cmd_diff(const Options& o, std::ostream& out) {
    DiffVerdict v = compare_behaviors(parse_file(o.file), parse_file(o.other), strategy_of(o));
    if (o.json) {
        nlohmann::json j;
        j["agree"] = v.agree;
        j["left"] = outcome_json(v.left);
        j["right"] = outcome_json(v.right);
        out << j.dump() << "\n";
    } else {
        out << v.description << "\n";
    }
    return v.agree ? 0 : 1;
}

int cmd_corpus(const Options& o, bool strategy_given, std::ostream& out, std::ostream& err) {
    CorpusLoad load = load_corpus(o.dir);
    for (const auto& e : load.errors) err << "error: " << e << "\n";
    if (strategy_given) {
        for (auto& entry : load.entries) {
            std::erase_if(entry.expected, [&](const auto& kv) { return kv.first != strategy_of(o); });
        }
    }
    auto results = run_corpus(load.entries);
    std::size_t failed = 0;
    if (o.json) {
        auto rows = nlohmann::json::array();
        for (const auto& r : results) {
            rows.push_back({{"program", r.name},
                            {"strategy", strategy_name(r.strategy)},
                            {"expected", r.expected},
                            {"actual", describe(r.actual)},
                            {"pass", r.pass}});
            failed += !r.pass;
        }
        out << rows.dump() << "\n";
    } else {
        std::size_t width = 8;
        for (const auto& r : results) width = std::max(width, r.name.size());
        width += 2;
        out << std::left << std::setw(static_cast<int>(width)) << "program" << std::setw(10) << "strategy" << std::setw(6) << "ok"
            << "outcome\n";
        for (const auto& r : results) {
            out << std::setw(static_cast<int>(width)) << r.name << std::setw(10) << strategy_name(r.strategy) << std::setw(6)
                << (r.pass ? "pass" : "FAIL") << describe(r.actual);
            if (!r.pass) out << "  (expected " << r.expected << ")";
            out << "\n";
            failed += !r.pass;
        }
        out << results.size() - failed << "/" << results.size() << " passed\n";
    }
    return failed == 0 && load.errors.empty() ? 0 : 1;
}

int cmd_opt(const Options& o, std::ostream& out, std::ostream& err) {
    TermPtr program = parse_file(o.file);
    TransformReport report;
    if (o.pass == "cse") {
        report = cse(program);
    } else if (o.pass == "dnf") {
        report = dnf_pass(program);
    } else if (o.pass.rfind("inline:", 0) == 0) {
        report = inline_binding(program, o.pass.substr(7));
    } else {
        err << "error: unknown pass '" << o.pass << "' (expected cse, dnf or inline:<name>)\n";
        return kUsageError;
    }
    out << pretty_print(*report.transformed) << "\n";
    for (const auto& s : report.sites) err << "rewrote " << s.location() << "\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lazy configuration language with union and intersection contracts", "blamelab"};
    app.require_subcommand(1);
    Options o;
    auto strategy_check = CLI::IsMember({"naive", "arity", "stateful"});

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--strategy", o.strategy, "naive, arity or stateful")->check(strategy_check);
        sub->add_flag("--json", o.json, "machine-readable output");
        sub->add_flag("--no-color", o.no_color, "plain blame reports");
    };

    auto* run = app.add_subcommand("run", "evaluate a program and print its value or failure");
    run->add_option("file", o.file)->required()->check(CLI::ExistingFile);
    run->add_flag("--dnf", o.dnf, "print each annotation's contract in disjunctive normal form instead");
    add_common(run);

    auto* exp = app.add_subcommand("export", "evaluate a program and print it as JSON");
    exp->add_option("file", o.file)->required()->check(CLI::ExistingFile);
    add_common(exp);

    auto* diff = app.add_subcommand("diff", "run two programs and compare their outcomes");
    diff->add_option("left", o.file)->required()->check(CLI::ExistingFile);
    diff->add_option("right", o.other)->required()->check(CLI::ExistingFile);
    add_common(diff);

    auto* corpus = app.add_subcommand("corpus", "check every program in a directory against its .expect file");
    corpus->add_option("dir", o.dir)->required()->check(CLI::ExistingDirectory);
    add_common(corpus);

    auto* opt = app.add_subcommand("opt", "apply a source transformation and print the result");
    opt->add_option("--pass", o.pass, "cse, dnf or inline:<name>")->required();
    opt->add_option("file", o.file)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (run->parsed()) return cmd_run(o, false, out, err);
        if (exp->parsed()) return cmd_run(o, true, out, err);
        if (diff->parsed()) return cmd_diff(o, out);
        if (corpus->parsed()) return cmd_corpus(o, corpus->count("--strategy") > 0, out, err);
        if (opt->parsed()) return cmd_opt(o, out, err);
    } catch (const SyntaxError& e) {
        err << "error: " << (e.span().valid() ? e.span().location() + ": " : "") << e.what() << "\n";
        return 3;
    } catch (const TransformError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace blamelab
