// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Each check prints what it measured on failure.

#include "support.hpp"

#include <json.hpp>

#include <iostream>
#include <sstream>

using namespace testing;

namespace {

std::string corpus_text(const std::string& name) {
    return read_file(std::string(BLAMELAB_CORPUS_DIR) + "/" + name + ".blame");
}

TermPtr corpus_term(const std::string& name) {
    return parse_program(make_source(name + ".blame", corpus_text(name)));
}

Outcome corpus_run(const std::string& name, Strategy s) { return run_program(corpus_term(name), s); }

bool json_is(const Outcome& o, const char* expected) {
    return o.is_success() && o.json && nlohmann::json::parse(*o.json) == nlohmann::json::parse(expected);
}

bool blamed(const Outcome& o, Polarity p) { return o.is_blame() && o.blame->label.polarity == p; }

struct Check {
    std::ostringstream why;
    bool ok = true;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) why << what;
        ok = ok && cond;
    }
};

Check simple_arrow_violation() {
    Check c;
    for (Strategy s : all_strategies()) {
        Outcome both = corpus_run("fig3", s);
        c.require(blamed(both, Polarity::Positive), "two calls under " + std::string(strategy_name(s)) + ": " +
                                                        describe(both));
        if (both.is_blame()) {
            c.require(both.blame->label.span.text() == "Positive -> Positive", "blame does not point at f's contract");
        }
        Outcome one = corpus_run("fig3_single_call", s);
        c.require(json_is(one, "3"), "single call under " + std::string(strategy_name(s)) + ": " + describe(one));
    }
    return c;
}

Check union_needs_two_witnesses() {
    Check c;
    Outcome both = corpus_run("fig4", Strategy::Stateful);
    c.require(blamed(both, Polarity::Positive), "both calls: " + describe(both));
    if (both.is_blame()) {
        c.require(both.blame->branch_failures.size() == 2, "expected one recorded failure per branch");
    }
    Outcome first = corpus_run("fig4_first_call_only", Strategy::Stateful);
    Outcome second = corpus_run("fig4_second_call_only", Strategy::Stateful);
    c.require(json_is(first, "3"), "first call alone: " + describe(first));
    c.require(json_is(second, "-2"), "second call alone: " + describe(second));
    return c;
}

Check cse_breaks_union() {
    Check c;
    TermPtr original = corpus_term("fig5_original");
    TransformReport optimized = cse(original);
    Outcome before = run_program(original, Strategy::Stateful);
    Outcome after = run_program(optimized.transformed, Strategy::Stateful);
    c.require(json_is(before, R"([1,"False"])"), "original: " + describe(before));
    c.require(blamed(after, Polarity::Positive), "after cse: " + describe(after));
    c.require(optimized.sites.size() == 2, "cse should hoist the two partial applications");
    DiffVerdict stateful = compare_behaviors(original, optimized.transformed, Strategy::Stateful);
    c.require(!stateful.agree, "stateful verdict: " + stateful.description);
    DiffVerdict naive = compare_behaviors(original, optimized.transformed, Strategy::Naive);
    c.require(naive.agree, "naive verdict: " + naive.description);
    // The hand-written optimized program behaves like the generated one.
    Outcome manual = corpus_run("fig5_optimized", Strategy::Stateful);
    c.require(blamed(manual, Polarity::Positive), "hand-optimized: " + describe(manual));
    return c;
}

Check overloaded_identity_and_exchange_law() {
    Check c;
    Outcome naive = corpus_run("fig9", Strategy::Naive);
    Outcome stateful = corpus_run("fig9", Strategy::Stateful);
    c.require(blamed(naive, Polarity::Negative), "naive: " + describe(naive));
    c.require(json_is(stateful, "1"), "stateful: " + describe(stateful));

    auto pool = value_pool();
    c.require(pool.size() == 50, "pool must hold 50 values");
    auto leaves = flat_leaves();
    std::mt19937 rng(0x5eed0004);
    std::uniform_int_distribution<std::size_t> leaf(0, leaves.size() - 1);
    std::size_t compared = 0;
    for (const auto& f : pool) {
        if (f.kind != PoolValue::Kind::Fun) continue;
        for (const auto& arg : pool) {
            for (int round = 0; round < 3; ++round) {
                std::string a = leaves[leaf(rng)].source, b = leaves[leaf(rng)].source;
                std::string cc = leaves[leaf(rng)].source, d = leaves[leaf(rng)].source;
                std::string lhs = "(" + f.source + " | (" + a + " -> " + b + ") @& (" + cc + " -> " + d + ")) " +
                                  arg.source;
                std::string rhs = "(" + f.source + " | (" + a + " @& " + cc + ") -> (" + b + " @& " + d + ")) " +
                                  arg.source;
                Outcome l = eval(lhs, Strategy::Naive), r = eval(rhs, Strategy::Naive);
                c.require(outcomes_agree(l, r), "exchange law fails: " + lhs + " => " + describe(l) + " but " + rhs +
                                                    " => " + describe(r));
                ++compared;
            }
        }
    }
    c.require(compared == 7 * 50 * 3, "unexpected number of exchange-law comparisons");
    return c;
}

Check predicate_calls_guarded_function() {
    Check c;
    Outcome o = corpus_run("fig8", Strategy::Stateful);
    c.require(blamed(o, Polarity::Negative), "outcome: " + describe(o));
    if (o.is_blame()) {
        const auto& r = *o.blame;
        c.require(!r.label.path.empty() && r.label.path.back().kind == PathStep::Kind::Domain,
                  "blame should come from the Str -> Str domain");
        // The failing call is the predicate's own `f 0`, not the program's `g 0`.
        c.require(r.call_site && r.call_site->text() == "f 0", "call site is not the predicate's call");
    }
    return c;
}

Check arity_dispatch_and_case_arrows() {
    Check c;
    Outcome accepted = corpus_run("fig10", Strategy::Arity);
    c.require(json_is(accepted, "1"), "distinct arities: " + describe(accepted));
    Outcome dispatched = corpus_run("fig10_or_arity_dispatch", Strategy::Arity);
    c.require(blamed(dispatched, Polarity::Negative), "dispatch to Num -> Num: " + describe(dispatched));
    Outcome rejected = corpus_run("fig11", Strategy::Arity);
    c.require(rejected.is_crash() && rejected.crash->kind == CrashKind::AmbiguousUnion,
              "same arity: " + describe(rejected));
    Outcome overcase = corpus_run("fig12", Strategy::Arity);
    c.require(json_is(overcase, R"([3,"hello"])"), "case arrow: " + describe(overcase));
    Outcome bad = corpus_run("fig12_case_arrow_bad_argument", Strategy::Arity);
    c.require(blamed(bad, Polarity::Negative), "case arrow on true: " + describe(bad));
    return c;
}

Check intersection_distributes_over_currying() {
    Check c;
    // Host oracle: h = g 1 is called with 1 and with true. Each call needs
    // a branch whose second domain accepts the argument and whose result
    // type accepts f's answer (1, a number).
    const std::vector<std::function<bool(const PoolValue&)>> second_domain = {
        [](const PoolValue& v) { return v.kind == PoolValue::Kind::Num; },
        [](const PoolValue& v) { return v.kind == PoolValue::Kind::Bool; },
    };
    const std::vector<PoolValue> calls = {{PoolValue::Kind::Num, "1", 1}, {PoolValue::Kind::Bool, "true", 0, {}, true}};
    bool per_call = true;
    for (const auto& arg : calls) {
        bool some = false;
        for (const auto& dom : second_domain) some = some || dom(arg);
        per_call = per_call && some;
    }
    // One branch for both calls, which is what the coinductive semantics
    // demands: no such branch exists.
    bool single_branch = false;
    for (const auto& dom : second_domain) single_branch = single_branch || (dom(calls[0]) && dom(calls[1]));
    c.require(per_call && !single_branch, "oracle disagrees with the hand analysis");

    for (const char* name : {"intersection_distribution", "intersection_distribution_strict"}) {
        Outcome o = corpus_run(name, Strategy::Stateful);
        c.require(json_is(o, "[1,1]") == per_call, std::string(name) + ": " + describe(o));
    }
    return c;
}

Check first_order_oracle() {
    Check c;
    auto pool = first_order_pool();
    auto leaves = flat_leaves();
    std::mt19937 rng(0x5eed0008);
    for (int i = 0; i < 200; ++i) {
        Tree t = random_tree(rng, 3, leaves.size());
        std::string contract = tree_source(t, leaves);
        TermPtr normalized = dnf_normalize(parse_program(contract));
        std::string dnf = pretty_print(*normalized);
        for (const auto& v : pool) {
            bool expected = tree_oracle(t, leaves, v);
            for (Strategy s : all_strategies()) {
                for (const std::string& ctr : {contract, dnf}) {
                    Outcome o = eval("(" + v.source + ") | " + ctr, s);
                    bool ok = expected ? o.is_success() : blamed(o, Polarity::Positive);
                    c.require(ok, "tree " + std::to_string(i) + " " + ctr + " on " + v.source + " under " +
                                      std::string(strategy_name(s)) + ": " + describe(o));
                }
            }
        }
    }
    return c;
}

Check referential_transparency_on_pure_programs() {
    Check c;
    ProgramGen gen(0x5eed0009);
    std::size_t hoisted = 0, inlined = 0;
    for (int i = 0; i < 300; ++i) {
        std::string src = gen.program(6);
        TermPtr original = parse_program(src);
        TransformReport shared = cse(original);
        hoisted += !shared.sites.empty();
        std::vector<TermPtr> variants{shared.transformed};
        std::vector<std::string> names;
        let_names(original, names);
        if (!names.empty()) {
            variants.push_back(inline_binding(original, names.front()).transformed);
            ++inlined;
        }
        for (const auto& v : variants) {
            for (Strategy s : all_strategies()) {
                DiffVerdict d = compare_behaviors(original, v, s);
                c.require(d.agree, "program " + std::to_string(i) + ": " + src + "\n  rewritten: " + pretty_print(*v) +
                                       "\n  " + d.description);
            }
        }
    }
    c.require(hoisted >= 100, "cse fired on only " + std::to_string(hoisted) + " programs");
    c.require(inlined >= 50, "inlining exercised on only " + std::to_string(inlined) + " programs");
    return c;
}

const Term* find_division(const TermPtr& t) {
    if (const auto* op = t->as<Term::BinOp>(); op && op->op == BinaryOp::Div) return t.get();
    for (const auto& k : children(*t)) {
        if (const Term* hit = find_division(k)) return hit;
    }
    return nullptr;
}

Check record_contracts_are_lazy() {
    Check c;
    TermPtr program = parse_program("let r = {a = 1, b = 1 / 0} | {a | Num, b | Num} in r.a");
    const Term* crashing = find_division(program);
    Runtime rt(Strategy::Stateful);
    Value v = rt.eval(program);
    c.require(v.is_num() && v.num() == 1, "r.a did not evaluate to 1");
    c.require(crashing && rt.evaluations_of(crashing) == 0, "the crashing field was forced");
    Outcome forced = eval("let r = {a = 1, b = 1 / 0} | {a | Num, b | Num} in r.b");
    c.require(forced.is_crash() && forced.crash->kind == CrashKind::DivisionByZero, "r.b: " + describe(forced));
    return c;
}

Check blame_polarity_matches_domain_parity() {
    Check c;
    CorpusLoad load = load_corpus(BLAMELAB_CORPUS_DIR);
    c.require(load.errors.empty(), "corpus manifests failed to load");
    std::size_t seen = 0;
    for (const auto& entry : load.entries) {
        for (Strategy s : all_strategies()) {
            Outcome o = run_source(read_file(entry.program), entry.program.filename().string(), s);
            if (!o.is_blame()) continue;
            std::vector<const BlameReport*> reports;
            collect_reports(*o.blame, reports);
            for (const BlameReport* r : reports) {
                bool negative = r->label.polarity == Polarity::Negative;
                bool odd = r->label.domain_steps() % 2 == 1;
                c.require(negative == odd, entry.program.stem().string() + " under " + std::string(strategy_name(s)));
                ++seen;
            }
        }
    }
    c.require(seen >= 20, "too few blame reports in the corpus: " + std::to_string(seen));
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Check (*run)();
    };
    const Criterion criteria[] = {
        {"arrow contract violation needs one witness and blames the implementation", simple_arrow_violation},
        {"stateful union is refuted only by two calls together", union_needs_two_witnesses},
        {"common subexpression elimination changes a union program's verdict", cse_breaks_union},
        {"naive intersection rejects the overloaded identity; exchange law holds", overloaded_identity_and_exchange_law},
        {"flat predicate calling a guarded function blames the caller", predicate_calls_guarded_function},
        {"arity dispatch, same-arity rejection and case arrows", arity_dispatch_and_case_arrows},
        {"stateful intersection picks a branch per application", intersection_distributes_over_currying},
        {"first-order unions and intersections match the boolean oracle", first_order_oracle},
        {"cse and inlining preserve pure programs", referential_transparency_on_pure_programs},
        {"record contracts leave unused fields unevaluated", record_contracts_are_lazy},
        {"negative blame iff an odd number of domain steps", blame_polarity_matches_domain_parity},
    };
    int failed = 0;
    int index = 1;
    for (const auto& criterion : criteria) {
        Check result;
        try {
            result = criterion.run();
        } catch (const std::exception& e) {
            result.ok = false;
            result.why << "exception: " << e.what();
        }
        std::cout << (result.ok ? "PASS" : "FAIL") << " criterion " << index << ": " << criterion.name;
        if (!result.ok) std::cout << "\n    " << result.why.str();
        std::cout << "\n";
        failed += !result.ok;
        ++index;
    }
    return failed == 0 ? 0 : 1;
}
