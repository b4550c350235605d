#include "blamelab/transform.hpp"

#include "blamelab/connectives.hpp"

namespace blamelab {

bool outcomes_agree(const Outcome& a, const Outcome& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Outcome::Kind::Success: return a.json == b.json;
    case Outcome::Kind::Blame: return a.blame->label.polarity == b.blame->label.polarity;
    case Outcome::Kind::Crash: return a.crash->kind == b.crash->kind;
    case Outcome::Kind::SyntaxError: return true;
    }
    return false;
}

DiffVerdict compare_behaviors(const TermPtr& a, const TermPtr& b, Strategy s) {
    DiffVerdict v;
    v.left = run_program(a, s);
    v.right = run_program(b, s);
    v.agree = outcomes_agree(v.left, v.right);
    v.description = v.agree ? "agree: " + describe(v.left)
                            : "diverge: " + describe(v.left) + " vs " + describe(v.right);
    return v;
}

namespace {

TermPtr normalize_annotations(const TermPtr& t, std::vector<Span>& sites) {
    auto kids = children(*t);
    bool changed = false;
    for (auto& k : kids) {
        TermPtr next = normalize_annotations(k, sites);
        changed = changed || next != k;
        k = std::move(next);
    }
    TermPtr out = changed ? with_children(t, kids) : t;
    auto rewrite_contract = [&](const TermPtr& c) {
        TermPtr n = dnf_normalize(c);
        if (pretty_print(*n) != pretty_print(*c)) sites.push_back(c->span);
        return n;
    };
    if (const auto* annot = out->as<Term::Annot>()) {
        return make_term(Term::Annot{annot->term, rewrite_contract(annot->contract)}, out->span);
    }
    if (const auto* let = out->as<Term::Let>(); let && let->contract) {
        return make_term(Term::Let{let->name, rewrite_contract(let->contract), let->bound, let->body}, out->span);
    }
    return out;
}

}  // namespace

TransformReport dnf_pass(const TermPtr& t) {
    TransformReport report;
    report.original = t;
    report.transformed = normalize_annotations(t, report.sites);
    return report;
}

}  // namespace blamelab
