#include "blamelab/transform.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace blamelab {

namespace {

std::string fresh_name(const std::string& base, std::set<std::string>& taken) {
    for (int i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (taken.insert(candidate).second) return candidate;
    }
}

class Substituter {
public:
    Substituter(const TermPtr& replacement, std::set<std::string> taken)
        : replacement_(replacement), taken_(std::move(taken)) {
        auto fv = free_variables(*replacement);
        free_.insert(fv.begin(), fv.end());
    }

    std::vector<Span> sites;

    TermPtr run(const TermPtr& t, const std::string& x) { return subst(t, x, replacement_, free_); }

private:
    TermPtr replacement_;
    std::set<std::string> taken_;
    std::set<std::string> free_;
    // Terms that came out of a substitution; applying one of them to an
    // argument is a redex the rewrite created.
    std::set<const Term*> created_;

    TermPtr rename(const TermPtr& body, const std::string& from, const std::string& to) {
        TermPtr var = make_term(Term::Var{to});
        return subst(body, from, var, {to});
    }

    TermPtr beta(const Term::Fun& fn, const TermPtr& arg) {
        std::set<std::string> fv;
        for (const auto& v : free_variables(*arg)) fv.insert(v);
        if (fn.params.size() == 1) return subst(fn.body, fn.params.front(), arg, fv);
        std::vector<std::string> rest(fn.params.begin() + 1, fn.params.end());
        TermPtr residual = make_term(Term::Fun{std::move(rest), fn.body});
        return subst(residual, fn.params.front(), arg, fv);
    }

    TermPtr subst(const TermPtr& t, const std::string& x, const TermPtr& s, const std::set<std::string>& fv) {
        if (const auto* var = t->as<Term::Var>()) {
            if (var->name != x) return t;
            if (s == replacement_) sites.push_back(t->span);
            created_.insert(s.get());
            return s;
        }
        if (const auto* fn = t->as<Term::Fun>()) {
            if (std::find(fn->params.begin(), fn->params.end(), x) != fn->params.end()) return t;
            auto params = fn->params;
            TermPtr body = fn->body;
            for (auto& p : params) {
                if (!fv.count(p)) continue;
                std::string fresh = fresh_name(p, taken_);
                body = rename(body, p, fresh);
                p = fresh;
            }
            return make_term(Term::Fun{std::move(params), subst(body, x, s, fv)}, t->span);
        }
        if (const auto* let = t->as<Term::Let>()) {
            TermPtr contract = let->contract ? subst(let->contract, x, s, fv) : nullptr;
            TermPtr bound = subst(let->bound, x, s, fv);
            if (let->name == x) return make_term(Term::Let{let->name, contract, bound, let->body}, t->span);
            std::string name = let->name;
            TermPtr body = let->body;
            if (fv.count(name)) {
                std::string fresh = fresh_name(name, taken_);
                body = rename(body, name, fresh);
                name = fresh;
            }
            return make_term(Term::Let{name, contract, bound, subst(body, x, s, fv)}, t->span);
        }
        if (const auto* app = t->as<Term::App>()) {
            TermPtr fn = subst(app->fn, x, s, fv);
            TermPtr arg = subst(app->arg, x, s, fv);
            if (created_.count(fn.get())) {
                if (const auto* lambda = fn->as<Term::Fun>()) {
                    TermPtr reduced = beta(*lambda, arg);
                    created_.insert(reduced.get());
                    return reduced;
                }
            }
            if (fn == app->fn && arg == app->arg) return t;
            return make_term(Term::App{fn, arg}, t->span);
        }
        auto kids = children(*t);
        bool changed = false;
        for (auto& k : kids) {
            TermPtr next = subst(k, x, s, fv);
            changed = changed || next != k;
            k = std::move(next);
        }
        return changed ? with_children(t, kids) : t;
    }
};

std::set<std::string> names_of(const Term& t) {
    auto names = all_names(t);
    return {names.begin(), names.end()};
}

// Rebuilds `t` with the first let binding `name` (preorder) replaced by
// `rewrite(let)`. Returns null if there is none.
TermPtr replace_first_let(const TermPtr& t, const std::string& name,
                          const std::function<TermPtr(const TermPtr&, const Term::Let&)>& rewrite) {
    if (const auto* let = t->as<Term::Let>(); let && let->name == name) return rewrite(t, *let);
    auto kids = children(*t);
    for (auto& k : kids) {
        if (TermPtr next = replace_first_let(k, name, rewrite)) {
            k = next;
            return with_children(t, kids);
        }
    }
    return nullptr;
}

}  // namespace

TermPtr substitute(const TermPtr& t, const std::string& name, const TermPtr& replacement) {
    auto taken = names_of(*t);
    auto more = names_of(*replacement);
    taken.insert(more.begin(), more.end());
    Substituter sub(replacement, std::move(taken));
    return sub.run(t, name);
}

TransformReport inline_binding(const TermPtr& t, const std::string& name) {
    TransformReport report;
    report.original = t;
    auto taken = names_of(*t);
    std::vector<Span> sites;
    TermPtr out = replace_first_let(t, name, [&](const TermPtr&, const Term::Let& let) {
        TermPtr def = let.bound;
        if (let.contract) def = make_term(Term::Annot{let.bound, let.contract}, Span::cover(let.contract->span, let.bound->span));
        Substituter sub(def, taken);
        TermPtr body = sub.run(let.body, let.name);
        sites = std::move(sub.sites);
        return body;
    });
    if (!out) throw TransformError(TransformError::Kind::UnknownBinding, "no let binds '" + name + "'");
    report.transformed = out;
    report.sites = std::move(sites);
    return report;
}

}  // namespace blamelab
