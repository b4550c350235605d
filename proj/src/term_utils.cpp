#include "blamelab/syntax.hpp"

#include <algorithm>
#include <set>

namespace blamelab {

std::vector<TermPtr> children(const Term& term) {
    return std::visit(
        [](const auto& n) -> std::vector<TermPtr> {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Term::Array>) {
                return n.items;
            } else if constexpr (std::is_same_v<N, Term::Record>) {
                std::vector<TermPtr> out;
                for (const auto& f : n.fields) out.push_back(f.value);
                return out;
            } else if constexpr (std::is_same_v<N, Term::FieldAccess>) {
                return {n.record};
            } else if constexpr (std::is_same_v<N, Term::Fun>) {
                return {n.body};
            } else if constexpr (std::is_same_v<N, Term::Let>) {
                if (n.contract) return {n.contract, n.bound, n.body};
                return {n.bound, n.body};
            } else if constexpr (std::is_same_v<N, Term::If>) {
                return {n.cond, n.then_branch, n.else_branch};
            } else if constexpr (std::is_same_v<N, Term::App>) {
                return {n.fn, n.arg};
            } else if constexpr (std::is_same_v<N, Term::BinOp>) {
                return {n.lhs, n.rhs};
            } else if constexpr (std::is_same_v<N, Term::Annot>) {
                return {n.term, n.contract};
            } else if constexpr (std::is_same_v<N, Term::ContractCtor>) {
                return n.children;
            } else {
                return {};
            }
        },
        term.node);
}

TermPtr with_children(const TermPtr& term, const std::vector<TermPtr>& kids) {
    Term::Node node = std::visit(
        [&](const auto& n) -> Term::Node {
            using N = std::decay_t<decltype(n)>;
            N copy = n;
            if constexpr (std::is_same_v<N, Term::Array>) {
                copy.items = kids;
            } else if constexpr (std::is_same_v<N, Term::Record>) {
                for (std::size_t i = 0; i < copy.fields.size(); ++i) copy.fields[i].value = kids[i];
            } else if constexpr (std::is_same_v<N, Term::FieldAccess>) {
                copy.record = kids[0];
            } else if constexpr (std::is_same_v<N, Term::Fun>) {
                copy.body = kids[0];
            } else if constexpr (std::is_same_v<N, Term::Let>) {
                if (copy.contract) {
                    copy.contract = kids[0];
                    copy.bound = kids[1];
                    copy.body = kids[2];
                } else {
                    copy.bound = kids[0];
                    copy.body = kids[1];
                }
            } else if constexpr (std::is_same_v<N, Term::If>) {
                copy.cond = kids[0];
                copy.then_branch = kids[1];
                copy.else_branch = kids[2];
            } else if constexpr (std::is_same_v<N, Term::App>) {
                copy.fn = kids[0];
                copy.arg = kids[1];
            } else if constexpr (std::is_same_v<N, Term::BinOp>) {
                copy.lhs = kids[0];
                copy.rhs = kids[1];
            } else if constexpr (std::is_same_v<N, Term::Annot>) {
                copy.term = kids[0];
                copy.contract = kids[1];
            } else if constexpr (std::is_same_v<N, Term::ContractCtor>) {
                copy.children = kids;
            }
            return copy;
        },
        term->node);
    return std::make_shared<const Term>(Term{std::move(node), term->span});
}

std::size_t term_size(const Term& term) {
    std::size_t n = 1;
    for (const auto& c : children(term)) n += term_size(*c);
    return n;
}

namespace {

using BinderStack = std::vector<std::string>;

// Index of the innermost binder named `name`, or -1 when free.
long lookup(const BinderStack& stack, const std::string& name) {
    for (std::size_t i = stack.size(); i-- > 0;) {
        if (stack[i] == name) return static_cast<long>(i);
    }
    return -1;
}

bool alpha(const Term& a, const Term& b, BinderStack& sa, BinderStack& sb) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* va = a.as<Term::Var>()) {
        const auto* vb = b.as<Term::Var>();
        long ia = lookup(sa, va->name);
        long ib = lookup(sb, vb->name);
        if (ia < 0 || ib < 0) return ia == ib && va->name == vb->name;
        return ia == ib;
    }
    if (const auto* na = a.as<Term::NumLit>()) return na->value == b.as<Term::NumLit>()->value;
    if (const auto* s = a.as<Term::StrLit>()) return s->value == b.as<Term::StrLit>()->value;
    if (const auto* x = a.as<Term::BoolLit>()) return x->value == b.as<Term::BoolLit>()->value;
    if (const auto* fa = a.as<Term::FieldAccess>()) {
        if (fa->field != b.as<Term::FieldAccess>()->field) return false;
    }
    if (const auto* ra = a.as<Term::Record>()) {
        const auto* rb = b.as<Term::Record>();
        if (ra->fields.size() != rb->fields.size()) return false;
        for (std::size_t i = 0; i < ra->fields.size(); ++i) {
            if (ra->fields[i].name != rb->fields[i].name) return false;
        }
    }
    if (const auto* ba = a.as<Term::BinOp>()) {
        if (ba->op != b.as<Term::BinOp>()->op) return false;
    }
    if (const auto* ca = a.as<Term::ContractCtor>()) {
        const auto* cb = b.as<Term::ContractCtor>();
        if (ca->kind != cb->kind || ca->field_names != cb->field_names || ca->open != cb->open) return false;
    }
    if (const auto* fa = a.as<Term::Fun>()) {
        const auto* fb = b.as<Term::Fun>();
        if (fa->params.size() != fb->params.size()) return false;
        for (std::size_t i = 0; i < fa->params.size(); ++i) {
            sa.push_back(fa->params[i]);
            sb.push_back(fb->params[i]);
        }
        bool ok = alpha(*fa->body, *fb->body, sa, sb);
        sa.resize(sa.size() - fa->params.size());
        sb.resize(sb.size() - fb->params.size());
        return ok;
    }
    if (const auto* la = a.as<Term::Let>()) {
        const auto* lb = b.as<Term::Let>();
        auto bound_a = la->contract ? make_term(Term::Annot{la->bound, la->contract}) : la->bound;
        auto bound_b = lb->contract ? make_term(Term::Annot{lb->bound, lb->contract}) : lb->bound;
        if (!alpha(*bound_a, *bound_b, sa, sb)) return false;
        sa.push_back(la->name);
        sb.push_back(lb->name);
        bool ok = alpha(*la->body, *lb->body, sa, sb);
        sa.pop_back();
        sb.pop_back();
        return ok;
    }
    auto ka = children(a);
    auto kb = children(b);
    if (ka.size() != kb.size()) return false;
    for (std::size_t i = 0; i < ka.size(); ++i) {
        if (!alpha(*ka[i], *kb[i], sa, sb)) return false;
    }
    return true;
}

void collect_free(const Term& t, BinderStack& bound, std::vector<std::string>& out) {
    if (const auto* v = t.as<Term::Var>()) {
        if (lookup(bound, v->name) < 0 && std::find(out.begin(), out.end(), v->name) == out.end()) {
            out.push_back(v->name);
        }
        return;
    }
    if (const auto* f = t.as<Term::Fun>()) {
        for (const auto& p : f->params) bound.push_back(p);
        collect_free(*f->body, bound, out);
        bound.resize(bound.size() - f->params.size());
        return;
    }
    if (const auto* l = t.as<Term::Let>()) {
        if (l->contract) collect_free(*l->contract, bound, out);
        collect_free(*l->bound, bound, out);
        bound.push_back(l->name);
        collect_free(*l->body, bound, out);
        bound.pop_back();
        return;
    }
    for (const auto& c : children(t)) collect_free(*c, bound, out);
}

void collect_names(const Term& t, std::set<std::string>& out) {
    if (const auto* v = t.as<Term::Var>()) out.insert(v->name);
    if (const auto* f = t.as<Term::Fun>()) out.insert(f->params.begin(), f->params.end());
    if (const auto* l = t.as<Term::Let>()) out.insert(l->name);
    for (const auto& c : children(t)) collect_names(*c, out);
}

}  // namespace

bool alpha_equal(const Term& a, const Term& b) {
    BinderStack sa, sb;
    return alpha(a, b, sa, sb);
}

std::vector<std::string> free_variables(const Term& term) {
    BinderStack bound;
    std::vector<std::string> out;
    collect_free(term, bound, out);
    return out;
}

std::vector<std::string> all_names(const Term& term) {
    std::set<std::string> names;
    collect_names(term, names);
    return {names.begin(), names.end()};
}

}  // namespace blamelab
