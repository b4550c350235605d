#include "blamelab/transform.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace blamelab {

namespace {

using Path = std::vector<std::size_t>;

// Names each child of `t` binds on top of t's own scope.
std::vector<std::string> binders_for_child(const Term& t, std::size_t child, std::size_t child_count) {
    if (const auto* fn = t.as<Term::Fun>()) return fn->params;
    if (const auto* let = t.as<Term::Let>()) {
        if (child + 1 == child_count) return {let->name};
    }
    return {};
}

// name -> id of the binding occurrence; globals are absent.
using Scope = std::map<std::string, std::size_t>;

std::string head(const Term& t) {
    return std::visit(
        [](const auto& n) -> std::string {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Term::NumLit>) return "n" + format_number(n.value);
            else if constexpr (std::is_same_v<N, Term::StrLit>) return "s" + quote_string(n.value);
            else if constexpr (std::is_same_v<N, Term::BoolLit>) return n.value ? "true" : "false";
            else if constexpr (std::is_same_v<N, Term::NullLit>) return "null";
            else if constexpr (std::is_same_v<N, Term::Array>) return "arr";
            else if constexpr (std::is_same_v<N, Term::Record>) {
                std::string out = "rec";
                for (const auto& f : n.fields) out += ":" + f.name;
                return out;
            } else if constexpr (std::is_same_v<N, Term::FieldAccess>) return "." + n.field;
            else if constexpr (std::is_same_v<N, Term::Fun>) return "fun" + std::to_string(n.params.size());
            else if constexpr (std::is_same_v<N, Term::Let>) return n.contract ? "letc" : "let";
            else if constexpr (std::is_same_v<N, Term::If>) return "if";
            else if constexpr (std::is_same_v<N, Term::App>) return "app";
            else if constexpr (std::is_same_v<N, Term::BinOp>) return std::string(binary_op_symbol(n.op));
            else if constexpr (std::is_same_v<N, Term::Annot>) return "annot";
            else if constexpr (std::is_same_v<N, Term::Var>) return "var";
            else {
                std::string out = "ctor" + std::to_string(static_cast<int>(n.kind)) + (n.open ? "o" : "");
                for (const auto& f : n.field_names) out += ":" + f;
                return out;
            }
        },
        t.node);
}

// Canonical text of `t`: locally bound variables by binding position,
// outer variables by binder id, globals by name.
void canonical(const Term& t, const Scope& outer, std::vector<std::string>& locals, std::string& out) {
    if (const auto* var = t.as<Term::Var>()) {
        for (std::size_t i = locals.size(); i-- > 0;) {
            if (locals[i] == var->name) {
                out += "L" + std::to_string(i) + " ";
                return;
            }
        }
        auto it = outer.find(var->name);
        out += it == outer.end() ? "G" + var->name + " " : "B" + std::to_string(it->second) + " ";
        return;
    }
    out += head(t) + "(";
    auto kids = children(t);
    for (std::size_t i = 0; i < kids.size(); ++i) {
        auto bound = binders_for_child(t, i, kids.size());
        locals.insert(locals.end(), bound.begin(), bound.end());
        canonical(*kids[i], outer, locals, out);
        locals.resize(locals.size() - bound.size());
    }
    out += ")";
}

struct Occurrence {
    Path path;
    TermPtr term;
    std::size_t order;  // preorder index
};

class Collector {
public:
    std::map<std::string, std::vector<Occurrence>> groups;

    void walk(const TermPtr& t, Scope& scope, Path& path) {
        std::size_t order = counter_++;
        if (!path.empty() && !t->is<Term::ContractCtor>() && term_size(*t) >= kCseMinSize) {
            std::vector<std::string> locals;
            std::string key;
            canonical(*t, scope, locals, key);
            groups[key].push_back({path, t, order});
        }
        auto kids = children(*t);
        for (std::size_t i = 0; i < kids.size(); ++i) {
            auto bound = binders_for_child(*t, i, kids.size());
            Scope inner = scope;
            for (const auto& name : bound) inner[name] = binder_ids_++;
            path.push_back(i);
            walk(kids[i], inner, path);
            path.pop_back();
        }
    }

private:
    std::size_t counter_ = 0;
    std::size_t binder_ids_ = 0;
};

bool is_prefix(const Path& a, const Path& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

// Occurrences of one group that do not sit inside each other.
std::vector<Occurrence> disjoint(std::vector<Occurrence> occ) {
    std::vector<Occurrence> out;
    for (auto& o : occ) {
        bool nested = std::any_of(out.begin(), out.end(), [&](const Occurrence& p) { return is_prefix(p.path, o.path); });
        if (!nested) out.push_back(std::move(o));
    }
    return out;
}

Path common_prefix(const std::vector<Occurrence>& occ) {
    Path lca = occ.front().path;
    for (const auto& o : occ) {
        std::size_t n = 0;
        while (n < lca.size() && n < o.path.size() && lca[n] == o.path[n]) ++n;
        lca.resize(n);
    }
    return lca;
}

TermPtr rewrite_at(const TermPtr& t, const Path& path, std::size_t depth,
                   const std::function<TermPtr(const TermPtr&)>& f) {
    if (depth == path.size()) return f(t);
    auto kids = children(*t);
    kids[path[depth]] = rewrite_at(kids[path[depth]], path, depth + 1, f);
    return with_children(t, kids);
}

std::string fresh_cse_name(std::set<std::string>& taken) {
    for (std::size_t i = 0;; ++i) {
        std::string name = "cse" + std::to_string(i);
        if (taken.insert(name).second) return name;
    }
}

}  // namespace

TransformReport cse(const TermPtr& t) {
    TransformReport report;
    report.original = t;
    auto names = all_names(*t);
    std::set<std::string> taken(names.begin(), names.end());
    TermPtr current = t;

    for (;;) {
        Collector collector;
        Scope scope;
        Path path;
        collector.walk(current, scope, path);

        std::vector<Occurrence> best;
        std::size_t best_size = 0;
        for (auto& [key, occ] : collector.groups) {
            auto sites = disjoint(occ);
            if (sites.size() < 2) continue;
            std::size_t size = term_size(*sites.front().term);
            bool better = size > best_size || (size == best_size && sites.front().order < best.front().order);
            if (better) {
                best = std::move(sites);
                best_size = size;
            }
        }
        if (best.empty()) break;

        Path lca = common_prefix(best);
        std::string name = fresh_cse_name(taken);
        TermPtr hoisted = best.front().term;
        TermPtr var = make_term(Term::Var{name}, hoisted->span);
        for (const auto& o : best) {
            report.sites.push_back(o.term->span);
            current = rewrite_at(current, o.path, 0, [&](const TermPtr&) { return var; });
        }
        current = rewrite_at(current, lca, 0, [&](const TermPtr& scope_root) {
            return make_term(Term::Let{name, nullptr, hoisted, scope_root}, scope_root->span);
        });
    }
    report.transformed = current;
    return report;
}

}  // namespace blamelab
