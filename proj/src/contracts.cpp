#include "blamelab/contracts.hpp"

#include "blamelab/connectives.hpp"

#include <algorithm>
#include <set>

namespace blamelab {

namespace {

ContractPtr make(Contract::Node node) { return std::make_shared<const Contract>(Contract{std::move(node)}); }

template <class Kind>
std::vector<ContractPtr> splice(std::vector<ContractPtr> branches) {
    std::vector<ContractPtr> out;
    for (auto& b : branches) {
        if (const auto* same = b->as<Kind>()) {
            out.insert(out.end(), same->branches.begin(), same->branches.end());
        } else {
            out.push_back(std::move(b));
        }
    }
    return out;
}

class ArrowGuard : public Guard {
public:
    ArrowGuard(ContractPtr dom, ContractPtr cod, Label l) : dom_(std::move(dom)), cod_(std::move(cod)), label_(std::move(l)) {}

    Value call(Runtime& rt, const Value& inner, ThunkPtr arg, const Span& call_site) const override {
        ThunkPtr checked = attach(rt, std::move(arg), dom_, negate(label_).extended(PathStep::domain()));
        Value result = rt.apply(inner, checked, call_site);
        return check_value(rt, result, cod_, label_.extended(PathStep::codomain()));
    }

private:
    ContractPtr dom_, cod_;
    Label label_;
};

}  // namespace

ContractPtr make_flat(Value predicate, std::string name) {
    return make(Contract::Flat{std::move(predicate), std::move(name)});
}
ContractPtr make_arrow(ContractPtr domain, ContractPtr codomain) {
    return make(Contract::Arrow{std::move(domain), std::move(codomain)});
}
ContractPtr make_union(std::vector<ContractPtr> branches) {
    auto flat = splice<Contract::Union>(std::move(branches));
    if (flat.size() == 1) return flat.front();
    return make(Contract::Union{std::move(flat)});
}
ContractPtr make_intersection(std::vector<ContractPtr> branches) {
    auto flat = splice<Contract::Intersection>(std::move(branches));
    if (flat.size() == 1) return flat.front();
    return make(Contract::Intersection{std::move(flat)});
}
ContractPtr make_case_arrow(std::vector<ContractPtr> branches) { return make(Contract::CaseArrow{std::move(branches)}); }
ContractPtr make_record_of(std::vector<std::pair<std::string, ContractPtr>> fields, bool exhaustive) {
    return make(Contract::RecordOf{std::move(fields), exhaustive});
}
ContractPtr make_array_of(ContractPtr element) { return make(Contract::ArrayOf{std::move(element)}); }
ContractPtr make_dyn() { return make(Contract::Dyn{}); }

ContractPtr with_name(const ContractPtr& c, const std::string& name) {
    const auto* flat = c->as<Contract::Flat>();
    if (!flat || !flat->name.empty()) return c;
    return make_flat(flat->predicate, name);
}

namespace {

bool needs_parens_in_connective(const Contract& c) {
    return c.is<Contract::Arrow>() || c.is<Contract::Union>() || c.is<Contract::Intersection>();
}

std::string join_branches(const std::vector<ContractPtr>& branches, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        if (i) out += sep;
        std::string inner = render_contract(*branches[i]);
        out += needs_parens_in_connective(*branches[i]) ? "(" + inner + ")" : inner;
    }
    return out;
}

}  // namespace

std::string render_contract(const Contract& c) {
    return std::visit(
        [](const auto& n) -> std::string {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Contract::Flat>) {
                return n.name.empty() ? "<predicate>" : n.name;
            } else if constexpr (std::is_same_v<N, Contract::Arrow>) {
                std::string dom = render_contract(*n.domain);
                std::string cod = render_contract(*n.codomain);
                if (needs_parens_in_connective(*n.domain)) dom = "(" + dom + ")";
                if (n.codomain->template is<Contract::Union>() || n.codomain->template is<Contract::Intersection>()) {
                    cod = "(" + cod + ")";
                }
                return dom + " -> " + cod;
            } else if constexpr (std::is_same_v<N, Contract::RecordOf>) {
                std::string out = "{";
                for (std::size_t i = 0; i < n.fields.size(); ++i) {
                    if (i) out += ", ";
                    out += n.fields[i].first + " | " + render_contract(*n.fields[i].second);
                }
                if (!n.exhaustive) out += n.fields.empty() ? ".." : ", ..";
                return out + "}";
            } else if constexpr (std::is_same_v<N, Contract::ArrayOf>) {
                std::string inner = render_contract(*n.element);
                bool atomic = n.element->template is<Contract::Flat>() || n.element->template is<Contract::Dyn>() ||
                              n.element->template is<Contract::RecordOf>();
                return "List " + (atomic ? inner : "(" + inner + ")");
            } else if constexpr (std::is_same_v<N, Contract::Union>) {
                return join_branches(n.branches, " @| ");
            } else if constexpr (std::is_same_v<N, Contract::Intersection>) {
                return join_branches(n.branches, " @& ");
            } else if constexpr (std::is_same_v<N, Contract::CaseArrow>) {
                std::string out = "case [";
                for (std::size_t i = 0; i < n.branches.size(); ++i) {
                    if (i) out += ", ";
                    out += render_contract(*n.branches[i]);
                }
                return out + "]";
            } else {
                return "Dyn";
            }
        },
        c.node);
}

std::string render_step(const PathStep& step) {
    switch (step.kind) {
    case PathStep::Kind::Domain: return "domain";
    case PathStep::Kind::Codomain: return "codomain";
    case PathStep::Kind::UnionBranch: return "branch " + std::to_string(step.index + 1);
    case PathStep::Kind::IntersectionBranch: return "intersection branch " + std::to_string(step.index + 1);
    case PathStep::Kind::CaseBranch: return "case branch " + std::to_string(step.index + 1);
    case PathStep::Kind::Field: return "field " + step.field;
    case PathStep::Kind::Element: return "element";
    }
    return "?";
}

Label Label::extended(PathStep step) const {
    Label l = *this;
    l.path.push_back(std::move(step));
    return l;
}

Label Label::in_cell(std::shared_ptr<ViabilityCell> c, std::size_t b) const {
    Label l = *this;
    l.cell = std::move(c);
    l.branch = b;
    return l;
}

std::size_t Label::domain_steps() const {
    return static_cast<std::size_t>(
        std::count_if(path.begin(), path.end(), [](const PathStep& s) { return s.kind == PathStep::Kind::Domain; }));
}

Label make_label(Span span, ContractPtr contract) {
    Label l;
    l.span = std::move(span);
    l.contract = std::move(contract);
    return l;
}

Label negate(const Label& l) {
    Label out = l;
    out.polarity = l.polarity == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
    return out;
}

std::string_view party_message(Polarity p) {
    return p == Polarity::Positive ? "contract broken by the implementation" : "contract broken by the caller";
}

BlameReport make_report(const Runtime& rt, const Label& l, std::string witness) {
    BlameReport r;
    r.label = l;
    r.witness = std::move(witness);
    r.message = std::string(party_message(l.polarity));
    if (const Span* site = rt.current_call_site()) r.call_site = *site;
    return r;
}

void raise_report(Runtime& rt, BlameReport report) {
    const Label& l = report.label;
    // Only evidence against the value itself narrows a union: a label whose
    // polarity matches the union's owner. Caller faults pass through.
    if (l.cell && l.polarity == l.cell->owner.polarity && l.cell->kind == ViabilityCell::Kind::Union) {
        auto cell = l.cell;
        if (auto all_dead = mark_branch_dead(*cell, l.branch, std::move(report))) {
            raise_report(rt, std::move(*all_dead));
        }
        return;
    }
    throw BlameError(std::move(report));
}

void raise_blame(Runtime& rt, const Label& l, std::string witness) {
    raise_report(rt, make_report(rt, l, std::move(witness)));
}

ThunkPtr attach(Runtime& rt, ThunkPtr t, ContractPtr c, Label l) {
    (void)rt;
    if (c->is<Contract::Dyn>()) return t;
    Span span = l.span;
    return Thunk::deferred(
        [t = std::move(t), c = std::move(c), l = std::move(l)](Runtime& rt) { return check_value(rt, rt.force(t), c, l); },
        std::move(span));
}

Value check_value(Runtime& rt, const Value& v, const ContractPtr& c, const Label& l) {
    return std::visit(
        [&](const auto& n) -> Value {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Contract::Flat>) {
                return check_flat(rt, n.predicate, v, l);
            } else if constexpr (std::is_same_v<N, Contract::Arrow>) {
                return wrap_arrow(rt, v, n.domain, n.codomain, l);
            } else if constexpr (std::is_same_v<N, Contract::RecordOf>) {
                return wrap_record(rt, v, n, l);
            } else if constexpr (std::is_same_v<N, Contract::ArrayOf>) {
                return wrap_array(rt, v, n.element, l);
            } else if constexpr (std::is_same_v<N, Contract::Union>) {
                return union_value(rt, v, n.branches, l, rt.strategy());
            } else if constexpr (std::is_same_v<N, Contract::Intersection>) {
                return intersection_value(rt, v, n.branches, l, rt.strategy());
            } else if constexpr (std::is_same_v<N, Contract::CaseArrow>) {
                return case_arrow_value(rt, v, n.branches, l);
            } else {
                return v;
            }
        },
        c->node);
}

Value check_flat(Runtime& rt, const Value& pred, const Value& v, const Label& l) {
    Value verdict = rt.apply(pred, Thunk::ready(v), l.span);
    if (!verdict.is_bool()) {
        throw CrashError(CrashKind::TypeError, l.span,
                         "contract predicate returned a value of type " + std::string(verdict.type_name()) +
                             ", but Bool was expected");
    }
    if (!verdict.boolean()) raise_blame(rt, l, render_value(v));
    return v;
}

Value wrap_arrow(Runtime& rt, const Value& fn, ContractPtr dom, ContractPtr cod, const Label& l) {
    if (!fn.is_applicable()) {
        raise_blame(rt, l, render_value(fn) + " (not a function)");
        return fn;
    }
    auto guard = std::make_shared<const ArrowGuard>(std::move(dom), std::move(cod), l);
    return Value(std::make_shared<const GuardedFn>(GuardedFn{fn, std::move(guard)}));
}

Value wrap_record(Runtime& rt, const Value& v, const Contract::RecordOf& rc, const Label& l) {
    if (!v.is_record()) {
        raise_blame(rt, l, render_value(v) + " (not a record)");
        return v;
    }
    const auto& fields = v.record().fields;
    auto out = std::make_shared<RecordValue>(v.record());
    std::set<std::string> expected;
    for (const auto& [name, c] : rc.fields) {
        expected.insert(name);
        auto it = out->fields.find(name);
        if (it == out->fields.end()) {
            raise_blame(rt, l.extended(PathStep::field_step(name)), "missing field '" + name + "'");
            continue;
        }
        it->second = attach(rt, it->second, c, l.extended(PathStep::field_step(name)));
    }
    if (rc.exhaustive) {
        for (const auto& [name, field] : fields) {
            if (!expected.count(name)) raise_blame(rt, l, "unexpected field '" + name + "'");
        }
    }
    return Value(std::shared_ptr<const RecordValue>(std::move(out)));
}

Value wrap_array(Runtime& rt, const Value& v, const ContractPtr& element, const Label& l) {
    if (!v.is_array()) {
        raise_blame(rt, l, render_value(v) + " (not an array)");
        return v;
    }
    auto out = std::make_shared<ArrayValue>();
    Label item_label = l.extended(PathStep::element());
    for (const auto& item : v.array().items) out->items.push_back(attach(rt, item, element, item_label));
    return Value(std::shared_ptr<const ArrayValue>(std::move(out)));
}

bool accepts_eagerly(Runtime& rt, const ContractPtr& c, const Value& v) {
    return std::visit(
        [&](const auto& n) -> bool {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Contract::Flat>) {
                Value verdict = rt.apply(n.predicate, Thunk::ready(v), Span{});
                if (!verdict.is_bool()) {
                    throw CrashError(CrashKind::TypeError, Span{},
                                     "contract predicate returned a value of type " +
                                         std::string(verdict.type_name()) + ", but Bool was expected");
                }
                return verdict.boolean();
            } else if constexpr (std::is_same_v<N, Contract::Arrow> || std::is_same_v<N, Contract::CaseArrow>) {
                return v.is_applicable();
            } else if constexpr (std::is_same_v<N, Contract::RecordOf>) {
                if (!v.is_record()) return false;
                const auto& fields = v.record().fields;
                for (const auto& [name, c] : n.fields) {
                    if (!fields.count(name)) return false;
                }
                return !n.exhaustive || fields.size() == n.fields.size();
            } else if constexpr (std::is_same_v<N, Contract::ArrayOf>) {
                return v.is_array();
            } else if constexpr (std::is_same_v<N, Contract::Union>) {
                return std::any_of(n.branches.begin(), n.branches.end(),
                                   [&](const ContractPtr& b) { return accepts_eagerly(rt, b, v); });
            } else if constexpr (std::is_same_v<N, Contract::Intersection>) {
                return std::all_of(n.branches.begin(), n.branches.end(),
                                   [&](const ContractPtr& b) { return accepts_eagerly(rt, b, v); });
            } else {
                return true;
            }
        },
        c->node);
}

bool is_first_order(const Contract& c) {
    if (c.is<Contract::Flat>() || c.is<Contract::Dyn>()) return true;
    if (const auto* u = c.as<Contract::Union>()) {
        return std::all_of(u->branches.begin(), u->branches.end(), [](const auto& b) { return is_first_order(*b); });
    }
    if (const auto* i = c.as<Contract::Intersection>()) {
        return std::all_of(i->branches.begin(), i->branches.end(), [](const auto& b) { return is_first_order(*b); });
    }
    return false;
}

}  // namespace blamelab
