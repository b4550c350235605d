#include "blamelab/connectives.hpp"

#include <algorithm>

namespace blamelab {

std::size_t ViabilityCell::alive_count() const {
    return static_cast<std::size_t>(std::count(alive.begin(), alive.end(), true));
}

std::size_t contract_arity(const Contract& c) {
    const auto* arrow = c.as<Contract::Arrow>();
    return arrow ? 1 + contract_arity(*arrow->codomain) : 0;
}

std::optional<BlameReport> mark_branch_dead(ViabilityCell& cell, std::size_t i, BlameReport witness) {
    if (i >= cell.alive.size() || !cell.alive[i]) return std::nullopt;
    cell.alive[i] = false;
    cell.witnesses[i].push_back(std::move(witness));
    if (cell.alive_count() > 0) return std::nullopt;

    // The last failure becomes the owner's blame. It points at the whole
    // annotation but keeps its own path, naming the component that gave out.
    BlameReport all = cell.witnesses[i].back();
    all.label.span = cell.owner.span;
    all.label.cell = cell.owner.cell;
    all.label.branch = cell.owner.branch;
    all.branch_failures.clear();
    for (const auto& per_branch : cell.witnesses) {
        all.branch_failures.insert(all.branch_failures.end(), per_branch.begin(), per_branch.end());
    }
    return all;
}

namespace {

Value guarded(Value inner, std::shared_ptr<const Guard> guard) {
    return Value(std::make_shared<const GuardedFn>(GuardedFn{std::move(inner), std::move(guard)}));
}

// One component of a stateful connective, with the label it is checked under.
struct Member {
    std::size_t index;
    ContractPtr contract;
    Label label;
};

const Contract::Arrow& arrow_of(const Member& m) { return *m.contract->as<Contract::Arrow>(); }

// Trial check of an argument against a domain: eager part only, no blame.
bool domain_accepts(Runtime& rt, const ContractPtr& dom, const Value& arg) { return accepts_eagerly(rt, dom, arg); }

ThunkPtr guard_argument(Runtime& rt, ThunkPtr arg, const Member& m) {
    const ContractPtr& dom = arrow_of(m).domain;
    if (is_first_order(*dom)) return arg;  // already decided by the trial
    return attach(rt, std::move(arg), dom, negate(m.label).extended(PathStep::domain()));
}

// ---- stateful union -------------------------------------------------------

Value attach_shared(Runtime& rt, const Value& v, const std::vector<Member>& members,
                    const std::shared_ptr<ViabilityCell>& cell, const Label& owner);

class UnionGuard : public Guard {
public:
    UnionGuard(std::shared_ptr<ViabilityCell> cell, std::vector<Member> members, Label owner)
        : cell_(std::move(cell)), members_(std::move(members)), owner_(std::move(owner)) {}

    Value call(Runtime& rt, const Value& inner, ThunkPtr arg, const Span& call_site) const override {
        Value a = rt.force(arg);
        std::vector<const Member*> applicable;
        for (const auto& m : members_) {
            if (cell_->alive[m.index] && domain_accepts(rt, arrow_of(m).domain, a)) applicable.push_back(&m);
        }
        if (applicable.empty()) {
            raise_blame(rt, negate(owner_).extended(PathStep::domain()), render_value(a));
            return rt.apply(inner, arg, call_site);
        }
        ThunkPtr checked = arg;
        for (const Member* m : applicable) checked = guard_argument(rt, checked, *m);
        Value result = rt.apply(inner, checked, call_site);

        std::vector<Member> codomains;
        for (const Member* m : applicable) {
            if (!cell_->alive[m->index]) continue;
            codomains.push_back({m->index, arrow_of(*m).codomain, m->label.extended(PathStep::codomain())});
        }
        return attach_shared(rt, result, codomains, cell_, owner_.extended(PathStep::codomain()));
    }

private:
    std::shared_ptr<ViabilityCell> cell_;
    std::vector<Member> members_;
    Label owner_;
};

Value attach_shared(Runtime& rt, const Value& v, const std::vector<Member>& members,
                    const std::shared_ptr<ViabilityCell>& cell, const Label& owner) {
    auto alive = [&](const Member& m) { return cell->alive[m.index]; };

    // Eager components decide on the spot. Every failing one dies, even
    // when another passes: the evidence is kept for later uses.
    bool settled = false;
    for (const auto& m : members) {
        if (!alive(m) || !is_first_order(*m.contract)) continue;
        if (accepts_eagerly(rt, m.contract, v)) {
            settled = true;
        } else {
            raise_blame(rt, m.label, render_value(v));
        }
    }
    if (settled) return v;
    for (const auto& m : members) {
        if (alive(m) && !accepts_eagerly(rt, m.contract, v)) raise_blame(rt, m.label, render_value(v));
    }

    Value out = v;
    std::vector<Member> arrows;
    for (const auto& m : members) {
        if (!alive(m) || is_first_order(*m.contract)) continue;
        if (m.contract->is<Contract::Arrow>()) {
            arrows.push_back(m);
        } else {
            out = check_value(rt, out, m.contract, m.label);
        }
    }
    if (!arrows.empty()) out = guarded(out, std::make_shared<const UnionGuard>(cell, std::move(arrows), owner));
    return out;
}

Value stateful_union(Runtime& rt, const Value& v, const std::vector<ContractPtr>& branches, const Label& l) {
    auto cell = std::make_shared<ViabilityCell>(ViabilityCell::Kind::Union, branches.size(), l);
    std::vector<Member> members;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        members.push_back({i, branches[i], l.extended(PathStep::union_branch(i)).in_cell(cell, i)});
    }
    return attach_shared(rt, v, members, cell, l);
}

// ---- arity union ----------------------------------------------------------

Value arity_union(Runtime& rt, const Value& v, const std::vector<ContractPtr>& branches, const Label& l) {
    for (const auto& b : branches) {
        if (is_first_order(*b) && accepts_eagerly(rt, b, v)) return v;
    }
    if (v.is_applicable()) {
        std::vector<std::size_t> arrows;
        for (std::size_t i = 0; i < branches.size(); ++i) {
            if (branches[i]->is<Contract::Arrow>()) arrows.push_back(i);
        }
        for (std::size_t a = 0; a < arrows.size(); ++a) {
            for (std::size_t b = a + 1; b < arrows.size(); ++b) {
                std::size_t n = contract_arity(*branches[arrows[a]]);
                if (n == contract_arity(*branches[arrows[b]])) {
                    throw CrashError(CrashKind::AmbiguousUnion, l.span,
                                     "union branches " + std::to_string(arrows[a] + 1) + " and " +
                                         std::to_string(arrows[b] + 1) + " both have arity " + std::to_string(n) +
                                         " and cannot be told apart");
                }
            }
        }
        std::size_t n = value_arity(v);
        for (std::size_t i : arrows) {
            if (contract_arity(*branches[i]) == n) {
                return check_value(rt, v, branches[i], l.extended(PathStep::union_branch(i)));
            }
        }
        raise_blame(rt, l, render_value(v) + " (arity " + std::to_string(n) + ")");
        return v;
    }
    for (std::size_t i = 0; i < branches.size(); ++i) {
        const auto& b = branches[i];
        if (!is_first_order(*b) && !b->is<Contract::Arrow>() && accepts_eagerly(rt, b, v)) {
            return check_value(rt, v, b, l.extended(PathStep::union_branch(i)));
        }
    }
    raise_blame(rt, l, render_value(v));
    return v;
}

// ---- stateful intersection ------------------------------------------------

Value intersect_members(Runtime& rt, const Value& v, const std::vector<Member>& members, const Label& owner);

class IntersectionGuard : public Guard {
public:
    IntersectionGuard(std::vector<Member> members, Label owner) : members_(std::move(members)), owner_(std::move(owner)) {}

    Value call(Runtime& rt, const Value& inner, ThunkPtr arg, const Span& call_site) const override {
        Value a = rt.force(arg);
        std::vector<const Member*> applicable;
        for (const auto& m : members_) {
            if (domain_accepts(rt, arrow_of(m).domain, a)) applicable.push_back(&m);
        }
        if (applicable.empty()) {
            raise_blame(rt, negate(owner_).extended(PathStep::domain()), render_value(a));
            return rt.apply(inner, arg, call_site);
        }
        ThunkPtr checked = arg;
        for (const Member* m : applicable) checked = guard_argument(rt, checked, *m);
        Value result = rt.apply(inner, checked, call_site);
        if (applicable.size() == 1) {
            const Member& m = *applicable.front();
            return check_value(rt, result, arrow_of(m).codomain, m.label.extended(PathStep::codomain()));
        }
        std::vector<Member> codomains;
        for (const Member* m : applicable) {
            codomains.push_back({m->index, arrow_of(*m).codomain, m->label.extended(PathStep::codomain())});
        }
        return intersect_members(rt, result, codomains, owner_.extended(PathStep::codomain()));
    }

private:
    std::vector<Member> members_;
    Label owner_;
};

Value intersect_members(Runtime& rt, const Value& v, const std::vector<Member>& members, const Label& owner) {
    std::vector<Member> arrows;
    for (const auto& m : members) {
        if (m.contract->is<Contract::Arrow>()) arrows.push_back(m);
    }
    Value out = v;
    if (!arrows.empty()) {
        if (!v.is_applicable()) {
            raise_blame(rt, arrows.front().label, render_value(v) + " (not a function)");
            return v;
        }
        out = guarded(v, std::make_shared<const IntersectionGuard>(std::move(arrows), owner));
    }
    for (const auto& m : members) {
        if (!is_first_order(*m.contract) && !m.contract->is<Contract::Arrow>()) {
            out = check_value(rt, out, m.contract, m.label);
        }
    }
    // Flat components run last, against the guarded value.
    for (const auto& m : members) {
        if (is_first_order(*m.contract)) out = check_value(rt, out, m.contract, m.label);
    }
    return out;
}

// ---- case arrows ----------------------------------------------------------

class CaseGuard : public Guard {
public:
    CaseGuard(std::vector<ContractPtr> branches, Label l) : branches_(std::move(branches)), label_(std::move(l)) {}

    Value call(Runtime& rt, const Value& inner, ThunkPtr arg, const Span& call_site) const override {
        Value a = rt.force(arg);
        for (std::size_t i = 0; i < branches_.size(); ++i) {
            const auto& arrow = *branches_[i]->as<Contract::Arrow>();
            if (!domain_accepts(rt, arrow.domain, a)) continue;
            Label chosen = label_.extended(PathStep::case_branch(i));
            ThunkPtr checked = arg;
            if (!is_first_order(*arrow.domain)) {
                checked = attach(rt, checked, arrow.domain, negate(chosen).extended(PathStep::domain()));
            }
            Value result = rt.apply(inner, checked, call_site);
            return check_value(rt, result, arrow.codomain, chosen.extended(PathStep::codomain()));
        }
        raise_blame(rt, negate(label_).extended(PathStep::domain()), render_value(a));
        return rt.apply(inner, arg, call_site);
    }

private:
    std::vector<ContractPtr> branches_;
    Label label_;
};

}  // namespace

Value union_value(Runtime& rt, const Value& v, const std::vector<ContractPtr>& branches, const Label& l, Strategy s) {
    switch (s) {
    case Strategy::Naive:
        for (const auto& b : branches) {
            if (accepts_eagerly(rt, b, v)) return v;
        }
        raise_blame(rt, l, render_value(v));
        return v;
    case Strategy::Arity: return arity_union(rt, v, branches, l);
    case Strategy::Stateful: return stateful_union(rt, v, branches, l);
    }
    return v;
}

Value intersection_value(Runtime& rt, const Value& v, const std::vector<ContractPtr>& branches, const Label& l,
                         Strategy s) {
    if (s == Strategy::Stateful) {
        std::vector<Member> members;
        for (std::size_t i = 0; i < branches.size(); ++i) {
            members.push_back({i, branches[i], l.extended(PathStep::intersection_branch(i))});
        }
        return intersect_members(rt, v, members, l);
    }
    // (v | A) | B: each branch wraps the result of the previous one.
    Value out = v;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        out = check_value(rt, out, branches[i], l.extended(PathStep::intersection_branch(i)));
    }
    return out;
}

Value case_arrow_value(Runtime& rt, const Value& v, const std::vector<ContractPtr>& branches, const Label& l) {
    for (std::size_t i = 0; i < branches.size(); ++i) {
        if (!branches[i]->is<Contract::Arrow>()) {
            throw CrashError(CrashKind::NotAnArrow, l.span,
                             "case branch " + std::to_string(i + 1) + " is " + render_contract(*branches[i]) +
                                 ", but every case branch must be a function contract");
        }
    }
    if (!v.is_applicable()) {
        raise_blame(rt, l, render_value(v) + " (not a function)");
        return v;
    }
    return guarded(v, std::make_shared<const CaseGuard>(branches, l));
}

ThunkPtr check_union(Runtime& rt, ThunkPtr t, std::vector<ContractPtr> branches, Label l, Strategy s) {
    (void)rt;
    Span span = l.span;
    return Thunk::deferred(
        [t = std::move(t), branches = std::move(branches), l = std::move(l), s](Runtime& rt) {
            return union_value(rt, rt.force(t), branches, l, s);
        },
        std::move(span));
}

ThunkPtr check_intersection(Runtime& rt, ThunkPtr t, std::vector<ContractPtr> branches, Label l, Strategy s) {
    (void)rt;
    Span span = l.span;
    return Thunk::deferred(
        [t = std::move(t), branches = std::move(branches), l = std::move(l), s](Runtime& rt) {
            return intersection_value(rt, rt.force(t), branches, l, s);
        },
        std::move(span));
}

ThunkPtr case_arrow(Runtime& rt, ThunkPtr t, std::vector<ContractPtr> branches, Label l) {
    (void)rt;
    Span span = l.span;
    return Thunk::deferred(
        [t = std::move(t), branches = std::move(branches), l = std::move(l)](Runtime& rt) {
            return case_arrow_value(rt, rt.force(t), branches, l);
        },
        std::move(span));
}

}  // namespace blamelab
