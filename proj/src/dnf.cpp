#include "blamelab/connectives.hpp"

namespace blamelab {

namespace {

// A disjunction of conjunctions of leaves.
template <class Leaf>
using Dnf = std::vector<std::vector<Leaf>>;

template <class Leaf, class Split>
Dnf<Leaf> to_dnf(const Leaf& c, const Split& split) {
    auto [kind, parts] = split(c);
    if (kind == ContractKind::Union) {
        Dnf<Leaf> out;
        for (const auto& p : parts) {
            auto sub = to_dnf(p, split);
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }
    if (kind == ContractKind::Intersection) {
        Dnf<Leaf> out{{}};
        for (const auto& p : parts) {
            auto sub = to_dnf(p, split);
            Dnf<Leaf> next;
            for (const auto& left : out) {
                for (const auto& right : sub) {
                    auto conj = left;
                    conj.insert(conj.end(), right.begin(), right.end());
                    next.push_back(std::move(conj));
                }
            }
            out = std::move(next);
        }
        return out;
    }
    return {{c}};
}

std::pair<ContractKind, std::vector<ContractPtr>> split_contract(const ContractPtr& c) {
    if (const auto* u = c->as<Contract::Union>()) return {ContractKind::Union, u->branches};
    if (const auto* i = c->as<Contract::Intersection>()) return {ContractKind::Intersection, i->branches};
    return {ContractKind::Dyn, {}};
}

std::pair<ContractKind, std::vector<TermPtr>> split_term(const TermPtr& t) {
    if (const auto* ctor = t->as<Term::ContractCtor>()) {
        if (ctor->kind == ContractKind::Union || ctor->kind == ContractKind::Intersection) {
            return {ctor->kind, ctor->children};
        }
    }
    return {ContractKind::Dyn, {}};
}

// Right-nested binary node, matching what the parser builds.
TermPtr fold_terms(ContractKind kind, const std::vector<TermPtr>& parts) {
    TermPtr acc = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) {
        acc = make_term(Term::ContractCtor{kind, {parts[i], acc}, {}, false}, Span::cover(parts[i]->span, acc->span));
    }
    return acc;
}

}  // namespace

ContractPtr dnf_normalize(const ContractPtr& c) {
    auto dnf = to_dnf(c, split_contract);
    std::vector<ContractPtr> disjuncts;
    for (auto& conj : dnf) disjuncts.push_back(make_intersection(std::move(conj)));
    return make_union(std::move(disjuncts));
}

TermPtr dnf_normalize(const TermPtr& contract_term) {
    auto dnf = to_dnf(contract_term, split_term);
    std::vector<TermPtr> disjuncts;
    for (const auto& conj : dnf) disjuncts.push_back(fold_terms(ContractKind::Intersection, conj));
    return fold_terms(ContractKind::Union, disjuncts);
}

}  // namespace blamelab
