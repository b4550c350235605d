#pragma once

// Union, intersection and case contracts under the three strategies, the
// shared viability state of stateful unions, and DNF rewriting.

#include "blamelab/contracts.hpp"

#include <optional>
#include <vector>

namespace blamelab {

/// Per-attachment state of a stateful union: which branches are still
/// viable, and the failures that killed the others.
struct ViabilityCell {
    enum class Kind { Union, Intersection };
    Kind kind;
    std::vector<bool> alive;
    std::vector<std::vector<BlameReport>> witnesses;
    Label owner;

    ViabilityCell(Kind k, std::size_t branches, Label owner_label)
        : kind(k), alive(branches, true), witnesses(branches), owner(std::move(owner_label)) {}

    std::size_t alive_count() const;
};

/// Length of the right spine of arrows at the root of `c`.
std::size_t contract_arity(const Contract& c);

ThunkPtr check_union(Runtime& rt, ThunkPtr t, std::vector<ContractPtr> branches, Label l, Strategy s);
ThunkPtr check_intersection(Runtime& rt, ThunkPtr t, std::vector<ContractPtr> branches, Label l, Strategy s);
ThunkPtr case_arrow(Runtime& rt, ThunkPtr t, std::vector<ContractPtr> branches, Label l);

Value union_value(Runtime& rt, const Value& v, const std::vector<ContractPtr>& branches, const Label& l, Strategy s);
Value intersection_value(Runtime& rt, const Value& v, const std::vector<ContractPtr>& branches, const Label& l,
                         Strategy s);
Value case_arrow_value(Runtime& rt, const Value& v, const std::vector<ContractPtr>& branches, const Label& l);

/// Kills branch `i`, recording `witness`. Returns the blame for the owner
/// label iff no branch is left alive. Killing a dead branch is a no-op.
std::optional<BlameReport> mark_branch_dead(ViabilityCell& cell, std::size_t i, BlameReport witness);

/// Rewrites nested unions and intersections into a union of intersections
/// of non-connective contracts, distributing intersection over union.
ContractPtr dnf_normalize(const ContractPtr& c);
TermPtr dnf_normalize(const TermPtr& contract_term);

}  // namespace blamelab
