#pragma once

// First-class contracts, blame labels and the wrappers for flat, arrow,
// record and array contracts.

#include "blamelab/runtime.hpp"

#include <optional>
#include <string>
#include <vector>

namespace blamelab {

struct ViabilityCell;

struct Contract {
    struct Flat {
        Value predicate;
        std::string name;
    };
    struct Arrow {
        ContractPtr domain;
        ContractPtr codomain;
    };
    struct RecordOf {
        std::vector<std::pair<std::string, ContractPtr>> fields;
        bool exhaustive = true;
    };
    struct ArrayOf {
        ContractPtr element;
    };
    struct Union {
        std::vector<ContractPtr> branches;
    };
    struct Intersection {
        std::vector<ContractPtr> branches;
    };
    struct CaseArrow {
        std::vector<ContractPtr> branches;
    };
    struct Dyn {};

    using Node = std::variant<Flat, Arrow, RecordOf, ArrayOf, Union, Intersection, CaseArrow, Dyn>;
    Node node;

    template <class T>
    const T* as() const { return std::get_if<T>(&node); }
    template <class T>
    bool is() const { return std::holds_alternative<T>(node); }
};

ContractPtr make_flat(Value predicate, std::string name);
ContractPtr make_arrow(ContractPtr domain, ContractPtr codomain);
/// Nested unions (resp. intersections) are spliced into one n-ary node.
ContractPtr make_union(std::vector<ContractPtr> branches);
ContractPtr make_intersection(std::vector<ContractPtr> branches);
ContractPtr make_case_arrow(std::vector<ContractPtr> branches);
ContractPtr make_record_of(std::vector<std::pair<std::string, ContractPtr>> fields, bool exhaustive);
ContractPtr make_array_of(ContractPtr element);
ContractPtr make_dyn();

/// Flat contract carrying a new display name, or `c` itself otherwise.
ContractPtr with_name(const ContractPtr& c, const std::string& name);

std::string render_contract(const Contract& c);

enum class Polarity { Positive, Negative };

struct PathStep {
    enum class Kind { Domain, Codomain, UnionBranch, IntersectionBranch, CaseBranch, Field, Element };
    Kind kind;
    std::size_t index = 0;  // 0-based branch index
    std::string field;

    static PathStep domain() { return {Kind::Domain, 0, {}}; }
    static PathStep codomain() { return {Kind::Codomain, 0, {}}; }
    static PathStep union_branch(std::size_t i) { return {Kind::UnionBranch, i, {}}; }
    static PathStep intersection_branch(std::size_t i) { return {Kind::IntersectionBranch, i, {}}; }
    static PathStep case_branch(std::size_t i) { return {Kind::CaseBranch, i, {}}; }
    static PathStep field_step(std::string name) { return {Kind::Field, 0, std::move(name)}; }
    static PathStep element() { return {Kind::Element, 0, {}}; }

    bool operator==(const PathStep&) const = default;
};

std::string render_step(const PathStep& step);

/// Blame provenance. `cell`/`branch` are set on labels below a union branch
/// under the stateful strategy: a positive failure there narrows the union
/// instead of blaming directly.
struct Label {
    Span span;
    Polarity polarity = Polarity::Positive;
    std::vector<PathStep> path;
    ContractPtr contract;
    std::shared_ptr<ViabilityCell> cell;
    std::size_t branch = 0;

    Label extended(PathStep step) const;
    Label in_cell(std::shared_ptr<ViabilityCell> c, std::size_t b) const;
    std::size_t domain_steps() const;
};

Label make_label(Span span, ContractPtr contract);
Label negate(const Label& l);

struct BlameReport {
    Label label;
    std::string witness;
    std::string message;
    std::optional<Span> call_site;
    /// Failures of the individual union branches, when the blame comes from
    /// a union whose branches all died.
    std::vector<BlameReport> branch_failures;
};

class BlameError : public std::exception {
public:
    explicit BlameError(BlameReport report) : report_(std::move(report)) {}
    const BlameReport& report() const { return report_; }
    const char* what() const noexcept override { return report_.message.c_str(); }

private:
    BlameReport report_;
};

std::string_view party_message(Polarity p);

BlameReport make_report(const Runtime& rt, const Label& l, std::string witness);

/// Raises blame on `l`. Returns normally only when `l` belongs to a live
/// union branch that absorbs the failure (the branch dies instead).
void raise_blame(Runtime& rt, const Label& l, std::string witness);
void raise_report(Runtime& rt, BlameReport report);

/// Fixed multi-line rendering: party line, location and span excerpt, path
/// line, witness line, then one line per recorded branch failure.
std::string render_report(const BlameReport& report, bool color = false);

/// Lazily attaches `c` to `t`; the returned thunk checks on force.
ThunkPtr attach(Runtime& rt, ThunkPtr t, ContractPtr c, Label l);

/// Value-level enforcement of `c` on an already forced value.
Value check_value(Runtime& rt, const Value& v, const ContractPtr& c, const Label& l);

Value check_flat(Runtime& rt, const Value& pred, const Value& v, const Label& l);
Value wrap_arrow(Runtime& rt, const Value& fn, ContractPtr dom, ContractPtr cod, const Label& l);
Value wrap_record(Runtime& rt, const Value& v, const Contract::RecordOf& rc, const Label& l);
Value wrap_array(Runtime& rt, const Value& v, const ContractPtr& element, const Label& l);

/// Eager part of a contract: predicates for flat contracts, shape tests for
/// everything else. Never installs wrappers.
bool accepts_eagerly(Runtime& rt, const ContractPtr& c, const Value& v);

/// True for flat contracts, Dyn, and connectives built only from those.
bool is_first_order(const Contract& c);

}  // namespace blamelab
