#pragma once

// Call-by-need evaluator: values in weak-head normal form, memoizing
// thunks, persistent environments and the primitive library.

#include "blamelab/syntax.hpp"

#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace blamelab {

/// How union and intersection contracts are enforced. Fixed for a run.
enum class Strategy { Naive, Arity, Stateful };

std::string_view strategy_name(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

struct Contract;
using ContractPtr = std::shared_ptr<const Contract>;

class Thunk;
using ThunkPtr = std::shared_ptr<Thunk>;

class Runtime;
class Guard;
struct Value;

struct EnvNode;
using Env = std::shared_ptr<const EnvNode>;

struct EnvNode {
    std::string name;
    ThunkPtr value;
    Env next;
};

Env bind(Env env, std::string name, ThunkPtr value);
ThunkPtr lookup(const Env& env, std::string_view name);

struct Null {};

struct ArrayValue {
    std::vector<ThunkPtr> items;
};

struct RecordValue {
    std::map<std::string, ThunkPtr> fields;
};

struct Closure {
    std::vector<std::string> params;  // parameters still awaiting arguments
    TermPtr body;
    Env env;
    std::size_t declared_arity;  // parameter count of the original `fun`
};

using PrimitiveFn = std::function<Value(Runtime&, std::span<const ThunkPtr>, const Span&)>;

struct Primitive {
    std::string name;
    std::size_t arity;
    PrimitiveFn fn;
    std::vector<ThunkPtr> args;
};

struct GuardedFn;

struct Value {
    using Repr = std::variant<double, std::string, bool, Null, std::shared_ptr<const ArrayValue>,
                              std::shared_ptr<const RecordValue>, std::shared_ptr<const Closure>,
                              std::shared_ptr<const Primitive>, std::shared_ptr<const GuardedFn>, ContractPtr>;
    Repr repr;

    Value() : repr(Null{}) {}
    Value(double d) : repr(d) {}
    Value(int i) : repr(static_cast<double>(i)) {}
    Value(std::string s) : repr(std::move(s)) {}
    Value(const char* s) : repr(std::string(s)) {}
    Value(bool b) : repr(b) {}
    Value(Null n) : repr(n) {}
    Value(std::shared_ptr<const ArrayValue> a) : repr(std::move(a)) {}
    Value(std::shared_ptr<const RecordValue> r) : repr(std::move(r)) {}
    Value(std::shared_ptr<const Closure> c) : repr(std::move(c)) {}
    Value(std::shared_ptr<const Primitive> p) : repr(std::move(p)) {}
    Value(std::shared_ptr<const GuardedFn> g) : repr(std::move(g)) {}
    Value(ContractPtr c) : repr(std::move(c)) {}

    bool is_num() const { return std::holds_alternative<double>(repr); }
    bool is_str() const { return std::holds_alternative<std::string>(repr); }
    bool is_bool() const { return std::holds_alternative<bool>(repr); }
    bool is_null() const { return std::holds_alternative<Null>(repr); }
    bool is_array() const { return std::holds_alternative<std::shared_ptr<const ArrayValue>>(repr); }
    bool is_record() const { return std::holds_alternative<std::shared_ptr<const RecordValue>>(repr); }
    bool is_contract() const { return std::holds_alternative<ContractPtr>(repr); }
    bool is_applicable() const;

    double num() const { return std::get<double>(repr); }
    const std::string& str() const { return std::get<std::string>(repr); }
    bool boolean() const { return std::get<bool>(repr); }
    const ArrayValue& array() const { return *std::get<std::shared_ptr<const ArrayValue>>(repr); }
    const RecordValue& record() const { return *std::get<std::shared_ptr<const RecordValue>>(repr); }
    const ContractPtr& contract() const { return std::get<ContractPtr>(repr); }

    /// "Num", "Str", "Bool", "Null", "Array", "Record", "Fun" or "Contract".
    std::string_view type_name() const;
};

/// Runtime protocol installed around a function by a higher-order contract.
class Guard {
public:
    virtual ~Guard() = default;
    virtual Value call(Runtime& rt, const Value& inner, ThunkPtr arg, const Span& call_site) const = 0;
};

struct GuardedFn {
    Value inner;
    std::shared_ptr<const Guard> guard;
};

/// Number of arguments the value accepts before running its body. Closures
/// report their remaining parameters, primitives report 1, guarded functions
/// report their inner function's arity.
std::size_t value_arity(const Value& v);

enum class CrashKind {
    TypeError,
    CycleError,
    DivisionByZero,
    MissingField,
    UnboundVariable,
    IndexOutOfRange,
    AmbiguousUnion,
    NotAnArrow,
    ExportError,
};

std::string_view crash_kind_name(CrashKind kind);
std::optional<CrashKind> parse_crash_kind(std::string_view name);

struct Crash {
    CrashKind kind;
    Span span;
    std::string message;
};

/// Dynamic error not mediated by a contract.
class CrashError : public std::exception {
public:
    explicit CrashError(Crash crash) : crash_(std::move(crash)) {}
    CrashError(CrashKind kind, Span span, std::string message) : crash_{kind, std::move(span), std::move(message)} {}
    const Crash& crash() const { return crash_; }
    const char* what() const noexcept override { return crash_.message.c_str(); }

private:
    Crash crash_;
};

class Thunk {
public:
    static ThunkPtr pending(TermPtr term, Env env);
    static ThunkPtr deferred(std::function<Value(Runtime&)> compute, Span span = {});
    static ThunkPtr ready(Value v);

    bool is_evaluated() const { return std::holds_alternative<Done>(state_); }
    const Value* value_if_ready() const;
    /// Times this thunk's computation actually ran (0 or 1).
    std::uint64_t evaluations() const { return evaluations_; }

private:
    friend class Runtime;
    struct Pending {
        TermPtr term;
        Env env;
    };
    struct Deferred {
        std::function<Value(Runtime&)> compute;
        Span span;
    };
    struct InProgress {
        Span span;
    };
    struct Done {
        Value value;
    };
    struct Failed {
        std::exception_ptr error;
    };
    std::variant<Pending, Deferred, InProgress, Done, Failed> state_;
    std::uint64_t evaluations_ = 0;

    explicit Thunk(decltype(state_) s) : state_(std::move(s)) {}
};

/// Interpreter state for one run: strategy, globals, force counters and the
/// stack of guarded call sites. Not shareable across concurrent runs.
class Runtime {
public:
    explicit Runtime(Strategy strategy = Strategy::Stateful);

    Strategy strategy() const { return strategy_; }
    const Env& globals() const { return globals_; }

    Value eval(const TermPtr& term, const Env& env);
    Value eval(const TermPtr& term) { return eval(term, globals_); }
    Value force(const ThunkPtr& thunk);
    Value apply(const Value& fn, ThunkPtr arg, const Span& call_site);

    /// Forces every thunk reachable through arrays and records.
    void deep_force(const Value& v);

    ContractPtr eval_contract(const TermPtr& term, const Env& env);

    std::uint64_t force_count() const { return force_count_; }
    std::uint64_t evaluations_of(const Term* term) const;

    /// Innermost call site of a guarded application, if any.
    const Span* current_call_site() const { return call_sites_.empty() ? nullptr : &call_sites_.back(); }

    ContractPtr builtin_contract(ContractKind kind) const;

private:
    friend class CallSiteScope;
    Value eval_binop(const Term::BinOp& op, const Span& span, const Env& env);

    Strategy strategy_;
    Env globals_;
    std::uint64_t force_count_ = 0;
    std::unordered_map<const Term*, std::uint64_t> term_evaluations_;
    std::vector<Span> call_sites_;
    ContractPtr num_, str_, bool_, dyn_;
};

class CallSiteScope {
public:
    CallSiteScope(Runtime& rt, const Span& span) : rt_(rt) { rt_.call_sites_.push_back(span); }
    ~CallSiteScope() { rt_.call_sites_.pop_back(); }
    CallSiteScope(const CallSiteScope&) = delete;
    CallSiteScope& operator=(const CallSiteScope&) = delete;

private:
    Runtime& rt_;
};

/// Global environment: `lists`, `num`, `contracts`, `typeOf` and the
/// prelude contracts (Positive, NonPositive, Nat, Even, Odd).
Env make_globals(Runtime& rt);

/// Structural equality of fully forced first-order values.
bool values_equal(Runtime& rt, const Value& a, const Value& b, const Span& span);

/// Human-readable rendering that never forces thunks; unevaluated parts
/// print as `…` and nesting beyond `max_depth` as `...`.
std::string render_value(const Value& v, int max_depth = 8);

/// Deep-forces `v` and serializes it as compact JSON with sorted keys.
/// Throws CrashError(ExportError) if a function or contract is reachable.
std::string export_json(Runtime& rt, const Value& v);

}  // namespace blamelab
