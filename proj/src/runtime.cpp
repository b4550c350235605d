#include "blamelab/runtime.hpp"

#include "blamelab/contracts.hpp"

#include <cmath>

namespace blamelab {

std::string_view strategy_name(Strategy s) {
    switch (s) {
    case Strategy::Naive: return "naive";
    case Strategy::Arity: return "arity";
    case Strategy::Stateful: return "stateful";
    }
    return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
    if (name == "naive") return Strategy::Naive;
    if (name == "arity") return Strategy::Arity;
    if (name == "stateful") return Strategy::Stateful;
    return std::nullopt;
}

std::string_view crash_kind_name(CrashKind kind) {
    switch (kind) {
    case CrashKind::TypeError: return "TypeError";
    case CrashKind::CycleError: return "CycleError";
    case CrashKind::DivisionByZero: return "DivisionByZero";
    case CrashKind::MissingField: return "MissingField";
    case CrashKind::UnboundVariable: return "UnboundVariable";
    case CrashKind::IndexOutOfRange: return "IndexOutOfRange";
    case CrashKind::AmbiguousUnion: return "AmbiguousUnion";
    case CrashKind::NotAnArrow: return "NotAnArrow";
    case CrashKind::ExportError: return "ExportError";
    }
    return "?";
}

std::optional<CrashKind> parse_crash_kind(std::string_view name) {
    for (auto k : {CrashKind::TypeError, CrashKind::CycleError, CrashKind::DivisionByZero, CrashKind::MissingField,
                   CrashKind::UnboundVariable, CrashKind::IndexOutOfRange, CrashKind::AmbiguousUnion,
                   CrashKind::NotAnArrow, CrashKind::ExportError}) {
        if (crash_kind_name(k) == name) return k;
    }
    return std::nullopt;
}

Env bind(Env env, std::string name, ThunkPtr value) {
    return std::make_shared<const EnvNode>(EnvNode{std::move(name), std::move(value), std::move(env)});
}

ThunkPtr lookup(const Env& env, std::string_view name) {
    for (const EnvNode* n = env.get(); n; n = n->next.get()) {
        if (n->name == name) return n->value;
    }
    return nullptr;
}

bool Value::is_applicable() const {
    return std::holds_alternative<std::shared_ptr<const Closure>>(repr) ||
           std::holds_alternative<std::shared_ptr<const Primitive>>(repr) ||
           std::holds_alternative<std::shared_ptr<const GuardedFn>>(repr);
}

std::string_view Value::type_name() const {
    if (is_num()) return "Num";
    if (is_str()) return "Str";
    if (is_bool()) return "Bool";
    if (is_null()) return "Null";
    if (is_array()) return "Array";
    if (is_record()) return "Record";
    if (is_contract()) return "Contract";
    return "Fun";
}

std::size_t value_arity(const Value& v) {
    if (const auto* c = std::get_if<std::shared_ptr<const Closure>>(&v.repr)) return (*c)->params.size();
    if (const auto* g = std::get_if<std::shared_ptr<const GuardedFn>>(&v.repr)) return value_arity((*g)->inner);
    if (std::holds_alternative<std::shared_ptr<const Primitive>>(v.repr)) return 1;
    return 0;
}

ThunkPtr Thunk::pending(TermPtr term, Env env) {
    return ThunkPtr(new Thunk(Pending{std::move(term), std::move(env)}));
}

ThunkPtr Thunk::deferred(std::function<Value(Runtime&)> compute, Span span) {
    return ThunkPtr(new Thunk(Deferred{std::move(compute), std::move(span)}));
}

ThunkPtr Thunk::ready(Value v) { return ThunkPtr(new Thunk(Done{std::move(v)})); }

const Value* Thunk::value_if_ready() const {
    const auto* d = std::get_if<Done>(&state_);
    return d ? &d->value : nullptr;
}

Runtime::Runtime(Strategy strategy) : strategy_(strategy) {
    auto type_test = [](std::string name, std::string_view type) {
        auto fn = [type](Runtime& rt, std::span<const ThunkPtr> args, const Span&) -> Value {
            return rt.force(args[0]).type_name() == type;
        };
        return Value(std::make_shared<const Primitive>(Primitive{"is" + name, 1, fn, {}}));
    };
    num_ = make_flat(type_test("Num", "Num"), "Num");
    str_ = make_flat(type_test("Str", "Str"), "Str");
    bool_ = make_flat(type_test("Bool", "Bool"), "Bool");
    dyn_ = make_dyn();
    globals_ = make_globals(*this);
}

ContractPtr Runtime::builtin_contract(ContractKind kind) const {
    switch (kind) {
    case ContractKind::Num: return num_;
    case ContractKind::Str: return str_;
    case ContractKind::Bool: return bool_;
    case ContractKind::Dyn: return dyn_;
    default: return nullptr;
    }
}

std::uint64_t Runtime::evaluations_of(const Term* term) const {
    auto it = term_evaluations_.find(term);
    return it == term_evaluations_.end() ? 0 : it->second;
}

Value Runtime::force(const ThunkPtr& thunk) {
    auto& state = thunk->state_;
    if (auto* done = std::get_if<Thunk::Done>(&state)) return done->value;
    if (auto* failed = std::get_if<Thunk::Failed>(&state)) std::rethrow_exception(failed->error);
    if (auto* busy = std::get_if<Thunk::InProgress>(&state)) {
        throw CrashError(CrashKind::CycleError, busy->span, "infinite recursion: value depends on itself");
    }

    ++force_count_;
    ++thunk->evaluations_;
    try {
        Value result;
        if (auto* p = std::get_if<Thunk::Pending>(&state)) {
            Thunk::Pending work = std::move(*p);
            ++term_evaluations_[work.term.get()];
            state = Thunk::InProgress{work.term->span};
            result = eval(work.term, work.env);
        } else {
            auto work = std::move(std::get<Thunk::Deferred>(state));
            state = Thunk::InProgress{work.span};
            result = work.compute(*this);
        }
        state = Thunk::Done{result};
        return result;
    } catch (...) {
        state = Thunk::Failed{std::current_exception()};
        throw;
    }
}

void Runtime::deep_force(const Value& v) {
    if (v.is_array()) {
        for (const auto& item : v.array().items) deep_force(force(item));
    } else if (v.is_record()) {
        for (const auto& [name, field] : v.record().fields) deep_force(force(field));
    }
}

ContractPtr Runtime::eval_contract(const TermPtr& term, const Env& env) {
    Value v = eval(term, env);
    if (!v.is_contract()) {
        throw CrashError(CrashKind::TypeError, term->span,
                         "this expression has type " + std::string(v.type_name()) + ", but a contract was expected");
    }
    return v.contract();
}

Value Runtime::apply(const Value& fn, ThunkPtr arg, const Span& call_site) {
    if (const auto* c = std::get_if<std::shared_ptr<const Closure>>(&fn.repr)) {
        const Closure& clo = **c;
        Env env = bind(clo.env, clo.params.front(), std::move(arg));
        if (clo.params.size() > 1) {
            std::vector<std::string> rest(clo.params.begin() + 1, clo.params.end());
            return Value(std::make_shared<const Closure>(Closure{std::move(rest), clo.body, env, clo.declared_arity}));
        }
        return eval(clo.body, env);
    }
    if (const auto* p = std::get_if<std::shared_ptr<const Primitive>>(&fn.repr)) {
        Primitive next = **p;
        next.args.push_back(std::move(arg));
        if (next.args.size() == next.arity) return next.fn(*this, next.args, call_site);
        return Value(std::make_shared<const Primitive>(std::move(next)));
    }
    if (const auto* g = std::get_if<std::shared_ptr<const GuardedFn>>(&fn.repr)) {
        CallSiteScope scope(*this, call_site);
        return (*g)->guard->call(*this, (*g)->inner, std::move(arg), call_site);
    }
    throw CrashError(CrashKind::TypeError, call_site,
                     "this expression has type " + std::string(fn.type_name()) + ", but a function was expected");
}

namespace {

[[noreturn]] void type_error(const Span& span, const Value& got, std::string_view expected, std::string_view what) {
    throw CrashError(CrashKind::TypeError, span,
                     "this expression has type " + std::string(got.type_name()) + ", but " + std::string(expected) +
                         " was expected (" + std::string(what) + ")");
}

}  // namespace

Value Runtime::eval_binop(const Term::BinOp& op, const Span& span, const Env& env) {
    std::string_view sym = binary_op_symbol(op.op);
    if (op.op == BinaryOp::And || op.op == BinaryOp::Or) {
        Value lhs = eval(op.lhs, env);
        if (!lhs.is_bool()) type_error(op.lhs->span, lhs, "Bool", std::string(sym) + ", 1st argument");
        if (lhs.boolean() == (op.op == BinaryOp::Or)) return lhs;
        Value rhs = eval(op.rhs, env);
        if (!rhs.is_bool()) type_error(op.rhs->span, rhs, "Bool", std::string(sym) + ", 2nd argument");
        return rhs;
    }
    Value lhs = eval(op.lhs, env);
    Value rhs = eval(op.rhs, env);
    if (op.op == BinaryOp::Eq || op.op == BinaryOp::Neq) {
        bool eq = values_equal(*this, lhs, rhs, span);
        return op.op == BinaryOp::Eq ? eq : !eq;
    }
    if (op.op == BinaryOp::Concat) {
        if (lhs.is_str()) {
            if (!rhs.is_str()) type_error(span, rhs, "Str", "++, 2nd argument");
            return lhs.str() + rhs.str();
        }
        if (lhs.is_array()) {
            if (!rhs.is_array()) type_error(span, rhs, "Array", "++, 2nd argument");
            auto joined = std::make_shared<ArrayValue>(lhs.array());
            for (const auto& item : rhs.array().items) joined->items.push_back(item);
            return Value(std::shared_ptr<const ArrayValue>(std::move(joined)));
        }
        type_error(span, lhs, "Str", "++, 1st argument");
    }
    if (!lhs.is_num()) type_error(span, lhs, "Num", std::string(sym) + ", 1st argument");
    if (!rhs.is_num()) type_error(span, rhs, "Num", std::string(sym) + ", 2nd argument");
    double a = lhs.num(), b = rhs.num();
    switch (op.op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div:
        if (b == 0) throw CrashError(CrashKind::DivisionByZero, span, "division by zero");
        return a / b;
    case BinaryOp::Lt: return a < b;
    case BinaryOp::Le: return a <= b;
    case BinaryOp::Gt: return a > b;
    case BinaryOp::Ge: return a >= b;
    default: break;
    }
    throw CrashError(CrashKind::TypeError, span, "unsupported operator");
}

Value Runtime::eval(const TermPtr& term, const Env& env) {
    const Term& t = *term;
    return std::visit(
        [&](const auto& n) -> Value {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Term::NumLit>) {
                return n.value;
            } else if constexpr (std::is_same_v<N, Term::StrLit>) {
                return n.value;
            } else if constexpr (std::is_same_v<N, Term::BoolLit>) {
                return n.value;
            } else if constexpr (std::is_same_v<N, Term::NullLit>) {
                return Null{};
            } else if constexpr (std::is_same_v<N, Term::Array>) {
                auto arr = std::make_shared<ArrayValue>();
                for (const auto& item : n.items) arr->items.push_back(Thunk::pending(item, env));
                return Value(std::shared_ptr<const ArrayValue>(std::move(arr)));
            } else if constexpr (std::is_same_v<N, Term::Record>) {
                auto rec = std::make_shared<RecordValue>();
                for (const auto& f : n.fields) rec->fields.emplace(f.name, Thunk::pending(f.value, env));
                return Value(std::shared_ptr<const RecordValue>(std::move(rec)));
            } else if constexpr (std::is_same_v<N, Term::FieldAccess>) {
                Value r = eval(n.record, env);
                if (!r.is_record()) type_error(n.record->span, r, "Record", "field access ." + n.field);
                auto it = r.record().fields.find(n.field);
                if (it == r.record().fields.end()) {
                    throw CrashError(CrashKind::MissingField, t.span, "missing field '" + n.field + "'");
                }
                return force(it->second);
            } else if constexpr (std::is_same_v<N, Term::Fun>) {
                return Value(std::make_shared<const Closure>(Closure{n.params, n.body, env, n.params.size()}));
            } else if constexpr (std::is_same_v<N, Term::Let>) {
                ThunkPtr bound = Thunk::pending(n.bound, env);
                if (n.contract) {
                    ContractPtr c = eval_contract(n.contract, env);
                    bound = attach(*this, bound, c, make_label(n.contract->span, c));
                }
                return eval(n.body, bind(env, n.name, bound));
            } else if constexpr (std::is_same_v<N, Term::If>) {
                Value c = eval(n.cond, env);
                if (!c.is_bool()) type_error(n.cond->span, c, "Bool", "if condition");
                return eval(c.boolean() ? n.then_branch : n.else_branch, env);
            } else if constexpr (std::is_same_v<N, Term::App>) {
                Value fn = eval(n.fn, env);
                return apply(fn, Thunk::pending(n.arg, env), t.span);
            } else if constexpr (std::is_same_v<N, Term::BinOp>) {
                return eval_binop(n, t.span, env);
            } else if constexpr (std::is_same_v<N, Term::Annot>) {
                ContractPtr c = eval_contract(n.contract, env);
                return force(attach(*this, Thunk::pending(n.term, env), c, make_label(n.contract->span, c)));
            } else if constexpr (std::is_same_v<N, Term::Var>) {
                ThunkPtr slot = lookup(env, n.name);
                if (!slot) throw CrashError(CrashKind::UnboundVariable, t.span, "unbound identifier '" + n.name + "'");
                Value v = force(slot);
                if (v.is_contract()) return with_name(v.contract(), n.name);
                return v;
            } else if constexpr (std::is_same_v<N, Term::ContractCtor>) {
                switch (n.kind) {
                case ContractKind::Num:
                case ContractKind::Str:
                case ContractKind::Bool:
                case ContractKind::Dyn: return builtin_contract(n.kind);
                case ContractKind::Arrow:
                    return make_arrow(eval_contract(n.children[0], env), eval_contract(n.children[1], env));
                case ContractKind::Union:
                case ContractKind::Intersection:
                case ContractKind::CaseArrow: {
                    std::vector<ContractPtr> parts;
                    for (const auto& c : n.children) parts.push_back(eval_contract(c, env));
                    if (n.kind == ContractKind::Union) return make_union(std::move(parts));
                    if (n.kind == ContractKind::Intersection) return make_intersection(std::move(parts));
                    return make_case_arrow(std::move(parts));
                }
                case ContractKind::RecordOf: {
                    std::vector<std::pair<std::string, ContractPtr>> fields;
                    for (std::size_t i = 0; i < n.children.size(); ++i) {
                        fields.emplace_back(n.field_names[i], eval_contract(n.children[i], env));
                    }
                    return make_record_of(std::move(fields), !n.open);
                }
                case ContractKind::ArrayOf: return make_array_of(eval_contract(n.children[0], env));
                }
                return Null{};
            }
        },
        t.node);
}

bool values_equal(Runtime& rt, const Value& a, const Value& b, const Span& span) {
    if (a.is_applicable() || b.is_applicable() || a.is_contract() || b.is_contract()) {
        const Value& bad = a.is_applicable() || a.is_contract() ? a : b;
        throw CrashError(CrashKind::TypeError, span,
                         "cannot compare values of type " + std::string(bad.type_name()) + " for equality");
    }
    if (a.repr.index() != b.repr.index()) return false;
    if (a.is_num()) return a.num() == b.num();
    if (a.is_str()) return a.str() == b.str();
    if (a.is_bool()) return a.boolean() == b.boolean();
    if (a.is_null()) return true;
    if (a.is_array()) {
        const auto& xs = a.array().items;
        const auto& ys = b.array().items;
        if (xs.size() != ys.size()) return false;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!values_equal(rt, rt.force(xs[i]), rt.force(ys[i]), span)) return false;
        }
        return true;
    }
    const auto& xs = a.record().fields;
    const auto& ys = b.record().fields;
    if (xs.size() != ys.size()) return false;
    for (auto ix = xs.begin(), iy = ys.begin(); ix != xs.end(); ++ix, ++iy) {
        if (ix->first != iy->first) return false;
        if (!values_equal(rt, rt.force(ix->second), rt.force(iy->second), span)) return false;
    }
    return true;
}

std::string render_value(const Value& v, int max_depth) {
    if (v.is_num()) return format_number(v.num());
    if (v.is_str()) return quote_string(v.str());
    if (v.is_bool()) return v.boolean() ? "true" : "false";
    if (v.is_null()) return "null";
    if (v.is_contract()) return "<contract " + render_contract(*v.contract()) + ">";
    if (v.is_applicable()) return "<func>";
    if (max_depth <= 0) return "...";
    auto render_thunk = [&](const ThunkPtr& t) {
        const Value* inner = t->value_if_ready();
        return inner ? render_value(*inner, max_depth - 1) : std::string("…");
    };
    std::string out;
    if (v.is_array()) {
        out = "[";
        bool first = true;
        for (const auto& item : v.array().items) {
            if (!first) out += ", ";
            first = false;
            out += render_thunk(item);
        }
        return out + "]";
    }
    out = "{";
    bool first = true;
    for (const auto& [name, field] : v.record().fields) {
        if (!first) out += ", ";
        first = false;
        out += name + " = " + render_thunk(field);
    }
    return out + "}";
}

}  // namespace blamelab
