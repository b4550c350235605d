#include "blamelab/contracts.hpp"
#include "blamelab/runtime.hpp"

#include <cmath>

namespace blamelab {

namespace {

using Args = std::span<const ThunkPtr>;

Value primitive(std::string name, std::size_t arity, PrimitiveFn fn) {
    return Value(std::make_shared<const Primitive>(Primitive{std::move(name), arity, std::move(fn), {}}));
}

[[noreturn]] void bad_argument(const Span& span, std::string_view prim, const Value& got, std::string_view expected,
                               int position) {
    throw CrashError(CrashKind::TypeError, span,
                     "this expression has type " + std::string(got.type_name()) + ", but " + std::string(expected) +
                         " was expected (" + std::string(prim) + ", argument " + std::to_string(position) + ")");
}

const ArrayValue& array_arg(Runtime& rt, const ThunkPtr& t, const Span& span, std::string_view prim, int position) {
    // Values are held by shared_ptr inside the thunk, so the reference stays
    // valid for the thunk's lifetime.
    Value v = rt.force(t);
    if (!v.is_array()) bad_argument(span, prim, v, "Array", position);
    return *std::get<std::shared_ptr<const ArrayValue>>(v.repr);
}

double index_arg(Runtime& rt, const ThunkPtr& t, const Span& span, std::string_view prim, int position) {
    Value v = rt.force(t);
    if (!v.is_num()) bad_argument(span, prim, v, "Num", position);
    return v.num();
}

bool bool_result(Runtime& rt, const Value& v, const Span& span, std::string_view prim) {
    if (!v.is_bool()) {
        throw CrashError(CrashKind::TypeError, span,
                         std::string(prim) + ": predicate returned " + std::string(v.type_name()) + ", expected Bool");
    }
    (void)rt;
    return v.boolean();
}

Value make_record(std::vector<std::pair<std::string, Value>> fields) {
    auto rec = std::make_shared<RecordValue>();
    for (auto& [name, v] : fields) rec->fields.emplace(name, Thunk::ready(std::move(v)));
    return Value(std::shared_ptr<const RecordValue>(std::move(rec)));
}

Value lists_module() {
    return make_record({
        {"head", primitive("lists.head", 1,
                           [](Runtime& rt, Args a, const Span& s) -> Value {
                               const auto& xs = array_arg(rt, a[0], s, "lists.head", 1);
                               if (xs.items.empty()) {
                                   throw CrashError(CrashKind::IndexOutOfRange, s, "lists.head: empty array");
                               }
                               return rt.force(xs.items.front());
                           })},
        {"tail", primitive("lists.tail", 1,
                           [](Runtime& rt, Args a, const Span& s) -> Value {
                               const auto& xs = array_arg(rt, a[0], s, "lists.tail", 1);
                               if (xs.items.empty()) {
                                   throw CrashError(CrashKind::IndexOutOfRange, s, "lists.tail: empty array");
                               }
                               auto rest = std::make_shared<ArrayValue>();
                               rest->items.assign(xs.items.begin() + 1, xs.items.end());
                               return Value(std::shared_ptr<const ArrayValue>(std::move(rest)));
                           })},
        {"cons", primitive("lists.cons", 2,
                           [](Runtime& rt, Args a, const Span& s) -> Value {
                               const auto& xs = array_arg(rt, a[1], s, "lists.cons", 2);
                               auto out = std::make_shared<ArrayValue>();
                               out->items.push_back(a[0]);
                               out->items.insert(out->items.end(), xs.items.begin(), xs.items.end());
                               return Value(std::shared_ptr<const ArrayValue>(std::move(out)));
                           })},
        {"length", primitive("lists.length", 1,
                             [](Runtime& rt, Args a, const Span& s) -> Value {
                                 return static_cast<double>(array_arg(rt, a[0], s, "lists.length", 1).items.size());
                             })},
        {"elemAt", primitive("lists.elemAt", 2,
                             [](Runtime& rt, Args a, const Span& s) -> Value {
                                 double i = index_arg(rt, a[0], s, "lists.elemAt", 1);
                                 const auto& xs = array_arg(rt, a[1], s, "lists.elemAt", 2);
                                 if (i != std::trunc(i) || i < 0 || i >= static_cast<double>(xs.items.size())) {
                                     throw CrashError(CrashKind::IndexOutOfRange, s,
                                                      "lists.elemAt: index " + format_number(i) + " out of range");
                                 }
                                 return rt.force(xs.items[static_cast<std::size_t>(i)]);
                             })},
        {"any", primitive("lists.any", 2,
                          [](Runtime& rt, Args a, const Span& s) -> Value {
                              Value pred = rt.force(a[0]);
                              const auto& xs = array_arg(rt, a[1], s, "lists.any", 2);
                              for (const auto& item : xs.items) {
                                  if (bool_result(rt, rt.apply(pred, item, s), s, "lists.any")) return true;
                              }
                              return false;
                          })},
        // Right fold: fold f [x1, x2] z = f x1 (f x2 z), accumulator built lazily.
        {"fold", primitive("lists.fold", 3,
                           [](Runtime& rt, Args a, const Span& s) -> Value {
                               Value f = rt.force(a[0]);
                               const auto& xs = array_arg(rt, a[1], s, "lists.fold", 2);
                               ThunkPtr acc = a[2];
                               for (auto it = xs.items.rbegin(); it != xs.items.rend(); ++it) {
                                   ThunkPtr item = *it;
                                   acc = Thunk::deferred(
                                       [f, item, acc, s](Runtime& rt) { return rt.apply(rt.apply(f, item, s), acc, s); },
                                       s);
                               }
                               return rt.force(acc);
                           })},
    });
}

Value num_module() {
    return make_record({
        {"isInt", primitive("num.isInt", 1,
                            [](Runtime& rt, Args a, const Span&) -> Value {
                                Value v = rt.force(a[0]);
                                return v.is_num() && std::isfinite(v.num()) && v.num() == std::trunc(v.num());
                            })},
    });
}

Value contracts_module() {
    return make_record({
        {"fromPred", primitive("contracts.fromPred", 1,
                               [](Runtime& rt, Args a, const Span& s) -> Value {
                                   Value pred = rt.force(a[0]);
                                   if (!pred.is_applicable()) bad_argument(s, "contracts.fromPred", pred, "Fun", 1);
                                   return make_flat(pred, "");
                               })},
    });
}

constexpr std::string_view kPrelude[][2] = {
    {"Positive", R"(contracts.fromPred (fun x => typeOf x == "Num" && x > 0))"},
    {"NonPositive", R"(contracts.fromPred (fun x => typeOf x == "Num" && x <= 0))"},
    {"Nat", R"(contracts.fromPred (fun x => num.isInt x && x >= 0))"},
    {"Even", R"(contracts.fromPred (fun x => num.isInt x && num.isInt (x / 2)))"},
    {"Odd", R"(contracts.fromPred (fun x => num.isInt x && num.isInt ((x - 1) / 2)))"},
};

}  // namespace

Env make_globals(Runtime& rt) {
    (void)rt;
    Env env;
    env = blamelab::bind(env, "lists", Thunk::ready(lists_module()));
    env = blamelab::bind(env, "num", Thunk::ready(num_module()));
    env = blamelab::bind(env, "contracts", Thunk::ready(contracts_module()));
    env = blamelab::bind(env, "typeOf", Thunk::ready(primitive("typeOf", 1, [](Runtime& rt, Args a, const Span&) -> Value {
                   return std::string(rt.force(a[0]).type_name());
               })));
    const Env base = env;
    for (const auto& [name, source] : kPrelude) {
        TermPtr term = parse_program(source, "<prelude>");
        env = blamelab::bind(env, std::string(name), Thunk::pending(term, base));
    }
    return env;
}

}  // namespace blamelab
