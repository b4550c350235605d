#include "support.hpp"

#include <doctest.h>

using namespace testing;

namespace {

std::string json_of(std::string_view src) {
    Outcome o = eval(src);
    REQUIRE_MESSAGE(o.is_success(), src << " => " << describe(o));
    REQUIRE(o.json);
    return *o.json;
}

CrashKind crash_of(std::string_view src) {
    Outcome o = eval(src);
    REQUIRE_MESSAGE(o.is_crash(), src << " => " << describe(o));
    return o.crash->kind;
}

}  // namespace

TEST_CASE("arithmetic, strings and comparisons") {
    CHECK(json_of("1 + 2 * 3") == "7");
    CHECK(json_of("7 / 2") == "3.5");
    CHECK(json_of("\"ab\" ++ \"cd\"") == "\"abcd\"");
    CHECK(json_of("[1 < 2, 2 <= 2, 3 > 4, 1 == 1, \"a\" != \"b\"]") == "[true,true,false,true,true]");
    CHECK(json_of("[1, 2] == [1, 2]") == "true");
    CHECK(json_of("{a = 1} == {a = 2}") == "false");
}

TEST_CASE("functions curry and partial application keeps remaining arity") {
    CHECK(json_of("let add = fun x y => x + y in let inc = add 1 in inc 41") == "42");
    CHECK(json_of("(fun x => fun y => x) 1 2") == "1");
}

TEST_CASE("evaluation is lazy and memoized") {
    CHECK(json_of("let x = 1 / 0 in 5") == "5");
    CHECK(json_of("(fun x => 2) (1 / 0)") == "2");
    CHECK(json_of("if true then 1 else 1 / 0") == "1");
    CHECK(json_of("false && (1 / 0 == 1)") == "false");

    auto program = parse_program("let x = 2 + 3 in x * x");
    const Term* bound = program->as<Term::Let>()->bound.get();
    Runtime rt;
    Value v = rt.eval(program);
    CHECK(v.num() == 25);
    CHECK(rt.evaluations_of(bound) == 1);
}

TEST_CASE("records and arrays") {
    CHECK(json_of("{b = 2, a = 1}") == R"({"a":1,"b":2})");
    CHECK(json_of("{a = {b = 3}}.a.b") == "3");
    CHECK(json_of("lists.fold (fun x acc => acc + x) [1, 2, 3] 0") == "6");
    CHECK(json_of("lists.length [1, 2, 3]") == "3");
    CHECK(json_of("lists.head [4, 5]") == "4");
    CHECK(json_of("typeOf \"x\"") == "\"Str\"");
}

TEST_CASE("crash kinds") {
    CHECK(crash_of("1 + \"a\"") == CrashKind::TypeError);
    CHECK(crash_of("1 / 0") == CrashKind::DivisionByZero);
    CHECK(crash_of("{a = 1}.b") == CrashKind::MissingField);
    CHECK(crash_of("nope") == CrashKind::UnboundVariable);
    CHECK(crash_of("lists.head []") == CrashKind::IndexOutOfRange);
    CHECK(crash_of("1 2") == CrashKind::TypeError);
    CHECK(crash_of("if 1 then 2 else 3") == CrashKind::TypeError);
}

TEST_CASE("let is not recursive") {
    CHECK(crash_of("let f = fun x => f x in f 1") == CrashKind::UnboundVariable);
}

TEST_CASE("self-dependent thunks crash with a cycle error") {
    auto program = parse_program("{a = 1}");
    Runtime rt;
    ThunkPtr self;
    self = Thunk::deferred([&](Runtime& r) { return r.force(self); });
    CHECK_THROWS_AS(rt.force(self), CrashError);
}

TEST_CASE("functions are not exportable") {
    Outcome o = eval("fun x => x");
    CHECK(o.is_success());
    CHECK_FALSE(o.json);
    CHECK(describe(o) == "success");
}

TEST_CASE("outcome descriptions and exit codes") {
    CHECK(describe(eval("[1, \"a\"]")) == R"(success([1,"a"]))");
    CHECK(describe(eval("1 | Str")) == "blame(positive)");
    CHECK(describe(eval("1 + true")) == "crash(TypeError)");
    CHECK(describe(eval("let")) == "syntax-error");
    CHECK(exit_status(eval("1")) == 0);
    CHECK(exit_status(eval("1 | Str")) == 1);
    CHECK(exit_status(eval("1 / 0")) == 2);
    CHECK(exit_status(eval("(")) == 3);
}

TEST_CASE("value arity") {
    Runtime rt;
    CHECK(value_arity(rt.eval(parse_program("fun x y z => x"))) == 3);
    CHECK(value_arity(rt.eval(parse_program("(fun x y z => x) 1"))) == 2);
}
