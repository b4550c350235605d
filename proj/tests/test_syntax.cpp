#include "support.hpp"

#include <doctest.h>

using namespace testing;

TEST_CASE("tokens carry kind, text and position") {
    auto toks = tokenize("let x = 1.5 in \"a\\nb\" @| ..");
    REQUIRE(toks.size() == 9);
    CHECK(toks[0].kind == TokenKind::KwLet);
    CHECK(toks[1].kind == TokenKind::Identifier);
    CHECK(toks[1].text == "x");
    CHECK(toks[3].number == 1.5);
    CHECK(toks[5].text == "a\nb");
    CHECK(toks[6].kind == TokenKind::AtPipe);
    CHECK(toks[7].kind == TokenKind::DotDot);
    CHECK(toks[8].kind == TokenKind::Eof);
    CHECK(toks[3].span.begin.column == 9);
}

TEST_CASE("comments and whitespace are skipped") {
    auto toks = tokenize("# note\n  1 # trailing\n");
    REQUIRE(toks.size() == 2);
    CHECK(toks[0].span.begin.line == 2);
    CHECK(toks[0].span.begin.column == 3);
}

TEST_CASE("unterminated string is a lex error") {
    CHECK_THROWS_AS(tokenize("\"abc"), LexError);
    CHECK_THROWS_AS(tokenize("1 $ 2"), LexError);
}

TEST_CASE("parse errors report the offending token") {
    try {
        parse_program("let x = in 1");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.span().begin.column == 9);
        CHECK(!e.expected().empty());
    }
    CHECK_THROWS_AS(parse_program("(1 + 2"), ParseError);
    CHECK_THROWS_AS(parse_program("1 2 )"), ParseError);
}

TEST_CASE("application binds tighter than arithmetic, arrows associate right") {
    auto t = parse_program("f 1 + g 2");
    const auto* add = t->as<Term::BinOp>();
    REQUIRE(add);
    CHECK(add->op == BinaryOp::Add);
    CHECK(add->lhs->is<Term::App>());

    auto c = parse_program("Num -> Num -> Str");
    const auto* arrow = c->as<Term::ContractCtor>();
    REQUIRE(arrow);
    CHECK(arrow->kind == ContractKind::Arrow);
    CHECK(arrow->children[1]->as<Term::ContractCtor>()->kind == ContractKind::Arrow);
}

TEST_CASE("union binds looser than intersection and arrow") {
    auto c = parse_program("Num -> Num @| Str @& Bool");
    const auto* u = c->as<Term::ContractCtor>();
    REQUIRE(u);
    CHECK(u->kind == ContractKind::Union);
    CHECK(u->children[0]->as<Term::ContractCtor>()->kind == ContractKind::Arrow);
    CHECK(u->children[1]->as<Term::ContractCtor>()->kind == ContractKind::Intersection);
}

TEST_CASE("annotated let desugars into an annotation") {
    auto t = parse_program("let x | Num = 1 in x");
    const auto* let = t->as<Term::Let>();
    REQUIRE(let);
    CHECK(let->bound->is<Term::Annot>());
    CHECK_FALSE(let->contract);
}

TEST_CASE("application span covers the closing paren") {
    auto t = parse_program("f (g 1)");
    CHECK(t->span.text() == "f (g 1)");
}

TEST_CASE("pretty printing round-trips") {
    for (const char* src : {
             "let f = fun x y => x + y * 2 in f 1 2",
             "{a = 1, b = [1, \"s\", true, null]}.a",
             "if 1 < 2 && true then \"a\" ++ \"b\" else \"c\"",
             "(fun x => x) | (Num -> Num) @& (Str -> Str)",
             "f | Num -> Num @| Str -> Str",
             "x | {a | Num, ..}",
             "x | List (Num @| Str)",
             "g | case [Num -> Num, Str -> Str]",
             "1 - (2 - 3)",
             "(f 1) 2 - -1",
         }) {
        auto t = parse_program(src);
        std::string printed = pretty_print(*t);
        auto again = parse_program(printed);
        CHECK_MESSAGE(alpha_equal(*t, *again), src << " printed as " << printed);
        CHECK(pretty_print(*again) == printed);
    }
}

TEST_CASE("numbers and strings format canonically") {
    CHECK(format_number(3) == "3");
    CHECK(format_number(-0.5) == "-0.5");
    CHECK(quote_string("a\"b\n") == "\"a\\\"b\\n\"");
}

TEST_CASE("structural helpers") {
    auto t = parse_program("let y = 1 in fun x => x + y + z");
    CHECK(free_variables(*t) == std::vector<std::string>{"z"});
    CHECK(term_size(*parse_program("1 + 2")) == 3);
    CHECK(alpha_equal(*parse_program("fun a => a"), *parse_program("fun b => b")));
    CHECK_FALSE(alpha_equal(*parse_program("fun a => z"), *parse_program("fun b => b")));
    auto kids = children(*parse_program("[1, 2, 3]"));
    CHECK(kids.size() == 3);
}
