#include "support.hpp"

#include <doctest.h>

using namespace testing;

namespace {

std::string printed(const TermPtr& t) { return pretty_print(*t); }

}  // namespace

TEST_CASE("cse hoists a repeated subterm to its lowest common ancestor") {
    auto r = cse(parse_program("[(1 + 2) * 3, (1 + 2) * 3]"));
    CHECK(printed(r.transformed) == "let cse0 = (1 + 2) * 3 in [cse0, cse0]");
    CHECK(r.sites.size() == 2);
}

TEST_CASE("cse leaves small and unique subterms alone") {
    auto r = cse(parse_program("[x, x, 1 + 2]"));
    CHECK(r.sites.empty());
    CHECK(printed(r.transformed) == "[x, x, 1 + 2]");
}

TEST_CASE("cse respects binders") {
    auto r = cse(parse_program("[fun y => y + 1 + 1, y + 1 + 1]"));
    CHECK(r.sites.empty());
    auto shared = cse(parse_program("fun y => [y + 1 + 1, y + 1 + 1]"));
    CHECK(printed(shared.transformed) == "fun y => let cse0 = y + 1 + 1 in [cse0, cse0]");
}

TEST_CASE("cse does not hoist contracts") {
    auto r = cse(parse_program("[1 | Num -> Num -> Num, 2 | Num -> Num -> Num]"));
    CHECK(r.sites.empty());
}

TEST_CASE("inlining substitutes and beta-reduces") {
    auto r = inline_binding(parse_program("let f = fun x => x + 1 in f 2 + f 3"), "f");
    CHECK(printed(r.transformed) == "2 + 1 + (3 + 1)");
    CHECK(r.sites.size() == 2);
    CHECK_THROWS_AS(inline_binding(parse_program("1"), "g"), TransformError);
}

TEST_CASE("inlining keeps the contract on the definition") {
    auto r = inline_binding(parse_program("let f | Num -> Num = fun x => x in f 1"), "f");
    CHECK(r.transformed->is<Term::App>());
    CHECK(r.transformed->as<Term::App>()->fn->is<Term::Annot>());
}

TEST_CASE("substitution avoids capture") {
    auto t = substitute(parse_program("fun y => x + y"), "x", parse_program("y"));
    auto expected = parse_program("fun y_1 => y + y_1");
    CHECK_MESSAGE(alpha_equal(*t, *expected), printed(t));
    CHECK(free_variables(*t) == std::vector<std::string>{"y"});
}

TEST_CASE("dnf pass rewrites annotations") {
    auto r = dnf_pass(parse_program("1 | Num @& (Str @| Num)"));
    CHECK(printed(r.transformed) == "1 | Num @& Str @| Num @& Num");
}

TEST_CASE("outcome agreement") {
    CHECK(outcomes_agree(eval("1 + 1"), eval("2")));
    CHECK_FALSE(outcomes_agree(eval("1"), eval("2")));
    CHECK(outcomes_agree(eval("fun x => x"), eval("fun y => 1")));
    CHECK(outcomes_agree(eval("1 | Str"), eval("true | Num")));
    CHECK_FALSE(outcomes_agree(eval("1 | Str"), eval("1 / 0")));
    CHECK(outcomes_agree(eval("1 / 0"), eval("2 / 0")));
}

TEST_CASE("cse preserves pure programs") {
    ProgramGen gen(99);
    for (int i = 0; i < 60; ++i) {
        auto src = gen.program(5);
        auto t = parse_program(src);
        auto v = compare_behaviors(t, cse(t).transformed, Strategy::Naive);
        CHECK_MESSAGE(v.agree, src << ": " << v.description);
    }
}

TEST_CASE("cse can change a stateful union's verdict") {
    auto t = parse_program(read_file(std::string(BLAMELAB_CORPUS_DIR) + "/fig5_original.blame"));
    auto v = compare_behaviors(t, cse(t).transformed, Strategy::Stateful);
    CHECK_FALSE(v.agree);
    CHECK(v.description.rfind("diverge:", 0) == 0);
}
