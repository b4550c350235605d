#pragma once

// Shared fixtures: a pool of values with host-side predicate oracles, random
// contract trees over flat leaves, and random contract-free programs.

#include "blamelab/cli.hpp"
#include "blamelab/connectives.hpp"
#include "blamelab/interpreter.hpp"
#include "blamelab/transform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#ifndef BLAMELAB_CORPUS_DIR
#define BLAMELAB_CORPUS_DIR "corpus"
#endif

namespace testing {

using namespace blamelab;

inline Outcome eval(std::string_view src, Strategy s = Strategy::Stateful) { return run_source(src, "<test>", s); }

inline const std::vector<Strategy>& all_strategies() {
    static const std::vector<Strategy> all{Strategy::Naive, Strategy::Arity, Strategy::Stateful};
    return all;
}

// ---- value pool -------------------------------------------------------------

struct PoolValue {
    enum class Kind { Num, Str, Bool, Null, Array, Record, Fun };
    Kind kind;
    std::string source;
    double num = 0;
    std::string str;
    bool boolean = false;
};

inline std::vector<PoolValue> value_pool() {
    using K = PoolValue::Kind;
    std::vector<PoolValue> pool;
    for (double d : {-7.0, -3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 7.0, 10.0, 11.0, 64.0, 80.0,
                     99.5, 1000.0, 65535.0, 65536.0, -65536.0}) {
        std::string src = format_number(d);
        if (d < 0) src = "(" + src + ")";
        pool.push_back({K::Num, src, d});
    }
    for (std::string s : {"", "a", "ab", "hello", "01/01/2021", "Num", "42", "true", "x y"}) {
        pool.push_back({K::Str, quote_string(s), 0, s});
    }
    pool.push_back({K::Bool, "true", 0, {}, true});
    pool.push_back({K::Bool, "false", 0, {}, false});
    pool.push_back({K::Null, "null"});
    for (std::string a : {"[]", "[1]", "[1, 2, 3]", "[\"a\", \"b\"]", "[true, 1]"}) pool.push_back({K::Array, a});
    for (std::string r : {"{}", "{a = 1}", "{name = \"Juno\", owner = \"x\"}", "{day = 1, month = 2, year = 3}"}) {
        pool.push_back({K::Record, r});
    }
    for (std::string f : {"(fun x => x)", "(fun x => x + 1)", "(fun x y => x)", "(fun x => \"s\")",
                          "(fun x => x - 7)", "(fun x => 0)", "(fun x => x ++ x)"}) {
        pool.push_back({K::Fun, f});
    }
    return pool;
}

inline std::vector<PoolValue> first_order_pool() {
    auto pool = value_pool();
    std::erase_if(pool, [](const PoolValue& v) { return v.kind == PoolValue::Kind::Fun; });
    return pool;
}

// ---- flat leaves with host oracles -------------------------------------------

struct Leaf {
    std::string source;
    std::function<bool(const PoolValue&)> oracle;
};

inline bool is_int(double d) { return std::isfinite(d) && d == std::trunc(d); }

inline std::vector<Leaf> flat_leaves() {
    using K = PoolValue::Kind;
    auto num = [](const PoolValue& v) { return v.kind == K::Num; };
    return {
        {"Num", num},
        {"Str", [](const PoolValue& v) { return v.kind == K::Str; }},
        {"Bool", [](const PoolValue& v) { return v.kind == K::Bool; }},
        {"Dyn", [](const PoolValue&) { return true; }},
        {"Positive", [=](const PoolValue& v) { return num(v) && v.num > 0; }},
        {"NonPositive", [=](const PoolValue& v) { return num(v) && v.num <= 0; }},
        {"Nat", [=](const PoolValue& v) { return num(v) && is_int(v.num) && v.num >= 0; }},
        {"Even", [=](const PoolValue& v) { return num(v) && is_int(v.num) && is_int(v.num / 2); }},
        {"Odd", [=](const PoolValue& v) { return num(v) && is_int(v.num) && is_int((v.num - 1) / 2); }},
        {"(contracts.fromPred (fun s => typeOf s == \"Str\" && s != \"\"))",
         [](const PoolValue& v) { return v.kind == K::Str && !v.str.empty(); }},
        {"(contracts.fromPred (fun b => typeOf b == \"Bool\" && b))", [](const PoolValue& v) { return v.kind == K::Bool && v.boolean; }},
    };
}

// ---- random connective trees ------------------------------------------------

struct Tree {
    enum class Kind { Leaf, Union, Intersection };
    Kind kind;
    std::size_t leaf = 0;
    std::vector<Tree> kids;
};

inline Tree random_tree(std::mt19937& rng, int depth, std::size_t leaf_count) {
    std::uniform_int_distribution<int> coin(0, 2);
    if (depth == 0 || coin(rng) == 0) {
        return {Tree::Kind::Leaf, std::uniform_int_distribution<std::size_t>(0, leaf_count - 1)(rng), {}};
    }
    Tree t{coin(rng) % 2 ? Tree::Kind::Union : Tree::Kind::Intersection, 0, {}};
    int n = std::uniform_int_distribution<int>(2, 3)(rng);
    for (int i = 0; i < n; ++i) t.kids.push_back(random_tree(rng, depth - 1, leaf_count));
    return t;
}

inline std::string tree_source(const Tree& t, const std::vector<Leaf>& leaves) {
    if (t.kind == Tree::Kind::Leaf) return leaves[t.leaf].source;
    std::string sep = t.kind == Tree::Kind::Union ? " @| " : " @& ";
    std::string out = "(";
    for (std::size_t i = 0; i < t.kids.size(); ++i) out += (i ? sep : "") + tree_source(t.kids[i], leaves);
    return out + ")";
}

inline bool tree_oracle(const Tree& t, const std::vector<Leaf>& leaves, const PoolValue& v) {
    switch (t.kind) {
    case Tree::Kind::Leaf: return leaves[t.leaf].oracle(v);
    case Tree::Kind::Union:
        for (const auto& k : t.kids) {
            if (tree_oracle(k, leaves, v)) return true;
        }
        return false;
    case Tree::Kind::Intersection:
        for (const auto& k : t.kids) {
            if (!tree_oracle(k, leaves, v)) return false;
        }
        return true;
    }
    return false;
}

// ---- random contract-free programs ------------------------------------------

// Generates well-scoped programs over numbers, booleans, arrays and records.
// Recently generated subterms are reused to give CSE something to find.
class ProgramGen {
public:
    explicit ProgramGen(std::uint32_t seed) : rng_(seed) {}

    std::string program(int depth) {
        recent_.clear();
        counter_ = 0;
        std::vector<std::string> env;
        if (pick(2) == 0) {
            return "[" + num(depth - 1, env) + ", " + num(depth - 1, env) + "]";
        }
        return "{a = " + num(depth - 1, env) + ", b = " + num(depth - 1, env) + "}";
    }

private:
    struct Piece {
        std::string src;
        std::set<std::string> fv;
    };

    std::mt19937 rng_;
    std::vector<Piece> recent_;
    int counter_ = 0;

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    std::string fresh() { return "v" + std::to_string(counter_++); }

    std::string remember(std::string src, const std::vector<std::string>& env) {
        if (src.size() > 4) recent_.push_back({src, {env.begin(), env.end()}});
        return src;
    }

    std::string reuse(const std::vector<std::string>& env) {
        std::set<std::string> scope(env.begin(), env.end());
        std::vector<const Piece*> usable;
        for (const auto& p : recent_) {
            if (std::includes(scope.begin(), scope.end(), p.fv.begin(), p.fv.end())) usable.push_back(&p);
        }
        if (usable.empty()) return {};
        return usable[static_cast<std::size_t>(pick(static_cast<int>(usable.size())))]->src;
    }

    std::string num(int depth, std::vector<std::string>& env) {
        if (depth <= 0) {
            if (!env.empty() && pick(2) == 0) return env[static_cast<std::size_t>(pick(static_cast<int>(env.size())))];
            return std::to_string(pick(10));
        }
        switch (pick(9)) {
        case 0: {
            std::string r = reuse(env);
            if (!r.empty()) return r;
            return std::to_string(pick(10));
        }
        case 1:
        case 2: {
            static const char* ops[] = {" + ", " - ", " * "};
            return remember("(" + num(depth - 1, env) + ops[pick(3)] + num(depth - 1, env) + ")", env);
        }
        case 3: return remember("(" + num(depth - 1, env) + " / " + num(depth - 1, env) + ")", env);
        case 4: {
            std::string c = boolean(depth - 1, env);
            return remember("(if " + c + " then " + num(depth - 1, env) + " else " + num(depth - 1, env) + ")", env);
        }
        case 5: {
            std::string x = fresh();
            std::string bound = num(depth - 1, env);
            env.push_back(x);
            std::string body = num(depth - 1, env);
            env.pop_back();
            return "(let " + x + " = " + bound + " in " + body + ")";
        }
        case 6: {
            std::string x = fresh();
            env.push_back(x);
            std::string body = num(depth - 1, env);
            env.pop_back();
            return remember("((fun " + x + " => " + body + ") " + num(depth - 1, env) + ")", env);
        }
        case 7: {
            std::string items = num(depth - 1, env) + ", " + num(depth - 1, env);
            return remember("(lists.length [" + items + "] + lists.head [" + items + "])", env);
        }
        default: return remember("({p = " + num(depth - 1, env) + ", q = " + num(depth - 1, env) + "}.p)", env);
        }
    }

    std::string boolean(int depth, std::vector<std::string>& env) {
        switch (pick(4)) {
        case 0: return pick(2) ? "true" : "false";
        case 1: return "(" + num(depth - 1, env) + " < " + num(depth - 1, env) + ")";
        case 2: return "(" + num(depth - 1, env) + " == " + num(depth - 1, env) + ")";
        default: return "(" + boolean(depth - 1, env) + " && " + boolean(depth - 1, env) + ")";
        }
    }
};

/// Names bound by `let` anywhere in `t`, in preorder.
inline void let_names(const TermPtr& t, std::vector<std::string>& out) {
    if (const auto* let = t->as<Term::Let>()) out.push_back(let->name);
    for (const auto& k : children(*t)) let_names(k, out);
}

/// Every blame report in the corpus run, including recorded branch failures.
inline void collect_reports(const BlameReport& r, std::vector<const BlameReport*>& out) {
    out.push_back(&r);
    for (const auto& b : r.branch_failures) collect_reports(b, out);
}

}  // namespace testing
