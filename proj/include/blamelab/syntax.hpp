#pragma once

// Concrete syntax of the .blame language: tokens, spans, the Term tree and
// the parser/pretty-printer pair.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace blamelab {

struct SourceFile {
    std::string name;
    std::string text;
};
using SourcePtr = std::shared_ptr<const SourceFile>;

struct Position {
    std::uint32_t offset = 0;
    std::uint32_t line = 1;
    std::uint32_t column = 1;
};

struct Span {
    SourcePtr source;
    Position begin;
    Position end;

    bool valid() const { return source != nullptr; }
    bool contains(const Span& other) const {
        return begin.offset <= other.begin.offset && other.end.offset <= end.offset;
    }
    std::string file_name() const { return source ? source->name : "<synthetic>"; }
    std::string_view text() const;
    std::string location() const;

    static Span cover(const Span& first, const Span& last);
};

enum class TokenKind {
    Number,
    String,
    Identifier,
    KwLet,
    KwIn,
    KwFun,
    KwIf,
    KwThen,
    KwElse,
    KwTrue,
    KwFalse,
    KwNull,
    KwCase,
    Equals,
    Pipe,
    AtPipe,
    AtAmp,
    Arrow,
    FatArrow,
    Plus,
    Minus,
    Star,
    Slash,
    PlusPlus,
    EqEq,
    BangEq,
    Le,
    Lt,
    Ge,
    Gt,
    AndAnd,
    OrOr,
    Dot,
    DotDot,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Eof,
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::Eof;
    std::string text;  // identifier name, decoded string literal, or lexeme
    double number = 0;
    Span span;
};

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::string what, Span span) : std::runtime_error(std::move(what)), span_(std::move(span)) {}
    const Span& span() const { return span_; }

private:
    Span span_;
};

class LexError : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

class ParseError : public SyntaxError {
public:
    ParseError(std::string what, Span span, std::vector<std::string> expected)
        : SyntaxError(std::move(what), std::move(span)), expected_(std::move(expected)) {}
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::vector<std::string> expected_;
};

enum class BinaryOp { Add, Sub, Mul, Div, Concat, Eq, Neq, Lt, Le, Gt, Ge, And, Or };

std::string_view binary_op_symbol(BinaryOp op);

enum class ContractKind { Num, Str, Bool, Dyn, Arrow, Union, Intersection, CaseArrow, RecordOf, ArrayOf };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    struct NumLit { double value; };
    struct StrLit { std::string value; };
    struct BoolLit { bool value; };
    struct NullLit {};
    struct Array { std::vector<TermPtr> items; };
    struct Field {
        std::string name;
        TermPtr value;
    };
    struct Record { std::vector<Field> fields; };
    struct FieldAccess {
        TermPtr record;
        std::string field;
    };
    struct Fun {
        std::vector<std::string> params;
        TermPtr body;
    };
    /// `contract` is only set for programmatically built lets; the parser
    /// desugars `let x | C = v in b` into `let x = (v | C) in b`.
    struct Let {
        std::string name;
        TermPtr contract;
        TermPtr bound;
        TermPtr body;
    };
    struct If { TermPtr cond, then_branch, else_branch; };
    struct App { TermPtr fn, arg; };
    struct BinOp {
        BinaryOp op;
        TermPtr lhs, rhs;
    };
    struct Annot { TermPtr term, contract; };
    struct Var { std::string name; };
    /// Contract constructors. Builtins have no children; Arrow/Union/
    /// Intersection have two; CaseArrow has any number; RecordOf pairs
    /// `children` with `field_names`; ArrayOf has one.
    struct ContractCtor {
        ContractKind kind;
        std::vector<TermPtr> children;
        std::vector<std::string> field_names;
        bool open = false;
    };

    using Node = std::variant<NumLit, StrLit, BoolLit, NullLit, Array, Record, FieldAccess, Fun, Let, If, App,
                              BinOp, Annot, Var, ContractCtor>;

    Node node;
    Span span;

    template <class T>
    const T* as() const { return std::get_if<T>(&node); }
    template <class T>
    bool is() const { return std::holds_alternative<T>(node); }
};

template <class T>
TermPtr make_term(T node, Span span = {}) {
    return std::make_shared<const Term>(Term{std::move(node), std::move(span)});
}

SourcePtr make_source(std::string name, std::string text);

std::vector<Token> tokenize(const SourcePtr& source);
std::vector<Token> tokenize(std::string_view text);

TermPtr parse_program(const SourcePtr& source);
TermPtr parse_program(std::string_view text, std::string file_name = "<input>");

/// Renders a Term back to concrete syntax with minimal parentheses.
std::string pretty_print(const Term& term);
std::string format_number(double value);
std::string quote_string(std::string_view text);

// Generic structural helpers shared by the transform passes.
std::vector<TermPtr> children(const Term& term);
TermPtr with_children(const TermPtr& term, const std::vector<TermPtr>& kids);
std::size_t term_size(const Term& term);
bool alpha_equal(const Term& a, const Term& b);
std::vector<std::string> free_variables(const Term& term);
std::vector<std::string> all_names(const Term& term);

}  // namespace blamelab
