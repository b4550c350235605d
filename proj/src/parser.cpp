#include "blamelab/syntax.hpp"

#include <algorithm>
#include <set>

namespace blamelab {

namespace {

// Precedence, loosest first:
//   |  @|  @&  ->  ||  &&  comparisons  ++  + -  * /  application  field access
class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    TermPtr program() {
        TermPtr t = expr();
        expect(TokenKind::Eof);
        return t;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    bool at(TokenKind k) const { return peek().kind == k; }
    const Token& advance() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        expected_.clear();
        return t;
    }
    bool accept(TokenKind k) {
        if (at(k)) {
            advance();
            return true;
        }
        expected_.insert(std::string(token_kind_name(k)));
        return false;
    }
    const Token& expect(TokenKind k) {
        if (!at(k)) {
            expected_.insert(std::string(token_kind_name(k)));
            fail();
        }
        return advance();
    }
    [[noreturn]] void fail(std::string what = {}) const {
        const Token& t = peek();
        std::vector<std::string> expected(expected_.begin(), expected_.end());
        if (what.empty()) {
            what = "unexpected " + (t.kind == TokenKind::Eof ? std::string("end of input") : "'" + t.text + "'");
            if (!expected.empty()) {
                what += ", expected ";
                for (std::size_t i = 0; i < expected.size(); ++i) {
                    if (i) what += i + 1 == expected.size() ? " or " : ", ";
                    what += expected[i];
                }
            }
        }
        throw ParseError(what, t.span, expected);
    }
    Span span_since(const Span& start) const {
        const Token& prev = tokens_[pos_ == 0 ? 0 : pos_ - 1];
        return Span::cover(start, prev.span);
    }

    std::string identifier() { return expect(TokenKind::Identifier).text; }

    TermPtr expr() {
        switch (peek().kind) {
        case TokenKind::KwLet: return let_expr();
        case TokenKind::KwFun: return fun_expr();
        case TokenKind::KwIf: return if_expr();
        default: return annotated();
        }
    }

    TermPtr let_expr() {
        Span start = advance().span;
        std::string name = identifier();
        TermPtr contract;
        if (accept(TokenKind::Pipe)) contract = union_expr();
        expect(TokenKind::Equals);
        TermPtr bound = expr();
        if (contract) bound = make_term(Term::Annot{bound, contract}, Span::cover(contract->span, bound->span));
        expect(TokenKind::KwIn);
        TermPtr body = expr();
        return make_term(Term::Let{std::move(name), nullptr, bound, body}, span_since(start));
    }

    TermPtr fun_expr() {
        Span start = advance().span;
        std::vector<std::string> params;
        params.push_back(identifier());
        while (at(TokenKind::Identifier)) params.push_back(advance().text);
        expect(TokenKind::FatArrow);
        TermPtr body = expr();
        return make_term(Term::Fun{std::move(params), body}, span_since(start));
    }

    TermPtr if_expr() {
        Span start = advance().span;
        TermPtr c = expr();
        expect(TokenKind::KwThen);
        TermPtr t = expr();
        expect(TokenKind::KwElse);
        TermPtr e = expr();
        return make_term(Term::If{c, t, e}, span_since(start));
    }

    TermPtr annotated() {
        TermPtr t = union_expr();
        while (accept(TokenKind::Pipe)) {
            TermPtr c = union_expr();
            t = make_term(Term::Annot{t, c}, Span::cover(t->span, c->span));
        }
        return t;
    }

    TermPtr connective(TokenKind tok, ContractKind kind, TermPtr (Parser::*operand)(), TermPtr (Parser::*self)()) {
        TermPtr lhs = (this->*operand)();
        if (!accept(tok)) return lhs;
        TermPtr rhs = (this->*self)();
        return make_term(Term::ContractCtor{kind, {lhs, rhs}, {}, false}, Span::cover(lhs->span, rhs->span));
    }
    TermPtr union_expr() {
        return connective(TokenKind::AtPipe, ContractKind::Union, &Parser::intersection_expr, &Parser::union_expr);
    }
    TermPtr intersection_expr() {
        return connective(TokenKind::AtAmp, ContractKind::Intersection, &Parser::arrow_expr,
                          &Parser::intersection_expr);
    }
    TermPtr arrow_expr() {
        return connective(TokenKind::Arrow, ContractKind::Arrow, &Parser::or_expr, &Parser::arrow_expr);
    }

    TermPtr binary(TermPtr lhs, BinaryOp op, TermPtr rhs) {
        Span s = Span::cover(lhs->span, rhs->span);
        return make_term(Term::BinOp{op, lhs, rhs}, s);
    }

    TermPtr or_expr() {
        TermPtr t = and_expr();
        while (accept(TokenKind::OrOr)) t = binary(t, BinaryOp::Or, and_expr());
        return t;
    }
    TermPtr and_expr() {
        TermPtr t = compare_expr();
        while (accept(TokenKind::AndAnd)) t = binary(t, BinaryOp::And, compare_expr());
        return t;
    }
    TermPtr compare_expr() {
        TermPtr t = concat_expr();
        for (;;) {
            std::optional<BinaryOp> op;
            if (accept(TokenKind::EqEq)) op = BinaryOp::Eq;
            else if (accept(TokenKind::BangEq)) op = BinaryOp::Neq;
            else if (accept(TokenKind::Le)) op = BinaryOp::Le;
            else if (accept(TokenKind::Lt)) op = BinaryOp::Lt;
            else if (accept(TokenKind::Ge)) op = BinaryOp::Ge;
            else if (accept(TokenKind::Gt)) op = BinaryOp::Gt;
            if (!op) return t;
            t = binary(t, *op, concat_expr());
        }
    }
    TermPtr concat_expr() {
        TermPtr t = additive();
        while (accept(TokenKind::PlusPlus)) t = binary(t, BinaryOp::Concat, additive());
        return t;
    }
    TermPtr additive() {
        TermPtr t = multiplicative();
        for (;;) {
            if (accept(TokenKind::Plus)) t = binary(t, BinaryOp::Add, multiplicative());
            else if (accept(TokenKind::Minus)) t = binary(t, BinaryOp::Sub, multiplicative());
            else return t;
        }
    }
    TermPtr multiplicative() {
        TermPtr t = unary();
        for (;;) {
            if (accept(TokenKind::Star)) t = binary(t, BinaryOp::Mul, unary());
            else if (accept(TokenKind::Slash)) t = binary(t, BinaryOp::Div, unary());
            else return t;
        }
    }

    TermPtr unary() {
        switch (peek().kind) {
        case TokenKind::KwLet:
        case TokenKind::KwFun:
        case TokenKind::KwIf: return expr();
        case TokenKind::Minus: {
            Span start = advance().span;
            if (at(TokenKind::Number)) {
                const Token& n = advance();
                return make_term(Term::NumLit{-n.number}, Span::cover(start, n.span));
            }
            TermPtr operand = unary();
            return make_term(Term::BinOp{BinaryOp::Sub, make_term(Term::NumLit{0}, start), operand},
                             Span::cover(start, operand->span));
        }
        default: return application();
        }
    }

    bool starts_atom() const {
        switch (peek().kind) {
        case TokenKind::Number:
        case TokenKind::String:
        case TokenKind::Identifier:
        case TokenKind::KwTrue:
        case TokenKind::KwFalse:
        case TokenKind::KwNull:
        case TokenKind::KwCase:
        case TokenKind::LParen:
        case TokenKind::LBracket:
        case TokenKind::LBrace: return true;
        default: return false;
        }
    }

    TermPtr application() {
        TermPtr fn = postfix();
        while (starts_atom()) {
            TermPtr arg = postfix();
            // Cover a closing parenthesis after the argument as well.
            const Token& last = tokens_[pos_ == 0 ? 0 : pos_ - 1];
            fn = make_term(Term::App{fn, arg}, Span::cover(Span::cover(fn->span, arg->span), last.span));
        }
        return fn;
    }

    TermPtr postfix() {
        TermPtr t = atom();
        while (accept(TokenKind::Dot)) {
            const Token& name = expect(TokenKind::Identifier);
            t = make_term(Term::FieldAccess{t, name.text}, Span::cover(t->span, name.span));
        }
        return t;
    }

    TermPtr builtin_contract(ContractKind kind, const Span& span) {
        return make_term(Term::ContractCtor{kind, {}, {}, false}, span);
    }

    TermPtr atom() {
        const Token& t = peek();
        switch (t.kind) {
        case TokenKind::Number: advance(); return make_term(Term::NumLit{t.number}, t.span);
        case TokenKind::String: advance(); return make_term(Term::StrLit{t.text}, t.span);
        case TokenKind::KwTrue: advance(); return make_term(Term::BoolLit{true}, t.span);
        case TokenKind::KwFalse: advance(); return make_term(Term::BoolLit{false}, t.span);
        case TokenKind::KwNull: advance(); return make_term(Term::NullLit{}, t.span);
        case TokenKind::Identifier: {
            advance();
            if (t.text == "Num") return builtin_contract(ContractKind::Num, t.span);
            if (t.text == "Str") return builtin_contract(ContractKind::Str, t.span);
            if (t.text == "Bool") return builtin_contract(ContractKind::Bool, t.span);
            if (t.text == "Dyn") return builtin_contract(ContractKind::Dyn, t.span);
            if (t.text == "List") {
                Span start = t.span;
                TermPtr element = postfix();
                return make_term(Term::ContractCtor{ContractKind::ArrayOf, {element}, {}, false},
                                 Span::cover(start, element->span));
            }
            return make_term(Term::Var{t.text}, t.span);
        }
        case TokenKind::KwCase: return case_arrow();
        case TokenKind::LParen: {
            advance();
            TermPtr inner = expr();
            expect(TokenKind::RParen);
            return inner;
        }
        case TokenKind::LBracket: return array();
        case TokenKind::LBrace: return record();
        default:
            for (auto k : {TokenKind::Number, TokenKind::String, TokenKind::Identifier, TokenKind::LParen,
                           TokenKind::LBracket, TokenKind::LBrace})
                expected_.insert(std::string(token_kind_name(k)));
            fail();
        }
    }

    std::vector<TermPtr> bracketed_list() {
        std::vector<TermPtr> items;
        expect(TokenKind::LBracket);
        if (!accept(TokenKind::RBracket)) {
            do {
                items.push_back(expr());
            } while (accept(TokenKind::Comma));
            expect(TokenKind::RBracket);
        }
        return items;
    }

    TermPtr array() {
        Span start = peek().span;
        auto items = bracketed_list();
        return make_term(Term::Array{std::move(items)}, span_since(start));
    }

    TermPtr case_arrow() {
        Span start = advance().span;
        auto branches = bracketed_list();
        if (branches.empty()) fail("a case contract needs at least one branch");
        return make_term(Term::ContractCtor{ContractKind::CaseArrow, std::move(branches), {}, false},
                         span_since(start));
    }

    // `{a = v, b | C = w}` is a record value; `{a | C, b | D, ..}` is a record
    // contract. The two forms cannot be mixed.
    TermPtr record() {
        Span start = advance().span;
        std::vector<Term::Field> values;
        std::vector<std::string> contract_names;
        std::vector<TermPtr> contracts;
        std::set<std::string> seen;
        bool open = false;
        if (!accept(TokenKind::RBrace)) {
            do {
                if (accept(TokenKind::DotDot)) {
                    open = true;
                    break;
                }
                const Token& name_tok = expect(TokenKind::Identifier);
                std::string name = name_tok.text;
                if (!seen.insert(name).second) {
                    throw ParseError("duplicate field '" + name + "'", name_tok.span, {});
                }
                TermPtr contract;
                if (accept(TokenKind::Pipe)) contract = union_expr();
                if (accept(TokenKind::Equals)) {
                    TermPtr value = expr();
                    if (contract) value = make_term(Term::Annot{value, contract}, Span::cover(contract->span, value->span));
                    values.push_back({std::move(name), value});
                } else if (contract) {
                    contract_names.push_back(std::move(name));
                    contracts.push_back(contract);
                } else {
                    expected_.insert(std::string(token_kind_name(TokenKind::Pipe)));
                    fail();
                }
            } while (accept(TokenKind::Comma));
            expect(TokenKind::RBrace);
        }
        Span span = span_since(start);
        if (!contracts.empty() || open) {
            if (!values.empty()) {
                throw ParseError("a record contract cannot also define field values", span, {});
            }
            return make_term(Term::ContractCtor{ContractKind::RecordOf, std::move(contracts),
                                                std::move(contract_names), open},
                             span);
        }
        return make_term(Term::Record{std::move(values)}, span);
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::set<std::string> expected_;
};

}  // namespace

TermPtr parse_program(const SourcePtr& source) { return Parser(tokenize(source)).program(); }

TermPtr parse_program(std::string_view text, std::string file_name) {
    return parse_program(make_source(std::move(file_name), std::string(text)));
}

}  // namespace blamelab
