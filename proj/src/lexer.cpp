#include "blamelab/syntax.hpp"

#include <charconv>
#include <sstream>
#include <unordered_map>

namespace blamelab {

std::string_view Span::text() const {
    if (!source || end.offset > source->text.size() || begin.offset > end.offset) return {};
    return std::string_view(source->text).substr(begin.offset, end.offset - begin.offset);
}

std::string Span::location() const {
    std::ostringstream out;
    out << file_name() << ":" << begin.line << ":" << begin.column;
    return out.str();
}

Span Span::cover(const Span& first, const Span& last) {
    if (!first.valid()) return last;
    if (!last.valid()) return first;
    Span s = first;
    if (last.begin.offset < s.begin.offset) s.begin = last.begin;
    if (last.end.offset > s.end.offset) s.end = last.end;
    return s;
}

SourcePtr make_source(std::string name, std::string text) {
    return std::make_shared<const SourceFile>(SourceFile{std::move(name), std::move(text)});
}

std::string_view token_kind_name(TokenKind kind) {
    switch (kind) {
    case TokenKind::Number: return "number";
    case TokenKind::String: return "string";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::KwLet: return "'let'";
    case TokenKind::KwIn: return "'in'";
    case TokenKind::KwFun: return "'fun'";
    case TokenKind::KwIf: return "'if'";
    case TokenKind::KwThen: return "'then'";
    case TokenKind::KwElse: return "'else'";
    case TokenKind::KwTrue: return "'true'";
    case TokenKind::KwFalse: return "'false'";
    case TokenKind::KwNull: return "'null'";
    case TokenKind::KwCase: return "'case'";
    case TokenKind::Equals: return "'='";
    case TokenKind::Pipe: return "'|'";
    case TokenKind::AtPipe: return "'@|'";
    case TokenKind::AtAmp: return "'@&'";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::FatArrow: return "'=>'";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Slash: return "'/'";
    case TokenKind::PlusPlus: return "'++'";
    case TokenKind::EqEq: return "'=='";
    case TokenKind::BangEq: return "'!='";
    case TokenKind::Le: return "'<='";
    case TokenKind::Lt: return "'<'";
    case TokenKind::Ge: return "'>='";
    case TokenKind::Gt: return "'>'";
    case TokenKind::AndAnd: return "'&&'";
    case TokenKind::OrOr: return "'||'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::DotDot: return "'..'";
    case TokenKind::Comma: return "','";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::Eof: return "end of input";
    }
    return "?";
}

namespace {

const std::unordered_map<std::string_view, TokenKind>& keywords() {
    static const std::unordered_map<std::string_view, TokenKind> table = {
        {"let", TokenKind::KwLet},     {"in", TokenKind::KwIn},       {"fun", TokenKind::KwFun},
        {"if", TokenKind::KwIf},       {"then", TokenKind::KwThen},   {"else", TokenKind::KwElse},
        {"true", TokenKind::KwTrue},   {"false", TokenKind::KwFalse}, {"null", TokenKind::KwNull},
        {"case", TokenKind::KwCase},
    };
    return table;
}

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '\''; }
bool digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
public:
    explicit Lexer(SourcePtr source) : source_(std::move(source)), text_(source_->text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_trivia();
            Position start = pos_;
            if (at_end()) {
                out.push_back(Token{TokenKind::Eof, "", 0, span_from(start)});
                return out;
            }
            out.push_back(next(start));
        }
    }

private:
    bool at_end() const { return pos_.offset >= text_.size(); }
    char peek(std::size_t ahead = 0) const {
        std::size_t i = pos_.offset + ahead;
        return i < text_.size() ? text_[i] : '\0';
    }
    void advance() {
        if (text_[pos_.offset] == '\n') {
            ++pos_.line;
            pos_.column = 1;
        } else if ((static_cast<unsigned char>(text_[pos_.offset]) & 0xC0) != 0x80) {
            ++pos_.column;
        }
        ++pos_.offset;
    }
    Span span_from(Position start) const { return Span{source_, start, pos_}; }

    void skip_trivia() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token simple(TokenKind kind, Position start, std::size_t length) {
        for (std::size_t i = 0; i < length; ++i) advance();
        Span span = span_from(start);
        return Token{kind, std::string(span.text()), 0, span};
    }

    Token next(Position start) {
        char c = peek();
        if (digit(c)) return number(start);
        if (ident_start(c)) return identifier(start);
        if (c == '"') return string(start);

        char d = peek(1);
        switch (c) {
        case '@':
            if (d == '|') return simple(TokenKind::AtPipe, start, 2);
            if (d == '&') return simple(TokenKind::AtAmp, start, 2);
            break;
        case '-':
            return d == '>' ? simple(TokenKind::Arrow, start, 2) : simple(TokenKind::Minus, start, 1);
        case '=':
            if (d == '>') return simple(TokenKind::FatArrow, start, 2);
            if (d == '=') return simple(TokenKind::EqEq, start, 2);
            return simple(TokenKind::Equals, start, 1);
        case '|':
            return d == '|' ? simple(TokenKind::OrOr, start, 2) : simple(TokenKind::Pipe, start, 1);
        case '&':
            if (d == '&') return simple(TokenKind::AndAnd, start, 2);
            break;
        case '+':
            return d == '+' ? simple(TokenKind::PlusPlus, start, 2) : simple(TokenKind::Plus, start, 1);
        case '*': return simple(TokenKind::Star, start, 1);
        case '/': return simple(TokenKind::Slash, start, 1);
        case '!':
            if (d == '=') return simple(TokenKind::BangEq, start, 2);
            break;
        case '<':
            return d == '=' ? simple(TokenKind::Le, start, 2) : simple(TokenKind::Lt, start, 1);
        case '>':
            return d == '=' ? simple(TokenKind::Ge, start, 2) : simple(TokenKind::Gt, start, 1);
        case '.':
            return d == '.' ? simple(TokenKind::DotDot, start, 2) : simple(TokenKind::Dot, start, 1);
        case ',': return simple(TokenKind::Comma, start, 1);
        case '(': return simple(TokenKind::LParen, start, 1);
        case ')': return simple(TokenKind::RParen, start, 1);
        case '[': return simple(TokenKind::LBracket, start, 1);
        case ']': return simple(TokenKind::RBracket, start, 1);
        case '{': return simple(TokenKind::LBrace, start, 1);
        case '}': return simple(TokenKind::RBrace, start, 1);
        default: break;
        }
        advance();
        std::string shown(span_from(start).text());
        throw LexError("illegal character '" + shown + "'", span_from(start));
    }

    Token number(Position start) {
        while (digit(peek())) advance();
        if (peek() == '.' && digit(peek(1))) {
            advance();
            while (digit(peek())) advance();
        }
        if ((peek() == 'e' || peek() == 'E') &&
            (digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && digit(peek(2))))) {
            advance();
            if (peek() == '+' || peek() == '-') advance();
            while (digit(peek())) advance();
        }
        Span span = span_from(start);
        std::string lexeme(span.text());
        double value = 0;
        auto [ptr, ec] = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), value);
        if (ec != std::errc() || ptr != lexeme.data() + lexeme.size()) {
            throw LexError("malformed number literal '" + lexeme + "'", span);
        }
        return Token{TokenKind::Number, lexeme, value, span};
    }

    Token identifier(Position start) {
        while (ident_char(peek())) advance();
        Span span = span_from(start);
        std::string name(span.text());
        auto kw = keywords().find(name);
        return Token{kw == keywords().end() ? TokenKind::Identifier : kw->second, name, 0, span};
    }

    Token string(Position start) {
        advance();  // opening quote
        std::string value;
        while (true) {
            if (at_end() || peek() == '\n') throw LexError("unterminated string literal", span_from(start));
            char c = peek();
            if (c == '"') {
                advance();
                break;
            }
            if (c == '\\') {
                advance();
                if (at_end()) throw LexError("unterminated string literal", span_from(start));
                char e = peek();
                switch (e) {
                case 'n': value += '\n'; break;
                case 't': value += '\t'; break;
                case '"': value += '"'; break;
                case '\\': value += '\\'; break;
                default: {
                    Position esc = pos_;
                    advance();
                    throw LexError(std::string("unknown escape sequence '\\") + e + "'", span_from(esc));
                }
                }
                advance();
                continue;
            }
            value += c;
            advance();
        }
        return Token{TokenKind::String, value, 0, span_from(start)};
    }

    SourcePtr source_;
    const std::string& text_;
    Position pos_;
};

}  // namespace

std::vector<Token> tokenize(const SourcePtr& source) { return Lexer(source).run(); }

std::vector<Token> tokenize(std::string_view text) { return tokenize(make_source("<input>", std::string(text))); }

}  // namespace blamelab
