#include "blamelab/syntax.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace blamelab {

std::string_view binary_op_symbol(BinaryOp op) {
    switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Concat: return "++";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Neq: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
    }
    return "?";
}

std::string format_number(double value) {
    if (std::isfinite(value) && value == std::trunc(value) && std::fabs(value) < 1e15) {
        return std::to_string(static_cast<long long>(value));
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string quote_string(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out + "\"";
}

namespace {

enum Level : int {
    kExpr = 0,
    kAnnot,
    kUnion,
    kInter,
    kArrow,
    kOr,
    kAnd,
    kCompare,
    kConcat,
    kAdd,
    kMul,
    kApp,
    kAtom,
};

Level level_of(BinaryOp op) {
    switch (op) {
    case BinaryOp::Or: return kOr;
    case BinaryOp::And: return kAnd;
    case BinaryOp::Eq:
    case BinaryOp::Neq:
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return kCompare;
    case BinaryOp::Concat: return kConcat;
    case BinaryOp::Add:
    case BinaryOp::Sub: return kAdd;
    case BinaryOp::Mul:
    case BinaryOp::Div: return kMul;
    }
    return kAtom;
}

class Printer {
public:
    std::string print(const Term& t, int ctx) {
        std::ostringstream out;
        int own = emit(t, out);
        if (own < ctx) return "(" + out.str() + ")";
        return out.str();
    }

private:
    // Writes `t` without outer parentheses and returns its precedence level.
    int emit(const Term& t, std::ostringstream& out) {
        return std::visit([&](const auto& n) { return emit_node(n, out); }, t.node);
    }

    int emit_node(const Term::NumLit& n, std::ostringstream& out) {
        out << format_number(n.value);
        return n.value < 0 || std::signbit(n.value) ? kApp : kAtom;
    }
    int emit_node(const Term::StrLit& n, std::ostringstream& out) {
        out << quote_string(n.value);
        return kAtom;
    }
    int emit_node(const Term::BoolLit& n, std::ostringstream& out) {
        out << (n.value ? "true" : "false");
        return kAtom;
    }
    int emit_node(const Term::NullLit&, std::ostringstream& out) {
        out << "null";
        return kAtom;
    }
    int emit_node(const Term::Array& n, std::ostringstream& out) {
        out << "[";
        for (std::size_t i = 0; i < n.items.size(); ++i) {
            if (i) out << ", ";
            out << print(*n.items[i], kExpr);
        }
        out << "]";
        return kAtom;
    }
    int emit_node(const Term::Record& n, std::ostringstream& out) {
        out << "{";
        for (std::size_t i = 0; i < n.fields.size(); ++i) {
            if (i) out << ", ";
            const auto& f = n.fields[i];
            if (const auto* a = f.value->as<Term::Annot>()) {
                out << f.name << " | " << print(*a->contract, kUnion) << " = " << print(*a->term, kExpr);
            } else {
                out << f.name << " = " << print(*f.value, kExpr);
            }
        }
        out << "}";
        return kAtom;
    }
    int emit_node(const Term::FieldAccess& n, std::ostringstream& out) {
        out << print(*n.record, kAtom) << "." << n.field;
        return kAtom;
    }
    int emit_node(const Term::Fun& n, std::ostringstream& out) {
        out << "fun";
        for (const auto& p : n.params) out << " " << p;
        out << " => " << print(*n.body, kExpr);
        return kExpr;
    }
    int emit_node(const Term::Let& n, std::ostringstream& out) {
        out << "let " << n.name;
        if (n.contract) {
            out << " | " << print(*n.contract, kUnion) << " = " << print(*n.bound, kExpr);
        } else if (const auto* a = n.bound->as<Term::Annot>()) {
            out << " | " << print(*a->contract, kUnion) << " = " << print(*a->term, kExpr);
        } else {
            out << " = " << print(*n.bound, kExpr);
        }
        out << " in " << print(*n.body, kExpr);
        return kExpr;
    }
    int emit_node(const Term::If& n, std::ostringstream& out) {
        out << "if " << print(*n.cond, kExpr) << " then " << print(*n.then_branch, kExpr) << " else "
            << print(*n.else_branch, kExpr);
        return kExpr;
    }
    int emit_node(const Term::App& n, std::ostringstream& out) {
        out << print(*n.fn, kApp) << " " << print(*n.arg, kAtom);
        return kApp;
    }
    int emit_node(const Term::BinOp& n, std::ostringstream& out) {
        int lvl = level_of(n.op);
        out << print(*n.lhs, lvl) << " " << binary_op_symbol(n.op) << " " << print(*n.rhs, lvl + 1);
        return lvl;
    }
    int emit_node(const Term::Annot& n, std::ostringstream& out) {
        out << print(*n.term, kAnnot) << " | " << print(*n.contract, kUnion);
        return kAnnot;
    }
    int emit_node(const Term::Var& n, std::ostringstream& out) {
        out << n.name;
        return kAtom;
    }
    int emit_node(const Term::ContractCtor& n, std::ostringstream& out) {
        switch (n.kind) {
        case ContractKind::Num: out << "Num"; return kAtom;
        case ContractKind::Str: out << "Str"; return kAtom;
        case ContractKind::Bool: out << "Bool"; return kAtom;
        case ContractKind::Dyn: out << "Dyn"; return kAtom;
        case ContractKind::Arrow:
            out << print(*n.children[0], kOr) << " -> " << print(*n.children[1], kArrow);
            return kArrow;
        case ContractKind::Union:
            out << print(*n.children[0], kInter) << " @| " << print(*n.children[1], kUnion);
            return kUnion;
        case ContractKind::Intersection:
            out << print(*n.children[0], kArrow) << " @& " << print(*n.children[1], kInter);
            return kInter;
        case ContractKind::CaseArrow:
            out << "case [";
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) out << ", ";
                out << print(*n.children[i], kExpr);
            }
            out << "]";
            return kAtom;
        case ContractKind::RecordOf:
            out << "{";
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) out << ", ";
                out << n.field_names[i] << " | " << print(*n.children[i], kUnion);
            }
            if (n.open) out << (n.children.empty() ? ".." : ", ..");
            out << "}";
            return kAtom;
        case ContractKind::ArrayOf:
            out << "List " << print(*n.children[0], kAtom);
            return kApp;
        }
        return kAtom;
    }
};

}  // namespace

std::string pretty_print(const Term& term) { return Printer().print(term, kExpr); }

}  // namespace blamelab
