#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "replab/free_lie.hpp"

namespace replab {

// Representation expressions: the small language the CLI accepts.
//
//   expr := "H" | "V[" partition "]" | "lie(" int ")"
//         | "wedge(" int "," expr ")" | "sym(" int "," expr ")"
//         | "tensor(" expr "," expr ")" | "quot(" expr "," embed-name ")"
//
// with embed-name one of H-in-wedge3, wedge4-in-sym2wedge2,
// HxWedge3-in-HHxWedge2.

struct RepExpr;
using RepExprPtr = std::shared_ptr<const RepExpr>;

struct RepExpr {
    enum class Kind { H, V, Lie, Wedge, Sym, Tensor, Quot };
    Kind kind = Kind::H;
    Partition partition;  // V
    int arg = 0;          // lie degree / wedge / sym power
    RepExprPtr a, b;
    std::string quot_name;

    std::string str() const {
        switch (kind) {
            case Kind::H:
                return "H";
            case Kind::V: {
                std::string s = "V[";
                for (size_t i = 0; i < partition.size(); ++i) {
                    if (i) s += ",";
                    s += std::to_string(partition[i]);
                }
                return s + "]";
            }
            case Kind::Lie:
                return "lie(" + std::to_string(arg) + ")";
            case Kind::Wedge:
                return "wedge(" + std::to_string(arg) + "," + a->str() + ")";
            case Kind::Sym:
                return "sym(" + std::to_string(arg) + "," + a->str() + ")";
            case Kind::Tensor:
                return "tensor(" + a->str() + "," + b->str() + ")";
            case Kind::Quot:
                return "quot(" + a->str() + "," + quot_name + ")";
        }
        return "";
    }

    // Degree as a subspace of tensor powers of the standard representation.
    int degree() const {
        switch (kind) {
            case Kind::H:
                return 1;
            case Kind::V:
                return replab::degree(partition);
            case Kind::Lie:
                return arg;
            case Kind::Wedge:
            case Kind::Sym:
                return arg * a->degree();
            case Kind::Tensor:
                return a->degree() + b->degree();
            case Kind::Quot:
                return a->degree();
        }
        return 0;
    }
};

inline const std::vector<std::string>& quot_embed_names() {
    static const std::vector<std::string> names = {"H-in-wedge3", "wedge4-in-sym2wedge2",
                                                   "HxWedge3-in-HHxWedge2"};
    return names;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace detail {

struct Token {
    enum class Kind { Name, Int, LParen, RParen, LBracket, RBracket, Comma, End };
    Kind kind;
    std::string text;
    size_t offset;
};

inline std::vector<Token> lex(const std::string& input) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < input.size()) {
        char c = input[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < input.size() && std::isdigit(static_cast<unsigned char>(input[i]))) ++i;
            out.push_back({Token::Kind::Int, input.substr(start, i - start), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (i < input.size() &&
                   (std::isalnum(static_cast<unsigned char>(input[i])) || input[i] == '-'))
                ++i;
            out.push_back({Token::Kind::Name, input.substr(start, i - start), start});
            continue;
        }
        Token::Kind k;
        switch (c) {
            case '(':
                k = Token::Kind::LParen;
                break;
            case ')':
                k = Token::Kind::RParen;
                break;
            case '[':
                k = Token::Kind::LBracket;
                break;
            case ']':
                k = Token::Kind::RBracket;
                break;
            case ',':
                k = Token::Kind::Comma;
                break;
            default:
                throw SyntaxError(start, {}, "unexpected character '" + std::string(1, c) +
                                                 "' at offset " + std::to_string(start));
        }
        out.push_back({k, std::string(1, c), start});
        ++i;
    }
    out.push_back({Token::Kind::End, "", input.size()});
    return out;
}

class Parser {
  public:
    explicit Parser(const std::string& input) : toks_(lex(input)) {}

    RepExprPtr parse() {
        RepExprPtr e = expr();
        expect(Token::Kind::End, "end of input");
        return e;
    }

  private:
    std::vector<Token> toks_;
    size_t pos_ = 0;

    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }

    [[noreturn]] void fail(std::vector<std::string> expected) {
        const Token& t = peek();
        std::string msg = "syntax error at offset " + std::to_string(t.offset) + ": expected ";
        for (size_t i = 0; i < expected.size(); ++i) {
            if (i) msg += " or ";
            msg += expected[i];
        }
        msg += ", found " +
               (t.kind == Token::Kind::End ? std::string("end of input") : "\"" + t.text + "\"");
        throw SyntaxError(t.offset, std::move(expected), msg);
    }

    void expect(Token::Kind k, const std::string& what) {
        if (peek().kind != k) fail({what});
        take();
    }

    int integer() {
        if (peek().kind != Token::Kind::Int) fail({"integer"});
        return std::stoi(take().text);
    }

    RepExprPtr expr() {
        if (peek().kind != Token::Kind::Name)
            fail({"\"H\"", "\"V\"", "\"lie\"", "\"wedge\"", "\"sym\"", "\"tensor\"", "\"quot\""});
        Token t = take();
        auto node = std::make_shared<RepExpr>();
        if (t.text == "H") {
            node->kind = RepExpr::Kind::H;
            return node;
        }
        if (t.text == "V") {
            node->kind = RepExpr::Kind::V;
            expect(Token::Kind::LBracket, "\"[\"");
            if (peek().kind == Token::Kind::Int) {
                node->partition.push_back(integer());
                while (peek().kind == Token::Kind::Comma) {
                    take();
                    node->partition.push_back(integer());
                }
            }
            expect(Token::Kind::RBracket, "\"]\"");
            if (!is_valid_partition(node->partition))
                throw SyntaxError(t.offset, {"weakly decreasing positive integers"},
                                  "V[...] requires a partition (weakly decreasing positive "
                                  "integers)");
            return node;
        }
        if (t.text == "lie") {
            node->kind = RepExpr::Kind::Lie;
            expect(Token::Kind::LParen, "\"(\"");
            node->arg = integer();
            expect(Token::Kind::RParen, "\")\"");
            return node;
        }
        if (t.text == "wedge" || t.text == "sym") {
            node->kind = t.text == "wedge" ? RepExpr::Kind::Wedge : RepExpr::Kind::Sym;
            expect(Token::Kind::LParen, "\"(\"");
            node->arg = integer();
            expect(Token::Kind::Comma, "\",\"");
            node->a = expr();
            expect(Token::Kind::RParen, "\")\"");
            return node;
        }
        if (t.text == "tensor") {
            node->kind = RepExpr::Kind::Tensor;
            expect(Token::Kind::LParen, "\"(\"");
            node->a = expr();
            expect(Token::Kind::Comma, "\",\"");
            node->b = expr();
            expect(Token::Kind::RParen, "\")\"");
            return node;
        }
        if (t.text == "quot") {
            node->kind = RepExpr::Kind::Quot;
            expect(Token::Kind::LParen, "\"(\"");
            node->a = expr();
            expect(Token::Kind::Comma, "\",\"");
            if (peek().kind != Token::Kind::Name) fail({"embedding name"});
            Token name = take();
            bool known = false;
            for (const auto& n : quot_embed_names()) known |= n == name.text;
            if (!known)
                throw SyntaxError(name.offset, quot_embed_names(),
                                  "unknown embedding name \"" + name.text +
                                      "\" at offset " + std::to_string(name.offset));
            node->quot_name = name.text;
            expect(Token::Kind::RParen, "\")\"");
            return node;
        }
        --pos_;
        fail({"\"H\"", "\"V\"", "\"lie\"", "\"wedge\"", "\"sym\"", "\"tensor\"", "\"quot\""});
    }
};

}  // namespace detail

inline RepExprPtr parse_rep_expr(const std::string& input) {
    return detail::Parser(input).parse();
}

// ---------------------------------------------------------------------------
// Evaluation to formal characters
// ---------------------------------------------------------------------------

inline FormalCharacter eval_rep_expr(const RepExprPtr& e, const GroupFamily& group) {
    switch (e->kind) {
        case RepExpr::Kind::H:
            return std_char(group);
        case RepExpr::Kind::V:
            return freudenthal_char(group, e->partition);
        case RepExpr::Kind::Lie:
            return lie_character(group, e->arg);
        case RepExpr::Kind::Wedge:
            return wedge_power(eval_rep_expr(e->a, group), e->arg);
        case RepExpr::Kind::Sym:
            return sym_power(eval_rep_expr(e->a, group), e->arg);
        case RepExpr::Kind::Tensor:
            return tensor(eval_rep_expr(e->a, group), eval_rep_expr(e->b, group));
        case RepExpr::Kind::Quot: {
            FormalCharacter amb = eval_rep_expr(e->a, group);
            FormalCharacter sub(group);
            if (e->quot_name == "H-in-wedge3") {
                sub = std_char(group);
            } else if (e->quot_name == "wedge4-in-sym2wedge2") {
                sub = wedge_power(std_char(group), 4);
            } else if (e->quot_name == "HxWedge3-in-HHxWedge2") {
                sub = tensor(std_char(group), wedge_power(std_char(group), 3));
            } else {
                throw Error("unknown embedding name: " + e->quot_name);
            }
            for (const auto& [w, m] : sub.table) amb.add(w, BigInt(-1) * m);
            return amb;
        }
    }
    throw Error("unreachable expression kind");
}

// stable iff rank >= degree (Sp) / rank >= degree + 1 (SL)
inline bool expr_is_stable(const RepExprPtr& e, const GroupFamily& group) {
    int d = e->degree();
    return group.family == Family::Sp ? group.rank >= d : group.rank >= d + 1;
}

}  // namespace replab
