#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "darboux/errors.hpp"
#include "darboux/jet.hpp"

// Closed-form scalar expressions: a small recursive-descent parser, a
// structural pretty-printer, symbolic partial derivatives, and evaluation on
// jet-valued variable bindings.
//
// Grammar (EBNF, also documented in the README):
//   expr   = term   { ("+" | "-") term } ;
//   term   = unary  { ("*" | "/") unary } ;
//   unary  = "-" unary | power ;
//   power  = atom [ "^" unary ] ;
//   atom   = number | variable | function "(" expr ")" | "(" expr ")" ;
//   number = digit {digit} ["." digit {digit}] [("e"|"E") ["+"|"-"] digit {digit}] ;
//   function = "sin" | "cos" | "sinh" | "cosh" | "tan" | "exp" | "log" | "sqrt" ;
// "^" is right-associative and binds tighter than unary minus.

namespace darboux {

class Expr {
    struct Node;
    using P = std::shared_ptr<const Node>;

    struct Node {
        enum class Kind { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Fun };
        Kind kind;
        double value = 0.0;   // Num
        std::string name;     // Var / Fun
        P a, b;
    };

public:
    Expr() = default;

    static Expr parse(std::string_view text) { return Expr(Parser(text).run()); }

    static Expr number(double v) {
        return Expr(mk(Node::Kind::Num, v, "", nullptr, nullptr));
    }

    static Expr variable(std::string name) {
        return Expr(mk(Node::Kind::Var, 0.0, std::move(name), nullptr, nullptr));
    }

    bool empty() const { return !root_; }

    std::string str() const { return print(root_); }

    friend bool operator==(const Expr& x, const Expr& y) { return equal(x.root_, y.root_); }

    /// Structural test: does any variable named `var` occur?
    bool depends_on(std::string_view var) const { return depends(root_, var); }

    /// Symbolic partial derivative with light constant folding.
    Expr diff(std::string_view var) const { return Expr(d(root_, var)); }

    /// Evaluate on jet bindings; all jets must share one order.
    Jet eval(const std::map<std::string, Jet>& bindings) const {
        if (bindings.empty())
            throw UnboundVariable("(empty binding set: jet order unknown)");
        int order = bindings.begin()->second.order();
        for (const auto& [k, v] : bindings)
            if (v.order() != order)
                throw OrderExceeded("eval: bindings must share one jet order");
        return ev(root_, bindings, order);
    }

    double eval_scalar(const std::map<std::string, double>& bindings) const {
        std::map<std::string, Jet> jb;
        for (const auto& [k, v] : bindings) jb.emplace(k, Jet::constant(0, v));
        if (jb.empty()) jb.emplace("", Jet::constant(0, 0.0));
        return eval(jb)[0];
    }

private:
    explicit Expr(P root) : root_(std::move(root)) {}

    static P mk(Node::Kind k, double v, std::string n, P a, P b) {
        auto node = std::make_shared<Node>();
        node->kind = k;
        node->value = v;
        node->name = std::move(n);
        node->a = std::move(a);
        node->b = std::move(b);
        return node;
    }

    static bool is_function_name(std::string_view s) {
        return s == "sin" || s == "cos" || s == "sinh" || s == "cosh" ||
               s == "tan" || s == "exp" || s == "log" || s == "sqrt";
    }

    // ---- parsing ----------------------------------------------------------

    class Parser {
    public:
        explicit Parser(std::string_view text) : text_(text) {}

        P run() {
            P e = expr();
            skip_ws();
            if (pos_ != text_.size())
                fail("end of input", token_preview());
            return e;
        }

    private:
        std::string_view text_;
        std::size_t pos_ = 0;

        [[noreturn]] void fail(const std::string& expected, const std::string& found) {
            throw ParseError(pos_, expected, found);
        }

        void skip_ws() {
            while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }

        bool eat(char c) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == c) {
                ++pos_;
                return true;
            }
            return false;
        }

        char peek() {
            skip_ws();
            return pos_ < text_.size() ? text_[pos_] : '\0';
        }

        std::string token_preview() {
            skip_ws();
            if (pos_ >= text_.size()) return "end of input";
            std::size_t n = 1;
            if (std::isalnum(static_cast<unsigned char>(text_[pos_])))
                while (pos_ + n < text_.size() &&
                       std::isalnum(static_cast<unsigned char>(text_[pos_ + n])))
                    ++n;
            return "'" + std::string(text_.substr(pos_, n)) + "'";
        }

        P expr() {
            P lhs = term();
            for (;;) {
                if (eat('+')) lhs = mk(Node::Kind::Add, 0, "", lhs, term());
                else if (eat('-')) lhs = mk(Node::Kind::Sub, 0, "", lhs, term());
                else return lhs;
            }
        }

        P term() {
            P lhs = unary();
            for (;;) {
                if (eat('*')) lhs = mk(Node::Kind::Mul, 0, "", lhs, unary());
                else if (eat('/')) lhs = mk(Node::Kind::Div, 0, "", lhs, unary());
                else return lhs;
            }
        }

        P unary() {
            if (eat('-')) return mk(Node::Kind::Neg, 0, "", unary(), nullptr);
            return power();
        }

        P power() {
            P base = atom();
            if (eat('^')) return mk(Node::Kind::Pow, 0, "", base, unary());
            return base;
        }

        P atom() {
            skip_ws();
            if (pos_ >= text_.size()) fail("an expression", "end of input");
            char c = text_[pos_];
            if (c == '(') {
                ++pos_;
                P inner = expr();
                if (!eat(')')) fail("')'", token_preview());
                return inner;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) return number();
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
            fail("an expression", token_preview());
        }

        P number() {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ < text_.size() && text_[pos_] == '.') {
                ++pos_;
                if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    fail("digits after '.'", token_preview());
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            }
            if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
                std::size_t mark = pos_++;
                if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
                if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    pos_ = mark;  // not an exponent; let 'e...' lex as what follows
                } else {
                    while (pos_ < text_.size() &&
                           std::isdigit(static_cast<unsigned char>(text_[pos_])))
                        ++pos_;
                }
            }
            std::string tok(text_.substr(start, pos_ - start));
            return mk(Node::Kind::Num, std::strtod(tok.c_str(), nullptr), "", nullptr, nullptr);
        }

        P ident() {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (is_function_name(name)) {
                if (peek() != '(') fail("'(' after function '" + name + "'", token_preview());
                ++pos_;
                P arg = expr();
                if (!eat(')')) fail("')'", token_preview());
                return mk(Node::Kind::Fun, 0, std::move(name), arg, nullptr);
            }
            return mk(Node::Kind::Var, 0, std::move(name), nullptr, nullptr);
        }
    };

    // ---- printing ---------------------------------------------------------

    static int prec(const P& n) {
        switch (n->kind) {
            case Node::Kind::Add:
            case Node::Kind::Sub: return 1;
            case Node::Kind::Mul:
            case Node::Kind::Div: return 2;
            case Node::Kind::Neg: return 3;
            case Node::Kind::Pow: return 4;
            default: return 5;
        }
    }

    static std::string wrap(const P& child, int minprec) {
        std::string s = print(child);
        if (prec(child) < minprec) return "(" + s + ")";
        return s;
    }

    static std::string print(const P& n) {
        if (!n) return "";
        switch (n->kind) {
            case Node::Kind::Num: {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.17g", n->value);
                return buf;
            }
            case Node::Kind::Var: return n->name;
            case Node::Kind::Neg: return "-" + wrap(n->a, 3);
            case Node::Kind::Add: return wrap(n->a, 1) + " + " + wrap(n->b, 2);
            case Node::Kind::Sub: return wrap(n->a, 1) + " - " + wrap(n->b, 2);
            case Node::Kind::Mul: return wrap(n->a, 2) + "*" + wrap(n->b, 3);
            case Node::Kind::Div: return wrap(n->a, 2) + "/" + wrap(n->b, 3);
            case Node::Kind::Pow: return wrap(n->a, 5) + "^" + wrap(n->b, 3);
            case Node::Kind::Fun: return n->name + "(" + print(n->a) + ")";
        }
        return "";
    }

    static bool equal(const P& x, const P& y) {
        if (x == y) return true;
        if (!x || !y) return false;
        if (x->kind != y->kind) return false;
        switch (x->kind) {
            case Node::Kind::Num: return x->value == y->value;
            case Node::Kind::Var: return x->name == y->name;
            case Node::Kind::Fun: return x->name == y->name && equal(x->a, y->a);
            case Node::Kind::Neg: return equal(x->a, y->a);
            default: return equal(x->a, y->a) && equal(x->b, y->b);
        }
    }

    static bool depends(const P& n, std::string_view var) {
        if (!n) return false;
        if (n->kind == Node::Kind::Var) return n->name == var;
        return depends(n->a, var) || depends(n->b, var);
    }

    // ---- folding constructors for diff ------------------------------------

    static bool is_num(const P& n, double v) {
        return n->kind == Node::Kind::Num && n->value == v;
    }
    static bool is_num(const P& n) { return n->kind == Node::Kind::Num; }

    static P num(double v) { return mk(Node::Kind::Num, v, "", nullptr, nullptr); }

    static P add(P a, P b) {
        if (is_num(a, 0)) return b;
        if (is_num(b, 0)) return a;
        if (is_num(a) && is_num(b)) return num(a->value + b->value);
        return mk(Node::Kind::Add, 0, "", std::move(a), std::move(b));
    }

    static P sub(P a, P b) {
        if (is_num(b, 0)) return a;
        if (is_num(a) && is_num(b)) return num(a->value - b->value);
        if (is_num(a, 0)) return neg(std::move(b));
        return mk(Node::Kind::Sub, 0, "", std::move(a), std::move(b));
    }

    static P neg(P a) {
        if (is_num(a)) return num(-a->value);
        if (a->kind == Node::Kind::Neg) return a->a;
        return mk(Node::Kind::Neg, 0, "", std::move(a), nullptr);
    }

    static P mul(P a, P b) {
        if (is_num(a, 0) || is_num(b, 0)) return num(0);
        if (is_num(a, 1)) return b;
        if (is_num(b, 1)) return a;
        if (is_num(a) && is_num(b)) return num(a->value * b->value);
        return mk(Node::Kind::Mul, 0, "", std::move(a), std::move(b));
    }

    static P div(P a, P b) {
        if (is_num(a, 0)) return num(0);
        if (is_num(b, 1)) return a;
        return mk(Node::Kind::Div, 0, "", std::move(a), std::move(b));
    }

    static P pw(P a, P b) {
        if (is_num(b, 0)) return num(1);
        if (is_num(b, 1)) return a;
        return mk(Node::Kind::Pow, 0, "", std::move(a), std::move(b));
    }

    static P fun(const char* name, P a) {
        return mk(Node::Kind::Fun, 0, name, std::move(a), nullptr);
    }

    static P d(const P& n, std::string_view var) {
        switch (n->kind) {
            case Node::Kind::Num: return num(0);
            case Node::Kind::Var: return num(n->name == var ? 1 : 0);
            case Node::Kind::Neg: return neg(d(n->a, var));
            case Node::Kind::Add: return add(d(n->a, var), d(n->b, var));
            case Node::Kind::Sub: return sub(d(n->a, var), d(n->b, var));
            case Node::Kind::Mul:
                return add(mul(d(n->a, var), n->b), mul(n->a, d(n->b, var)));
            case Node::Kind::Div:
                return div(sub(mul(d(n->a, var), n->b), mul(n->a, d(n->b, var))),
                           pw(n->b, num(2)));
            case Node::Kind::Pow: {
                if (is_num(n->b)) {
                    double c = n->b->value;
                    return mul(mul(num(c), pw(n->a, num(c - 1))), d(n->a, var));
                }
                // general exponent: (a^b)' = a^b (b' log a + b a'/a)
                P rate = add(mul(d(n->b, var), fun("log", n->a)),
                             mul(n->b, div(d(n->a, var), n->a)));
                return mul(pw(n->a, n->b), rate);
            }
            case Node::Kind::Fun: {
                P u = n->a;
                P du = d(u, var);
                if (n->name == "sin") return mul(fun("cos", u), du);
                if (n->name == "cos") return neg(mul(fun("sin", u), du));
                if (n->name == "sinh") return mul(fun("cosh", u), du);
                if (n->name == "cosh") return mul(fun("sinh", u), du);
                if (n->name == "tan")
                    return mul(add(num(1), pw(fun("tan", u), num(2))), du);
                if (n->name == "exp") return mul(fun("exp", u), du);
                if (n->name == "log") return div(du, u);
                if (n->name == "sqrt") return div(du, mul(num(2), fun("sqrt", u)));
                throw Error("diff: unknown function " + n->name);
            }
        }
        throw Error("diff: malformed AST");
    }

    // ---- evaluation ---------------------------------------------------------

    static bool jet_is_constant(const Jet& j) {
        for (int k = 1; k <= j.order(); ++k)
            if (j[k] != 0.0) return false;
        return true;
    }

    static Jet ev(const P& n, const std::map<std::string, Jet>& b, int order) {
        switch (n->kind) {
            case Node::Kind::Num: return Jet::constant(order, n->value);
            case Node::Kind::Var: {
                auto it = b.find(n->name);
                if (it == b.end()) throw UnboundVariable(n->name);
                return it->second;
            }
            case Node::Kind::Neg: return -ev(n->a, b, order);
            case Node::Kind::Add: return ev(n->a, b, order) + ev(n->b, b, order);
            case Node::Kind::Sub: return ev(n->a, b, order) - ev(n->b, b, order);
            case Node::Kind::Mul: return ev(n->a, b, order) * ev(n->b, b, order);
            case Node::Kind::Div: return ev(n->a, b, order) / ev(n->b, b, order);
            case Node::Kind::Pow: {
                Jet base = ev(n->a, b, order);
                Jet expo = ev(n->b, b, order);
                if (jet_is_constant(expo)) return pow(base, expo[0]);
                if (!(base[0] > 0.0))
                    throw DomainError("variable exponent needs a positive base");
                return exp(expo * log(base));
            }
            case Node::Kind::Fun: {
                Jet u = ev(n->a, b, order);
                if (n->name == "sin") return sin(u);
                if (n->name == "cos") return cos(u);
                if (n->name == "sinh") return sinh(u);
                if (n->name == "cosh") return cosh(u);
                if (n->name == "tan") return tan(u);
                if (n->name == "exp") return exp(u);
                if (n->name == "log") return log(u);
                if (n->name == "sqrt") return sqrt(u);
                throw Error("eval: unknown function " + n->name);
            }
        }
        throw Error("eval: malformed AST");
    }

    P root_;
};

inline Expr parse_expr(std::string_view text) { return Expr::parse(text); }

inline Expr diff(const Expr& e, std::string_view var) { return e.diff(var); }

inline Jet eval_jet(const Expr& e, const std::map<std::string, Jet>& bindings) {
    return e.eval(bindings);
}

inline double eval_scalar(const Expr& e, const std::map<std::string, double>& bindings) {
    return e.eval_scalar(bindings);
}

inline std::string to_string(const Expr& e) { return e.str(); }

}  // namespace darboux
