#pragma once

#include <cctype>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "specfd/errors.hpp"

namespace specfd {

/// Tiny arithmetic expressions for experiment configs.
///
///   expr   := term { ("+" | "-") term }
///   term   := factor { ("*" | "/") factor }
///   factor := ("+" | "-") factor | primary [ "^" factor ]
///   primary:= number | name | name "(" expr ")" | "(" expr ")"
///
/// Names: coordinates x, y, z; constants pi, e; functions sin, cos, exp, abs.
class Expression {
public:
    static Expression parse(const std::string& text) {
        Parser p{text, 0};
        Expression e;
        e.root_ = p.expr();
        p.spin();
        if (p.at != text.size()) throw ParseError("trailing input at position " +
                                                  std::to_string(p.at) + " in '" + text + "'");
        return e;
    }

    double eval(const Eigen::VectorXd& coords) const { return root_->eval(coords); }

    double operator()(const Eigen::VectorXd& coords) const { return eval(coords); }

    double eval1(double x) const {
        Eigen::VectorXd c(1);
        c[0] = x;
        return eval(c);
    }

private:
    struct Node {
        virtual ~Node() = default;
        virtual double eval(const Eigen::VectorXd&) const = 0;
    };
    using NodePtr = std::shared_ptr<const Node>;

    struct Constant : Node {
        double value;
        explicit Constant(double v) : value(v) {}
        double eval(const Eigen::VectorXd&) const override { return value; }
    };
    struct Coordinate : Node {
        int axis;
        explicit Coordinate(int a) : axis(a) {}
        double eval(const Eigen::VectorXd& c) const override {
            if (axis >= c.size())
                throw EvaluationError("coordinate " + std::string(1, char('x' + axis)) +
                                      " not available in dimension " + std::to_string(c.size()));
            return c[axis];
        }
    };
    struct Unary : Node {
        char op;
        NodePtr arg;
        double eval(const Eigen::VectorXd& c) const override {
            double v = arg->eval(c);
            switch (op) {
                case '-': return -v;
                case 's': return std::sin(v);
                case 'c': return std::cos(v);
                case 'e': return std::exp(v);
                case 'a': return std::abs(v);
            }
            return v;
        }
    };
    struct Binary : Node {
        char op;
        NodePtr lhs, rhs;
        double eval(const Eigen::VectorXd& c) const override {
            double a = lhs->eval(c), b = rhs->eval(c);
            switch (op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                case '^': return std::pow(a, b);
            }
            return 0.0;
        }
    };

    struct Parser {
        const std::string& s;
        size_t at;

        void spin() {
            while (at < s.size() && std::isspace(static_cast<unsigned char>(s[at]))) ++at;
        }
        char peek() {
            spin();
            return at < s.size() ? s[at] : '\0';
        }

        NodePtr expr() {
            NodePtr lhs = term();
            while (peek() == '+' || peek() == '-') {
                char op = s[at++];
                auto node = std::make_shared<Binary>();
                node->op = op;
                node->lhs = lhs;
                node->rhs = term();
                lhs = node;
            }
            return lhs;
        }

        NodePtr term() {
            NodePtr lhs = factor();
            while (peek() == '*' || peek() == '/') {
                char op = s[at++];
                auto node = std::make_shared<Binary>();
                node->op = op;
                node->lhs = lhs;
                node->rhs = factor();
                lhs = node;
            }
            return lhs;
        }

        NodePtr factor() {
            char c = peek();
            if (c == '-' || c == '+') {  // unary sign binds looser than '^'
                ++at;
                NodePtr arg = factor();
                if (c == '+') return arg;
                auto node = std::make_shared<Unary>();
                node->op = '-';
                node->arg = arg;
                return node;
            }
            NodePtr base = primary();
            if (peek() == '^') {
                ++at;
                auto node = std::make_shared<Binary>();
                node->op = '^';
                node->lhs = base;
                node->rhs = factor();  // right associative
                return node;
            }
            return base;
        }

        NodePtr primary() {
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
            if (std::isalpha(static_cast<unsigned char>(c))) return name();
            if (c == '(') {
                ++at;
                NodePtr inner = expr();
                if (peek() != ')') throw ParseError("missing ')' in expression");
                ++at;
                return inner;
            }
            throw ParseError(std::string("unexpected character '") + c + "' in expression");
        }

        NodePtr number() {
            size_t start = at;
            while (at < s.size() &&
                   (std::isdigit(static_cast<unsigned char>(s[at])) || s[at] == '.'))
                ++at;
            if (at < s.size() && (s[at] == 'e' || s[at] == 'E')) {
                size_t mark = at++;
                if (at < s.size() && (s[at] == '+' || s[at] == '-')) ++at;
                if (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]))) {
                    while (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]))) ++at;
                } else {
                    at = mark;  // the 'e' belongs to something else
                }
            }
            try {
                return std::make_shared<Constant>(std::stod(s.substr(start, at - start)));
            } catch (const std::exception&) {
                throw ParseError("bad number literal in expression");
            }
        }

        NodePtr name() {
            size_t start = at;
            while (at < s.size() && std::isalpha(static_cast<unsigned char>(s[at]))) ++at;
            std::string id = s.substr(start, at - start);
            if (id == "x") return std::make_shared<Coordinate>(0);
            if (id == "y") return std::make_shared<Coordinate>(1);
            if (id == "z") return std::make_shared<Coordinate>(2);
            if (id == "pi") return std::make_shared<Constant>(std::numbers::pi);
            if (id == "e") return std::make_shared<Constant>(std::numbers::e);
            char op;
            if (id == "sin") op = 's';
            else if (id == "cos") op = 'c';
            else if (id == "exp") op = 'e';
            else if (id == "abs") op = 'a';
            else throw ParseError("unknown name '" + id + "' in expression");
            if (peek() != '(') throw ParseError("function '" + id + "' needs parentheses");
            ++at;
            auto node = std::make_shared<Unary>();
            node->op = op;
            node->arg = expr();
            if (peek() != ')') throw ParseError("missing ')' after '" + id + "'");
            ++at;
            return node;
        }
    };

    NodePtr root_;
};

}  // namespace specfd
