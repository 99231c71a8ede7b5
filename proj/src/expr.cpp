#include "reeb/expr.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace reeb::expr {

struct Expression::Node {
    enum class Kind { Number, Var, Norm, Unary, Binary, Call } kind;
    double number = 0;
    char var = 0;       // 'q' or 'p' or 't'
    int index = 0;      // 1-based for q/p
    char op = 0;        // + - * / ^ or 'n' for negate
    std::string fn;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    explicit Parser(const std::string& text) : s(text) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek(char c) {
        skip();
        return pos < s.size() && s[pos] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("expression: " + msg + " at position " + std::to_string(pos));
    }

    NodePtr parse_expr() {
        NodePtr left = parse_term();
        while (true) {
            if (eat('+'))
                left = binary('+', left, parse_term());
            else if (eat('-'))
                left = binary('-', left, parse_term());
            else
                break;
        }
        return left;
    }

    NodePtr parse_term() {
        NodePtr left = parse_power();
        while (true) {
            if (eat('*'))
                left = binary('*', left, parse_power());
            else if (eat('/'))
                left = binary('/', left, parse_power());
            else
                break;
        }
        return left;
    }

    NodePtr parse_power() {
        NodePtr base = parse_unary();
        if (eat('^')) return binary('^', base, parse_power());
        return base;
    }

    NodePtr parse_unary() {
        if (eat('-')) {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Unary;
            n->op = 'n';
            n->lhs = parse_unary();
            return n;
        }
        return parse_primary();
    }

    NodePtr parse_primary() {
        skip();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            double v = std::stod(s.substr(pos), &used);
            pos += used;
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Number;
            n->number = v;
            return n;
        }
        if (c == '(') {
            ++pos;
            NodePtr inner = parse_expr();
            if (!eat(')')) fail("missing ')'");
            return inner;
        }
        if (c == '|') {
            ++pos;
            skip();
            if (pos >= s.size() || (s[pos] != 'p' && s[pos] != 'q')) fail("expected p or q after '|'");
            char var = s[pos++];
            if (!eat('|')) fail("missing closing '|'");
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Norm;
            n->var = var;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
            std::string word = s.substr(start, pos - start);
            if (word == "sin" || word == "cos" || word == "exp" || word == "sqrt") {
                if (!eat('(')) fail("expected '(' after " + word);
                NodePtr arg = parse_expr();
                if (!eat(')')) fail("missing ')' after " + word);
                auto n = std::make_shared<Node>();
                n->kind = Node::Kind::Call;
                n->fn = word;
                n->lhs = arg;
                return n;
            }
            if (word == "t") {
                auto n = std::make_shared<Node>();
                n->kind = Node::Kind::Var;
                n->var = 't';
                return n;
            }
            if ((word == "q" || word == "p")) {
                int index = 1;
                if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                    std::size_t d0 = pos;
                    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                    index = std::stoi(s.substr(d0, pos - d0));
                }
                auto n = std::make_shared<Node>();
                n->kind = Node::Kind::Var;
                n->var = word[0];
                n->index = index;
                return n;
            }
            fail("unknown identifier '" + word + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr binary(char op, NodePtr l, NodePtr r) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Binary;
        n->op = op;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }
};

double eval_node(const Node& n, double t, const std::vector<double>& q,
                 const std::vector<double>& p) {
    switch (n.kind) {
        case Node::Kind::Number: return n.number;
        case Node::Kind::Var: {
            if (n.var == 't') return t;
            const auto& v = (n.var == 'q') ? q : p;
            if (n.index < 1 || std::size_t(n.index) > v.size())
                throw std::invalid_argument("expression: coordinate index out of range");
            return v[std::size_t(n.index) - 1];
        }
        case Node::Kind::Norm: {
            const auto& v = (n.var == 'q') ? q : p;
            double s = 0;
            for (double c : v) s += c * c;
            return std::sqrt(s);
        }
        case Node::Kind::Unary: return -eval_node(*n.lhs, t, q, p);
        case Node::Kind::Call: {
            double a = eval_node(*n.lhs, t, q, p);
            if (n.fn == "sin") return std::sin(a);
            if (n.fn == "cos") return std::cos(a);
            if (n.fn == "exp") return std::exp(a);
            return std::sqrt(a);
        }
        case Node::Kind::Binary: {
            double a = eval_node(*n.lhs, t, q, p);
            double b = eval_node(*n.rhs, t, q, p);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                case '^': return std::pow(a, b);
            }
            throw std::logic_error("expression: unknown operator");
        }
    }
    throw std::logic_error("expression: unknown node kind");
}

}  // namespace

Expression Expression::parse(const std::string& text) {
    Parser parser(text);
    Expression e;
    auto root = parser.parse_expr();
    parser.skip();
    if (parser.pos != text.size())
        throw std::invalid_argument("expression: trailing input after position " +
                                    std::to_string(parser.pos));
    e.root_ = root;
    return e;
}

double Expression::eval(double t, const std::vector<double>& q,
                        const std::vector<double>& p) const {
    if (!root_) throw std::logic_error("expression: empty");
    return eval_node(*root_, t, q, p);
}

}  // namespace reeb::expr
