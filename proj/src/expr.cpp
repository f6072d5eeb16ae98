#include "kelvin/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <system_error>

namespace kelvin {

enum class Kind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg, Call };

enum class Func { Sin, Cos, Exp, Log, Sqrt, Abs };

constexpr std::array<std::string_view, 6> kFuncNames{"sin", "cos", "exp", "log", "sqrt", "abs"};

struct FunctionExpr::Node {
    Kind kind = Kind::Number;
    double value = 0.0;
    // Named constants keep their spelling so printing round-trips.
    std::string_view constant;
    Func func = Func::Sin;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

using Node = FunctionExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

namespace {

NodePtr make_binary(Kind kind, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse() {
        NodePtr root = expr();
        skip_space();
        if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
    [[noreturn]] void fail_at(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' but reached end of input");
            fail(std::string("expected '") + c + "'");
        }
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = make_binary(Kind::Add, lhs, term());
            } else if (accept('-')) {
                lhs = make_binary(Kind::Sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        for (;;) {
            if (accept('*')) {
                lhs = make_binary(Kind::Mul, lhs, factor());
            } else if (accept('/')) {
                lhs = make_binary(Kind::Div, lhs, factor());
            } else {
                return lhs;
            }
        }
    }

    NodePtr factor() {
        NodePtr base = unary();
        if (accept('^')) return make_binary(Kind::Pow, base, factor());
        return base;
    }

    NodePtr unary() {
        if (accept('-')) {
            auto n = std::make_shared<Node>();
            n->kind = Kind::Neg;
            n->lhs = atom();
            return n;
        }
        return atom();
    }

    NodePtr atom() {
        skip_space();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t count = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++count;
            }
            return count;
        };
        std::size_t mantissa = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) fail_at("malformed number", start);
        // An exponent needs a digit after the optional sign; otherwise 'e' is left for the next token.
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                pos_ = look;
                digits();
            }
        }
        double value = 0.0;
        const auto [end, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (ec == std::errc::result_out_of_range) fail_at("number out of range", start);
        if (ec != std::errc() || end != src_.data() + pos_) fail_at("malformed number", start);
        auto n = std::make_shared<Node>();
        n->value = value;
        return n;
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);

        auto n = std::make_shared<Node>();
        if (name == "x") {
            n->kind = Kind::Variable;
        } else if (name == "pi" || name == "e") {
            n->value = name == "pi" ? std::numbers::pi : std::numbers::e;
            n->constant = name == "pi" ? "pi" : "e";
        } else {
            std::size_t k = 0;
            while (k < kFuncNames.size() && kFuncNames[k] != name) ++k;
            if (k == kFuncNames.size()) fail_at("unknown identifier '" + std::string(name) + "'", start);
            n->kind = Kind::Call;
            n->func = static_cast<Func>(k);
            skip_space();
            if (pos_ >= src_.size() || src_[pos_] != '(') {
                fail("function '" + std::string(name) + "' expects one argument in parentheses");
            }
            ++pos_;
            skip_space();
            if (pos_ < src_.size() && src_[pos_] == ')') {
                fail("function '" + std::string(name) + "' takes exactly one argument, got none");
            }
            n->lhs = expr();
            skip_space();
            if (pos_ < src_.size() && src_[pos_] == ',') {
                fail("function '" + std::string(name) + "' takes exactly one argument");
            }
            expect(')');
            return n;
        }
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == '(') {
            fail("'" + std::string(name) + "' is not a function and takes no arguments");
        }
        return n;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

double eval(const Node& n, double x) {
    switch (n.kind) {
        case Kind::Number: return n.value;
        case Kind::Variable: return x;
        case Kind::Add: return eval(*n.lhs, x) + eval(*n.rhs, x);
        case Kind::Sub: return eval(*n.lhs, x) - eval(*n.rhs, x);
        case Kind::Mul: return eval(*n.lhs, x) * eval(*n.rhs, x);
        case Kind::Div: return eval(*n.lhs, x) / eval(*n.rhs, x);
        case Kind::Pow: return std::pow(eval(*n.lhs, x), eval(*n.rhs, x));
        case Kind::Neg: return -eval(*n.lhs, x);
        case Kind::Call: {
            const double a = eval(*n.lhs, x);
            switch (n.func) {
                case Func::Sin: return std::sin(a);
                case Func::Cos: return std::cos(a);
                case Func::Exp: return std::exp(a);
                case Func::Log: return std::log(a);
                case Func::Sqrt: return std::sqrt(a);
                case Func::Abs: return std::abs(a);
            }
        }
    }
    return 0.0;
}

// Binding strength: sums < products < powers < negation < atoms.
int precedence(const Node& n) {
    switch (n.kind) {
        case Kind::Add:
        case Kind::Sub: return 1;
        case Kind::Mul:
        case Kind::Div: return 2;
        case Kind::Pow: return 3;
        case Kind::Neg: return 4;
        default: return 5;
    }
}

void print(const Node& n, std::string& out);

void print_wrapped(const Node& n, bool wrap, std::string& out) {
    if (wrap) out += '(';
    print(n, out);
    if (wrap) out += ')';
}

void print(const Node& n, std::string& out) {
    switch (n.kind) {
        case Kind::Number: {
            if (!n.constant.empty()) {
                out += n.constant;
                return;
            }
            std::array<char, 32> buf{};
            const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), n.value);
            out.append(buf.data(), res.ptr);
            return;
        }
        case Kind::Variable: out += 'x'; return;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div: {
            const int p = precedence(n);
            print_wrapped(*n.lhs, precedence(*n.lhs) < p, out);
            out += n.kind == Kind::Add ? " + " : n.kind == Kind::Sub ? " - " : n.kind == Kind::Mul ? "*" : "/";
            print_wrapped(*n.rhs, precedence(*n.rhs) <= p, out);
            return;
        }
        case Kind::Pow:
            print_wrapped(*n.lhs, precedence(*n.lhs) < 4, out);
            out += '^';
            print_wrapped(*n.rhs, precedence(*n.rhs) < 3, out);
            return;
        case Kind::Neg:
            out += '-';
            print_wrapped(*n.lhs, precedence(*n.lhs) < 5, out);
            return;
        case Kind::Call:
            out += kFuncNames[static_cast<std::size_t>(n.func)];
            out += '(';
            print(*n.lhs, out);
            out += ')';
            return;
    }
}

}  // namespace

FunctionExpr::FunctionExpr(std::string source, std::shared_ptr<const Node> root)
    : source_(std::move(source)), root_(std::move(root)) {}

double FunctionExpr::evaluate(double x) const { return eval(*root_, x); }

std::string FunctionExpr::to_string() const {
    std::string out;
    print(*root_, out);
    return out;
}

FunctionExpr parse_expr(std::string_view source) {
    Parser parser(source);
    NodePtr root = parser.parse();
    return FunctionExpr(std::string(source), std::move(root));
}

}  // namespace kelvin
