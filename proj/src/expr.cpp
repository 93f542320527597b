#include "monoratio/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "monoratio/errors.hpp"

namespace monoratio {

namespace {

struct FunctionEntry {
    std::string_view name;
    Op op;
};

constexpr FunctionEntry kFunctions[] = {
    {"sin", Op::Sin},   {"cos", Op::Cos},   {"exp", Op::Exp},   {"log", Op::Log},
    {"sqrt", Op::Sqrt}, {"abs", Op::Abs},   {"atan", Op::Atan}, {"tanh", Op::Tanh},
    {"min", Op::Min},   {"max", Op::Max},
};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr run() {
        skip_space();
        if (pos_ == text_.size()) fail("empty expression");
        Expr e = expr();
        skip_space();
        if (pos_ != text_.size()) fail("expected operator or end of input");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    Expr expr() {
        Expr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::binary(Op::Add, std::move(lhs), term());
            } else if (accept('-')) {
                lhs = Expr::binary(Op::Sub, std::move(lhs), term());
            } else {
                return lhs;
            }
        }
    }

    Expr term() {
        Expr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::binary(Op::Mul, std::move(lhs), unary());
            } else if (accept('/')) {
                lhs = Expr::binary(Op::Div, std::move(lhs), unary());
            } else {
                return lhs;
            }
        }
    }

    Expr unary() {
        if (accept('-')) return Expr::unary(Op::Neg, unary());
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (accept('^')) return Expr::binary(Op::Pow, std::move(base), unary());
        return base;
    }

    Expr atom() {
        skip_space();
        if (pos_ == text_.size()) fail("unexpected end of input; expected number, 'x', function or '('");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return call();
        if (accept('(')) {
            Expr inner = expr();
            expect(')');
            return inner;
        }
        fail("expected number, 'x', function or '('");
    }

    Expr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t mantissa = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) {
            pos_ = start;
            fail("malformed number");
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (digits() == 0) fail("malformed exponent");
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc() || ptr != text_.data() + pos_) {
            pos_ = start;
            fail("number out of range");
        }
        return Expr::constant(value);
    }

    Expr call() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x") return Expr::variable();

        const FunctionEntry* entry = nullptr;
        for (const auto& f : kFunctions) {
            if (f.name == name) entry = &f;
        }
        if (entry == nullptr) {
            pos_ = start;
            fail("unknown identifier '" + std::string(name) + "'");
        }
        expect('(');
        Expr first = expr();
        if (arity(entry->op) == 2) {
            expect(',');
            Expr second = expr();
            expect(')');
            return Expr::binary(entry->op, std::move(first), std::move(second));
        }
        expect(')');
        return Expr::unary(entry->op, std::move(first));
    }
};

int precedence(const Expr& e) {
    switch (e.op) {
        case Op::Add:
        case Op::Sub:
            return 1;
        case Op::Mul:
        case Op::Div:
            return 2;
        case Op::Neg:
            return 3;
        case Op::Pow:
            return 4;
        case Op::Const:
            return e.value < 0.0 || std::signbit(e.value) ? 3 : 5;
        default:
            return 5;
    }
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ec == std::errc() ? ptr : buf);
}

void print_into(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out) {
    if (wrap) out += '(';
    print_into(e, out);
    if (wrap) out += ')';
}

void print_into(const Expr& e, std::string& out) {
    switch (e.op) {
        case Op::Const:
            out += format_number(e.value);
            return;
        case Op::Var:
            out += 'x';
            return;
        case Op::Neg:
            out += '-';
            print_wrapped(e.args[0], precedence(e.args[0]) < 3, out);
            return;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: {
            const int p = precedence(e);
            print_wrapped(e.args[0], precedence(e.args[0]) < p, out);
            out += ' ';
            out += op_name(e.op);
            out += ' ';
            print_wrapped(e.args[1], precedence(e.args[1]) <= p, out);
            return;
        }
        case Op::Pow:
            print_wrapped(e.args[0], precedence(e.args[0]) <= 4, out);
            out += '^';
            print_wrapped(e.args[1], precedence(e.args[1]) < 3, out);
            return;
        default:
            out += op_name(e.op);
            out += '(';
            print_into(e.args[0], out);
            if (e.args.size() == 2) {
                out += ", ";
                print_into(e.args[1], out);
            }
            out += ')';
            return;
    }
}

Dual pow_dual(Dual a, Dual b, double x) {
    if (a.value == 0.0 && b.value < 0.0) throw DomainFault(x, "0 raised to a negative power");
    const double v = std::pow(a.value, b.value);
    if (b.deriv == 0.0) {
        if (a.value < 0.0 && b.value != std::floor(b.value)) {
            throw DomainFault(x, "negative base with non-integer exponent");
        }
        const double d = a.deriv == 0.0 ? 0.0 : b.value * std::pow(a.value, b.value - 1.0) * a.deriv;
        return {v, d};
    }
    if (a.value <= 0.0) throw DomainFault(x, "non-positive base with variable exponent");
    return {v, v * (b.deriv * std::log(a.value) + b.value * a.deriv / a.value)};
}

Dual eval_at(const Expr& e, double x) {
    switch (e.op) {
        case Op::Const:
            return Dual::constant(e.value);
        case Op::Var:
            return Dual::variable(x);
        case Op::Neg:
            return -eval_at(e.args[0], x);
        case Op::Sin:
            return sin(eval_at(e.args[0], x));
        case Op::Cos:
            return cos(eval_at(e.args[0], x));
        case Op::Exp:
            return exp(eval_at(e.args[0], x));
        case Op::Log: {
            const Dual a = eval_at(e.args[0], x);
            if (a.value <= 0.0) throw DomainFault(x, "log of non-positive value");
            return log(a);
        }
        case Op::Sqrt: {
            const Dual a = eval_at(e.args[0], x);
            if (a.value < 0.0) throw DomainFault(x, "sqrt of negative value");
            return sqrt(a);
        }
        case Op::Abs:
            return abs(eval_at(e.args[0], x));
        case Op::Atan:
            return atan(eval_at(e.args[0], x));
        case Op::Tanh:
            return tanh(eval_at(e.args[0], x));
        case Op::Add:
            return eval_at(e.args[0], x) + eval_at(e.args[1], x);
        case Op::Sub:
            return eval_at(e.args[0], x) - eval_at(e.args[1], x);
        case Op::Mul:
            return eval_at(e.args[0], x) * eval_at(e.args[1], x);
        case Op::Div: {
            const Dual a = eval_at(e.args[0], x);
            const Dual b = eval_at(e.args[1], x);
            if (b.value == 0.0) throw DomainFault(x, "division by zero");
            return a / b;
        }
        case Op::Pow:
            return pow_dual(eval_at(e.args[0], x), eval_at(e.args[1], x), x);
        case Op::Min: {
            const Dual a = eval_at(e.args[0], x);
            const Dual b = eval_at(e.args[1], x);
            return a.value <= b.value ? a : b;
        }
        case Op::Max: {
            const Dual a = eval_at(e.args[0], x);
            const Dual b = eval_at(e.args[1], x);
            return a.value >= b.value ? a : b;
        }
    }
    throw std::logic_error("unhandled expression node");
}

}  // namespace

int arity(Op op) {
    switch (op) {
        case Op::Const:
        case Op::Var:
            return 0;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div:
        case Op::Pow:
        case Op::Min:
        case Op::Max:
            return 2;
        default:
            return 1;
    }
}

const char* op_name(Op op) {
    switch (op) {
        case Op::Const: return "const";
        case Op::Var: return "x";
        case Op::Neg: return "-";
        case Op::Sin: return "sin";
        case Op::Cos: return "cos";
        case Op::Exp: return "exp";
        case Op::Log: return "log";
        case Op::Sqrt: return "sqrt";
        case Op::Abs: return "abs";
        case Op::Atan: return "atan";
        case Op::Tanh: return "tanh";
        case Op::Add: return "+";
        case Op::Sub: return "-";
        case Op::Mul: return "*";
        case Op::Div: return "/";
        case Op::Pow: return "^";
        case Op::Min: return "min";
        case Op::Max: return "max";
    }
    return "?";
}

Expr Expr::unary(Op op, Expr a) {
    Expr e{op, 0.0, {}};
    e.args.push_back(std::move(a));
    return e;
}

Expr Expr::binary(Op op, Expr a, Expr b) {
    Expr e{op, 0.0, {}};
    e.args.reserve(2);
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
}

std::size_t Expr::depth() const {
    std::size_t d = 0;
    for (const auto& a : args) d = std::max(d, a.depth());
    return d + 1;
}

Expr parse(std::string_view text) { return Parser(text).run(); }

std::string print(const Expr& e) {
    std::string out;
    print_into(e, out);
    return out;
}

Dual eval_dual(const Expr& e, double x) {
    if (!std::isfinite(x)) throw DomainFault(x, "non-finite argument");
    return eval_at(e, x);
}

std::vector<double> scan_domain(const Expr& e, const Interval& window, int n) {
    if (n < 2) throw std::invalid_argument("scan_domain needs at least 2 points");
    std::vector<double> faults;
    const double step = window.length() / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double x = i + 1 == n ? window.hi : window.lo + i * step;
        try {
            if (!eval_dual(e, x).finite()) faults.push_back(x);
        } catch (const DomainFault&) {
            faults.push_back(x);
        }
    }
    return faults;
}

DifferentiableFn::DifferentiableFn(Eval eval, std::string label)
    : eval_(std::make_shared<const Eval>(std::move(eval))), label_(std::move(label)) {}

DifferentiableFn::DifferentiableFn(Expr e) {
    label_ = print(e);
    auto tree = std::make_shared<const Expr>(std::move(e));
    eval_ = std::make_shared<const Eval>([tree](double x) { return eval_dual(*tree, x); });
}

DifferentiableFn DifferentiableFn::from_text(std::string_view text) { return DifferentiableFn(parse(text)); }

DifferentiableFn DifferentiableFn::negated() const {
    auto inner = eval_;
    return {[inner](double x) { return -(*inner)(x); }, "-(" + label_ + ")"};
}

DifferentiableFn DifferentiableFn::mirrored() const {
    auto inner = eval_;
    return {[inner](double x) {
                const Dual d = (*inner)(-x);
                return Dual{d.value, -d.deriv};
            },
            "(" + label_ + ")@(-x)"};
}

}  // namespace monoratio
