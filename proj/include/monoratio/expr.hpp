#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "monoratio/dual.hpp"
#include "monoratio/interval.hpp"

namespace monoratio {

enum class Op {
    Const,
    Var,
    // unary
    Neg,
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Abs,
    Atan,
    Tanh,
    // binary
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Min,
    Max,
};

int arity(Op op);
const char* op_name(Op op);

/// Expression tree in the single variable x.
struct Expr {
    Op op = Op::Const;
    double value = 0.0;  // only meaningful for Const
    std::vector<Expr> args;

    static Expr constant(double c) { return Expr{Op::Const, c, {}}; }
    static Expr variable() { return Expr{Op::Var, 0.0, {}}; }
    static Expr unary(Op op, Expr a);
    static Expr binary(Op op, Expr a, Expr b);

    std::size_t depth() const;

    bool operator==(const Expr&) const = default;
};

/// Recursive-descent parser. Precedence, tightest first: `^` (right
/// associative), unary minus, `* /`, `+ -`. So `-x^2` is `-(x^2)` and
/// `2^-x` is `2^(-x)`.
Expr parse(std::string_view text);

/// Prints with enough parentheses and digits that parse(print(e)) == e.
std::string print(const Expr& e);

/// Value and derivative at x. Throws DomainFault on log of non-positive,
/// sqrt of negative, division by zero and 0^negative.
Dual eval_dual(const Expr& e, double x);

/// Evaluates on n uniformly spaced points including both ends of the window
/// and returns every x where evaluation faulted or produced a non-finite value
/// or derivative.
std::vector<double> scan_domain(const Expr& e, const Interval& window, int n);

/// A scalar function of one variable that yields (value, derivative) pairs.
///
/// Cheap to copy; the callable is shared and must be reentrant.
class DifferentiableFn {
public:
    using Eval = std::function<Dual(double)>;

    DifferentiableFn() = default;
    DifferentiableFn(Eval eval, std::string label);
    explicit DifferentiableFn(Expr e);

    static DifferentiableFn from_text(std::string_view text);

    Dual operator()(double x) const { return (*eval_)(x); }
    double value(double x) const { return (*eval_)(x).value; }
    double deriv(double x) const { return (*eval_)(x).deriv; }

    const std::string& label() const noexcept { return label_; }
    explicit operator bool() const noexcept { return static_cast<bool>(eval_); }

    /// x -> -h(x)
    DifferentiableFn negated() const;
    /// x -> h(-x)
    DifferentiableFn mirrored() const;

private:
    std::shared_ptr<const Eval> eval_;
    std::string label_;
};

}  // namespace monoratio
