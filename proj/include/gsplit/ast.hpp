#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gsplit {

struct Term {
    enum class Kind { constant, variable };

    Kind kind = Kind::constant;
    std::string name;

    static Term constant(std::string name) { return {Kind::constant, std::move(name)}; }
    static Term variable(std::string name) { return {Kind::variable, std::move(name)}; }

    bool is_variable() const noexcept { return kind == Kind::variable; }

    auto operator<=>(const Term&) const = default;
};

struct Literal {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const noexcept { return args.size(); }
    bool is_ground() const noexcept;
    /// Distinct variables in argument order.
    std::vector<std::string> variables() const;

    auto operator<=>(const Literal&) const = default;
};

enum class CmpOp { lt, le, gt, ge, eq, ne };

std::string_view to_string(CmpOp op) noexcept;

struct Comparison {
    CmpOp op = CmpOp::eq;
    Term lhs;
    Term rhs;

    std::vector<std::string> variables() const;

    auto operator<=>(const Comparison&) const = default;
};

/// Evaluates a comparison between two constants using the usual ASP term
/// order: integers numerically, integers before symbols, symbols lexically.
bool evaluate(CmpOp op, std::string_view lhs, std::string_view rhs);

enum class HeadKind { normal, disjunctive, constraint, choice, weak };

std::string_view to_string(HeadKind kind) noexcept;

/// `[weight@level, t1, ..., tk]` of a weak constraint; passed through untouched.
struct WeakAnnotation {
    Term weight;
    std::optional<Term> level;
    std::vector<Term> terms;

    auto operator<=>(const WeakAnnotation&) const = default;
};

struct Rule {
    int id = 0;
    std::vector<Literal> head;
    HeadKind head_kind = HeadKind::constraint;
    std::vector<Literal> body_pos;
    std::vector<Literal> body_neg;
    std::vector<Comparison> body_cmp;
    std::optional<WeakAnnotation> weak;

    bool is_fact() const noexcept;
    bool is_constraint() const noexcept { return head_kind == HeadKind::constraint; }

    /// var(r) in order of first occurrence: head, positive body, negative
    /// body, comparisons, weak annotation.
    std::vector<std::string> variables() const;

    /// Maximum arity over head and body literals (comparisons excluded).
    std::size_t max_arity() const noexcept;
    std::size_t max_head_arity() const noexcept;
    std::size_t max_body_arity() const noexcept;

    /// |r| = |H_r ∪ B_r|
    std::size_t size() const noexcept;

    /// Structural equality ignoring the id.
    bool same_shape(const Rule& other) const;
};

struct Program {
    std::vector<Rule> rules;
    std::vector<Literal> facts;

    std::size_t size() const noexcept;
};

/// Parses a program. Every statement, facts included, becomes a Rule with a
/// stable id in source order; `facts` stays empty until split_facts runs.
Program parse_program(std::string_view text);

std::string to_string(const Term& term);
std::string to_string(const Literal& literal);
std::string to_string(const Comparison& cmp);
std::string to_string(const Rule& rule);

/// One statement per line: rules in id order, then facts.
std::string pretty_print(const Program& program);

/// Checks safety of a single rule; throws SafetyError.
void check_safety(const Rule& rule);

bool structurally_equal(const Program& a, const Program& b);

}  // namespace gsplit
