#include "gsplit/ast.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "gsplit/errors.hpp"

namespace gsplit {

// ---------------------------------------------------------------------------
// Errors

SyntaxError::SyntaxError(const std::string& message, std::size_t line, std::size_t column)
    : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

SafetyError::SafetyError(const std::string& variable, const std::string& rule_text)
    : Error("unsafe variable " + variable + " in rule: " + rule_text), variable_(variable) {}

ArityClashError::ArityClashError(const std::string& predicate)
    : Error("predicate " + predicate + " is used with differing arities"), predicate_(predicate) {}

UnsupportedConstruct::UnsupportedConstruct(const std::string& construct, std::size_t line)
    : Error("unsupported construct at line " + std::to_string(line) + ": " + construct), line_(line) {}

ExactCapExceeded::ExactCapExceeded(std::size_t vertices, std::size_t cap)
    : Error("exact tree decomposition requested for " + std::to_string(vertices) +
            " vertices, cap is " + std::to_string(cap)) {}

// ---------------------------------------------------------------------------
// Basic queries

namespace {

void append_unique(std::vector<std::string>& out, const std::string& name) {
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
}

void append_term_var(std::vector<std::string>& out, const Term& t) {
    if (t.is_variable()) append_unique(out, t.name);
}

std::optional<long long> as_integer(std::string_view s) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return value;
}

}  // namespace

bool Literal::is_ground() const noexcept {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

std::vector<std::string> Literal::variables() const {
    std::vector<std::string> out;
    for (const auto& t : args) append_term_var(out, t);
    return out;
}

std::vector<std::string> Comparison::variables() const {
    std::vector<std::string> out;
    append_term_var(out, lhs);
    append_term_var(out, rhs);
    return out;
}

std::string_view to_string(CmpOp op) noexcept {
    switch (op) {
        case CmpOp::lt: return "<";
        case CmpOp::le: return "<=";
        case CmpOp::gt: return ">";
        case CmpOp::ge: return ">=";
        case CmpOp::eq: return "=";
        case CmpOp::ne: return "!=";
    }
    return "?";
}

std::string_view to_string(HeadKind kind) noexcept {
    switch (kind) {
        case HeadKind::normal: return "normal";
        case HeadKind::disjunctive: return "disjunctive";
        case HeadKind::constraint: return "constraint";
        case HeadKind::choice: return "choice";
        case HeadKind::weak: return "weak";
    }
    return "?";
}

bool evaluate(CmpOp op, std::string_view lhs, std::string_view rhs) {
    int order = 0;
    auto li = as_integer(lhs);
    auto ri = as_integer(rhs);
    if (li && ri) {
        order = *li < *ri ? -1 : (*li > *ri ? 1 : 0);
    } else if (li) {
        order = -1;
    } else if (ri) {
        order = 1;
    } else {
        int c = lhs.compare(rhs);
        order = c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    switch (op) {
        case CmpOp::lt: return order < 0;
        case CmpOp::le: return order <= 0;
        case CmpOp::gt: return order > 0;
        case CmpOp::ge: return order >= 0;
        case CmpOp::eq: return order == 0;
        case CmpOp::ne: return order != 0;
    }
    return false;
}

bool Rule::is_fact() const noexcept {
    return head_kind == HeadKind::normal && head.size() == 1 && head.front().is_ground() &&
           body_pos.empty() && body_neg.empty() && body_cmp.empty();
}

std::vector<std::string> Rule::variables() const {
    std::vector<std::string> out;
    for (const auto& l : head)
        for (const auto& t : l.args) append_term_var(out, t);
    for (const auto& l : body_pos)
        for (const auto& t : l.args) append_term_var(out, t);
    for (const auto& l : body_neg)
        for (const auto& t : l.args) append_term_var(out, t);
    for (const auto& c : body_cmp) {
        append_term_var(out, c.lhs);
        append_term_var(out, c.rhs);
    }
    if (weak) {
        append_term_var(out, weak->weight);
        if (weak->level) append_term_var(out, *weak->level);
        for (const auto& t : weak->terms) append_term_var(out, t);
    }
    return out;
}

namespace {
std::size_t max_arity_of(const std::vector<Literal>& lits) {
    std::size_t a = 0;
    for (const auto& l : lits) a = std::max(a, l.arity());
    return a;
}
}  // namespace

std::size_t Rule::max_head_arity() const noexcept { return max_arity_of(head); }

std::size_t Rule::max_body_arity() const noexcept {
    return std::max(max_arity_of(body_pos), max_arity_of(body_neg));
}

std::size_t Rule::max_arity() const noexcept { return std::max(max_head_arity(), max_body_arity()); }

std::size_t Rule::size() const noexcept {
    std::set<std::pair<bool, Literal>> distinct;
    for (const auto& l : head) distinct.emplace(true, l);
    for (const auto& l : body_pos) distinct.emplace(true, l);
    for (const auto& l : body_neg) distinct.emplace(false, l);
    return distinct.size();
}

bool Rule::same_shape(const Rule& o) const {
    return head == o.head && head_kind == o.head_kind && body_pos == o.body_pos &&
           body_neg == o.body_neg && body_cmp == o.body_cmp && weak == o.weak;
}

std::size_t Program::size() const noexcept {
    std::size_t total = facts.size();
    for (const auto& r : rules) total += r.size();
    return total;
}

bool structurally_equal(const Program& a, const Program& b) {
    if (a.rules.size() != b.rules.size() || a.facts != b.facts) return false;
    for (std::size_t i = 0; i < a.rules.size(); ++i) {
        if (a.rules[i].id != b.rules[i].id || !a.rules[i].same_shape(b.rules[i])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Term& term) { return term.name; }

std::string to_string(const Literal& literal) {
    std::string out = literal.predicate;
    if (!literal.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < literal.args.size(); ++i) {
            if (i) out += ',';
            out += literal.args[i].name;
        }
        out += ')';
    }
    return out;
}

std::string to_string(const Comparison& cmp) {
    return cmp.lhs.name + " " + std::string(to_string(cmp.op)) + " " + cmp.rhs.name;
}

namespace {

std::string body_text(const Rule& rule) {
    std::vector<std::string> parts;
    for (const auto& l : rule.body_pos) parts.push_back(to_string(l));
    for (const auto& l : rule.body_neg) parts.push_back("not " + to_string(l));
    for (const auto& c : rule.body_cmp) parts.push_back(to_string(c));
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ", ";
        out += parts[i];
    }
    return out;
}

}  // namespace

std::string to_string(const Rule& rule) {
    const std::string body = body_text(rule);
    std::string head;
    switch (rule.head_kind) {
        case HeadKind::weak: {
            std::string out = ":~ " + body + ". [" + rule.weak->weight.name;
            if (rule.weak->level) out += "@" + rule.weak->level->name;
            for (const auto& t : rule.weak->terms) out += "," + t.name;
            return out + "]";
        }
        case HeadKind::constraint:
            return ":- " + body + ".";
        case HeadKind::choice:
            head = "{" + to_string(rule.head.front()) + "}";
            break;
        case HeadKind::normal:
        case HeadKind::disjunctive:
            for (std::size_t i = 0; i < rule.head.size(); ++i) {
                if (i) head += " | ";
                head += to_string(rule.head[i]);
            }
            break;
    }
    if (body.empty()) return head + ".";
    return head + " :- " + body + ".";
}

std::string pretty_print(const Program& program) {
    std::vector<const Rule*> ordered;
    for (const auto& r : program.rules) ordered.push_back(&r);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const Rule* a, const Rule* b) { return a->id < b->id; });
    std::string out;
    for (const auto* r : ordered) out += to_string(*r) + "\n";
    for (const auto& f : program.facts) out += to_string(f) + ".\n";
    return out;
}

// ---------------------------------------------------------------------------
// Safety

void check_safety(const Rule& rule) {
    std::set<std::string> bound;
    for (const auto& l : rule.body_pos)
        for (const auto& t : l.args)
            if (t.is_variable()) bound.insert(t.name);
    for (const auto& v : rule.variables()) {
        if (!bound.contains(v)) throw SafetyError(v, to_string(rule));
    }
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
    lower,     // constant / predicate identifier
    upper,     // variable
    integer,
    lparen, rparen, lbrace, rbrace, lbracket, rbracket,
    comma, dot, semicolon, bar, at, colon,
    if_,       // :-
    weak_if,   // :~
    cmp,       // comparison operator, text holds it
    hash,      // #word
    dotdot,
    arith,     // + - * / \ and friends
    end,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            const std::size_t line = line_, col = col_;
            if (pos_ >= src_.size()) {
                out.push_back({Tok::end, "", line, col});
                return out;
            }
            const char c = src_[pos_];
            auto emit = [&](Tok k, std::size_t n) {
                out.push_back({k, std::string(src_.substr(pos_, n)), line, col});
                advance(n);
            };
            if (std::islower(static_cast<unsigned char>(c)) ||
                (c == '_' && peek(1) == '_')) {
                emit(Tok::lower, ident_length());
            } else if (std::isupper(static_cast<unsigned char>(c))) {
                emit(Tok::upper, ident_length());
            } else if (c == '_') {
                throw SyntaxError("anonymous variables are not supported", line, col);
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t n = 0;
                while (pos_ + n < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + n]))) ++n;
                emit(Tok::integer, n);
            } else if (c == '#') {
                std::size_t n = 1;
                while (pos_ + n < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_ + n])) || src_[pos_ + n] == '_'))
                    ++n;
                emit(Tok::hash, n);
            } else if (c == ':' && peek(1) == '-') {
                emit(Tok::if_, 2);
            } else if (c == ':' && peek(1) == '~') {
                emit(Tok::weak_if, 2);
            } else if (c == ':') {
                emit(Tok::colon, 1);
            } else if (c == '.' && peek(1) == '.') {
                emit(Tok::dotdot, 2);
            } else if (c == '<' || c == '>') {
                emit(Tok::cmp, (peek(1) == '=' || (c == '<' && peek(1) == '>')) ? 2 : 1);
            } else if (c == '!' && peek(1) == '=') {
                emit(Tok::cmp, 2);
            } else if (c == '=') {
                emit(Tok::cmp, peek(1) == '=' ? 2 : 1);
            } else {
                switch (c) {
                    case '(': emit(Tok::lparen, 1); break;
                    case ')': emit(Tok::rparen, 1); break;
                    case '{': emit(Tok::lbrace, 1); break;
                    case '}': emit(Tok::rbrace, 1); break;
                    case '[': emit(Tok::lbracket, 1); break;
                    case ']': emit(Tok::rbracket, 1); break;
                    case ',': emit(Tok::comma, 1); break;
                    case '.': emit(Tok::dot, 1); break;
                    case ';': emit(Tok::semicolon, 1); break;
                    case '|': emit(Tok::bar, 1); break;
                    case '@': emit(Tok::at, 1); break;
                    case '+': case '-': case '*': case '/': case '\\': case '&': case '^': case '?':
                        emit(Tok::arith, 1);
                        break;
                    default:
                        throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
                }
            }
        }
    }

private:
    char peek(std::size_t off) const { return pos_ + off < src_.size() ? src_[pos_ + off] : '\0'; }

    std::size_t ident_length() const {
        std::size_t n = 0;
        while (pos_ + n < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_ + n])) || src_[pos_ + n] == '_' ||
                src_[pos_ + n] == '\''))
            ++n;
        return n;
    }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance(1);
            } else if (c == '%' && peek(1) == '*') {
                const std::size_t line = line_, col = col_;
                advance(2);
                while (pos_ < src_.size() && !(src_[pos_] == '*' && peek(1) == '%')) advance(1);
                if (pos_ >= src_.size()) throw SyntaxError("unterminated block comment", line, col);
                advance(2);
            } else if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

CmpOp cmp_from_text(const std::string& s) {
    if (s == "<") return CmpOp::lt;
    if (s == "<=") return CmpOp::le;
    if (s == ">") return CmpOp::gt;
    if (s == ">=") return CmpOp::ge;
    if (s == "=" || s == "==") return CmpOp::eq;
    return CmpOp::ne;  // != and <>
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Program run() {
        Program program;
        while (cur().kind != Tok::end) {
            Rule rule = statement();
            rule.id = static_cast<int>(program.rules.size());
            check_safety(rule);
            program.rules.push_back(std::move(rule));
        }
        check_arities(program);
        return program;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& ahead(std::size_t n) const { return toks_[std::min(pos_ + n, toks_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw SyntaxError(msg, cur().line, cur().column);
    }
    [[noreturn]] void unsupported(const std::string& what) const {
        throw UnsupportedConstruct(what, cur().line);
    }

    Token expect(Tok kind, const char* what) {
        if (cur().kind != kind) {
            if (cur().kind == Tok::hash) unsupported(cur().text);
            if (cur().kind == Tok::dotdot) unsupported("interval '..'");
            if (cur().kind == Tok::arith) unsupported("arithmetic term '" + cur().text + "'");
            fail(std::string("expected ") + what + ", found '" + cur().text + "'");
        }
        return toks_[pos_++];
    }

    Rule statement() {
        Rule rule;
        if (cur().kind == Tok::hash) unsupported(cur().text);
        if (cur().kind == Tok::weak_if) {
            ++pos_;
            body(rule);
            expect(Tok::dot, "'.'");
            expect(Tok::lbracket, "'[' after weak constraint");
            WeakAnnotation w;
            w.weight = term();
            if (cur().kind == Tok::at) {
                ++pos_;
                w.level = term();
            }
            while (cur().kind == Tok::comma) {
                ++pos_;
                w.terms.push_back(term());
            }
            expect(Tok::rbracket, "']'");
            rule.weak = std::move(w);
            rule.head_kind = HeadKind::weak;
            return rule;
        }
        if (cur().kind == Tok::if_) {
            ++pos_;
            body(rule);
            expect(Tok::dot, "'.'");
            rule.head_kind = HeadKind::constraint;
            return rule;
        }
        head(rule);
        if (cur().kind == Tok::if_) {
            ++pos_;
            body(rule);
        }
        expect(Tok::dot, "'.'");
        return rule;
    }

    void head(Rule& rule) {
        if (cur().kind == Tok::integer && ahead(1).kind == Tok::lbrace) unsupported("choice bounds");
        if (cur().kind == Tok::lbrace) {
            ++pos_;
            if (cur().kind == Tok::rbrace) unsupported("empty choice");
            rule.head.push_back(literal());
            if (cur().kind == Tok::colon) unsupported("conditional choice element");
            if (cur().kind == Tok::semicolon || cur().kind == Tok::comma)
                unsupported("choice with more than one element");
            expect(Tok::rbrace, "'}'");
            if (cur().kind == Tok::integer || cur().kind == Tok::cmp) unsupported("choice bounds");
            rule.head_kind = HeadKind::choice;
            return;
        }
        rule.head.push_back(literal());
        while (cur().kind == Tok::bar || cur().kind == Tok::semicolon) {
            ++pos_;
            rule.head.push_back(literal());
        }
        if (cur().kind == Tok::colon) unsupported("conditional literal");
        rule.head_kind = rule.head.size() == 1 ? HeadKind::normal : HeadKind::disjunctive;
    }

    void body(Rule& rule) {
        element(rule);
        while (cur().kind == Tok::comma || cur().kind == Tok::semicolon) {
            if (cur().kind == Tok::semicolon) fail("';' is not a body separator");
            ++pos_;
            element(rule);
        }
    }

    void element(Rule& rule) {
        if (cur().kind == Tok::hash) unsupported("aggregate " + cur().text);
        if (cur().kind == Tok::integer && (ahead(1).kind == Tok::lbrace || ahead(1).kind == Tok::hash))
            unsupported("aggregate");
        if (cur().kind == Tok::lbrace) unsupported("aggregate");
        if (cur().kind == Tok::lower && cur().text == "not" && ahead(1).kind == Tok::lower) {
            ++pos_;
            if (cur().text == "not") unsupported("double negation");
            rule.body_neg.push_back(literal());
            return;
        }
        const bool starts_term = cur().kind == Tok::upper || cur().kind == Tok::integer ||
                                 (cur().kind == Tok::arith && cur().text == "-") ||
                                 (cur().kind == Tok::lower && ahead(1).kind == Tok::cmp);
        if (starts_term) {
            Comparison c;
            c.lhs = term();
            if (cur().kind != Tok::cmp) {
                if (cur().kind == Tok::arith) unsupported("arithmetic term '" + cur().text + "'");
                if (cur().kind == Tok::dotdot) unsupported("interval '..'");
                fail("expected comparison operator");
            }
            c.op = cmp_from_text(toks_[pos_++].text);
            c.rhs = term();
            if (cur().kind == Tok::arith) unsupported("arithmetic term '" + cur().text + "'");
            rule.body_cmp.push_back(std::move(c));
            return;
        }
        rule.body_pos.push_back(literal());
    }

    Literal literal() {
        if (cur().kind == Tok::arith && cur().text == "-") unsupported("classical negation");
        if (cur().kind == Tok::hash) unsupported(cur().text);
        Token name = expect(Tok::lower, "predicate name");
        if (name.text == "not") fail("'not' is a keyword");
        Literal lit;
        lit.predicate = name.text;
        if (cur().kind == Tok::lparen) {
            ++pos_;
            lit.args.push_back(term());
            while (cur().kind == Tok::comma) {
                ++pos_;
                lit.args.push_back(term());
            }
            expect(Tok::rparen, "')'");
        }
        return lit;
    }

    Term term() {
        if (cur().kind == Tok::upper) return Term::variable(toks_[pos_++].text);
        if (cur().kind == Tok::integer) {
            Term t = Term::constant(toks_[pos_++].text);
            if (cur().kind == Tok::dotdot) unsupported("interval '..'");
            if (cur().kind == Tok::arith) unsupported("arithmetic term '" + cur().text + "'");
            return t;
        }
        if (cur().kind == Tok::arith && cur().text == "-" && ahead(1).kind == Tok::integer) {
            ++pos_;
            return Term::constant("-" + toks_[pos_++].text);
        }
        if (cur().kind == Tok::lower) {
            if (ahead(1).kind == Tok::lparen) unsupported("function term " + cur().text);
            return Term::constant(toks_[pos_++].text);
        }
        if (cur().kind == Tok::hash) unsupported(cur().text);
        if (cur().kind == Tok::arith) unsupported("arithmetic term '" + cur().text + "'");
        fail("expected a term, found '" + cur().text + "'");
    }

    static void check_arities(const Program& program) {
        std::map<std::string, std::size_t> arity;
        auto visit = [&](const Literal& l) {
            auto [it, inserted] = arity.emplace(l.predicate, l.arity());
            if (!inserted && it->second != l.arity()) throw ArityClashError(l.predicate);
        };
        for (const auto& r : program.rules) {
            for (const auto& l : r.head) visit(l);
            for (const auto& l : r.body_pos) visit(l);
            for (const auto& l : r.body_neg) visit(l);
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Program parse_program(std::string_view text) {
    return Parser(Lexer(text).run()).run();
}

}  // namespace gsplit
