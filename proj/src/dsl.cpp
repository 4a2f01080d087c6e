#include "pmfix/dsl.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include "pmfix/catalog.hpp"
#include "pmfix/errors.hpp"
#include "pmfix/report.hpp"

namespace pmfix::dsl {

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

double eval_expr(const Expr& expr, const Bindings& b) {
    switch (expr.kind) {
        case Expr::Kind::Number:
            return expr.number;
        case Expr::Kind::Var:
            if (expr.var == 'x') return b.x;
            if (!b.y) throw EvalError("unbound variable y");
            return *b.y;
        case Expr::Kind::Unary:
            return -eval_expr(*expr.lhs, b);
        case Expr::Kind::Binary: {
            const double l = eval_expr(*expr.lhs, b);
            const double r = eval_expr(*expr.rhs, b);
            double v = 0;
            switch (expr.op) {
                case BinOp::Add: v = l + r; break;
                case BinOp::Sub: v = l - r; break;
                case BinOp::Mul: v = l * r; break;
                case BinOp::Div:
                    if (r == 0.0) throw EvalError("division by zero");
                    v = l / r;
                    break;
            }
            if (!std::isfinite(v)) throw EvalError("non-finite intermediate value");
            return v;
        }
        case Expr::Kind::Call: {
            if (expr.callee == "abs") return std::abs(eval_expr(*expr.args[0], b));
            const double a0 = eval_expr(*expr.args[0], b);
            const double a1 = eval_expr(*expr.args[1], b);
            return expr.callee == "max" ? std::max(a0, a1) : std::min(a0, a1);
        }
    }
    throw EvalError("malformed expression node");
}

bool eval_predicate(const Predicate& pred, const Bindings& b) {
    auto compare = [&](const Comparison& c) {
        const double l = eval_expr(*c.lhs, b);
        const double r = eval_expr(*c.rhs, b);
        switch (c.op) {
            case CmpOp::Le: return l <= r;
            case CmpOp::Lt: return l < r;
            case CmpOp::Eq: return l == r;
            case CmpOp::Ge: return l >= r;
            case CmpOp::Gt: return l > r;
        }
        return false;
    };
    bool acc = compare(pred.comparisons[0]);
    for (std::size_t i = 0; i < pred.joins.size(); ++i) {
        const bool next = compare(pred.comparisons[i + 1]);
        acc = pred.joins[i] == BoolOp::And ? (acc && next) : (acc || next);
    }
    return acc;
}

double eval_piecewise(const Piecewise& pw, const Bindings& b) {
    for (const auto& c : pw.cases)
        if (!c.when || eval_predicate(*c.when, b)) return eval_expr(*c.body, b);
    throw EvalError("no piecewise case matched");  // unreachable: otherwise is mandatory
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class TokKind { Ident, Number, String, Punct, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    double number = 0;
    int line = 1, column = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;

    char cur() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    char lookahead() const { return pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0'; }

    void bump() {
        if (cur() == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            const char c = cur();
            if (c == '#') {
                while (pos_ < src_.size() && cur() != '\n') bump();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                bump();
            } else {
                break;
            }
        }
    }

    void advance() {
        skip_trivia();
        tok_ = Token{};
        tok_.line = line_;
        tok_.column = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = TokKind::End;
            tok_.text = "end of input";
            return;
        }
        const char c = cur();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '_') {
                word += cur();
                bump();
            }
            tok_.kind = TokKind::Ident;
            tok_.text = std::move(word);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && std::isdigit(static_cast<unsigned char>(lookahead())))) {
            std::string num;
            while (std::isdigit(static_cast<unsigned char>(cur())) || cur() == '.') {
                num += cur();
                bump();
            }
            if (cur() == 'e' || cur() == 'E') {
                num += cur();
                bump();
                if (cur() == '+' || cur() == '-') {
                    num += cur();
                    bump();
                }
                while (std::isdigit(static_cast<unsigned char>(cur()))) {
                    num += cur();
                    bump();
                }
            }
            char* end = nullptr;
            const double v = std::strtod(num.c_str(), &end);
            if (end != num.c_str() + num.size() || !std::isfinite(v))
                throw ParseError("bad numeric literal '" + num + "'", tok_.line, tok_.column,
                                 "a number");
            tok_.kind = TokKind::Number;
            tok_.text = std::move(num);
            tok_.number = v;
            return;
        }
        if (c == '"') {
            bump();
            std::string value;
            while (cur() != '"') {
                if (cur() == '\0' || cur() == '\n')
                    throw ParseError("unterminated string", tok_.line, tok_.column, "'\"'");
                value += cur();
                bump();
            }
            bump();
            tok_.kind = TokKind::String;
            tok_.text = std::move(value);
            return;
        }
        // Two-character comparison operators first.
        static const char* twos[] = {"<=", ">=", "=="};
        for (const char* t : twos) {
            if (c == t[0] && lookahead() == t[1]) {
                tok_.kind = TokKind::Punct;
                tok_.text = t;
                bump();
                bump();
                return;
            }
        }
        static const std::string singles = "=(){};:,+-*/<>";
        if (singles.find(c) != std::string::npos) {
            tok_.kind = TokKind::Punct;
            tok_.text = std::string(1, c);
            bump();
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_, {});
    }
};

// ---------------------------------------------------------------------------
// Parser (recursive descent)
// ---------------------------------------------------------------------------

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) {}

    ParsedConfig parse() {
        ParsedConfig config;
        if (lex_.peek().kind == TokKind::End)
            fail("empty config", "one of 'space', 'map', 'sample', 'params'");
        while (lex_.peek().kind != TokKind::End) config.stmts.push_back(parse_stmt());
        return config;
    }

private:
    Lexer lex_;

    [[noreturn]] void fail(const std::string& msg, const std::string& expected) {
        const Token& t = lex_.peek();
        throw ParseError(msg + " (found '" + t.text + "')", t.line, t.column, expected);
    }

    Token expect_punct(const std::string& text) {
        if (lex_.peek().kind != TokKind::Punct || lex_.peek().text != text)
            fail("unexpected token", "'" + text + "'");
        return lex_.take();
    }

    bool peek_punct(const std::string& text) const {
        return lex_.peek().kind == TokKind::Punct && lex_.peek().text == text;
    }

    bool peek_ident(const std::string& word) const {
        return lex_.peek().kind == TokKind::Ident && lex_.peek().text == word;
    }

    Stmt parse_stmt() {
        if (lex_.peek().kind != TokKind::Ident)
            fail("expected a statement", "one of 'space', 'map', 'sample', 'params'");
        const Token kw = lex_.take();
        Stmt stmt;
        stmt.line = kw.line;
        stmt.column = kw.column;
        if (kw.text == "space") stmt.slot = Stmt::Slot::Space;
        else if (kw.text == "map") stmt.slot = Stmt::Slot::Map;
        else if (kw.text == "sample") stmt.slot = Stmt::Slot::Sample;
        else if (kw.text == "params") stmt.slot = Stmt::Slot::Params;
        else
            throw ParseError("unknown statement '" + kw.text + "'", kw.line, kw.column,
                             "one of 'space', 'map', 'sample', 'params'");
        expect_punct("=");
        stmt.value = parse_value();
        return stmt;
    }

    ValueNode parse_value() {
        ValueNode value;
        const Token& t = lex_.peek();
        value.line = t.line;
        value.column = t.column;
        if (peek_ident("catalog")) {
            lex_.take();
            expect_punct("(");
            if (lex_.peek().kind != TokKind::String) fail("catalog needs a quoted id", "a string");
            value.kind = ValueNode::Kind::CatalogRef;
            value.catalog_id = lex_.take().text;
            expect_punct(")");
            return value;
        }
        if (peek_ident("pmetric") || peek_ident("map")) {
            value.kind = ValueNode::Kind::Piecewise;
            value.piecewise = parse_piecewise();
            return value;
        }
        if (peek_ident("list") || peek_ident("range") || peek_ident("geometric") ||
            peek_ident("union")) {
            value.kind = ValueNode::Kind::Generator;
            value.generator = parse_generator();
            return value;
        }
        if (peek_punct("{")) {
            value.kind = ValueNode::Kind::ParamTable;
            value.params = parse_param_table();
            return value;
        }
        fail("expected a value", "one of 'catalog', 'pmetric', 'map', a sample generator, '{'");
    }

    Piecewise parse_piecewise() {
        const Token kw = lex_.take();  // pmetric | map
        Piecewise pw;
        pw.kind = kw.text == "pmetric" ? Piecewise::Kind::PMetric : Piecewise::Kind::Map;
        expect_punct("{");
        while (!peek_punct("}")) {
            if (lex_.peek().kind == TokKind::End) fail("unterminated block", "'}'");
            pw.cases.push_back(parse_case());
        }
        expect_punct("}");
        validate_piecewise(pw, kw.line, kw.column);
        return pw;
    }

    Case parse_case() {
        Case c;
        const Token& t = lex_.peek();
        c.line = t.line;
        c.column = t.column;
        if (peek_ident("when")) {
            lex_.take();
            c.when = parse_predicate();
        } else if (peek_ident("otherwise")) {
            lex_.take();
        } else {
            fail("expected a case", "'when' or 'otherwise'");
        }
        expect_punct(":");
        c.body = parse_expr();
        expect_punct(";");
        return c;
    }

    Predicate parse_predicate() {
        Predicate pred;
        pred.comparisons.push_back(parse_comparison());
        while (peek_ident("and") || peek_ident("or")) {
            pred.joins.push_back(lex_.take().text == "and" ? BoolOp::And : BoolOp::Or);
            pred.comparisons.push_back(parse_comparison());
        }
        return pred;
    }

    Comparison parse_comparison() {
        Comparison cmp;
        cmp.lhs = parse_expr();
        if (lex_.peek().kind != TokKind::Punct) fail("expected a comparison", "one of <=, <, ==, >=, >");
        const std::string op = lex_.peek().text;
        if (op == "<=") cmp.op = CmpOp::Le;
        else if (op == "<") cmp.op = CmpOp::Lt;
        else if (op == "==") cmp.op = CmpOp::Eq;
        else if (op == ">=") cmp.op = CmpOp::Ge;
        else if (op == ">") cmp.op = CmpOp::Gt;
        else fail("expected a comparison", "one of <=, <, ==, >=, >");
        lex_.take();
        cmp.rhs = parse_expr();
        return cmp;
    }

    ExprPtr parse_expr() {
        ExprPtr acc = parse_term();
        while (peek_punct("+") || peek_punct("-")) {
            const Token op = lex_.take();
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::Binary;
            node->op = op.text == "+" ? BinOp::Add : BinOp::Sub;
            node->lhs = acc;
            node->rhs = parse_term();
            node->line = op.line;
            node->column = op.column;
            acc = node;
        }
        return acc;
    }

    ExprPtr parse_term() {
        ExprPtr acc = parse_factor();
        while (peek_punct("*") || peek_punct("/")) {
            const Token op = lex_.take();
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::Binary;
            node->op = op.text == "*" ? BinOp::Mul : BinOp::Div;
            node->lhs = acc;
            node->rhs = parse_factor();
            node->line = op.line;
            node->column = op.column;
            acc = node;
        }
        return acc;
    }

    ExprPtr parse_factor() {
        const Token t = lex_.peek();
        if (peek_punct("-")) {
            lex_.take();
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::Unary;
            node->lhs = parse_factor();
            node->line = t.line;
            node->column = t.column;
            return node;
        }
        if (peek_punct("(")) {
            lex_.take();
            ExprPtr inner = parse_expr();
            expect_punct(")");
            return inner;
        }
        if (t.kind == TokKind::Number) {
            lex_.take();
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::Number;
            node->number = t.number;
            node->line = t.line;
            node->column = t.column;
            return node;
        }
        if (t.kind == TokKind::Ident) {
            if (t.text == "abs" || t.text == "max" || t.text == "min") {
                lex_.take();
                auto node = std::make_shared<Expr>();
                node->kind = Expr::Kind::Call;
                node->callee = t.text;
                node->line = t.line;
                node->column = t.column;
                expect_punct("(");
                node->args.push_back(parse_expr());
                const std::size_t want = t.text == "abs" ? 1 : 2;
                while (node->args.size() < want) {
                    expect_punct(",");
                    node->args.push_back(parse_expr());
                }
                expect_punct(")");
                return node;
            }
            if (t.text == "x" || t.text == "y") {
                lex_.take();
                auto node = std::make_shared<Expr>();
                node->kind = Expr::Kind::Var;
                node->var = t.text[0];
                node->line = t.line;
                node->column = t.column;
                return node;
            }
            throw ValidationError("unknown variable or function '" + t.text + "'", t.line,
                                  t.column);
        }
        fail("expected an expression", "a number, variable, function call, '-' or '('");
    }

    GeneratorNode parse_generator() {
        const Token kw = lex_.take();
        GeneratorNode gen;
        gen.line = kw.line;
        gen.column = kw.column;
        expect_punct("(");
        if (kw.text == "list") {
            gen.kind = GeneratorNode::Kind::List;
            gen.numbers.push_back(parse_signed_number());
            while (peek_punct(",")) {
                lex_.take();
                gen.numbers.push_back(parse_signed_number());
            }
        } else if (kw.text == "range" || kw.text == "geometric") {
            gen.kind = kw.text == "range" ? GeneratorNode::Kind::Range : GeneratorNode::Kind::Geometric;
            for (int i = 0; i < 3; ++i) {
                if (i) expect_punct(",");
                gen.numbers.push_back(parse_signed_number());
            }
        } else {
            gen.kind = GeneratorNode::Kind::Union;
            gen.subs.push_back(parse_generator_operand());
            expect_punct(",");
            gen.subs.push_back(parse_generator_operand());
        }
        expect_punct(")");
        return gen;
    }

    GeneratorNode parse_generator_operand() {
        if (peek_ident("list") || peek_ident("range") || peek_ident("geometric") ||
            peek_ident("union"))
            return parse_generator();
        fail("expected a sample generator", "one of 'list', 'range', 'geometric', 'union'");
    }

    double parse_signed_number() {
        bool negative = false;
        if (peek_punct("-")) {
            lex_.take();
            negative = true;
        }
        if (lex_.peek().kind != TokKind::Number) fail("expected a number", "a number");
        const double v = lex_.take().number;
        return negative ? -v : v;
    }

    std::vector<std::pair<std::string, double>> parse_param_table() {
        expect_punct("{");
        std::vector<std::pair<std::string, double>> entries;
        while (!peek_punct("}")) {
            if (lex_.peek().kind != TokKind::Ident) fail("expected a parameter name", "an identifier or '}'");
            const Token key = lex_.take();
            expect_punct("=");
            const double v = parse_signed_number();
            expect_punct(";");
            entries.emplace_back(key.text, v);
        }
        expect_punct("}");
        return entries;
    }

    static void validate_piecewise(const Piecewise& pw, int line, int column) {
        if (pw.cases.empty()) throw ValidationError("piecewise block has no cases", line, column);
        for (std::size_t i = 0; i < pw.cases.size(); ++i) {
            const bool is_otherwise = !pw.cases[i].when;
            if (is_otherwise && i + 1 != pw.cases.size())
                throw ValidationError("otherwise must be the last case", pw.cases[i].line,
                                      pw.cases[i].column);
        }
        if (pw.cases.back().when)
            throw ValidationError("missing otherwise case", line, column);
        // Variable discipline: maps see x only, pmetrics see x and y.
        const bool allow_y = pw.kind == Piecewise::Kind::PMetric;
        for (const auto& c : pw.cases) {
            check_vars(*c.body, allow_y);
            if (c.when)
                for (const auto& cmp : c.when->comparisons) {
                    check_vars(*cmp.lhs, allow_y);
                    check_vars(*cmp.rhs, allow_y);
                }
        }
    }

    static void check_vars(const Expr& e, bool allow_y) {
        switch (e.kind) {
            case Expr::Kind::Var:
                if (e.var == 'y' && !allow_y)
                    throw ValidationError("map expressions may only use variable x", e.line,
                                          e.column);
                return;
            case Expr::Kind::Unary: check_vars(*e.lhs, allow_y); return;
            case Expr::Kind::Binary:
                check_vars(*e.lhs, allow_y);
                check_vars(*e.rhs, allow_y);
                return;
            case Expr::Kind::Call:
                for (const auto& a : e.args) check_vars(*a, allow_y);
                return;
            case Expr::Kind::Number: return;
        }
    }
};

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Binary:
            return (e.op == BinOp::Add || e.op == BinOp::Sub) ? 1 : 2;
        case Expr::Kind::Unary: return 3;
        default: return 4;
    }
}

std::string print_with_parens(const Expr& e, int parent_prec) {
    std::string inner = print_expr(e);
    if (precedence(e) < parent_prec) return "(" + inner + ")";
    return inner;
}

const char* cmp_text(CmpOp op) {
    switch (op) {
        case CmpOp::Le: return "<=";
        case CmpOp::Lt: return "<";
        case CmpOp::Eq: return "==";
        case CmpOp::Ge: return ">=";
        case CmpOp::Gt: return ">";
    }
    return "?";
}

std::string print_predicate(const Predicate& pred) {
    std::string out;
    for (std::size_t i = 0; i < pred.comparisons.size(); ++i) {
        if (i) out += pred.joins[i - 1] == BoolOp::And ? " and " : " or ";
        const auto& c = pred.comparisons[i];
        out += print_expr(*c.lhs);
        out += " ";
        out += cmp_text(c.op);
        out += " ";
        out += print_expr(*c.rhs);
    }
    return out;
}

std::string print_generator(const GeneratorNode& gen) {
    switch (gen.kind) {
        case GeneratorNode::Kind::List: {
            std::string out = "list(";
            for (std::size_t i = 0; i < gen.numbers.size(); ++i) {
                if (i) out += ", ";
                out += format_double(gen.numbers[i]);
            }
            return out + ")";
        }
        case GeneratorNode::Kind::Range:
            return "range(" + format_double(gen.numbers[0]) + ", " + format_double(gen.numbers[1]) +
                   ", " + format_double(gen.numbers[2]) + ")";
        case GeneratorNode::Kind::Geometric:
            return "geometric(" + format_double(gen.numbers[0]) + ", " +
                   format_double(gen.numbers[1]) + ", " + format_double(gen.numbers[2]) + ")";
        case GeneratorNode::Kind::Union:
            return "union(" + print_generator(gen.subs[0]) + ", " + print_generator(gen.subs[1]) +
                   ")";
    }
    return "?";
}

}  // namespace

std::string print_expr(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Number: return format_double(e.number);
        case Expr::Kind::Var: return std::string(1, e.var);
        case Expr::Kind::Unary: return "-" + print_with_parens(*e.lhs, 3);
        case Expr::Kind::Binary: {
            const char* op = e.op == BinOp::Add   ? " + "
                             : e.op == BinOp::Sub ? " - "
                             : e.op == BinOp::Mul ? " * "
                                                  : " / ";
            const int prec = precedence(e);
            // Right operand of - and / needs parens at equal precedence.
            std::string lhs = print_with_parens(*e.lhs, prec);
            std::string rhs = print_with_parens(*e.rhs, prec + 1);
            return lhs + op + rhs;
        }
        case Expr::Kind::Call: {
            std::string out = e.callee + "(";
            for (std::size_t i = 0; i < e.args.size(); ++i) {
                if (i) out += ", ";
                out += print_expr(*e.args[i]);
            }
            return out + ")";
        }
    }
    return "?";
}

std::string print_piecewise(const Piecewise& pw) {
    std::string out = pw.kind == Piecewise::Kind::PMetric ? "pmetric {\n" : "map {\n";
    for (const auto& c : pw.cases) {
        out += "  ";
        out += c.when ? "when " + print_predicate(*c.when) : std::string("otherwise");
        out += ": " + print_expr(*c.body) + ";\n";
    }
    return out + "}";
}

ParsedConfig parse_config(const std::string& text) { return Parser(text).parse(); }

std::string print_config(const ParsedConfig& config) {
    std::string out;
    for (const auto& stmt : config.stmts) {
        switch (stmt.slot) {
            case Stmt::Slot::Space: out += "space = "; break;
            case Stmt::Slot::Map: out += "map = "; break;
            case Stmt::Slot::Sample: out += "sample = "; break;
            case Stmt::Slot::Params: out += "params = "; break;
        }
        const auto& v = stmt.value;
        switch (v.kind) {
            case ValueNode::Kind::CatalogRef:
                out += "catalog(\"" + v.catalog_id + "\")";
                break;
            case ValueNode::Kind::Piecewise: out += print_piecewise(v.piecewise); break;
            case ValueNode::Kind::Generator: out += print_generator(v.generator); break;
            case ValueNode::Kind::ParamTable: {
                out += "{ ";
                for (const auto& [key, value] : v.params)
                    out += key + " = " + format_double(value) + "; ";
                out += "}";
                break;
            }
        }
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Resolution
// ---------------------------------------------------------------------------

namespace {

SampleSet build_sample(const GeneratorNode& gen) {
    switch (gen.kind) {
        case GeneratorNode::Kind::List: {
            try {
                return SampleSet::from_list(gen.numbers);
            } catch (const ValidationError& e) {
                throw ValidationError(e.what(), gen.line, gen.column);
            }
        }
        case GeneratorNode::Kind::Range:
            try {
                return SampleSet::from_range(gen.numbers[0], gen.numbers[1], gen.numbers[2]);
            } catch (const ValidationError& e) {
                throw ValidationError(e.what(), gen.line, gen.column);
            }
        case GeneratorNode::Kind::Geometric:
            try {
                const double count = gen.numbers[2];
                if (count != std::floor(count))
                    throw ValidationError("geometric count must be an integer");
                return SampleSet::geometric(gen.numbers[0], gen.numbers[1],
                                            static_cast<int>(count));
            } catch (const ValidationError& e) {
                throw ValidationError(e.what(), gen.line, gen.column);
            }
        case GeneratorNode::Kind::Union:
            return SampleSet::union_of(build_sample(gen.subs[0]), build_sample(gen.subs[1]))
                .with_spec(print_generator(gen));
    }
    throw ValidationError("malformed generator", gen.line, gen.column);
}

void apply_param(Overrides& overrides, const std::string& key, double value, int line, int col) {
    auto as_positive_int = [&](const char* name) {
        if (value < 1 || value != std::floor(value))
            throw ValidationError(std::string(name) + " must be a positive integer", line, col);
        return static_cast<int>(value);
    };
    if (key == "alpha") {
        if (!(value >= 0 && value < 1))
            throw ValidationError("alpha must lie in [0, 1)", line, col);
        overrides.alpha = value;
    } else if (key == "epsilon1") {
        if (!(value > 0)) throw ValidationError("epsilon1 must be positive", line, col);
        overrides.epsilon1 = value;
    } else if (key == "tol") {
        if (!(value > 0)) throw ValidationError("tol must be positive", line, col);
        overrides.tol = value;
    } else if (key == "Q") {
        overrides.Q = as_positive_int("Q");
    } else if (key == "q_cap") {
        overrides.q_cap = as_positive_int("q_cap");
    } else if (key == "max_iter") {
        overrides.max_iter = as_positive_int("max_iter");
    } else if (key == "trials") {
        overrides.trials = as_positive_int("trials");
    } else if (key == "seed") {
        if (value < 0 || value != std::floor(value))
            throw ValidationError("seed must be a nonnegative integer", line, col);
        overrides.seed = static_cast<long long>(value);
    } else {
        throw ValidationError("unknown parameter '" + key + "'", line, col);
    }
}

}  // namespace

SpaceSpec resolve(const ParsedConfig& config) {
    const Stmt* space_stmt = nullptr;
    const Stmt* map_stmt = nullptr;
    const Stmt* sample_stmt = nullptr;
    const Stmt* params_stmt = nullptr;
    for (const auto& stmt : config.stmts) {
        const Stmt** slot = nullptr;
        switch (stmt.slot) {
            case Stmt::Slot::Space: slot = &space_stmt; break;
            case Stmt::Slot::Map: slot = &map_stmt; break;
            case Stmt::Slot::Sample: slot = &sample_stmt; break;
            case Stmt::Slot::Params: slot = &params_stmt; break;
        }
        if (*slot)
            throw ValidationError("duplicate statement", stmt.line, stmt.column);
        *slot = &stmt;
    }
    if (!space_stmt) throw ValidationError("config needs a space statement", 1, 1);

    std::optional<PMetricSpace> space;
    std::optional<SelfMap> map;
    std::optional<SampleSet> sample;
    std::optional<std::string> catalog_id;

    const ValueNode& sv = space_stmt->value;
    if (sv.kind == ValueNode::Kind::CatalogRef) {
        if (!catalog_has(sv.catalog_id))
            throw ValidationError("unknown catalog id '" + sv.catalog_id + "'", sv.line, sv.column);
        auto entry = catalog_entry(sv.catalog_id);
        space = entry.space;
        map = entry.map;
        sample = entry.default_sample;
        catalog_id = sv.catalog_id;
    } else if (sv.kind == ValueNode::Kind::Piecewise) {
        if (sv.piecewise.kind != Piecewise::Kind::PMetric)
            throw ValidationError("space needs a pmetric block or a catalog reference", sv.line,
                                  sv.column);
        auto pw = std::make_shared<const Piecewise>(sv.piecewise);
        space = PMetricSpace("inline", [pw](Point x, Point y) {
            return eval_piecewise(*pw, Bindings{x, y});
        });
    } else {
        throw ValidationError("space needs a pmetric block or a catalog reference", sv.line,
                              sv.column);
    }

    if (map_stmt) {
        const ValueNode& mv = map_stmt->value;
        if (mv.kind == ValueNode::Kind::CatalogRef) {
            if (!catalog_has(mv.catalog_id))
                throw ValidationError("unknown catalog id '" + mv.catalog_id + "'", mv.line,
                                      mv.column);
            map = catalog_entry(mv.catalog_id).map;
        } else if (mv.kind == ValueNode::Kind::Piecewise &&
                   mv.piecewise.kind == Piecewise::Kind::Map) {
            auto pw = std::make_shared<const Piecewise>(mv.piecewise);
            map = SelfMap("inline", [pw](Point x) { return eval_piecewise(*pw, Bindings{x, {}}); });
        } else {
            throw ValidationError("map needs a map block or a catalog reference", mv.line,
                                  mv.column);
        }
    }
    if (!map)
        throw ValidationError("config needs a map statement (inline spaces have no default)", 1,
                              1);

    if (sample_stmt) {
        const ValueNode& gv = sample_stmt->value;
        if (gv.kind != ValueNode::Kind::Generator)
            throw ValidationError("sample needs a generator", gv.line, gv.column);
        sample = build_sample(gv.generator);
    }
    if (!sample)
        throw ValidationError("config needs a sample statement (inline spaces have no default)",
                              1, 1);

    Overrides overrides;
    if (params_stmt) {
        const ValueNode& pv = params_stmt->value;
        if (pv.kind != ValueNode::Kind::ParamTable)
            throw ValidationError("params needs a { key = value; } table", pv.line, pv.column);
        for (const auto& [key, value] : pv.params)
            apply_param(overrides, key, value, pv.line, pv.column);
    }

    return SpaceSpec{std::move(*space), std::move(*map), std::move(*sample), overrides,
                     std::move(catalog_id)};
}

SpaceSpec parse_space_config(const std::string& text) { return resolve(parse_config(text)); }

SampleSet parse_generator_text(const std::string& text) {
    const auto config = parse_config("sample = " + text + "\n");
    if (config.stmts.size() != 1 || config.stmts[0].slot != Stmt::Slot::Sample ||
        config.stmts[0].value.kind != ValueNode::Kind::Generator)
        throw ValidationError("expected a sample generator expression");
    return build_sample(config.stmts[0].value.generator);
}

}  // namespace pmfix::dsl
