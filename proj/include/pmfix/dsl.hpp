#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pmfix/sample.hpp"
#include "pmfix/selfmap.hpp"
#include "pmfix/space.hpp"

namespace pmfix::dsl {

// ---------------------------------------------------------------------------
// Piecewise expression AST. A pmetric block binds {x, y}; a map block binds
// {x}. Cases are tried in order and the required trailing `otherwise` makes
// evaluation total.
// ---------------------------------------------------------------------------

enum class BinOp { Add, Sub, Mul, Div };
enum class CmpOp { Le, Lt, Eq, Ge, Gt };
enum class BoolOp { And, Or };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, Var, Unary, Binary, Call };
    Kind kind = Kind::Number;
    double number = 0;       // Number
    char var = 'x';          // Var: 'x' or 'y'
    BinOp op = BinOp::Add;   // Binary
    ExprPtr lhs, rhs;        // Binary; Unary uses lhs only (negation)
    std::string callee;      // Call: abs | max | min
    std::vector<ExprPtr> args;
    int line = 0, column = 0;
};

struct Comparison {
    ExprPtr lhs;
    CmpOp op = CmpOp::Le;
    ExprPtr rhs;
};

struct Predicate {
    std::vector<Comparison> comparisons;  // left-associative chain
    std::vector<BoolOp> joins;            // size = comparisons.size() - 1
};

struct Case {
    std::optional<Predicate> when;  // empty = otherwise
    ExprPtr body;
    int line = 0, column = 0;
};

struct Piecewise {
    enum class Kind { PMetric, Map };
    Kind kind = Kind::Map;
    std::vector<Case> cases;
};

struct Bindings {
    double x = 0;
    std::optional<double> y;
};

/// First-matching-case evaluation. Division by zero and unbound variables
/// raise EvalError; the result is always finite.
double eval_expr(const Expr& expr, const Bindings& bindings);
bool eval_predicate(const Predicate& pred, const Bindings& bindings);
double eval_piecewise(const Piecewise& pw, const Bindings& bindings);

/// Canonical text form (used for reports and the reparse round-trip).
std::string print_expr(const Expr& expr);
std::string print_piecewise(const Piecewise& pw);

// ---------------------------------------------------------------------------
// Config syntax tree, kept verbatim for pretty-printing. `resolve` turns it
// into executable objects.
// ---------------------------------------------------------------------------

struct GeneratorNode {
    enum class Kind { List, Range, Geometric, Union };
    Kind kind = Kind::List;
    std::vector<double> numbers;       // list values / range / geometric params
    std::vector<GeneratorNode> subs;   // union operands
    int line = 0, column = 0;
};

struct ValueNode {
    enum class Kind { CatalogRef, Piecewise, Generator, ParamTable };
    Kind kind = Kind::CatalogRef;
    std::string catalog_id;
    Piecewise piecewise;
    GeneratorNode generator;
    std::vector<std::pair<std::string, double>> params;
    int line = 0, column = 0;
};

struct Stmt {
    enum class Slot { Space, Map, Sample, Params };
    Slot slot = Slot::Space;
    ValueNode value;
    int line = 0, column = 0;
};

struct ParsedConfig {
    std::vector<Stmt> stmts;
};

/// Syntax only; throws ParseError with line/column and the expected token
/// set, or ValidationError for structurally valid but ill-formed pieces
/// (missing otherwise, foreign variables, bad parameter keys).
ParsedConfig parse_config(const std::string& text);

/// Canonical pretty-print; parse_config(print_config(c)) is structurally
/// identical to c.
std::string print_config(const ParsedConfig& config);

/// Numeric overrides carried by a `params` block or CLI flags.
struct Overrides {
    std::optional<double> alpha, epsilon1, tol;
    std::optional<int> Q, q_cap, max_iter, trials;
    std::optional<long long> seed;
};

/// A fully resolved configuration: executable space, map and sample.
struct SpaceSpec {
    PMetricSpace space;
    SelfMap map;
    SampleSet sample;
    Overrides params;
    std::optional<std::string> catalog_id;  // set when the space came from the catalog
};

/// Resolution: catalog lookups, defaulting (a catalog space brings its map
/// and default sample unless overridden) and completeness checks.
SpaceSpec resolve(const ParsedConfig& config);

/// parse + resolve in one step.
SpaceSpec parse_space_config(const std::string& text);

/// Parses a bare sample generator expression, e.g. "list(0, 1, 2)" or
/// "union(range(0, 4, 1), geometric(1, 0.5, 6))". Used for CLI overrides.
SampleSet parse_generator_text(const std::string& text);

}  // namespace pmfix::dsl
