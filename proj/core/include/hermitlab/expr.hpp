#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hermitlab/jet.hpp"
#include "hermitlab/jet_matrix.hpp"

namespace hermitlab {

/// Immutable expression tree of the metric-entry language.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' exponent)?        right-associative
///   exponent:= '-'? power                     must fold to an integer constant
///   primary := number | 'i' | 'z'k | func '(' expr ')' | '(' expr ')'
///   func    := exp | ln | sqrt | conj | re | im | abs2
class Expr {
 public:
  enum class Kind { Literal, Coord, Add, Sub, Mul, Div, Neg, Pow, Call };
  enum class Func { Exp, Ln, Sqrt, Conj, Re, Im, Abs2 };

  static Expr literal(Complex c);
  static Expr coord(int index);  // 1-based, as written in source
  static Expr binary(Kind kind, Expr lhs, Expr rhs);
  static Expr negate(Expr operand);
  static Expr power(Expr base, int exponent);
  static Expr call(Func f, Expr arg);

  Kind kind() const { return node_->kind; }
  Complex literal_value() const { return node_->literal; }
  int coord_index() const { return node_->index; }
  int exponent() const { return node_->index; }
  Func func() const { return node_->func; }
  const Expr& lhs() const { return node_->children.at(0); }
  const Expr& rhs() const { return node_->children.at(1); }
  const Expr& operand() const { return node_->children.at(0); }

  /// Highest coordinate index referenced (0 if none).
  int max_coord() const;

  /// Evaluates to an order-2 jet over `point.size()` complex coordinates.
  Jet eval(std::span<const Complex> point) const;

  /// Plain complex value (no derivatives).
  Complex eval_value(std::span<const Complex> point) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node {
    Kind kind = Kind::Literal;
    Complex literal{};
    int index = 0;
    Func func = Func::Exp;
    std::vector<Expr> children;
  };
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses an expression over coordinates z1..zn. Throws ParseError.
Expr parse(std::string_view src, int n);

/// Canonical text that parses back to an equal tree.
std::string print(const Expr& e);

std::string_view func_name(Expr::Func f);

/// Metric on a coordinate chart: g_{i jbar}(z, zbar) as an n x n expression array.
struct MetricField {
  std::string name;
  int n = 0;
  std::vector<Expr> entries;      // row-major, entries[i*n+j] = g_{i jbar}
  std::vector<Expr> constraints;  // admissible iff Re(c(p)) > 0 for each

  const Expr& entry(int i, int j) const { return entries.at(static_cast<std::size_t>(i * n + j)); }

  /// Builds from source text; throws ParseError with the entry that failed.
  static MetricField from_text(std::string name, int n, const std::vector<std::string>& entries,
                               const std::vector<std::string>& constraints = {});

  bool admits(std::span<const Complex> point) const;
};

/// Jet-valued metric matrix at a point. Checks constraints (DomainError),
/// Hermitian symmetry to 1e-10 (InvalidInput) and positive definiteness
/// (DegenerateMetric).
JetMatrix eval_metric(const MetricField& metric, std::span<const Complex> point);

}  // namespace hermitlab
