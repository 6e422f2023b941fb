#include "hermitlab/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "hermitlab/error.hpp"

namespace hermitlab {

// ---------------------------------------------------------------------------
// construction

Expr Expr::literal(Complex c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Literal;
  n->literal = c;
  return Expr(std::move(n));
}

Expr Expr::coord(int index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Coord;
  n->index = index;
  return Expr(std::move(n));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = {std::move(lhs), std::move(rhs)};
  return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Neg;
  n->children = {std::move(operand)};
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, int exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->index = exponent;
  n->children = {std::move(base)};
  return Expr(std::move(n));
}

Expr Expr::call(Func f, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->func = f;
  n->children = {std::move(arg)};
  return Expr(std::move(n));
}

int Expr::max_coord() const {
  int m = node_->kind == Kind::Coord ? node_->index : 0;
  for (const auto& c : node_->children) m = std::max(m, c.max_coord());
  return m;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.children.size() != y.children.size()) return false;
  switch (x.kind) {
    case Expr::Kind::Literal:
      if (x.literal != y.literal) return false;
      break;
    case Expr::Kind::Coord:
    case Expr::Kind::Pow:
      if (x.index != y.index) return false;
      break;
    case Expr::Kind::Call:
      if (x.func != y.func) return false;
      break;
    default:
      break;
  }
  for (std::size_t k = 0; k < x.children.size(); ++k) {
    if (!(x.children[k] == y.children[k])) return false;
  }
  return true;
}

std::string_view func_name(Expr::Func f) {
  switch (f) {
    case Expr::Func::Exp: return "exp";
    case Expr::Func::Ln: return "ln";
    case Expr::Func::Sqrt: return "sqrt";
    case Expr::Func::Conj: return "conj";
    case Expr::Func::Re: return "re";
    case Expr::Func::Im: return "im";
    case Expr::Func::Abs2: return "abs2";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

std::string point_text(std::span<const Complex> p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) os << ", ";
    os << p[k].real() << (p[k].imag() < 0 ? "-" : "+") << std::abs(p[k].imag()) << "i";
  }
  os << ")";
  return os.str();
}

Jet eval_jet(const Expr& e, std::span<const Complex> p, int dirs) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Literal: return Jet(e.literal_value());
    case K::Coord: {
      const int k = e.coord_index() - 1;
      return Jet::variable(p[static_cast<std::size_t>(k)], dirs, k);
    }
    case K::Add: return eval_jet(e.lhs(), p, dirs) + eval_jet(e.rhs(), p, dirs);
    case K::Sub: return eval_jet(e.lhs(), p, dirs) - eval_jet(e.rhs(), p, dirs);
    case K::Mul: return eval_jet(e.lhs(), p, dirs) * eval_jet(e.rhs(), p, dirs);
    case K::Div: return eval_jet(e.lhs(), p, dirs) / eval_jet(e.rhs(), p, dirs);
    case K::Neg: return -eval_jet(e.operand(), p, dirs);
    case K::Pow: return pow_int(eval_jet(e.operand(), p, dirs), e.exponent());
    case K::Call: {
      const Jet a = eval_jet(e.operand(), p, dirs);
      switch (e.func()) {
        case Expr::Func::Exp: return exp(a);
        case Expr::Func::Ln: return ln(a);
        case Expr::Func::Sqrt: return sqrt(a);
        case Expr::Func::Conj: return conj(a);
        case Expr::Func::Re: return real_part(a);
        case Expr::Func::Im: return imag_part(a);
        case Expr::Func::Abs2: return abs2(a);
      }
    }
  }
  throw InvalidInput("malformed expression node");
}

Complex eval_plain(const Expr& e, std::span<const Complex> p) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Literal: return e.literal_value();
    case K::Coord: return p[static_cast<std::size_t>(e.coord_index() - 1)];
    case K::Add: return eval_plain(e.lhs(), p) + eval_plain(e.rhs(), p);
    case K::Sub: return eval_plain(e.lhs(), p) - eval_plain(e.rhs(), p);
    case K::Mul: return eval_plain(e.lhs(), p) * eval_plain(e.rhs(), p);
    case K::Div: {
      const Complex d = eval_plain(e.rhs(), p);
      if (d == Complex{}) throw SingularEvaluation("division by zero");
      return eval_plain(e.lhs(), p) / d;
    }
    case K::Neg: return -eval_plain(e.operand(), p);
    case K::Pow: {
      const Complex b = eval_plain(e.operand(), p);
      if (e.exponent() < 0 && b == Complex{}) throw SingularEvaluation("negative power of zero");
      return std::pow(b, e.exponent());
    }
    case K::Call: {
      const Complex a = eval_plain(e.operand(), p);
      switch (e.func()) {
        case Expr::Func::Exp: return std::exp(a);
        case Expr::Func::Ln:
          if (!(a.real() > 0.0)) throw SingularEvaluation("ln outside its principal domain (Re > 0)");
          return std::log(a);
        case Expr::Func::Sqrt:
          if (!(a.real() > 0.0)) throw SingularEvaluation("sqrt outside its principal domain (Re > 0)");
          return std::sqrt(a);
        case Expr::Func::Conj: return std::conj(a);
        case Expr::Func::Re: return a.real();
        case Expr::Func::Im: return a.imag();
        case Expr::Func::Abs2: return std::norm(a);
      }
    }
  }
  throw InvalidInput("malformed expression node");
}

}  // namespace

Jet Expr::eval(std::span<const Complex> point) const {
  if (max_coord() > static_cast<int>(point.size())) {
    throw InvalidInput("expression references z" + std::to_string(max_coord()) + " but the point has " +
                       std::to_string(point.size()) + " coordinates");
  }
  try {
    return eval_jet(*this, point, 2 * static_cast<int>(point.size()));
  } catch (const SingularEvaluation& e) {
    throw SingularEvaluation(std::string(e.what()) + " at point " + point_text(point));
  }
}

Complex Expr::eval_value(std::span<const Complex> point) const {
  if (max_coord() > static_cast<int>(point.size())) {
    throw InvalidInput("expression references a coordinate beyond the point dimension");
  }
  try {
    return eval_plain(*this, point);
  } catch (const SingularEvaluation& e) {
    throw SingularEvaluation(std::string(e.what()) + " at point " + point_text(point));
  }
}

// ---------------------------------------------------------------------------
// parsing

namespace {

class Parser {
 public:
  Parser(std::string_view src, int n) : src_(src), n_(n) {}

  Expr run() {
    skip_ws();
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected character", "operator or end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what, const std::string& expected) const {
    throw ParseError("syntax error: " + what, pos_, expected);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(Expr::Kind::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::binary(Expr::Kind::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(Expr::Kind::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(Expr::Kind::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::negate(parse_unary());
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t at = pos_;
    const bool negative = accept('-');
    Expr ex = parse_power();
    if (ex.max_coord() > 0) {
      throw ParseError("exponent must be an integer constant", at, "integer");
    }
    Complex v;
    try {
      v = ex.eval_value({});
    } catch (const Error&) {
      throw ParseError("exponent must be an integer constant", at, "integer");
    }
    if (negative) v = -v;
    if (v.imag() != 0.0 || v.real() != std::round(v.real()) || std::abs(v.real()) > 1e6) {
      throw ParseError("exponent must be an integer constant", at, "integer");
    }
    return Expr::power(base, static_cast<int>(v.real()));
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input", "number, identifier, '(' or '-'");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      if (!accept(')')) fail("unbalanced parenthesis", "')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail(std::string("unexpected '") + c + "'", "number, identifier, '(' or '-'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
      ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    const auto* first = src_.data() + start;
    const auto* last = src_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      pos_ = start;
      fail("malformed number", "number");
    }
    return Expr::literal(v);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string_view id = src_.substr(start, pos_ - start);
    if (id == "i") return Expr::literal({0.0, 1.0});
    if (id.size() >= 2 && id[0] == 'z' &&
        std::all_of(id.begin() + 1, id.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      int k = 0;
      std::from_chars(id.data() + 1, id.data() + id.size(), k);
      if (k < 1 || k > n_) {
        throw ParseError("coordinate " + std::string(id) + " out of range for n = " + std::to_string(n_), start,
                         "z1..z" + std::to_string(n_));
      }
      return Expr::coord(k);
    }
    static constexpr std::array<std::pair<std::string_view, Expr::Func>, 7> kFuncs{{
        {"exp", Expr::Func::Exp},
        {"ln", Expr::Func::Ln},
        {"sqrt", Expr::Func::Sqrt},
        {"conj", Expr::Func::Conj},
        {"re", Expr::Func::Re},
        {"im", Expr::Func::Im},
        {"abs2", Expr::Func::Abs2},
    }};
    for (const auto& [name, f] : kFuncs) {
      if (id == name) {
        if (!accept('(')) fail("function " + std::string(name) + " needs an argument", "'('");
        Expr arg = parse_expr();
        if (!accept(')')) fail("unbalanced parenthesis", "')'");
        return Expr::call(f, arg);
      }
    }
    throw ParseError("unknown identifier '" + std::string(id) + "'", start,
                     "z1..z" + std::to_string(n_) + ", i, or a function name");
  }

  std::string_view src_;
  int n_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    case Expr::Kind::Literal: {
      const Complex c = e.literal_value();
      const bool plain = (c.imag() == 0.0 && c.real() >= 0.0) || c == Complex{0.0, 1.0};
      return plain ? 5 : 1;
    }
    default: return 5;
  }
}

std::string number_text(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

void print_into(const Expr& e, std::string& out);

void print_child(const Expr& child, int min_prec, std::string& out) {
  if (precedence(child) < min_prec) {
    out += '(';
    print_into(child, out);
    out += ')';
  } else {
    print_into(child, out);
  }
}

void print_into(const Expr& e, std::string& out) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Literal: {
      const Complex c = e.literal_value();
      if (c == Complex{0.0, 1.0}) {
        out += 'i';
      } else if (c.imag() == 0.0) {
        out += c.real() < 0 ? "-" + number_text(-c.real()) : number_text(c.real());
      } else {
        out += number_text(c.real()) + "+" + number_text(c.imag()) + "*i";
      }
      return;
    }
    case K::Coord: out += "z" + std::to_string(e.coord_index()); return;
    case K::Add:
    case K::Sub:
    case K::Mul:
    case K::Div: {
      const int p = precedence(e);
      print_child(e.lhs(), p, out);
      out += e.kind() == K::Add ? " + " : e.kind() == K::Sub ? " - " : e.kind() == K::Mul ? "*" : "/";
      print_child(e.rhs(), p + 1, out);
      return;
    }
    case K::Neg:
      out += '-';
      print_child(e.operand(), 3, out);
      return;
    case K::Pow:
      print_child(e.operand(), 5, out);
      out += '^';
      out += std::to_string(e.exponent());
      return;
    case K::Call:
      out += func_name(e.func());
      out += '(';
      print_into(e.operand(), out);
      out += ')';
      return;
  }
}

}  // namespace

Expr parse(std::string_view src, int n) { return Parser(src, n).run(); }

std::string print(const Expr& e) {
  std::string out;
  print_into(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// metric fields

MetricField MetricField::from_text(std::string name, int n, const std::vector<std::string>& entries,
                                   const std::vector<std::string>& constraints) {
  if (n < 1) throw InvalidInput("metric dimension must be positive");
  if (entries.size() != static_cast<std::size_t>(n * n)) {
    throw InvalidInput("metric '" + name + "' needs " + std::to_string(n * n) + " entries, got " +
                       std::to_string(entries.size()));
  }
  MetricField m;
  m.name = std::move(name);
  m.n = n;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    try {
      m.entries.push_back(parse(entries[k], n));
    } catch (const ParseError& e) {
      throw ParseError("entry (" + std::to_string(k / static_cast<std::size_t>(n) + 1) + "," +
                           std::to_string(k % static_cast<std::size_t>(n) + 1) + "): " + e.message(),
                       e.offset(), e.expected());
    }
  }
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    try {
      m.constraints.push_back(parse(constraints[k], n));
    } catch (const ParseError& e) {
      throw ParseError("constraint " + std::to_string(k + 1) + ": " + e.message(), e.offset(), e.expected());
    }
  }
  return m;
}

bool MetricField::admits(std::span<const Complex> point) const {
  if (static_cast<int>(point.size()) != n) return false;
  for (const auto& c : constraints) {
    try {
      if (!(c.eval_value(point).real() > 0.0)) return false;
    } catch (const SingularEvaluation&) {
      return false;
    }
  }
  return true;
}

JetMatrix eval_metric(const MetricField& metric, std::span<const Complex> point) {
  if (static_cast<int>(point.size()) != metric.n) {
    throw InvalidInput("point dimension does not match metric '" + metric.name + "'");
  }
  if (!metric.admits(point)) {
    throw DomainError("point " + point_text(point) + " violates a domain constraint of '" + metric.name + "'");
  }
  const int n = metric.n;
  JetMatrix g(n, n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g(i, j) = metric.entry(i, j).eval(point);
      if (g(i, j).dirs() == 0) g(i, j) = Jet::constant(g(i, j).value(), 2 * n);
      scale = std::max(scale, g(i, j).max_abs());
    }
  }
  if (g.hermitian_defect() > 1e-10 * (1.0 + scale)) {
    throw InvalidInput("metric '" + metric.name + "' is not Hermitian at " + point_text(point));
  }
  const Eigen::MatrixXcd v = g.values();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (v + v.adjoint()), Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= 1e-10) {
    throw DegenerateMetric("metric '" + metric.name + "' is not positive definite at " + point_text(point));
  }
  return g;
}

}  // namespace hermitlab
