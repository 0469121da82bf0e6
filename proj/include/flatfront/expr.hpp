#pragma once

// Meromorphic expressions of one complex variable: parsing, printing,
// symbolic differentiation, fast evaluation and pole/zero orders.

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flatfront {

using cplx = std::complex<double>;

namespace expr {

enum class Op { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Log };

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Raised by order_at for expressions outside the rational fragment.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by order_at when the expression vanishes identically near the point.
class UndefinedOrder : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Node;

/// Immutable expression handle. Copies share the tree.
class MeroExpr {
 public:
  MeroExpr();  // the constant 0

  static MeroExpr constant(cplx c);
  static MeroExpr var();

  Op op() const;
  cplx value() const;  // Const only
  int exponent() const;  // Pow only
  const std::vector<MeroExpr>& children() const;

  bool is_const() const { return op() == Op::Const; }
  bool is_const(cplx c) const { return is_const() && value() == c; }

  cplx operator()(cplx z) const;  // tree-walking evaluation

  friend MeroExpr operator+(const MeroExpr& a, const MeroExpr& b);
  friend MeroExpr operator-(const MeroExpr& a, const MeroExpr& b);
  friend MeroExpr operator*(const MeroExpr& a, const MeroExpr& b);
  friend MeroExpr operator/(const MeroExpr& a, const MeroExpr& b);
  friend MeroExpr operator-(const MeroExpr& a);
  friend MeroExpr pow(const MeroExpr& a, int k);
  friend MeroExpr exp(const MeroExpr& a);
  friend MeroExpr log(const MeroExpr& a);

 private:
  explicit MeroExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static MeroExpr make(Op op, std::vector<MeroExpr> kids, cplx value = {}, int exponent = 0);
  std::shared_ptr<const Node> node_;
};

MeroExpr parse(std::string_view text);
std::string to_string(const MeroExpr& e);
MeroExpr differentiate(const MeroExpr& e);

/// Order k with e(z) = (z-p)^k * unit near p. Rational expressions only.
int order_at(const MeroExpr& e, cplx p);

/// e with every occurrence of z replaced by `replacement`.
MeroExpr substitute(const MeroExpr& e, const MeroExpr& replacement);

/// True if the tree contains no exp/log nodes.
bool is_rational(const MeroExpr& e);

/// Numerator and denominator polynomials (ascending coefficients in z).
struct RationalForm {
  std::vector<cplx> num;
  std::vector<cplx> den;
};
RationalForm to_rational(const MeroExpr& e);

/// Postfix program for repeated evaluation without pointer chasing.
class Compiled {
 public:
  Compiled() = default;
  explicit Compiled(const MeroExpr& e);
  cplx operator()(cplx z) const;

 private:
  struct Instr {
    Op op;
    int exponent;
    cplx value;
  };
  std::vector<Instr> code_;
  std::size_t depth_ = 0;
};

}  // namespace expr

/// A meromorphic function with cached derivatives up to third order.
class MeroFn {
 public:
  MeroFn() : MeroFn(expr::MeroExpr{}) {}
  explicit MeroFn(expr::MeroExpr e);
  static MeroFn parse(std::string_view text) { return MeroFn(expr::parse(text)); }

  const expr::MeroExpr& expr() const { return d_[0]; }
  const expr::MeroExpr& derivative(int k) const { return d_.at(static_cast<std::size_t>(k)); }

  cplx operator()(cplx z) const { return c_[0](z); }
  cplx d(int k, cplx z) const { return c_.at(static_cast<std::size_t>(k))(z); }
  /// f, f', f'', f''' at z.
  std::array<cplx, 4> jet(cplx z) const {
    return {c_[0](z), c_[1](z), c_[2](z), c_[3](z)};
  }
  std::string text() const { return expr::to_string(d_[0]); }

 private:
  std::array<expr::MeroExpr, 4> d_;
  std::array<expr::Compiled, 4> c_;
};

}  // namespace flatfront
