#include "flatfront/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace flatfront::expr {

struct Node {
  Op op;
  cplx value;
  int exponent;
  std::vector<MeroExpr> kids;
};

namespace {

cplx ipow(cplx base, int k) {
  if (k < 0) return cplx(1.0) / ipow(base, -k);
  cplx result(1.0);
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

cplx apply(Op op, cplx a, cplx b, int k) {
  switch (op) {
    case Op::Neg: return -a;
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div: return a / b;
    case Op::Pow: return ipow(a, k);
    case Op::Exp: return std::exp(a);
    case Op::Log: return std::log(a);
    default: return {};
  }
}

}  // namespace

MeroExpr::MeroExpr() : node_(std::make_shared<const Node>(Node{Op::Const, {}, 0, {}})) {}

MeroExpr MeroExpr::constant(cplx c) { return MeroExpr(std::make_shared<const Node>(Node{Op::Const, c, 0, {}})); }
MeroExpr MeroExpr::var() { return MeroExpr(std::make_shared<const Node>(Node{Op::Var, {}, 0, {}})); }

Op MeroExpr::op() const { return node_->op; }
cplx MeroExpr::value() const { return node_->value; }
int MeroExpr::exponent() const { return node_->exponent; }
const std::vector<MeroExpr>& MeroExpr::children() const { return node_->kids; }

MeroExpr MeroExpr::make(Op op, std::vector<MeroExpr> kids, cplx value, int exponent) {
  // constant folding
  bool all_const = !kids.empty() &&
                   std::all_of(kids.begin(), kids.end(), [](const MeroExpr& k) { return k.is_const(); });
  if (all_const) {
    cplx a = kids[0].value();
    cplx b = kids.size() > 1 ? kids[1].value() : cplx{};
    return constant(apply(op, a, b, exponent));
  }
  return MeroExpr(std::make_shared<const Node>(Node{op, value, exponent, std::move(kids)}));
}

MeroExpr operator+(const MeroExpr& a, const MeroExpr& b) {
  if (a.is_const(0.0)) return b;
  if (b.is_const(0.0)) return a;
  return MeroExpr::make(Op::Add, {a, b});
}

MeroExpr operator-(const MeroExpr& a, const MeroExpr& b) {
  if (b.is_const(0.0)) return a;
  if (a.is_const(0.0)) return -b;
  return MeroExpr::make(Op::Sub, {a, b});
}

MeroExpr operator*(const MeroExpr& a, const MeroExpr& b) {
  if (a.is_const(0.0) || b.is_const(0.0)) return MeroExpr::constant(0.0);
  if (a.is_const(1.0)) return b;
  if (b.is_const(1.0)) return a;
  return MeroExpr::make(Op::Mul, {a, b});
}

MeroExpr operator/(const MeroExpr& a, const MeroExpr& b) {
  if (b.is_const(1.0)) return a;
  if (a.is_const(0.0) && !b.is_const(0.0)) return MeroExpr::constant(0.0);
  return MeroExpr::make(Op::Div, {a, b});
}

MeroExpr operator-(const MeroExpr& a) {
  if (a.op() == Op::Neg) return a.children()[0];
  return MeroExpr::make(Op::Neg, {a});
}

MeroExpr pow(const MeroExpr& a, int k) {
  if (k == 0) return MeroExpr::constant(1.0);
  if (k == 1) return a;
  return MeroExpr::make(Op::Pow, {a}, {}, k);
}

MeroExpr exp(const MeroExpr& a) { return MeroExpr::make(Op::Exp, {a}); }
MeroExpr log(const MeroExpr& a) { return MeroExpr::make(Op::Log, {a}); }

cplx MeroExpr::operator()(cplx z) const {
  switch (op()) {
    case Op::Const: return value();
    case Op::Var: return z;
    default: break;
  }
  const auto& k = children();
  cplx a = k[0](z);
  cplx b = k.size() > 1 ? k[1](z) : cplx{};
  return apply(op(), a, b, exponent());
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  MeroExpr run() {
    MeroExpr e = expression();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  MeroExpr expression() {
    MeroExpr lhs = term();
    for (;;) {
      if (accept('+')) lhs = lhs + term();
      else if (accept('-')) lhs = lhs - term();
      else return lhs;
    }
  }

  MeroExpr term() {
    MeroExpr lhs = factor();
    for (;;) {
      if (accept('*')) lhs = lhs * factor();
      else if (accept('/')) lhs = lhs / factor();
      else return lhs;
    }
  }

  MeroExpr factor() {
    bool negate = accept('-');
    MeroExpr b = base();
    if (accept('^')) b = pow(b, integer_exponent());
    return negate ? -b : b;
  }

  int integer_exponent() {
    bool paren = accept('(');
    bool neg = accept('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    long v = std::strtol(std::string(s_.substr(start, pos_ - start)).c_str(), nullptr, 10);
    if (v > 1000) fail("exponent too large");
    if (paren) expect(')');
    return neg ? -static_cast<int>(v) : static_cast<int>(v);
  }

  MeroExpr base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MeroExpr e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string id(s_.substr(start, pos_ - start));
      if (id == "z") return MeroExpr::var();
      if (id == "i") return MeroExpr::constant(cplx(0.0, 1.0));
      if (id == "exp" || id == "log") {
        expect('(');
        MeroExpr arg = expression();
        expect(')');
        return id == "exp" ? exp(arg) : log(arg);
      }
      pos_ = start;
      fail("unknown identifier '" + id + "'");
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  MeroExpr number() {
    const char* begin = s_.data() + pos_;
    std::string tail(begin, s_.size() - pos_);
    char* end = nullptr;
    double v = std::strtod(tail.c_str(), &end);
    std::size_t used = static_cast<std::size_t>(end - tail.c_str());
    if (used == 0) fail("malformed number");
    pos_ += used;
    return MeroExpr::constant(v);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print(const MeroExpr& e, std::string& out) {
  switch (e.op()) {
    case Op::Const: {
      cplx v = e.value();
      if (v.imag() == 0.0) {
        if (v.real() < 0.0 || std::signbit(v.real())) out += "(" + format_real(v.real()) + ")";
        else out += format_real(v.real());
      } else {
        out += "(" + format_real(v.real()) + (std::signbit(v.imag()) ? "-" : "+") +
               format_real(std::abs(v.imag())) + "*i)";
      }
      return;
    }
    case Op::Var: out += "z"; return;
    case Op::Neg:
      out += "(-";
      print(e.children()[0], out);
      out += ")";
      return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      static constexpr const char* sym[] = {" + ", " - ", " * ", " / "};
      int idx = static_cast<int>(e.op()) - static_cast<int>(Op::Add);
      out += "(";
      print(e.children()[0], out);
      out += sym[idx];
      print(e.children()[1], out);
      out += ")";
      return;
    }
    case Op::Pow: {
      const auto& b = e.children()[0];
      bool wrap = b.op() == Op::Pow;
      if (wrap) out += "(";
      print(b, out);
      if (wrap) out += ")";
      out += e.exponent() < 0 ? "^(" + std::to_string(e.exponent()) + ")" : "^" + std::to_string(e.exponent());
      return;
    }
    case Op::Exp:
    case Op::Log:
      out += e.op() == Op::Exp ? "exp(" : "log(";
      print(e.children()[0], out);
      out += ")";
      return;
  }
}

}  // namespace

MeroExpr parse(std::string_view text) { return Parser(text).run(); }

std::string to_string(const MeroExpr& e) {
  std::string out;
  print(e, out);
  return out;
}

MeroExpr differentiate(const MeroExpr& e) {
  const auto& k = e.children();
  switch (e.op()) {
    case Op::Const: return MeroExpr::constant(0.0);
    case Op::Var: return MeroExpr::constant(1.0);
    case Op::Neg: return -differentiate(k[0]);
    case Op::Add: return differentiate(k[0]) + differentiate(k[1]);
    case Op::Sub: return differentiate(k[0]) - differentiate(k[1]);
    case Op::Mul: return differentiate(k[0]) * k[1] + k[0] * differentiate(k[1]);
    case Op::Div:
      return (differentiate(k[0]) * k[1] - k[0] * differentiate(k[1])) / pow(k[1], 2);
    case Op::Pow:
      return MeroExpr::constant(static_cast<double>(e.exponent())) * pow(k[0], e.exponent() - 1) *
             differentiate(k[0]);
    case Op::Exp: return e * differentiate(k[0]);
    case Op::Log: return differentiate(k[0]) / k[0];
  }
  return {};
}

MeroExpr substitute(const MeroExpr& e, const MeroExpr& replacement) {
  const auto& k = e.children();
  switch (e.op()) {
    case Op::Const: return e;
    case Op::Var: return replacement;
    case Op::Neg: return -substitute(k[0], replacement);
    case Op::Add: return substitute(k[0], replacement) + substitute(k[1], replacement);
    case Op::Sub: return substitute(k[0], replacement) - substitute(k[1], replacement);
    case Op::Mul: return substitute(k[0], replacement) * substitute(k[1], replacement);
    case Op::Div: return substitute(k[0], replacement) / substitute(k[1], replacement);
    case Op::Pow: return pow(substitute(k[0], replacement), e.exponent());
    case Op::Exp: return exp(substitute(k[0], replacement));
    case Op::Log: return log(substitute(k[0], replacement));
  }
  return e;
}

bool is_rational(const MeroExpr& e) {
  if (e.op() == Op::Exp || e.op() == Op::Log) return false;
  return std::all_of(e.children().begin(), e.children().end(), is_rational);
}

// ------------------------------------------------------ rational structure

namespace {

using Poly = std::vector<cplx>;

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == cplx(0.0)) p.pop_back();
}

Poly padd(const Poly& a, const Poly& b, double sign = 1.0) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += sign * b[i];
  trim(r);
  return r;
}

Poly pmul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Poly ppow(Poly base, int k) {
  Poly r{1.0};
  while (k > 0) {
    if (k & 1) r = pmul(r, base);
    base = pmul(base, base);
    k >>= 1;
  }
  return r;
}

/// Coefficients of p(w + a) in powers of w.
Poly taylor_shift(Poly p, cplx a) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) p[j - 1] += a * p[j];
  return p;
}

/// Index of the lowest coefficient that is not negligible, or -1.
int lowest_order(const Poly& p) {
  double scale = 0.0;
  for (const auto& c : p) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return -1;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (std::abs(p[i]) > 1e-10 * scale) return static_cast<int>(i);
  return -1;
}

}  // namespace

RationalForm to_rational(const MeroExpr& e) {
  const auto& k = e.children();
  switch (e.op()) {
    case Op::Const: return {{e.value()}, {1.0}};
    case Op::Var: return {{0.0, 1.0}, {1.0}};
    case Op::Neg: {
      auto r = to_rational(k[0]);
      for (auto& c : r.num) c = -c;
      return r;
    }
    case Op::Add:
    case Op::Sub: {
      auto a = to_rational(k[0]);
      auto b = to_rational(k[1]);
      double sign = e.op() == Op::Add ? 1.0 : -1.0;
      return {padd(pmul(a.num, b.den), pmul(b.num, a.den), sign), pmul(a.den, b.den)};
    }
    case Op::Mul: {
      auto a = to_rational(k[0]);
      auto b = to_rational(k[1]);
      return {pmul(a.num, b.num), pmul(a.den, b.den)};
    }
    case Op::Div: {
      auto a = to_rational(k[0]);
      auto b = to_rational(k[1]);
      return {pmul(a.num, b.den), pmul(a.den, b.num)};
    }
    case Op::Pow: {
      auto a = to_rational(k[0]);
      int n = e.exponent();
      if (n < 0) {
        std::swap(a.num, a.den);
        n = -n;
      }
      return {ppow(a.num, n), ppow(a.den, n)};
    }
    case Op::Exp:
    case Op::Log: break;
  }
  throw Unsupported("expression is not rational: " + to_string(e));
}

int order_at(const MeroExpr& e, cplx p) {
  auto r = to_rational(e);
  int num = lowest_order(taylor_shift(r.num, p));
  int den = lowest_order(taylor_shift(r.den, p));
  if (num < 0) throw UndefinedOrder("expression vanishes identically: " + to_string(e));
  if (den < 0) throw UndefinedOrder("denominator vanishes identically: " + to_string(e));
  return num - den;
}

// ------------------------------------------------------------ compilation

namespace {

void emit(const MeroExpr& e, std::vector<std::tuple<Op, int, cplx>>& code, std::size_t& depth,
          std::size_t& max_depth) {
  if (e.op() == Op::Const || e.op() == Op::Var) {
    code.emplace_back(e.op(), 0, e.value());
    max_depth = std::max(max_depth, ++depth);
    return;
  }
  for (const auto& k : e.children()) emit(k, code, depth, max_depth);
  depth -= e.children().size() - 1;
  code.emplace_back(e.op(), e.exponent(), cplx{});
}

}  // namespace

Compiled::Compiled(const MeroExpr& e) {
  std::vector<std::tuple<Op, int, cplx>> code;
  std::size_t depth = 0;
  emit(e, code, depth, depth_);
  code_.reserve(code.size());
  for (auto& [op, k, v] : code) code_.push_back({op, k, v});
}

cplx Compiled::operator()(cplx z) const {
  constexpr std::size_t kInline = 64;
  std::array<cplx, kInline> inline_stack;
  std::vector<cplx> heap;
  cplx* st = inline_stack.data();
  if (depth_ > kInline) {
    heap.resize(depth_);
    st = heap.data();
  }
  std::size_t sp = 0;
  for (const auto& in : code_) {
    switch (in.op) {
      case Op::Const: st[sp++] = in.value; break;
      case Op::Var: st[sp++] = z; break;
      case Op::Neg: st[sp - 1] = -st[sp - 1]; break;
      case Op::Pow: st[sp - 1] = ipow(st[sp - 1], in.exponent); break;
      case Op::Exp: st[sp - 1] = std::exp(st[sp - 1]); break;
      case Op::Log: st[sp - 1] = std::log(st[sp - 1]); break;
      default:
        --sp;
        st[sp - 1] = apply(in.op, st[sp - 1], st[sp], 0);
        break;
    }
  }
  return sp ? st[0] : cplx{};
}

}  // namespace flatfront::expr

namespace flatfront {

MeroFn::MeroFn(expr::MeroExpr e) {
  d_[0] = std::move(e);
  for (std::size_t k = 1; k < d_.size(); ++k) d_[k] = expr::differentiate(d_[k - 1]);
  for (std::size_t k = 0; k < d_.size(); ++k) c_[k] = expr::Compiled(d_[k]);
}

}  // namespace flatfront
