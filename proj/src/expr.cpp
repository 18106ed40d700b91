#include "opcalc/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace opcalc {

namespace {

// --- lexer -----------------------------------------------------------------

enum class Tok {
  Number,  // num, imaginary flag
  Ident,   // text
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  End
};

struct Token {
  Tok kind = Tok::End;
  size_t offset = 0;
  double num = 0.0;
  bool imaginary = false;
  bool integral = false;  // literal had no '.', exponent or 'i'
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    tok_ = Token{};
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    const char c = src_[pos_];
    switch (c) {
      case '+': tok_.kind = Tok::Plus; ++pos_; return;
      case '-': tok_.kind = Tok::Minus; ++pos_; return;
      case '*': tok_.kind = Tok::Star; ++pos_; return;
      case '/': tok_.kind = Tok::Slash; ++pos_; return;
      case '^': tok_.kind = Tok::Caret; ++pos_; return;
      case '(': tok_.kind = Tok::LParen; ++pos_; return;
      case ')': tok_.kind = Tok::RParen; ++pos_; return;
      case '[': tok_.kind = Tok::LBracket; ++pos_; return;
      case ']': tok_.kind = Tok::RBracket; ++pos_; return;
      case '{': tok_.kind = Tok::LBrace; ++pos_; return;
      case '}': tok_.kind = Tok::RBrace; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             std::isalpha(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
      tok_.kind = Tok::Ident;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    throw parse_error(pos_, "a token");
  }

  void lex_number() {
    size_t start = pos_;
    bool has_dot = false, has_exp = false;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '.' && !has_dot && !has_exp) {
        has_dot = true;
        ++pos_;
      } else if ((c == 'e' || c == 'E') && !has_exp && pos_ + 1 < src_.size() &&
                 (std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])) ||
                  ((src_[pos_ + 1] == '+' || src_[pos_ + 1] == '-') &&
                   pos_ + 2 < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[pos_ + 2]))))) {
        has_exp = true;
        ++pos_;
        if (src_[pos_] == '+' || src_[pos_] == '-') ++pos_;
      } else {
        break;
      }
    }
    tok_.kind = Tok::Number;
    tok_.num = std::strtod(std::string(src_.substr(start, pos_ - start)).c_str(),
                           nullptr);
    tok_.integral = !has_dot && !has_exp;
    // A directly attached 'i' makes an imaginary literal.
    if (pos_ < src_.size() && src_[pos_] == 'i' &&
        !(pos_ + 1 < src_.size() &&
          std::isalpha(static_cast<unsigned char>(src_[pos_ + 1])))) {
      tok_.imaginary = true;
      tok_.integral = false;
      ++pos_;
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
  Token tok_;
};

// --- parser ----------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  Expr parse_all() {
    Expr e = additive();
    if (lex_.peek().kind != Tok::End)
      throw parse_error(lex_.peek().offset, "end of input");
    return e;
  }

  Cplx parse_literal_all() {
    Cplx z = complex_literal();
    if (lex_.peek().kind != Tok::End)
      throw parse_error(lex_.peek().offset, "end of literal");
    return z;
  }

 private:
  Lexer lex_;

  void expect(Tok kind, const char* what) {
    if (lex_.peek().kind != kind) throw parse_error(lex_.peek().offset, what);
    lex_.take();
  }

  Expr additive() {
    Expr e = multiplicative();
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      bool plus = lex_.take().kind == Tok::Plus;
      Expr rhs = multiplicative();
      Expr node;
      node.kind = plus ? Expr::Kind::Add : Expr::Kind::Sub;
      node.children = {std::move(e), std::move(rhs)};
      e = std::move(node);
    }
    return e;
  }

  Expr multiplicative() {
    Expr e = unary();
    while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
      bool mul = lex_.take().kind == Tok::Star;
      Expr rhs = unary();
      Expr node;
      node.kind = mul ? Expr::Kind::Mul : Expr::Kind::Div;
      node.children = {std::move(e), std::move(rhs)};
      e = std::move(node);
    }
    return e;
  }

  Expr unary() {
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      Expr node;
      node.kind = Expr::Kind::Neg;
      node.children = {unary()};
      return node;
    }
    return power();
  }

  Expr power() {
    Expr e = atom();
    // Brace form h^{real} right after the bare h.
    while (lex_.peek().kind == Tok::Caret) {
      Token caret = lex_.take();
      if (lex_.peek().kind == Tok::LBrace) {
        if (e.kind != Expr::Kind::VarH)
          throw parse_error(caret.offset,
                            "an integer exponent (braces only allowed on h)");
        lex_.take();
        double x = real_literal();
        expect(Tok::RBrace, "'}'");
        Expr node;
        node.kind = Expr::Kind::HPow;
        node.hexp = x;
        e = std::move(node);
        continue;
      }
      bool negative = false;
      if (lex_.peek().kind == Tok::Minus) {
        lex_.take();
        negative = true;
      }
      Token t = lex_.peek();
      if (t.kind != Tok::Number || !t.integral)
        throw parse_error(t.offset, "an integer exponent");
      lex_.take();
      Expr node;
      node.kind = Expr::Kind::IPow;
      node.ipow = static_cast<int>(t.num) * (negative ? -1 : 1);
      node.children = {std::move(e)};
      e = std::move(node);
    }
    return e;
  }

  Expr atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::LParen: {
        lex_.take();
        Expr e = additive();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Number: {
        Token n = lex_.take();
        Expr e;
        e.kind = Expr::Kind::Number;
        e.value = n.imaginary ? Cplx(0, n.num) : Cplx(n.num, 0);
        return e;
      }
      case Tok::Ident:
        return ident_atom();
      default:
        throw parse_error(t.offset, "an atom (number, s, l, h or operator)");
    }
  }

  Expr ident_atom() {
    Token id = lex_.take();
    const std::string& name = id.text;
    Expr e;
    if (name == "s") { e.kind = Expr::Kind::VarS; return e; }
    if (name == "l") { e.kind = Expr::Kind::VarL; return e; }
    if (name == "h") { e.kind = Expr::Kind::VarH; return e; }
    if (name == "i") {
      e.kind = Expr::Kind::Number;
      e.value = Cplx(0, 1);
      return e;
    }
    if (name == "T") {
      expect(Tok::LBracket, "'['");
      e.kind = Expr::Kind::OpT;
      e.value = complex_literal();
      expect(Tok::RBracket, "']'");
      e.children = {parenthesized()};
      return e;
    }
    if (name == "tau") {
      expect(Tok::LBracket, "'['");
      e.kind = Expr::Kind::OpTau;
      e.value = Cplx(real_literal(), 0);
      expect(Tok::RBracket, "']'");
      e.children = {parenthesized()};
      return e;
    }
    if (name == "sigma") {
      expect(Tok::LBracket, "'['");
      Token n = lex_.peek();
      if (n.kind != Tok::Number || !n.integral)
        throw parse_error(n.offset, "an integer");
      lex_.take();
      e.kind = Expr::Kind::OpSigma;
      e.ipow = static_cast<int>(n.num);
      expect(Tok::RBracket, "']'");
      e.children = {parenthesized()};
      return e;
    }
    if (name == "dds" || name == "D" || name == "Dp") {
      e.kind = (name == "dds")  ? Expr::Kind::OpDds
               : (name == "D") ? Expr::Kind::OpD
                               : Expr::Kind::OpDp;
      e.children = {parenthesized()};
      return e;
    }
    throw parse_error(id.offset, "s, l, h, i, T, tau, sigma, dds, D or Dp");
  }

  Expr parenthesized() {
    expect(Tok::LParen, "'('");
    Expr e = additive();
    expect(Tok::RParen, "')'");
    return e;
  }

  double real_literal() {
    bool negative = false;
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      negative = true;
    }
    Token t = lex_.peek();
    if (t.kind != Tok::Number || t.imaginary)
      throw parse_error(t.offset, "a real number");
    lex_.take();
    return negative ? -t.num : t.num;
  }

  // a | bi | a+bi | a-bi, with optional leading sign.
  Cplx complex_literal() {
    bool negative = false;
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      negative = true;
    }
    Token t = lex_.peek();
    if (t.kind != Tok::Number) throw parse_error(t.offset, "a number");
    lex_.take();
    if (t.imaginary) return Cplx(0, negative ? -t.num : t.num);
    double re = negative ? -t.num : t.num;
    if (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      bool plus = lex_.take().kind == Tok::Plus;
      Token im = lex_.peek();
      if (im.kind != Tok::Number || !im.imaginary)
        throw parse_error(im.offset, "an imaginary part like 2i");
      lex_.take();
      return Cplx(re, plus ? im.num : -im.num);
    }
    return Cplx(re, 0);
  }
};

// --- printer ---------------------------------------------------------------

std::string fmt_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Number literal in a form the parser maps back to one value.
std::string fmt_number(Cplx z) {
  if (z.imag() == 0.0) return fmt_real(z.real());
  if (z.real() == 0.0) return fmt_real(z.imag()) + "i";
  std::string s = fmt_real(z.real());
  if (z.imag() >= 0.0)
    s += "+" + fmt_real(z.imag()) + "i";
  else
    s += "-" + fmt_real(-z.imag()) + "i";
  return s;
}

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::IPow:
      return 4;
    case Expr::Kind::Number:
      // A literal with both parts, or a negative leading part, reparses as a
      // sum or negation; rank it accordingly so callers parenthesize.
      if (e.value.real() != 0.0 && e.value.imag() != 0.0) return 1;
      if (e.value.real() < 0.0 || (e.value.real() == 0.0 && e.value.imag() < 0.0))
        return 3;
      return 5;
    default:
      return 5;
  }
}

std::string print(const Expr& e, int min_prec) {
  std::string out;
  switch (e.kind) {
    case Expr::Kind::Number: out = fmt_number(e.value); break;
    case Expr::Kind::VarS: out = "s"; break;
    case Expr::Kind::VarL: out = "l"; break;
    case Expr::Kind::VarH: out = "h"; break;
    case Expr::Kind::HPow: out = "h^{" + fmt_real(e.hexp) + "}"; break;
    case Expr::Kind::Neg: out = "-" + print(e.children[0], 3); break;
    case Expr::Kind::Add:
      out = print(e.children[0], 1) + "+" + print(e.children[1], 2);
      break;
    case Expr::Kind::Sub:
      out = print(e.children[0], 1) + "-" + print(e.children[1], 2);
      break;
    case Expr::Kind::Mul:
      out = print(e.children[0], 2) + "*" + print(e.children[1], 3);
      break;
    case Expr::Kind::Div:
      out = print(e.children[0], 2) + "/" + print(e.children[1], 3);
      break;
    case Expr::Kind::IPow:
      out = print(e.children[0], 5) + "^" + std::to_string(e.ipow);
      break;
    case Expr::Kind::OpT:
      out = "T[" + fmt_number(e.value) + "](" + print(e.children[0], 0) + ")";
      break;
    case Expr::Kind::OpTau:
      out = "tau[" + fmt_real(e.value.real()) + "](" + print(e.children[0], 0) + ")";
      break;
    case Expr::Kind::OpSigma:
      out = "sigma[" + std::to_string(e.ipow) + "](" + print(e.children[0], 0) + ")";
      break;
    case Expr::Kind::OpDds:
      out = "dds(" + print(e.children[0], 0) + ")";
      break;
    case Expr::Kind::OpD:
      out = "D(" + print(e.children[0], 0) + ")";
      break;
    case Expr::Kind::OpDp:
      out = "Dp(" + print(e.children[0], 0) + ")";
      break;
  }
  if (precedence(e) < min_prec) return "(" + out + ")";
  return out;
}

}  // namespace

Expr parse(std::string_view src) { return Parser(src).parse_all(); }

std::string to_string(const Expr& e) { return print(e, 0); }

Cplx parse_cplx_literal(std::string_view src) {
  return Parser(src).parse_literal_all();
}

// --- lowering --------------------------------------------------------------

namespace {

using Exact = std::variant<RatFun, DelayElement>;

DelayElement to_delay(const Exact& v) {
  if (std::holds_alternative<DelayElement>(v))
    return std::get<DelayElement>(v);
  return DelayElement::from_ratfun(std::get<RatFun>(v));
}

Exact exact_invert(const Exact& v) {
  if (std::holds_alternative<RatFun>(v)) {
    const RatFun& r = std::get<RatFun>(v);
    if (r.is_zero()) throw std::domain_error("division by zero");
    return RatFun(Cplx(1)) / r;
  }
  const DelayElement& d = std::get<DelayElement>(v);
  if (d.parts().size() != 1)
    throw std::domain_error(
        "class overflow: divisor has several delay parts; only pure "
        "h-power multiples are invertible in the exact classes (use the "
        "series command for unit h-series)");
  const auto& part = d.parts().front();
  DelayElement inv;
  inv.add_part(-part.delay, RatFun(Cplx(1)) / part.fn);
  return inv;
}

Exact exact_pow(const Exact& v, int k) {
  if (k < 0) return exact_pow(exact_invert(v), -k);
  Exact acc = RatFun(Cplx(1));
  for (int i = 0; i < k; ++i) {
    if (std::holds_alternative<RatFun>(acc) && std::holds_alternative<RatFun>(v))
      acc = std::get<RatFun>(acc) * std::get<RatFun>(v);
    else
      acc = to_delay(acc) * to_delay(v);
  }
  return acc;
}

Exact lower_exact_impl(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return RatFun(e.value);
    case Expr::Kind::VarS:
      return RatFun::s();
    case Expr::Kind::VarL:
      return RatFun::l();
    case Expr::Kind::VarH:
      return DelayElement::h_pow(1.0);
    case Expr::Kind::HPow:
      return DelayElement::h_pow(e.hexp);
    case Expr::Kind::Neg: {
      Exact c = lower_exact_impl(e.children[0]);
      if (std::holds_alternative<RatFun>(c)) return -std::get<RatFun>(c);
      return -std::get<DelayElement>(c);
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul: {
      Exact a = lower_exact_impl(e.children[0]);
      Exact b = lower_exact_impl(e.children[1]);
      if (std::holds_alternative<RatFun>(a) &&
          std::holds_alternative<RatFun>(b)) {
        const RatFun &x = std::get<RatFun>(a), &y = std::get<RatFun>(b);
        if (e.kind == Expr::Kind::Add) return x + y;
        if (e.kind == Expr::Kind::Sub) return x - y;
        return x * y;
      }
      DelayElement x = to_delay(a), y = to_delay(b);
      if (e.kind == Expr::Kind::Add) return x + y;
      if (e.kind == Expr::Kind::Sub) return x - y;
      return x * y;
    }
    case Expr::Kind::Div: {
      Exact a = lower_exact_impl(e.children[0]);
      Exact b = lower_exact_impl(e.children[1]);
      if (std::holds_alternative<RatFun>(a) &&
          std::holds_alternative<RatFun>(b))
        return std::get<RatFun>(a) / std::get<RatFun>(b);
      Exact binv = exact_invert(b);
      return to_delay(a) * to_delay(binv);
    }
    case Expr::Kind::IPow:
      return exact_pow(lower_exact_impl(e.children[0]), e.ipow);
    case Expr::Kind::OpT: {
      Exact c = lower_exact_impl(e.children[0]);
      if (std::holds_alternative<RatFun>(c))
        return std::get<RatFun>(c).subst_shift(e.value);
      return exp_shift(e.value, std::get<DelayElement>(c));
    }
    case Expr::Kind::OpTau: {
      double q = e.value.real();
      if (!(q > 0.0)) throw std::domain_error("tau: q must be > 0");
      Exact c = lower_exact_impl(e.children[0]);
      if (std::holds_alternative<RatFun>(c))
        return std::get<RatFun>(c).subst_scale(q);
      return dilate(q, std::get<DelayElement>(c));
    }
    case Expr::Kind::OpSigma: {
      if (e.ipow < 2) throw std::domain_error("sigma: d must be >= 2");
      Exact c = lower_exact_impl(e.children[0]);
      if (std::holds_alternative<RatFun>(c))
        return std::get<RatFun>(c).subst_scale(1.0 / e.ipow);
      return mahler(e.ipow, std::get<DelayElement>(c));
    }
    case Expr::Kind::OpDds: {
      Exact c = lower_exact_impl(e.children[0]);
      if (std::holds_alternative<RatFun>(c)) return std::get<RatFun>(c).dds();
      return dds(std::get<DelayElement>(c));
    }
    case Expr::Kind::OpD: {
      Exact c = lower_exact_impl(e.children[0]);
      if (std::holds_alternative<RatFun>(c)) {
        Poly s2 = Poly::variable() * Poly::variable();
        return RatFun(-s2, Poly(Cplx(1))) * std::get<RatFun>(c).dds();
      }
      return d_dl(std::get<DelayElement>(c));
    }
    case Expr::Kind::OpDp:
      return d_dh(to_delay(lower_exact_impl(e.children[0])));
  }
  throw std::domain_error("lower: unknown node");
}

template <char Var>
TruncatedSeries<Var> lower_series_impl(const Expr& e, int order) {
  using S = TruncatedSeries<Var>;
  auto recurse = [&](const Expr& c) { return lower_series_impl<Var>(c, order); };
  switch (e.kind) {
    case Expr::Kind::Number:
      return S::constant(e.value, order);
    case Expr::Kind::VarS:
      throw std::domain_error("class overflow: s is not a power-series element");
    case Expr::Kind::VarL:
      if constexpr (Var == 'l') return S::generator(order);
      throw std::domain_error("class overflow: l does not live in C[[h]]");
    case Expr::Kind::VarH:
      if constexpr (Var == 'h') return S::generator(order);
      throw std::domain_error("class overflow: h does not live in C{l}");
    case Expr::Kind::HPow: {
      if constexpr (Var == 'h') {
        double n = e.hexp;
        if (n < 0.0 || std::abs(n - std::round(n)) > 1e-12)
          throw std::domain_error(
              "class overflow: only integer powers of h are series elements");
        return S::generator(order).pow(static_cast<int>(std::round(n)));
      } else {
        throw std::domain_error("class overflow: h does not live in C{l}");
      }
    }
    case Expr::Kind::Neg:
      return -recurse(e.children[0]);
    case Expr::Kind::Add:
      return recurse(e.children[0]) + recurse(e.children[1]);
    case Expr::Kind::Sub:
      return recurse(e.children[0]) - recurse(e.children[1]);
    case Expr::Kind::Mul:
      return recurse(e.children[0]) * recurse(e.children[1]);
    case Expr::Kind::Div:
      return recurse(e.children[0]) * invert_unit(recurse(e.children[1]));
    case Expr::Kind::IPow: {
      S base = recurse(e.children[0]);
      if (e.ipow < 0) return invert_unit(base).pow(-e.ipow);
      return base.pow(e.ipow);
    }
    case Expr::Kind::OpT:
      if constexpr (Var == 'l') {
        return exp_shift(e.value, recurse(e.children[0]));
      } else {
        throw std::domain_error("T is not defined on C[[h]]");
      }
    case Expr::Kind::OpTau: {
      double q = e.value.real();
      if (!(q > 0.0)) throw std::domain_error("tau: q must be > 0");
      if constexpr (Var == 'l') {
        return dilate(q, recurse(e.children[0]));
      } else {
        // On C[[h]] only unit fractions act (the Mahler case).
        if (q == 1.0) return recurse(e.children[0]);
        double d = 1.0 / q;
        if (std::abs(d - std::round(d)) > 1e-12 || d < 2.0)
          throw std::domain_error(
              "tau on C[[h]] requires a unit fraction q = 1/d");
        return mahler(static_cast<int>(std::round(d)), recurse(e.children[0]));
      }
    }
    case Expr::Kind::OpSigma: {
      if (e.ipow < 2) throw std::domain_error("sigma: d must be >= 2");
      if constexpr (Var == 'h') {
        return mahler(e.ipow, recurse(e.children[0]));
      } else {
        return dilate(1.0 / e.ipow, recurse(e.children[0]));
      }
    }
    case Expr::Kind::OpDds:
      return dds(recurse(e.children[0]));
    case Expr::Kind::OpD:
      if constexpr (Var == 'l') {
        return d_dl(recurse(e.children[0]));
      } else {
        throw std::domain_error("D is not closed on C[[h]] truncations");
      }
    case Expr::Kind::OpDp:
      if constexpr (Var == 'h') {
        return d_dh(recurse(e.children[0]));
      } else {
        throw std::domain_error("Dp is not closed on C{l} truncations");
      }
  }
  throw std::domain_error("lower: unknown node");
}

}  // namespace

Element lower_exact(const Expr& e) {
  Exact v = lower_exact_impl(e);
  if (std::holds_alternative<RatFun>(v)) return std::get<RatFun>(v);
  return std::get<DelayElement>(v);
}

Element lower_series(const Expr& e, SeriesRing ring, int order) {
  if (order < 0) throw std::domain_error("lower_series: negative order");
  if (ring == SeriesRing::L) return lower_series_impl<'l'>(e, order);
  return lower_series_impl<'h'>(e, order);
}

}  // namespace opcalc
