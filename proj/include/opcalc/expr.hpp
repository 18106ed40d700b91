#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "opcalc/delay.hpp"
#include "opcalc/ratfun.hpp"
#include "opcalc/series.hpp"

namespace opcalc {

/// Abstract syntax of the operational-calculus expression language.  Atoms
/// are complex literals, s, l, h and h^{real}; operators take numeric
/// literal parameters only (no variables or binding).
struct Expr {
  enum class Kind {
    Number,  // value
    VarS,
    VarL,
    VarH,
    HPow,  // h^{hexp}, brace form
    Neg,   // children[0]
    Add,
    Sub,
    Mul,
    Div,    // children[0], children[1]
    IPow,   // children[0] ^ ipow (integer literal)
    OpT,    // T[value](children[0])
    OpTau,  // tau[value.real()](children[0])
    OpSigma,  // sigma[ipow](children[0])
    OpDds,    // dds(children[0])
    OpD,      // D(children[0])
    OpDp      // Dp(children[0])
  };

  Kind kind = Kind::Number;
  Cplx value{0, 0};
  double hexp = 0.0;
  int ipow = 0;
  std::vector<Expr> children;
};

/// Syntax error: byte offset into the source plus what was expected there.
class parse_error : public std::runtime_error {
 public:
  parse_error(size_t offset, const std::string& expected)
      : std::runtime_error("syntax error at offset " + std::to_string(offset) +
                           ": expected " + expected),
        offset_(offset),
        expected_(expected) {}

  size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

 private:
  size_t offset_;
  std::string expected_;
};

Expr parse(std::string_view src);

/// Canonical form; stable under parse (print . parse . print = print).
std::string to_string(const Expr& e);

/// A standalone complex literal ("3", "-2i", "1.5+0.5i"); used for CLI
/// flag values.
Cplx parse_cplx_literal(std::string_view src);

/// The closed classes an expression can lower into.
using Element = std::variant<RatFun, DelayElement, SeriesL, SeriesH>;

/// Lower into the exact classes (RatFun or DelayElement).  Throws
/// domain_error with a "class overflow" message when the expression leaves
/// them (e.g. division by a multi-part delay element).
Element lower_exact(const Expr& e);

enum class SeriesRing { L, H };

/// Lower into a truncated series ring: l (resp. h) becomes the generator
/// truncated at the given order; division requires a unit divisor.
Element lower_series(const Expr& e, SeriesRing ring, int order);

}  // namespace opcalc
