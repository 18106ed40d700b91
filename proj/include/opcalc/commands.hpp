#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "opcalc/expr.hpp"
#include "opcalc/numeric.hpp"

namespace opcalc {

/// Exit-code contract shared by every subcommand:
/// 0 pass, 1 usage error, 2 semantic/domain error, 3 numerical failure.
enum ExitCode {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDomain = 2,
  kExitNumerical = 3
};

struct GridSpec {
  double horizon = 5.0;
  int count = 1000;
};

/// Sampled realization of a lowered exact element, with the knot locations
/// comparisons should avoid.  Elements with a nonzero constant part are not
/// functions and are rejected (domain_error).
struct ElementSamples {
  SampledFn fn;
  std::vector<double> knots;
};
ElementSamples realize_samples(const Element& elem, const GridSpec& grid);

/// invert: realize the expression as a time function and emit CSV.
int cmd_invert(const std::string& expr_src, const GridSpec& grid,
               std::ostream& csv_out, std::ostream& diag);

/// verify: exact coefficient distance when both sides lower to the same
/// class, sampled comparison otherwise (or when forced).  Prints the max
/// deviation; exit 0 iff it is <= tol.
int cmd_verify(const std::string& lhs_src, const std::string& rhs_src,
               const GridSpec& grid, double tol, bool force_numeric,
               std::ostream& out, std::ostream& diag);

/// solve ode: closed form printed to out, optional CSV samples.
int cmd_solve_ode(const std::vector<Cplx>& coeffs, const std::vector<Cplx>& init,
                  const std::string& rhs_src, const GridSpec& grid,
                  std::ostream* csv_out, std::ostream& out, std::ostream& diag);

/// solve delay: x = forcing + c h x on [0, horizon].
int cmd_solve_delay(Cplx c, const std::string& forcing_src, double horizon,
                    const GridSpec& grid, std::ostream* csv_out,
                    std::ostream& out, std::ostream& diag);

/// series: lower into C{l} or C[[h]] at the given truncation order and
/// print the coefficient table (CSV: n,re,im).
int cmd_series(const std::string& expr_src, SeriesRing ring, int order,
               std::ostream& out, std::ostream& diag);

}  // namespace opcalc
