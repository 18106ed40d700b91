#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace opcalc {

using Cplx = std::complex<double>;

/// Absolute tolerance for clustering repeated polynomial roots and for
/// merging exponents of exponential polynomials.
inline constexpr double kPoleMergeTol = 1e-8;

/// Absolute tolerance for merging delay exponents of translation elements.
inline constexpr double kDelayMergeTol = 1e-12;

inline bool is_finite(Cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(Cplx z, const char* what) {
  if (!is_finite(z))
    throw std::domain_error(std::string(what) + ": non-finite value");
}

/// Compact display form: "3", "2i", "(1+2i)".  For display only; not meant
/// to round-trip through the expression parser at full precision.
std::string format_cplx(Cplx z, int sig_digits = 12);

/// Thrown when an iterative numeric procedure fails to reach its target
/// accuracy; carries the best residual seen.
class numerical_error : public std::runtime_error {
 public:
  numerical_error(const std::string& msg, double best_residual)
      : std::runtime_error(msg + " (best residual " +
                           std::to_string(best_residual) + ")"),
        best_residual_(best_residual) {}

  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace opcalc
