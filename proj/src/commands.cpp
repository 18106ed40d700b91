#include "opcalc/commands.hpp"

#include <cmath>
#include <functional>
#include <ostream>

#include "opcalc/solver.hpp"

namespace opcalc {

namespace {

int guard(std::ostream& diag, const std::function<int()>& body) {
  try {
    return body();
  } catch (const parse_error& e) {
    diag << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const numerical_error& e) {
    diag << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    diag << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::range_error& e) {
    diag << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

// Realize a strictly function-valued element; reject constant parts.
ExpPoly realize_function(const RatFun& r) {
  Realization re = realize(r);
  double scale = std::max(1.0, re.fn.max_coeff_abs());
  if (std::abs(re.const_part) > 1e-9 * scale)
    throw std::domain_error(
        "element is " + format_cplx(re.const_part) +
        " + {f(t)}: the constant part is not a sampled function");
  return re.fn;
}

}  // namespace

ElementSamples realize_samples(const Element& elem, const GridSpec& grid) {
  ElementSamples out;
  if (std::holds_alternative<RatFun>(elem)) {
    ExpPoly f = realize_function(std::get<RatFun>(elem));
    out.fn = SampledFn::sample([&](double t) { return f.eval(t); },
                               grid.horizon, grid.count);
    return out;
  }
  if (std::holds_alternative<DelayElement>(elem)) {
    PiecewiseEP p = de_realize(std::get<DelayElement>(elem));
    double scale = 1.0;
    for (const auto& piece : p.pieces)
      scale = std::max(scale, piece.fn.max_coeff_abs());
    if (std::abs(p.const_part) > 1e-9 * scale)
      throw std::domain_error(
          "element is " + format_cplx(p.const_part) +
          " + {f(t)}: the constant part is not a sampled function");
    out.fn = SampledFn::sample([&](double t) { return p.eval(t); },
                               grid.horizon, grid.count);
    out.knots = p.knots();
    return out;
  }
  throw std::domain_error("series elements have no sampled realization here");
}

int cmd_invert(const std::string& expr_src, const GridSpec& grid,
               std::ostream& csv_out, std::ostream& diag) {
  return guard(diag, [&] {
    Element elem = lower_exact(parse(expr_src));
    ElementSamples s = realize_samples(elem, grid);
    write_csv(s.fn, csv_out);
    return kExitOk;
  });
}

int cmd_verify(const std::string& lhs_src, const std::string& rhs_src,
               const GridSpec& grid, double tol, bool force_numeric,
               std::ostream& out, std::ostream& diag) {
  return guard(diag, [&] {
    Element lhs = lower_exact(parse(lhs_src));
    Element rhs = lower_exact(parse(rhs_src));

    double deviation = 0.0;
    const char* mode = "exact";
    if (!force_numeric && std::holds_alternative<RatFun>(lhs) &&
        std::holds_alternative<RatFun>(rhs)) {
      deviation = ratfun_distance(std::get<RatFun>(lhs), std::get<RatFun>(rhs));
    } else if (!force_numeric) {
      auto as_delay = [](const Element& e) {
        if (std::holds_alternative<DelayElement>(e))
          return std::get<DelayElement>(e);
        return DelayElement::from_ratfun(std::get<RatFun>(e));
      };
      deviation = de_distance(as_delay(lhs), as_delay(rhs));
    } else {
      ElementSamples a = realize_samples(lhs, grid);
      ElementSamples b = realize_samples(rhs, grid);
      std::vector<double> knots = a.knots;
      knots.insert(knots.end(), b.knots.begin(), b.knots.end());
      deviation = compare(a.fn, b.fn, knots);
      mode = "sampled";
    }
    out << "max deviation = " << deviation << " (" << mode << ", tol " << tol
        << ")\n";
    if (deviation <= tol) {
      out << "PASS\n";
      return kExitOk;
    }
    out << "FAIL\n";
    return kExitNumerical;
  });
}

int cmd_solve_ode(const std::vector<Cplx>& coeffs, const std::vector<Cplx>& init,
                  const std::string& rhs_src, const GridSpec& grid,
                  std::ostream* csv_out, std::ostream& out, std::ostream& diag) {
  return guard(diag, [&] {
    OdeProblem problem;
    problem.coeffs = coeffs;
    problem.init = init;
    if (!rhs_src.empty()) {
      Element rhs = lower_exact(parse(rhs_src));
      if (!std::holds_alternative<RatFun>(rhs))
        throw std::domain_error("ode right-hand side must be rational in s");
      problem.rhs = realize_function(std::get<RatFun>(rhs));
    }
    ExpPoly f = solve_lode(problem);
    out << "f(t) = " << to_string(f) << "\n";
    if (csv_out) {
      SampledFn s = SampledFn::sample([&](double t) { return f.eval(t); },
                                      grid.horizon, grid.count);
      write_csv(s, *csv_out);
    }
    return kExitOk;
  });
}

int cmd_solve_delay(Cplx c, const std::string& forcing_src, double horizon,
                    const GridSpec& grid, std::ostream* csv_out,
                    std::ostream& out, std::ostream& diag) {
  return guard(diag, [&] {
    Element forcing = lower_exact(parse(forcing_src));
    if (!std::holds_alternative<RatFun>(forcing))
      throw std::domain_error("delay forcing must be rational in s");
    DelayProblem problem{c, realize_function(std::get<RatFun>(forcing)),
                         horizon};
    PiecewiseEP x = solve_delay_geom(problem);
    out << "x(t):\n" << to_string(x) << "\n";
    if (csv_out) {
      GridSpec g = grid;
      g.horizon = horizon;
      SampledFn s = SampledFn::sample([&](double t) { return x.eval(t); },
                                      g.horizon, g.count);
      write_csv(s, *csv_out);
    }
    return kExitOk;
  });
}

int cmd_series(const std::string& expr_src, SeriesRing ring, int order,
               std::ostream& out, std::ostream& diag) {
  return guard(diag, [&] {
    Element elem = lower_series(parse(expr_src), ring, order);
    out << "n,re,im\n";
    auto dump = [&](const auto& s) {
      char line[96];
      for (int n = 0; n <= s.order(); ++n) {
        std::snprintf(line, sizeof(line), "%d,%.17g,%.17g\n", n,
                      s.coeff(n).real(), s.coeff(n).imag());
        out << line;
      }
    };
    if (std::holds_alternative<SeriesL>(elem))
      dump(std::get<SeriesL>(elem));
    else
      dump(std::get<SeriesH>(elem));
    return kExitOk;
  });
}

}  // namespace opcalc
