// Command-line surface for the operational-calculus engine.
//
// Subcommands: invert, verify, solve (ode|delay), series.  Exit codes:
// 0 pass, 1 usage error, 2 semantic/domain error, 3 numerical failure.
// All diagnostics go to stderr; CSV and reports go to --out or stdout.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "opcalc/commands.hpp"

namespace {

using opcalc::Cplx;
using opcalc::GridSpec;

bool parse_grid(const std::string& text, GridSpec& grid, std::string& err) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    err = "--grid expects T,N";
    return false;
  }
  try {
    grid.horizon = std::stod(text.substr(0, comma));
    grid.count = std::stoi(text.substr(comma + 1));
  } catch (const std::exception&) {
    err = "--grid expects numeric T,N";
    return false;
  }
  if (!(grid.horizon > 0.0) || grid.count < 2) {
    err = "--grid needs T > 0 and N >= 2";
    return false;
  }
  return true;
}

bool parse_cplx_list(const std::string& text, std::vector<Cplx>& out,
                     std::string& err) {
  out.clear();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(opcalc::parse_cplx_literal(item));
    } catch (const std::exception& e) {
      err = "bad complex literal '" + item + "': " + e.what();
      return false;
    }
  }
  if (out.empty()) {
    err = "empty list";
    return false;
  }
  return true;
}

// Stream to --out path, or stdout when none given.
class OutFile {
 public:
  explicit OutFile(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic-numeric engine for Mikusinski's operational calculus"};
  app.require_subcommand(1);

  std::string grid_text, out_path, tol_text;
  GridSpec grid;
  double tol = 1e-9;

  // invert
  auto* invert = app.add_subcommand("invert", "realize an element as a time function (CSV)");
  std::string invert_expr;
  invert->add_option("expr", invert_expr, "expression, e.g. \"1/(s^2+1)\"")->required();
  invert->add_option("--grid", grid_text, "sampling grid T,N (default 5,1000)");
  invert->add_option("--out", out_path, "CSV output path (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "check lhs = rhs to a tolerance");
  std::string verify_lhs, verify_rhs;
  bool verify_numeric = false;
  verify->add_option("lhs", verify_lhs)->required();
  verify->add_option("rhs", verify_rhs)->required();
  verify->add_option("--grid", grid_text, "grid for sampled comparison");
  verify->add_option("--tol", tol, "tolerance (default 1e-9)");
  verify->add_flag("--numeric", verify_numeric, "force sampled comparison");

  // solve
  auto* solve = app.add_subcommand("solve", "solve a demo problem");
  solve->require_subcommand(1);
  auto* ode = solve->add_subcommand("ode", "constant-coefficient linear ODE");
  std::string ode_coeffs, ode_init, ode_rhs;
  ode->add_option("--coeffs", ode_coeffs, "a0,a1,...,an for sum a_k f^(k)")->required();
  ode->add_option("--init", ode_init, "f(0),f'(0),...")->required();
  ode->add_option("--rhs", ode_rhs, "right-hand side expression (default 0)");
  ode->add_option("--grid", grid_text, "sampling grid T,N");
  ode->add_option("--out", out_path, "CSV output path");
  auto* delay = solve->add_subcommand("delay", "x = forcing + c h x");
  std::string delay_c = "0", delay_forcing;
  double delay_T = 5.0;
  delay->add_option("--c", delay_c, "feedback coefficient (complex literal)");
  delay->add_option("--forcing", delay_forcing, "forcing expression")->required();
  delay->add_option("--T", delay_T, "horizon (default 5)");
  delay->add_option("--grid", grid_text, "sampling grid T,N");
  delay->add_option("--out", out_path, "CSV output path");

  // series
  auto* series = app.add_subcommand("series", "coefficient table of a truncated series");
  std::string series_expr, series_ring = "l";
  int series_order = 16;
  series->add_option("expr", series_expr)->required();
  series->add_option("--ring", series_ring, "l or h (default l)")
      ->check(CLI::IsMember({"l", "h"}));
  series->add_option("--order", series_order, "truncation order (default 16)");
  series->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return opcalc::kExitUsage;
  }

  std::string err;
  if (!grid_text.empty() && !parse_grid(grid_text, grid, err)) {
    std::cerr << "error: " << err << "\n";
    return opcalc::kExitUsage;
  }

  try {
    OutFile out(out_path);
    if (invert->parsed())
      return opcalc::cmd_invert(invert_expr, grid, out.stream(), std::cerr);
    if (verify->parsed())
      return opcalc::cmd_verify(verify_lhs, verify_rhs, grid, tol,
                                verify_numeric, std::cout, std::cerr);
    if (ode->parsed()) {
      std::vector<Cplx> coeffs, init;
      if (!parse_cplx_list(ode_coeffs, coeffs, err) ||
          !parse_cplx_list(ode_init, init, err)) {
        std::cerr << "error: " << err << "\n";
        return opcalc::kExitUsage;
      }
      std::ostream* csv = out_path.empty() ? nullptr : &out.stream();
      return opcalc::cmd_solve_ode(coeffs, init, ode_rhs, grid, csv, std::cout,
                                   std::cerr);
    }
    if (delay->parsed()) {
      Cplx c;
      try {
        c = opcalc::parse_cplx_literal(delay_c);
      } catch (const std::exception& e) {
        std::cerr << "error: bad --c literal: " << e.what() << "\n";
        return opcalc::kExitUsage;
      }
      std::ostream* csv = out_path.empty() ? nullptr : &out.stream();
      return opcalc::cmd_solve_delay(c, delay_forcing, delay_T, grid, csv,
                                     std::cout, std::cerr);
    }
    if (series->parsed()) {
      auto ring = series_ring == "l" ? opcalc::SeriesRing::L
                                     : opcalc::SeriesRing::H;
      return opcalc::cmd_series(series_expr, ring, series_order, out.stream(),
                                std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return opcalc::kExitDomain;
  }
  return opcalc::kExitUsage;
}
