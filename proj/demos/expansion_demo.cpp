// Resonance expansion of a Gaussian bump for the reference shell potential:
// poles, the Gamow sum with its background, and the comparison with the
// real-axis reconstruction at each regulator value.

#include <span>
#include <vector>

#include <fmt/format.h>

#include "shellres/shellres.hpp"

using namespace shellres;

int main() {
  const PotentialSpec pot = make_potential(10.0, 1.0, 2.0, 1.0);
  const auto poles = find_resonances({0.0, 40.0, -3.0, 0.0}, pot);

  fmt::print("{:>3} {:>22} {:>22} {:>12} {:>12}\n", "n", "Re k", "Im k", "E", "Gamma");
  for (std::size_t i = 0; i < 6 && i < poles.size(); ++i) {
    const auto& p = poles[i];
    fmt::print("{:>3} {:>22.16f} {:>22.16f} {:>12.6f} {:>12.6f}\n", i + 1, p.k.re(), p.k.im(), p.energy(), p.width());
  }

  const TestFunction bump = TestFunction::gaussian_bump(0.5, 0.13, 1.6);
  const Contour contour = enclosing_contour(poles, 4, 1.0, 40.0);
  ExpansionOptions opts;
  opts.radii = TestFunction::uniform_grid(pot.b, 200);

  std::vector<ExpansionReport> reports;
  fmt::print("\n{:>6} {:>14} {:>14} {:>14}\n", "alpha", "|Gamow sum|", "|background|", "rel. error");
  for (double alpha : {0.2, 0.1, 0.05}) {
    reports.push_back(resonance_expansion(bump, std::span(poles).first(4), contour, alpha, pot, ExpansionMode::in_in, opts));
    const auto& r = reports.back();
    fmt::print("{:>6.2f} {:>14.6e} {:>14.6e} {:>14.3e}\n", alpha, l2_norm(r.radii, r.gamow_sum),
               l2_norm(r.radii, r.background), r.error_l2 / l2_norm(r.radii, r.direct));
  }
  const ExpansionReport limit = alpha_extrapolate(reports);
  fmt::print("{:>6} {:>14.6e} {:>14.6e} {:>14.3e}\n", "-> 0", l2_norm(limit.radii, limit.gamow_sum),
             l2_norm(limit.radii, limit.background), limit.error_l2 / l2_norm(limit.radii, limit.direct));

  fmt::print("\n{:>6} {:>14} {:>14}\n", "r", "|Gamow sum|", "|sum + bg|");
  const auto total = limit.expansion();
  for (std::size_t i = 19; i < limit.radii.size(); i += 20)
    fmt::print("{:>6.2f} {:>14.6e} {:>14.6e}\n", limit.radii[i], std::abs(limit.gamow_sum[i]), std::abs(total[i]));
}
