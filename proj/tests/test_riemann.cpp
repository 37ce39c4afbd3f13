#include <doctest.h>

#include <cmath>
#include <vector>

#include "stagfv/riemann.hpp"

using namespace stagfv;

namespace {

const RiemannProblem kSod{{1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, 1.4, 0.5};

// Independent check of the pressure equation: bracketed bisection, no Newton.
double bisect_star_pressure(const RiemannProblem& pb) {
  auto f = [&](double p) {
    auto branch = [&](const RiemannState& s) {
      const double a = std::sqrt(pb.gamma * s.p / s.rho);
      if (p > s.p) {
        const double A = 2.0 / ((pb.gamma + 1.0) * s.rho);
        const double B = (pb.gamma - 1.0) / (pb.gamma + 1.0) * s.p;
        return (p - s.p) * std::sqrt(A / (p + B));
      }
      const double z = (pb.gamma - 1.0) / (2.0 * pb.gamma);
      return 2.0 * a / (pb.gamma - 1.0) * (std::pow(p / s.p, z) - 1.0);
    };
    return branch(pb.left) + branch(pb.right) + pb.right.u - pb.left.u;
  };
  double lo = 1e-12, hi = 10.0 * std::max(pb.left.p, pb.right.p);
  while (f(hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

// Exact conserved state and flux triples.
std::vector<double> conserved(const RiemannState& s, double gamma) {
  const double E = s.p / ((gamma - 1.0)) + 0.5 * s.rho * s.u * s.u;
  return {s.rho, s.rho * s.u, E};
}

std::vector<double> flux(const RiemannState& s, double gamma) {
  const double E = s.p / (gamma - 1.0) + 0.5 * s.rho * s.u * s.u;
  return {s.rho * s.u, s.rho * s.u * s.u + s.p, (E + s.p) * s.u};
}

}  // namespace

TEST_CASE("equal states produce no waves") {
  RiemannProblem pb{{1.0, 0.7, 2.0}, {1.0, 0.7, 2.0}, 1.4, 0.0};
  const StarState star = solve_star_state(pb);
  CHECK(star.p == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(star.u == doctest::Approx(0.7).epsilon(1e-13));
  CHECK(star.left_wave == WaveType::none);
  CHECK(star.right_wave == WaveType::none);
}

TEST_CASE("Sod star state matches the bisection oracle") {
  const StarState star = solve_star_state(kSod);
  CHECK(star.p == doctest::Approx(bisect_star_pressure(kSod)).epsilon(1e-10));
  CHECK(star.p == doctest::Approx(0.30313).epsilon(2e-5));
  CHECK(star.u == doctest::Approx(0.92745).epsilon(2e-5));
  CHECK(star.left_wave == WaveType::rarefaction);
  CHECK(star.right_wave == WaveType::shock);
  CHECK(star.right_head == doctest::Approx(1.7522).epsilon(2e-4));
}

TEST_CASE("mirrored problems reflect the star state") {
  RiemannProblem mirrored{{0.125, 0.0, 0.1}, {1.0, 0.0, 1.0}, 1.4, 0.5};
  const StarState star = solve_star_state(kSod);
  const StarState flipped = solve_star_state(mirrored);
  CHECK(flipped.p == doctest::Approx(star.p).epsilon(1e-14));
  CHECK(flipped.u == doctest::Approx(-star.u).epsilon(1e-13));
  CHECK(flipped.left_wave == WaveType::shock);
  CHECK(flipped.right_wave == WaveType::rarefaction);
}

TEST_CASE("sampling far from the fan returns the input states") {
  const StarState star = solve_star_state(kSod);
  const RiemannState left = sample(kSod, star, -100.0);
  CHECK(left.rho == kSod.left.rho);
  CHECK(left.u == kSod.left.u);
  CHECK(left.p == kSod.left.p);
  const RiemannState right = sample(kSod, star, 100.0);
  CHECK(right.rho == kSod.right.rho);
  CHECK(right.p == kSod.right.p);
}

TEST_CASE("Rankine-Hugoniot relation across the right shock") {
  const StarState star = solve_star_state(kSod);
  const double speed = star.right_head;
  const RiemannState ahead = kSod.right;
  const RiemannState behind{star.rho_right, star.u, star.p};
  const auto ua = conserved(ahead, kSod.gamma);
  const auto ub = conserved(behind, kSod.gamma);
  const auto fa = flux(ahead, kSod.gamma);
  const auto fb = flux(behind, kSod.gamma);
  for (int c = 0; c < 3; ++c)
    CHECK(std::abs((fa[c] - fb[c]) - speed * (ua[c] - ub[c])) <= 1e-10);
}

TEST_CASE("the sampled solution conserves mass over [a,b]") {
  const StarState star = solve_star_state(kSod);
  const double t = 0.2;
  const double a = 0.05, b = 0.95;

  // integrate between the known wave breakpoints with Gauss quadrature
  std::vector<double> cuts = {a,
                              0.5 + star.left_head * t,
                              0.5 + star.left_tail * t,
                              0.5 + star.u * t,
                              0.5 + star.right_head * t,
                              b};
  const double nodes[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                           0.8611363115940526};
  const double weights[4] = {0.34785484513745385, 0.6521451548625461, 0.6521451548625461,
                             0.34785484513745385};
  double mass_t = 0.0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double lo = cuts[c], hi = cuts[c + 1];
    if (!(hi > lo)) continue;
    // subdivide each smooth piece for good measure
    const int slices = 64;
    for (int sidx = 0; sidx < slices; ++sidx) {
      const double x0 = lo + (hi - lo) * sidx / slices;
      const double x1 = lo + (hi - lo) * (sidx + 1) / slices;
      for (int q = 0; q < 4; ++q) {
        const double x = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * nodes[q];
        mass_t += 0.5 * (x1 - x0) * weights[q] * sample(kSod, star, (x - 0.5) / t).rho;
      }
    }
  }
  const double mass_0 = 1.0 * (0.5 - a) + 0.125 * (b - 0.5);
  const double influx = t * (kSod.left.rho * kSod.left.u - kSod.right.rho * kSod.right.u);
  CHECK(std::abs(mass_t - (mass_0 + influx)) <= 1e-8);
}

TEST_CASE("vacuum-generating data is rejected") {
  RiemannProblem pb{{1.0, -10.0, 0.01}, {1.0, 10.0, 0.01}, 1.4, 0.0};
  CHECK_THROWS_AS(solve_star_state(pb), SolverError);
  RiemannProblem bad{{0.0, 0.0, 1.0}, {1.0, 0.0, 1.0}, 1.4, 0.0};
  CHECK_THROWS_AS(solve_star_state(bad), ConfigError);
}
