#include <cmath>
#include <numbers>

#include "doctest.h"

#include "gdnls/errors.hpp"
#include "gdnls/model.hpp"
#include "gdnls/spectral.hpp"

using namespace gdnls;

namespace {

constexpr double kPi = std::numbers::pi;

ModelParams params(double sigma, double omega = 1.0, double c = 0.0) {
  ModelParams p;
  p.sigma = sigma;
  p.omega = omega;
  p.c = c;
  return p;
}

Field gaussian_wave(GridPtr grid, double amplitude, double width, double v) {
  Field f(grid);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = grid->nodes()[j];
    f[j] = amplitude * std::exp(-(x / width) * (x / width)) *
           std::polar(1.0, v * x);
  }
  return f;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(params(1.0).validate());
  CHECK_NOTHROW(params(3.0, 2.0, 1.0).validate());
  CHECK_THROWS_AS(params(0.5).validate(), ValidationError);
  CHECK_THROWS_AS(params(1.0, 0.0).validate(), ValidationError);
  CHECK_THROWS_AS(params(1.0, -1.0).validate(), ValidationError);
  // |c| < 2 sqrt(omega)
  CHECK_THROWS_AS(params(1.0, 1.0, 2.0).validate(), ValidationError);
  CHECK_THROWS_AS(params(1.0, 1.0, -2.5).validate(), ValidationError);
  CHECK_NOTHROW(params(1.0, 1.0, 1.99).validate());
}

TEST_CASE("mass and momentum on closed forms") {
  GridPtr g = make_grid(1024, 60.0);
  // u = A exp(-x^2/w^2) exp(i v x): M = A^2 w sqrt(pi/2). With the sign
  // convention P = Re int i u_x conj(u), the carrier e^{i v x} gives P = -v M.
  const double A = 0.7, w = 1.3, v = 0.9;
  const Field u = gaussian_wave(g, A, w, v);
  const double m_exact = A * A * w * std::sqrt(kPi / 2.0);
  CHECK(mass(u) == doctest::Approx(m_exact).epsilon(1e-12));
  CHECK(momentum(u) == doctest::Approx(-v * m_exact).epsilon(1e-10));
  // Real fields carry no momentum.
  CHECK(std::abs(momentum(gaussian_wave(g, A, w, 0.0))) < 1e-12);
}

TEST_CASE("energy of a real Gaussian reduces to the gradient term") {
  GridPtr g = make_grid(1024, 60.0);
  const Field u = gaussian_wave(g, 0.8, 1.0, 0.0);
  // For real u the chiral integral Re int i |u|^{2s} conj(u) u_x vanishes.
  const double grad = norm_l2(spectral_derivative(u));
  CHECK(energy(u, 1.0) == doctest::Approx(0.5 * grad * grad).epsilon(1e-12));
  CHECK(energy(u, 2.0) == doctest::Approx(0.5 * grad * grad).epsilon(1e-12));
}

TEST_CASE("action and Nehari assemble the declared combinations") {
  GridPtr g = make_grid(1024, 60.0);
  const Field u = gaussian_wave(g, 0.6, 1.1, 0.5);
  const ModelParams p = params(2.0, 1.7, 0.3);
  const double s_direct = energy(u, p.sigma) + 0.5 * p.omega * mass(u) +
                          0.5 * p.c * momentum(u);
  CHECK(action_S(u, p) == doctest::Approx(s_direct).epsilon(1e-12));

  // K on a scaling family picks out the stationarity of S: for
  // f(l) = S(l u), f'(1) = K(u) up to the homogeneity bookkeeping; test the
  // declared formula directly instead.
  const double grad = norm_l2(spectral_derivative(u));
  const double chiral =
      2.0 * (p.sigma + 1.0) * (0.5 * grad * grad - energy(u, p.sigma));
  const double k_direct = grad * grad + p.omega * mass(u) +
                          p.c * momentum(u) - chiral;
  CHECK(nehari_K(u, p) == doctest::Approx(k_direct).epsilon(1e-10));
}

TEST_CASE("rhs reduces to the free part for tiny amplitude") {
  GridPtr g = make_grid(256, 40.0);
  const Field u = gaussian_wave(g, 1e-8, 1.0, 0.0);
  const Field r = rhs_gdnls(u, params(1.0));
  const Field free_part = complex(0.0, 1.0) * spectral_second_derivative(u);
  double worst = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    worst = std::max(worst, std::abs(r[j] - free_part[j]));
  }
  // Nonlinear term scales like A^3 = 1e-24.
  CHECK(worst < 1e-22);
}

TEST_CASE("rhs matches a hand-computed nonlinear sample") {
  GridPtr g = make_grid(512, 40.0);
  const Field u = gaussian_wave(g, 0.9, 1.4, 0.3);
  const ModelParams p = params(2.0);
  const Field r = rhs_gdnls(u, p, 1.0);  // no dealiasing for the comparison
  const Field uxx = spectral_second_derivative(u);
  const Field ux = spectral_derivative(u);
  for (std::size_t j = 100; j < 140; ++j) {
    const complex expect =
        complex(0.0, 1.0) * uxx[j] -
        std::pow(std::norm(u[j]), p.sigma) * ux[j];
    CHECK(std::abs(r[j] - expect) < 1e-10);
  }
}

TEST_CASE("ground state: closed-form samples and central values") {
  GridPtr g = make_grid(2048, 80.0);
  const ModelParams p = params(1.0, 1.0, 0.0);
  const Field phi = ground_state_profile(g, p);
  const Field mod = ground_state_modulus(g, p);

  // sigma = omega = 1: |phi(x)|^2 = 4 sech(2x), so |phi(0)| = 2.
  const std::size_t mid = g->n() / 2;
  CHECK(g->nodes()[mid] == doctest::Approx(0.0));
  CHECK(std::abs(phi[mid]) == doctest::Approx(2.0).epsilon(1e-12));
  for (std::size_t j = mid - 64; j < mid + 64; j += 7) {
    const double x = g->nodes()[j];
    CHECK(mod[j].real() ==
          doctest::Approx(std::sqrt(4.0 / std::cosh(2.0 * x))).epsilon(1e-12));
    CHECK(std::abs(phi[j]) == doctest::Approx(mod[j].real()).epsilon(1e-12));
    CHECK(mod[j].imag() == 0.0);
  }
  // M(phi_{1,1}) = 2 pi.
  CHECK(mass(phi) == doctest::Approx(2.0 * kPi).epsilon(1e-10));
  // Central phase theta(0) = -pi/4 for sigma = 1.
  CHECK(std::arg(phi[mid]) == doctest::Approx(-kPi / 4.0).epsilon(1e-10));

  CHECK_THROWS_AS(ground_state_profile(g, params(1.0, 1.0, 0.5)),
                  ValidationError);
}

TEST_CASE("ground state phase solves theta' = -Phi^{2 sigma}/(2 sigma + 2)") {
  GridPtr g = make_grid(4096, 60.0);
  for (double sigma : {1.0, 2.0, 3.0}) {
    const ModelParams p = params(sigma, 1.3, 0.0);
    const Field phi = ground_state_profile(g, p);
    const Field mod = ground_state_modulus(g, p);
    // theta = arg(phi); compare the spectral derivative of phi with
    // (Phi' / Phi + i theta') phi at interior nodes.
    const Field dphi = spectral_derivative(phi);
    const std::size_t mid = g->n() / 2;
    for (std::size_t j = mid - 200; j < mid + 200; j += 17) {
      const double x = g->nodes()[j];
      const double b = 2.0 * std::sqrt(p.omega) * sigma;
      const double dlog_mod = -std::sqrt(p.omega) * std::tanh(b * x);
      const double theta_p =
          -std::pow(mod[j].real(), 2.0 * sigma) / (2.0 * sigma + 2.0);
      const complex expect = (dlog_mod + complex(0.0, theta_p)) * phi[j];
      CHECK(std::abs(dphi[j] - expect) < 1e-6);
    }
  }
}

TEST_CASE("ground state sits on the Nehari manifold with S = mu") {
  GridPtr g = make_grid(2048, 80.0);
  for (double sigma : {1.0, 2.0, 3.0}) {
    for (double omega : {0.5, 1.0, 2.0}) {
      const ModelParams p = params(sigma, omega, 0.0);
      const Field phi = ground_state_profile(g, p);
      const double grad = norm_l2(spectral_derivative(phi));
      const double scale = grad * grad + omega * mass(phi);
      CHECK(std::abs(nehari_K(phi, p)) < 1e-7 * scale);
      const double mu = mu_omega0(sigma, omega);
      CHECK(action_S(phi, p) == doctest::Approx(mu).epsilon(1e-7));
    }
  }
}

TEST_CASE("mu agrees with the grid action of the profile") {
  // mu is computed on an internal quadrature grid; the action S(phi) on an
  // independent spectral grid must land on the same number.
  const double mu = mu_omega0(1.0, 1.0);
  GridPtr g = make_grid(4096, 120.0);
  const Field phi = ground_state_profile(g, params(1.0, 1.0, 0.0));
  CHECK(mu == doctest::Approx(action_S(phi, params(1.0, 1.0, 0.0))).epsilon(1e-9));
  CHECK(mu > 0.0);
}

TEST_CASE("solitary momentum is positive at zero velocity") {
  GridPtr g = make_grid(2048, 80.0);
  for (double sigma : {1.0, 2.0, 3.0}) {
    const Field phi = ground_state_profile(g, params(sigma, 1.0, 0.0));
    CHECK(momentum(phi) > 0.0);
  }
}

TEST_CASE("global predicate separates small and large data") {
  GridPtr g = make_grid(1024, 60.0);
  const ModelParams p = params(3.0, 1.0, 0.0);
  const Field small = gaussian_wave(g, 0.1, 1.0, 0.0);
  const Field large = gaussian_wave(g, 2.0, 1.0, 0.0);
  const GlobalPredicate yes = global_predicate(small, p);
  const GlobalPredicate no = global_predicate(large, p);
  CHECK(yes.holds);
  CHECK(yes.margin > 0.0);
  CHECK(yes.threshold == doctest::Approx(2.0 * mu_omega0(3.0, 1.0)));
  CHECK_FALSE(no.holds);
  CHECK(no.margin < 0.0);
}
