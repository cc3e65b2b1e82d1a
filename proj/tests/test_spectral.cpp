#include <cmath>
#include <numbers>

#include "doctest.h"

#include "gdnls/errors.hpp"
#include "gdnls/spectral.hpp"

using namespace gdnls;

namespace {

constexpr double kPi = std::numbers::pi;

Field gaussian(GridPtr grid, double amplitude, double width) {
  Field f(grid);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = grid->nodes()[j];
    f[j] = amplitude * std::exp(-(x / width) * (x / width));
  }
  return f;
}

}  // namespace

TEST_CASE("grid validation and geometry") {
  CHECK_THROWS_AS(make_grid(100, 40.0), ValidationError);
  CHECK_THROWS_AS(make_grid(4, 40.0), ValidationError);
  CHECK_THROWS_AS(make_grid(64, -1.0), ValidationError);
  CHECK_THROWS_AS(make_grid(64, 0.0), ValidationError);

  GridPtr g = make_grid(64, 16.0);
  CHECK(g->n() == 64);
  CHECK(g->dx() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g->nodes().front() == doctest::Approx(-8.0));
  // FFT ordering: k_j = 2 pi j / L for j < n/2, then negative frequencies.
  const double k1 = 2.0 * kPi / 16.0;
  CHECK(g->wavenumbers()[1] == doctest::Approx(k1));
  CHECK(g->wavenumbers()[63] == doctest::Approx(-k1));
  CHECK(g->k_max() == doctest::Approx(32.0 * k1));
}

TEST_CASE("spectrum round trip and Parseval") {
  GridPtr g = make_grid(256, 40.0);
  const Field f = gaussian(g, 1.3, 2.0);
  const Field back = field_from_spectrum(g, spectrum(f));
  for (std::size_t j = 0; j < f.size(); ++j) {
    CHECK(std::abs(back[j] - f[j]) < 1e-13);
  }
  // Parseval: spectral l2 equals trapezoid of |f|^2.
  Field sq(g);
  for (std::size_t j = 0; j < f.size(); ++j) sq[j] = std::norm(f[j]);
  const double quad = std::sqrt(integrate(sq).real());
  CHECK(norm_l2(f) == doctest::Approx(quad).epsilon(1e-12));
}

TEST_CASE("derivative is spectrally exact on smooth data") {
  GridPtr g = make_grid(512, 40.0);
  Field f(g), df_exact(g);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = g->nodes()[j];
    f[j] = std::exp(-x * x);
    df_exact[j] = -2.0 * x * std::exp(-x * x);
  }
  const Field df = spectral_derivative(f);
  double worst = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    worst = std::max(worst, std::abs(df[j] - df_exact[j]));
  }
  CHECK(worst < 1e-10);

  const Field d2f = spectral_second_derivative(f);
  const Field d2f_twice = spectral_derivative(df);
  for (std::size_t j = 0; j < f.size(); ++j) {
    CHECK(std::abs(d2f[j] - d2f_twice[j]) < 1e-9);
  }
}

TEST_CASE("derivative of a plane wave hits the exact eigenvalue") {
  GridPtr g = make_grid(128, 2.0 * kPi);
  Field f(g);
  const double k = 5.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = g->nodes()[j];
    f[j] = std::polar(1.0, k * x);
  }
  const Field df = spectral_derivative(f);
  for (std::size_t j = 0; j < f.size(); ++j) {
    CHECK(std::abs(df[j] - complex(0.0, k) * f[j]) < 1e-12);
  }
}

TEST_CASE("free propagation: unitary, group law, exact on plane waves") {
  GridPtr g = make_grid(256, 30.0);
  Field f = gaussian(g, 1.0, 1.5);
  for (std::size_t j = 0; j < f.size(); ++j) {
    f[j] *= std::polar(1.0, 0.4 * g->nodes()[j]);
  }
  const Field once = free_propagate(f, 0.7);
  CHECK(norm_l2(once) == doctest::Approx(norm_l2(f)).epsilon(1e-13));
  CHECK(norm_h1(once) == doctest::Approx(norm_h1(f)).epsilon(1e-13));

  const Field split = free_propagate(free_propagate(f, 0.3), 0.4);
  for (std::size_t j = 0; j < f.size(); ++j) {
    CHECK(std::abs(split[j] - once[j]) < 1e-13);
  }
  const Field back = free_propagate(once, -0.7);
  for (std::size_t j = 0; j < f.size(); ++j) {
    CHECK(std::abs(back[j] - f[j]) < 1e-13);
  }

  // Mode k evolves by exp(-i k^2 t).
  Field wave(g);
  const double k = g->wavenumbers()[3];
  for (std::size_t j = 0; j < wave.size(); ++j) {
    wave[j] = std::polar(1.0, k * g->nodes()[j]);
  }
  const Field evolved = free_propagate(wave, 0.25);
  // Bin 3 carries the node-offset sign (-1)^3 on top of the phase factor.
  const complex expected = -std::polar(1.0, -k * k * 0.25);
  const auto coeffs = spectrum(evolved);
  CHECK(std::abs(coeffs[3] - expected) < 1e-13);
}

TEST_CASE("dealias keeps low modes and kills high ones") {
  GridPtr g = make_grid(64, 2.0 * kPi);
  Field f(g);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = g->nodes()[j];
    f[j] = std::polar(1.0, 3.0 * x) + std::polar(1.0, 30.0 * x);
  }
  const Field clean = dealias(f, 0.5);
  const auto coeffs = spectrum(clean);
  CHECK(std::abs(coeffs[3] + 1.0) < 1e-12);  // unit modulus, sign (-1)^3
  CHECK(std::abs(coeffs[30]) < 1e-12);
  CHECK_THROWS_AS(dealias(f, 0.0), ValidationError);
  CHECK_THROWS_AS(dealias(f, 1.5), ValidationError);
}

TEST_CASE("cumulative primitive matches the closed-form antiderivative") {
  GridPtr g = make_grid(4096, 60.0);
  Field f(g);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = g->nodes()[j];
    f[j] = std::exp(-x * x);
  }
  const Field prim = cumulative_primitive(f);
  const double sqrt_pi = std::sqrt(kPi);
  double worst = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = g->nodes()[j];
    const double exact = 0.5 * sqrt_pi * (std::erf(x) - std::erf(-30.0));
    worst = std::max(worst, std::abs(prim[j].real() - exact));
  }
  // Trapezoid error ~ (dx^2/12) max|f'| ~ 1.5e-5 at this resolution.
  CHECK(worst < 5e-5);
  CHECK(std::abs(prim[0]) == 0.0);
}

TEST_CASE("cumulative primitive flags boundary-supported integrands") {
  GridPtr g = make_grid(256, 20.0);
  Field shifted(g);
  for (std::size_t j = 0; j < shifted.size(); ++j) {
    const double x = g->nodes()[j];
    shifted[j] = std::exp(-(x + 10.0) * (x + 10.0));  // mass at the left edge
  }
  DiagnosticLog diag;
  cumulative_primitive(shifted, &diag);
  CHECK(diag.boundary_flagged);

  DiagnosticLog clean;
  cumulative_primitive(gaussian(g, 1.0, 1.0), &clean);
  CHECK_FALSE(clean.boundary_flagged);
}

TEST_CASE("norms: h1 dominates l2 and matches the derivative identity") {
  GridPtr g = make_grid(512, 40.0);
  const Field f = gaussian(g, 0.8, 1.2);
  const NormTriple n = norms(f);
  CHECK(n.h1 >= n.l2);
  const double dl2 = norm_l2(spectral_derivative(f));
  CHECK(n.h1 == doctest::Approx(std::sqrt(n.l2 * n.l2 + dl2 * dl2)).epsilon(1e-12));
  CHECK(n.linf == doctest::Approx(0.8).epsilon(1e-12));

  StatePair pair{f, 2.0 * f};
  CHECK(pair_l2(pair) == doctest::Approx(3.0 * n.l2).epsilon(1e-12));
  CHECK(pair_h1(pair) == doctest::Approx(3.0 * n.h1).epsilon(1e-12));
  CHECK(pair_linf(pair) == doctest::Approx(3.0 * n.linf).epsilon(1e-12));
}
