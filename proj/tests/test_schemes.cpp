// Rational one-step symbols, their mode-diagonal propagators, contractivity
// certificates, and deterministic order measurement.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <spdelab/lattice.hpp>
#include <spdelab/propagator.hpp>
#include <spdelab/schemes.hpp>
#include <spdelab/state.hpp>

using namespace spdelab;
using cd = std::complex<double>;

TEST_CASE("symbols: hand-computed values at complex arguments") {
  auto ee = SchemeSpec::exponential_euler();
  auto ie = SchemeSpec::implicit_euler();
  auto cn = SchemeSpec::crank_nicolson();
  const cd z{-0.3, 1.7};

  CHECK(std::abs(scheme_symbol(ee, z) - std::exp(z)) < 1e-15);
  CHECK(std::abs(scheme_symbol(ie, z) - 1.0 / (1.0 - z)) < 1e-15);
  CHECK(std::abs(scheme_symbol(cn, z) - (2.0 + z) / (2.0 - z)) < 1e-15);

  // consistency at the origin
  for (const auto& s : {ee, ie, cn}) CHECK(std::abs(scheme_symbol(s, cd{0, 0}) - 1.0) < 1e-15);

  // first-order agreement with exp near zero: r(z) = 1 + z + O(z^2)
  const cd h{1e-5, 1e-5};
  for (const auto& s : {ie, cn})
    CHECK(std::abs(scheme_symbol(s, h) - (1.0 + h)) < 1e-9);

  auto custom = SchemeSpec::rational({1.0, 0.4}, {1.0, -0.6}, "blend");
  CHECK(custom.kind == SchemeKind::CustomRational);
  CHECK(custom.label == "blend");
  CHECK(std::abs(scheme_symbol(custom, z) - (1.0 + 0.4 * z) / (1.0 - 0.6 * z)) < 1e-15);
}

TEST_CASE("factory labels match the CLI scheme names") {
  CHECK(SchemeSpec::exponential_euler().label == "exponential_euler");
  CHECK(SchemeSpec::implicit_euler().label == "implicit_euler");
  CHECK(SchemeSpec::crank_nicolson().label == "crank_nicolson");
}

TEST_CASE("rational() validation: consistency and denominator roots") {
  // r(0) != 1
  CHECK_THROWS_AS((void)SchemeSpec::rational({2.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS((void)SchemeSpec::rational({1.0}, {2.0}), std::invalid_argument);
  // empty lists / zero constant term
  CHECK_THROWS_AS((void)SchemeSpec::rational({}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS((void)SchemeSpec::rational({1.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS((void)SchemeSpec::rational({1.0}, {0.0, 1.0}), std::invalid_argument);
  // denominator root on the imaginary axis (1 + z^2 vanishes at +-i)
  CHECK_THROWS_AS((void)SchemeSpec::rational({1.0}, {1.0, 0.0, 1.0}), std::invalid_argument);
  // denominator root in the open left half-plane (1 + z vanishes at -1)
  CHECK_THROWS_AS((void)SchemeSpec::rational({1.0}, {1.0, 1.0}), std::invalid_argument);
  // root in the open right half-plane is legal: 1 - z (this is implicit Euler)
  CHECK_NOTHROW((void)SchemeSpec::rational({1.0}, {1.0, -1.0}));
  // explicit Euler r(z) = 1 + z has a constant denominator: constructible
  // (contractivity is a separate certificate and will fail it)
  CHECK_NOTHROW((void)SchemeSpec::rational({1.0, 1.0}, {1.0}));
  // r(0) = 1 may hold with scaled coefficient pairs
  CHECK_NOTHROW((void)SchemeSpec::rational({3.0, 1.0}, {3.0, -2.0}));
}

TEST_CASE("schrodinger propagator applies r(i k lambda) per mode") {
  auto lat = build_lattice(BasisKind::TorusComplex, GeneratorKind::Schrodinger, 16);
  const double k = 0.05;
  for (const auto& s : {SchemeSpec::implicit_euler(), SchemeSpec::crank_nicolson(),
                        SchemeSpec::rational({1.0, 0.4}, {1.0, -0.6}, "blend")}) {
    auto P = discrete_propagator(s, lat, k);
    REQUIRE(P.components == 1);
    REQUIRE(P.w.size() == 16);
    for (int i = 0; i < 16; ++i) {
      const cd expect = scheme_symbol(s, cd{0.0, k * lat.lambda[i]});
      CHECK(std::abs(P.w[i] - expect) < 1e-14);
    }
  }
}

TEST_CASE("exponential Euler propagator is the exact group") {
  const double k = 0.125;
  auto ee = SchemeSpec::exponential_euler();
  {
    auto lat = build_lattice(BasisKind::TorusComplex, GeneratorKind::Schrodinger, 16);
    auto P = discrete_propagator(ee, lat, k);
    auto S = semigroup_propagator(lat, k);
    for (int i = 0; i < 16; ++i) CHECK(std::abs(P.w[i] - S.w[i]) < 1e-13);
  }
  {
    auto lat = build_lattice(BasisKind::DirichletSine, GeneratorKind::Wave, 9);
    auto P = discrete_propagator(ee, lat, k);
    auto S = semigroup_propagator(lat, k);
    for (int i = 0; i < 9; ++i)
      for (int e = 0; e < 4; ++e) CHECK(std::abs(P.block[i][e] - S.block[i][e]) < 1e-13);
  }
}

TEST_CASE("implicit Euler wave block: (1 + k^2 lambda)^{-1} [[1, k], [-k lambda, 1]]") {
  auto lat = build_lattice(BasisKind::DirichletSine, GeneratorKind::Wave, 8);
  const double k = 0.02;
  auto P = discrete_propagator(SchemeSpec::implicit_euler(), lat, k);
  REQUIRE(P.components == 2);
  for (int i = 0; i < 8; ++i) {
    const double lam = lat.lambda[i];
    const double f = 1.0 / (1.0 + k * k * lam);
    CHECK(P.block[i][0] == doctest::Approx(f).epsilon(1e-14));
    CHECK(P.block[i][1] == doctest::Approx(f * k).epsilon(1e-14));
    CHECK(P.block[i][2] == doctest::Approx(-f * k * lam).epsilon(1e-14));
    CHECK(P.block[i][3] == doctest::Approx(f).epsilon(1e-14));
  }
}

TEST_CASE("Crank-Nicolson wave block has determinant one (energy preserving)") {
  auto lat = build_lattice(BasisKind::TorusComplex, GeneratorKind::Wave, 16);
  const double k = 0.1;
  auto P = discrete_propagator(SchemeSpec::crank_nicolson(), lat, k);
  for (int i = 0; i < 16; ++i) {
    const double lam = lat.lambda[i];
    const auto& B = P.block[i];
    // (2 I + k A) (2 I - k A)^{-1} = [(4 - k^2 lam) I + 4 k A] / (4 + k^2 lam)
    const double d = 4.0 + k * k * lam;
    CHECK(B[0] == doctest::Approx((4.0 - k * k * lam) / d).epsilon(1e-13));
    CHECK(B[1] == doctest::Approx(4.0 * k / d).epsilon(1e-13));
    CHECK(B[0] * B[3] - B[1] * B[2] == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("propagators reject non-positive step sizes") {
  auto lat = build_lattice(BasisKind::TorusComplex, GeneratorKind::Schrodinger, 4);
  CHECK_THROWS_AS((void)discrete_propagator(SchemeSpec::implicit_euler(), lat, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)check_contractive(SchemeSpec::implicit_euler(), lat, -1.0),
                  std::invalid_argument);
}

TEST_CASE("contractivity certificates on the schrodinger lattice") {
  auto lat = build_lattice(BasisKind::TorusComplex, GeneratorKind::Schrodinger, 64);
  const double k = 0.01;

  auto ee = check_contractive(SchemeSpec::exponential_euler(), lat, k);
  CHECK(ee.pass);
  CHECK(ee.max_modulus == doctest::Approx(1.0).epsilon(1e-14));  // unimodular phases

  auto ie = check_contractive(SchemeSpec::implicit_euler(), lat, k);
  CHECK(ie.pass);
  REQUIRE(ie.modulus.size() == 64);
  for (int i = 0; i < 64; ++i) {
    const double expect = 1.0 / std::sqrt(1.0 + k * k * lat.lambda[i] * lat.lambda[i]);
    CHECK(ie.modulus[i] == doctest::Approx(expect).epsilon(1e-13));
  }
  CHECK(ie.argmax_mode == 0);  // lambda = 0 is the only unimodular point
  CHECK(ie.max_modulus == doctest::Approx(1.0).epsilon(1e-14));

  auto cn = check_contractive(SchemeSpec::crank_nicolson(), lat, k);
  CHECK(cn.pass);
  CHECK(cn.max_modulus == doctest::Approx(1.0).epsilon(1e-14));  // Cayley: exactly unimodular

  // explicit Euler r(z) = 1 + z blows up off the origin
  auto bad = check_contractive(SchemeSpec::rational({1.0, 1.0}, {1.0}, "explicit_euler"), lat, k);
  CHECK_FALSE(bad.pass);
  const double lam_max = 32.0 * 32.0;
  CHECK(bad.max_modulus == doctest::Approx(std::sqrt(1.0 + k * k * lam_max * lam_max)));
  CHECK(bad.argmax_mode == 32);
}

TEST_CASE("contractivity certificates on the wave lattice") {
  auto lat = build_lattice(BasisKind::DirichletSine, GeneratorKind::Wave, 32);
  const double k = 0.05;
  for (const auto& s : {SchemeSpec::exponential_euler(), SchemeSpec::implicit_euler(),
                        SchemeSpec::crank_nicolson()}) {
    auto rep = check_contractive(s, lat, k);
    CHECK(rep.pass);
    CHECK(rep.k == k);
    CHECK(rep.scheme == s.label);
  }
  // wave modulus is evaluated at +- i k mu, mu = pi i
  auto ie = check_contractive(SchemeSpec::implicit_euler(), lat, k);
  for (int i = 0; i < 32; ++i) {
    const double mu = std::sqrt(lat.lambda[i]);
    CHECK(ie.modulus[i] == doctest::Approx(1.0 / std::sqrt(1.0 + k * k * mu * mu)).epsilon(1e-13));
  }
  auto bad = check_contractive(SchemeSpec::rational({1.0, 1.0}, {1.0}, "explicit_euler"), lat, k);
  CHECK_FALSE(bad.pass);
  CHECK(bad.argmax_mode == 32);  // largest mu loses contractivity worst
}

TEST_CASE("a damped custom scheme passes the certificate") {
  // (1 + 0.4 z)/(1 - 0.6 z): |r(iy)|^2 = (1 + 0.16 y^2)/(1 + 0.36 y^2) <= 1
  auto s = SchemeSpec::rational({1.0, 0.4}, {1.0, -0.6}, "blend");
  auto lat = build_lattice(BasisKind::TorusComplex, GeneratorKind::Schrodinger, 32);
  auto rep = check_contractive(s, lat, 0.1);
  CHECK(rep.pass);
  for (double m : rep.modulus) CHECK(m <= 1.0 + 1e-12);
}

TEST_CASE("empirical order: exact for the group, 1 and 2 for the rationals") {
  auto lat = make_lattice(BasisKind::TorusComplex, GeneratorKind::Schrodinger, 16);
  auto u0 = single_mode_state(lat, 1, cplx(1.0, 0.0));
  std::vector<double> ks;
  for (int j = 5; j <= 9; ++j) ks.push_back(std::ldexp(1.0, -j));

  auto ee = empirical_order(SchemeSpec::exponential_euler(), *lat, u0, 1.0, ks);
  CHECK(ee.exact);

  auto ie = empirical_order(SchemeSpec::implicit_euler(), *lat, u0, 1.0, ks);
  CHECK_FALSE(ie.exact);
  CHECK(ie.fit.slope == doctest::Approx(1.0).epsilon(0.05));

  auto cn = empirical_order(SchemeSpec::crank_nicolson(), *lat, u0, 1.0, ks);
  CHECK_FALSE(cn.exact);
  CHECK(cn.fit.slope == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("empirical order input validation") {
  auto lat = make_lattice(BasisKind::TorusComplex, GeneratorKind::Schrodinger, 8);
  auto u0 = single_mode_state(lat, 1, cplx(1.0, 0.0));
  std::vector<double> ks{0.5, 0.25, 0.125};
  CHECK_THROWS_AS(
      (void)empirical_order(SchemeSpec::implicit_euler(), *lat, u0, 0.0, ks),
      std::invalid_argument);
  std::vector<double> bad{0.3, 0.15, 0.075};  // T/k = 10/3: not whole
  CHECK_THROWS_AS(
      (void)empirical_order(SchemeSpec::implicit_euler(), *lat, u0, 1.0, bad),
      std::invalid_argument);
  auto other = make_lattice(BasisKind::TorusComplex, GeneratorKind::Schrodinger, 16);
  CHECK_THROWS_AS(
      (void)empirical_order(SchemeSpec::implicit_euler(), *other, u0, 1.0, ks),
      std::invalid_argument);
}
