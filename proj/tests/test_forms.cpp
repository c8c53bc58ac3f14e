#include <stdexcept>

#include "doctest.h"
#include "sptq/forms.hpp"
#include "sptq/qseries.hpp"

using namespace sptq;

TEST_CASE("euler product has pentagonal support") {
  QSeries ep = euler_product(16);
  long want[16] = {1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1};
  for (int n = 0; n < 16; ++n) CHECK(ep.coeff(n) == want[n]);
}

TEST_CASE("eta and eta quotients") {
  QSeries eta = eta_series(8);
  CHECK(eta.prefactor() == 1);
  CHECK(eta.coeff(0) == 1);
  CHECK(eta.coeff(1) == -1);  // exponent 25/24
  CHECK(eta.coeff(2) == -1);

  EtaQuotient dsq{{1, 24}};
  CHECK(dsq.prefactor24() == 24);
  QSeries delta = eta_quotient_series(dsq, 6);
  long tau[6] = {1, -24, 252, -1472, 4830, -6048};
  for (int n = 0; n < 6; ++n) CHECK(delta.coeff(n) == tau[n]);
  CHECK(equal_upto(delta, delta_series(6), 6));

  EtaQuotient y5{{5, 6}, {1, -6}};
  CHECK(y5.prefactor24() == 24);
  QSeries y = eta_quotient_series(y5, 5);
  CHECK(y.prefactor() == 24);
  CHECK(y.coeff(0) == 1);
  CHECK(y.coeff(1) == 6);  // q prod (1-q^5n)^6 (1-q^n)^-6

  EtaQuotient z{{25, 1}, {1, -1}};
  CHECK(z.prefactor24() == 24);
  CHECK((y5 * z).factors.size() == 3);
  CHECK_THROWS_AS(EtaQuotient{}.times(0, 1), std::invalid_argument);
}

TEST_CASE("eisenstein expansions") {
  QSeries e2 = eisenstein_e2(5);
  long w2[5] = {1, -24, -72, -96, -168};
  for (int n = 0; n < 5; ++n) CHECK(e2.coeff(n) == w2[n]);
  QSeries e4 = eisenstein_e4(4);
  long w4[4] = {1, 240, 2160, 6720};
  for (int n = 0; n < 4; ++n) CHECK(e4.coeff(n) == w4[n]);
  QSeries e6 = eisenstein_e6(4);
  long w6[4] = {1, -504, -16632, -122976};
  for (int n = 0; n < 4; ++n) CHECK(e6.coeff(n) == w6[n]);

  // 1728 Delta = E4^3 - E6^2
  QSeries lhs = scale(1728, delta_series(30));
  QSeries rhs = sub(pow(eisenstein_e4(30), 3), pow(eisenstein_e6(30), 2));
  CHECK(equal_upto(lhs, rhs, 30));
}

TEST_CASE("level eisenstein form") {
  QSeries e5 = eisenstein_e2ell(5, 7);
  long w5[7] = {1, 6, 18, 24, 42, 6, 72};
  for (int n = 0; n < 7; ++n) CHECK(e5.coeff(n) == w5[n]);

  QSeries e7 = eisenstein_e2ell(7, 9);
  long w7[9] = {1, 4, 12, 16, 28, 24, 48, 4, 60};
  for (int n = 0; n < 9; ++n) CHECK(e7.coeff(n) == w7[n]);

  QSeries e13 = eisenstein_e2ell(13, 5);
  long w13[5] = {1, 2, 6, 8, 14};
  for (int n = 0; n < 5; ++n) CHECK(e13.coeff(n) == w13[n]);

  CHECK_THROWS_AS(eisenstein_e2ell(17, 10), std::invalid_argument);
  CHECK_THROWS_AS(eisenstein_e2ell(11, 10), std::invalid_argument);

  // the form is a fixed point of its own grid operator
  for (long ell : {5L, 7L, 13L})
    CHECK(equal_upto(u_grid(eisenstein_e2ell(ell, 40 * static_cast<int>(ell)), ell),
                     eisenstein_e2ell(ell, 40), 40));
}

TEST_CASE("quadratic characters") {
  CHECK(chi12(1) == 1);
  CHECK(chi12(5) == -1);
  CHECK(chi12(7) == -1);
  CHECK(chi12(11) == 1);
  CHECK(chi12(13) == 1);
  CHECK(chi12(17) == -1);
  CHECK(chi12(6) == 0);
  for (long n = -40; n <= 40; ++n) {
    CHECK(chi12(n) == chi12(n + 12));
    CHECK(chi12(n) == chi12(-n));
  }

  CHECK(legendre(2, 5) == -1);
  CHECK(legendre(2, 7) == 1);
  CHECK(legendre(3, 7) == -1);
  CHECK(legendre(0, 5) == 0);
  CHECK(legendre(10, 5) == 0);
  CHECK(legendre(-1, 13) == 1);
  CHECK(legendre(-1, 7) == -1);
  CHECK(legendre(Int("123456789123456789"), 13) ==
        legendre(Int("123456789123456789") % 13, 13));
  CHECK_THROWS_AS(legendre(2, 15), std::invalid_argument);
  CHECK_THROWS_AS(legendre(2, 1), std::invalid_argument);
}

TEST_CASE("level constants") {
  LevelConstants c5 = level_constants(5, 7);
  CHECK(c5.d == 4);
  CHECK(c5.r == 19);
  CHECK(c5.r_star == 1);
  CHECK(c5.s == 1);
  long d5[8] = {0, 4, 24, 99, 599, 2474, 14974, 61849};
  REQUIRE(c5.delta.size() == 8);
  for (int a = 0; a < 8; ++a) CHECK(c5.delta[a] == d5[a]);
  CHECK(c5.t[0] == 0);
  CHECK(c5.t[1] == 1);
  CHECK(c5.t[2] == 26);
  CHECK(c5.t[3] == 651);

  LevelConstants c7 = level_constants(7, 6);
  CHECK(c7.d == 5);
  CHECK(c7.r == 17);
  CHECK(c7.r_star == 1);
  CHECK(c7.s == 2);
  long l7[7] = {0, 5, 47, 243, 2301, 11905, 112747};
  for (int a = 0; a < 7; ++a) CHECK(c7.delta[a] == l7[a]);
  CHECK(c7.t[1] == 2);
  CHECK(c7.t[2] == 100);

  LevelConstants c13 = level_constants(13, 4);
  CHECK(c13.d == 6);
  CHECK(c13.r == 11);
  CHECK(c13.r_star == 1);
  CHECK(c13.s == 7);
  long g13[5] = {0, 6, 162, 1007, 27371};
  for (int a = 0; a < 5; ++a) CHECK(c13.delta[a] == g13[a]);
  CHECK(c13.t[1] == 7);
  CHECK(c13.t[2] == 1190);

  LevelConstants c17 = level_constants(17, 2);
  CHECK(c17.d == 5);
  CHECK(c17.r == 7);
  CHECK(c17.s == 12);

  CHECK_THROWS_AS(level_constants(15, 2), std::invalid_argument);
  CHECK_THROWS_AS(level_constants(6, 2), std::invalid_argument);
}
