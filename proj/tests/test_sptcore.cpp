#include <stdexcept>

#include "doctest.h"
#include "sptq/forms.hpp"
#include "sptq/sptcore.hpp"

using namespace sptq;

TEST_CASE("table columns match known values") {
  auto t = tables_for(201);
  long p10[11] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  long s10[11] = {0, 1, 3, 5, 10, 14, 26, 35, 57, 80, 119};
  for (int n = 0; n <= 10; ++n) {
    CHECK(t->p[n] == p10[n]);
    CHECK(t->spt[n] == s10[n]);
  }
  CHECK(t->p[100] == 190569292);
  CHECK(t->a[0] == -1);
  CHECK(t->a[1] == 35);
  CHECK(t->a[2] == 130);
  CHECK(t->a[5] == 1001);
  for (int n = 0; n <= 200; ++n) {
    CHECK(t->n2[n] == 2 * n * t->p[n] - 2 * t->spt[n]);
    CHECK(t->a[n] == 12 * t->spt[n] + (24 * n - 1) * t->p[n]);
  }
}

TEST_CASE("indexed access conventions") {
  auto t = tables_for(101);
  CHECK(t->a_at(-1) == 0);
  CHECK(t->a_at(Int(7), Int(5)) == 0);       // fractional index contributes 0
  CHECK(t->a_at(Int(10), Int(5)) == 130);    // 10/5 = 2
  CHECK(t->spt_at(4) == 10);
  CHECK(t->spt_at(-3) == 0);
  CHECK_THROWS_AS(t->a_at(Int(t->order)), std::out_of_range);
  CHECK_THROWS_AS(t->spt_at(Int(t->order)), std::out_of_range);
}

TEST_CASE("brute force oracle agrees with the generating function") {
  auto t = tables_for(31);
  for (int n = 0; n <= 30; ++n) CHECK(spt_bruteforce(n) == t->spt[n]);
  CHECK_THROWS_AS(spt_bruteforce(61), std::invalid_argument);
  CHECK_THROWS_AS(spt_bruteforce(-1), std::invalid_argument);
}

TEST_CASE("alpha series") {
  auto t = tables_for(2001);
  QSeries a = alpha_series(*t, 10);
  CHECK(a.prefactor() == -1);
  CHECK(a.coeff(0) == -1);
  CHECK(a.coeff(1) == 35);

  for (long ell : {5L, 7L, 13L}) {
    QSeries direct = alpha_ell_series(*t, ell, 60, AlphaRoute::kDirect);
    QSeries viaop = alpha_ell_series(*t, ell, 60, AlphaRoute::kOperator);
    CHECK(direct.prefactor() == -ell);
    CHECK(equal_upto(direct, viaop, 60));
  }
  CHECK(alpha_ell_series(*t, 5, 5).coeff(0) == -5);
  CHECK(alpha_ell_series(*t, 13, 5).coeff(0) == 13);  // sign flips with chi12
}

TEST_CASE("weight-3/2 style combinations stay on the integer grid") {
  auto t = tables_for(4001);
  long want_g0[4] = {-5, -7, 13, -17};
  long want_jpf[4] = {24, 48, 168, 288};
  long ells[4] = {5, 7, 13, 17};
  for (int k = 0; k < 4; ++k) {
    QSeries g = g_ell_series(*t, ells[k], 30);
    CHECK(g.prefactor() == 0);
    CHECK(g.coeff(0) == want_g0[k]);
    QSeries j = j_ell_series(*t, ells[k], 30);
    CHECK(j.prefactor() == want_jpf[k]);
  }
  QSeries j5 = j_ell_series(*t, 5, 6);
  CHECK(j5.coeff(0) == -5);

  QSeries k17 = k_ell_series(*t, 17, 12);
  CHECK(k17.prefactor() == 0);
  CHECK(k17.coeff(0) == -17);

  QSeries offgrid(-1, {1, 2});
  CHECK_THROWS_AS(require_holomorphic_integer_grid(offgrid, "test"),
                  std::logic_error);
}

TEST_CASE("beta series leading behavior") {
  auto t = tables_for(3001);
  for (long ell : {5L, 7L, 13L}) {
    QSeries b = beta_ell_series(*t, ell, 40);
    CHECK(b.prefactor() == -ell * ell);
    CHECK(b.order() == 40);
  }
}
