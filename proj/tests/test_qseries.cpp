#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "sptq/qseries.hpp"

using namespace sptq;

TEST_CASE("construction and coefficient access") {
  QSeries f(0, {1, 2, 3});
  CHECK(f.prefactor() == 0);
  CHECK(f.order() == 3);
  CHECK(f.coeff(2) == 3);
  CHECK(f.exponent24(1) == 24);
  CHECK(f.coeff_at(48) == 3);
  CHECK(f.coeff_at(-24) == 0);  // exact zero below the window
  CHECK_THROWS_AS(f.coeff_at(12), std::invalid_argument);   // off-grid
  CHECK_THROWS_AS(f.coeff_at(-1), std::invalid_argument);
  CHECK_THROWS_AS(f.coeff_at(72), std::invalid_argument);   // past truncation
  CHECK_THROWS_AS(f.coeff(3), std::invalid_argument);
  CHECK_THROWS_AS(QSeries(0, {}), std::invalid_argument);

  QSeries c = QSeries::constant(7, 4);
  CHECK(c.order() == 4);
  CHECK(c.coeff(0) == 7);
  CHECK(c.coeff(3) == 0);

  QSeries z = QSeries::zero(-24, 3);
  CHECK(z.is_identically_zero());
  CHECK(!z.first_nonzero().has_value());

  QSeries e = QSeries::empty_at(5);
  CHECK(e.empty());
  CHECK(e.prefactor() == 5);
  CHECK_THROWS_AS(add(e, f), std::invalid_argument);
}

TEST_CASE("add keeps the common guaranteed window") {
  QSeries f(0, {1, 2, 3});
  QSeries g(-24, {4, 5, 6});
  QSeries s = add(f, g);
  CHECK(s.prefactor() == -24);
  CHECK(s.order() == 3);  // [-24, 24]; f's 48-term is past g's window
  CHECK(s.coeff(0) == 4);
  CHECK(s.coeff(1) == 6);
  CHECK(s.coeff(2) == 8);

  QSeries d = sub(g, f);
  CHECK(d.coeff(1) == 4);

  CHECK_THROWS_AS(add(f, QSeries(1, {1})), std::invalid_argument);  // grid clash

  // a series far above the window contributes only exact zeros
  QSeries far(96, {7});
  QSeries s2 = add(f, far);
  CHECK(s2.prefactor() == 0);
  CHECK(s2.order() == 3);
  CHECK(equal_upto(s2, f, 3));
}

TEST_CASE("mul, invert, pow") {
  QSeries f(0, {1, 1});   // 1 + q
  QSeries g(0, {1, -1});  // 1 - q
  QSeries p = mul(f, g);
  CHECK(p.order() == 2);
  CHECK(p.coeff(0) == 1);
  CHECK(p.coeff(1) == 0);

  // prefactors add; the window stays relative to the product prefactor
  QSeries h = mul(QSeries(-5, {2, 1, 4}), QSeries(5, {3, 1, 1}));
  CHECK(h.prefactor() == 0);
  CHECK(h.order() == 3);
  CHECK(h.coeff(0) == 6);
  CHECK(h.coeff(1) == 5);

  QSeries u(0, {1, 3, 3, 1});
  CHECK(equal_upto(mul(u, invert(u)), QSeries::constant(1, 4), 4));
  QSeries v(24, {-1, 2, 7, 0});
  QSeries vi = invert(v);
  CHECK(vi.prefactor() == -24);
  CHECK(equal_upto(mul(v, vi), QSeries::constant(1, 4), 4));
  CHECK_THROWS_AS(invert(QSeries(0, {2, 1})), std::invalid_argument);

  CHECK(equal_upto(pow(u, 3), mul(u, mul(u, u)), 4));
  CHECK(equal_upto(pow(v, -2), invert(mul(v, v)), 4));
  QSeries one = pow(v, 0);
  CHECK(one.coeff(0) == 1);
  CHECK(one.prefactor() == 0);
}

TEST_CASE("scale, shift24, truncate, dilate") {
  QSeries f(0, {1, 2, 3});
  CHECK(scale(-2, f).coeff(1) == -4);
  QSeries s = shift24(f, 5);
  CHECK(s.prefactor() == 5);
  CHECK(s.coeff(2) == 3);
  QSeries t = truncate(f, 2);
  CHECK(t.order() == 2);
  CHECK_THROWS_AS(truncate(f, 4), std::invalid_argument);

  QSeries d = dilate(QSeries(1, {1, 2}), 3);
  CHECK(d.prefactor() == 3);
  CHECK(d.order() == 4);
  CHECK(d.coeff(0) == 1);
  CHECK(d.coeff(1) == 0);
  CHECK(d.coeff(2) == 0);
  CHECK(d.coeff(3) == 2);
}

TEST_CASE("u_grid keeps the divisible progression") {
  QSeries f(5, {1, 2, 3, 4, 5, 6});  // exponent numerators 5, 29, ..., 125
  QSeries u = u_grid(f, 5);
  CHECK(u.prefactor() == 1);
  CHECK(u.order() == 2);
  CHECK(u.coeff(0) == 1);
  CHECK(u.coeff(1) == 6);

  // nothing divisible in the window
  QSeries none = u_grid(QSeries(1, {9}), 5);
  CHECK(none.empty());

  CHECK_THROWS_AS(u_grid(f, 6), std::invalid_argument);

  // u after dilate is the identity
  QSeries g(7, {4, -1, 0, 8});
  CHECK(equal_upto(u_grid(dilate(g, 13), 13), g, 4));
}

TEST_CASE("mismatch scanning and congruence") {
  QSeries f(0, {1, 2, 3, 4});
  QSeries g(0, {1, 2, 8, 4});
  auto bad = first_mismatch(f, g, 4);
  REQUIRE(bad.has_value());
  CHECK(bad->exponent24 == 48);
  CHECK(bad->lhs == 3);
  CHECK(bad->rhs == 8);
  CHECK(!first_mismatch(f, g, 2).has_value());
  CHECK(equal_upto(f, g, 2));
  CHECK(!equal_upto(f, g, 3));
  CHECK(congruent_upto(f, g, 5, 4));
  CHECK(!congruent_upto(f, g, 7, 4));
  CHECK_THROWS_AS(first_mismatch(f, g, 5), std::invalid_argument);
  CHECK_THROWS_AS(congruent_upto(f, g, 0, 2), std::invalid_argument);

  // implicit zeros below the later series' start
  QSeries lo(-24, {0, 1, 2});
  QSeries hi(0, {1, 2});
  CHECK(equal_upto(lo, hi, 3));
}

TEST_CASE("text round trip") {
  QSeries f(-7, {Int("123456789012345678901234567890"), -4, 0, 9});
  std::stringstream ss;
  write_series(ss, f);
  QSeries g = read_series(ss);
  CHECK(g.prefactor() == f.prefactor());
  CHECK(g.order() == f.order());
  CHECK(equal_upto(f, g, 4));

  auto path = (std::filesystem::temp_directory_path() / "sptq_series_rt.txt").string();
  save_series(path, f);
  QSeries h = load_series(path);
  CHECK(equal_upto(f, h, 4));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_series(path), std::runtime_error);
}
