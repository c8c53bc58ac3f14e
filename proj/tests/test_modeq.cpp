#include <stdexcept>

#include "doctest.h"
#include "sptq/modeq.hpp"

using namespace sptq;

namespace {

Int pw(long base, long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(e));
  return r;
}

}  // namespace

TEST_CASE("level 5 base rows") {
  MMatrix m = base_rows(5);
  CHECK(m.min_row() == 0);
  CHECK(m.max_row() == 4);
  CHECK(m.at(0, 0) == 1);
  CHECK(m.at(1, 1) == pw(5, 3));
  CHECK(m.at(2, 1) == 100);
  CHECK(m.at(2, 2) == pw(5, 5));
  CHECK(m.at(3, 1) == 45);
  CHECK(m.at(3, 2) == 9 * pw(5, 4));
  CHECK(m.at(3, 3) == pw(5, 7));
  CHECK(m.at(4, 1) == 10);
  CHECK(m.at(4, 2) == 44 * pw(5, 3));
  CHECK(m.at(4, 3) == 14 * pw(5, 6));
  CHECK(m.at(4, 4) == pw(5, 9));
  CHECK(m.at(4, 0) == 0);  // inside a generated row, missing column is zero
  CHECK(m.at(1, 5) == 0);
  CHECK_THROWS_AS(m.at(5, 1), std::invalid_argument);  // row not generated yet
}

TEST_CASE("level 7 base rows reproduce the operator images") {
  // multiplier/7-power pairs for rows 1..6, columns from ceil(2i/7)
  struct Entry {
    int i;
    long j;
    long mult;
    long e;
  };
  const Entry entries[] = {
      {1, 1, 3, 2},     {1, 2, 1, 4},
      {2, 1, 10, 1},    {2, 2, 27, 3},    {2, 3, 10, 5},    {2, 4, 1, 7},
      {3, 1, 1, 1},     {3, 2, 190, 2},   {3, 3, 255, 4},   {3, 4, 104, 6},
      {3, 5, 17, 8},    {3, 6, 1, 10},
      {4, 2, 82, 2},    {4, 3, 352, 4},   {4, 4, 2535, 5},  {4, 5, 1088, 7},
      {4, 6, 230, 9},   {4, 7, 24, 11},   {4, 8, 1, 13},
      {5, 2, 114, 1},   {5, 3, 253, 4},   {5, 4, 4169, 5},  {5, 5, 3699, 7},
      {5, 6, 11495, 8}, {5, 7, 2852, 10}, {5, 8, 405, 12},  {5, 9, 31, 14},
      {5, 10, 1, 16},
      {6, 2, 9, 1},     {6, 3, 736, 3},   {6, 4, 27970, 4}, {6, 5, 6808, 7},
      {6, 6, 38475, 8}, {6, 7, 17490, 10}, {6, 8, 33930, 11},
      {6, 9, 5890, 13}, {6, 10, 629, 15}, {6, 11, 38, 17},  {6, 12, 1, 19},
  };
  MMatrix m = base_rows(7);
  CHECK(m.min_row() == 0);
  CHECK(m.max_row() == 6);
  CHECK(m.at(0, 0) == 1);
  for (const Entry& e : entries) CHECK(m.at(e.i, e.j) == e.mult * pw(7, e.e));
  // column range is tight: nothing below ceil(2i/7) or above 2i
  CHECK(m.at(4, 1) == 0);
  CHECK(m.at(5, 1) == 0);
  CHECK(m.at(6, 13) == 0);
}

TEST_CASE("level 13 base rows") {
  MMatrix m = base_rows(13);
  CHECK(m.min_row() == -12);
  CHECK(m.max_row() == 0);
  CHECK(m.at(0, 0) == 1);
  CHECK(m.at(-1, 0) == -13);
  CHECK(m.at(-2, 0) == 13);
  CHECK(m.at(-3, 0) == -169);
  CHECK(m.at(-4, 0) == 169);
  CHECK(m.at(-5, -2) == 52);
  CHECK(m.at(-5, -1) == 6 * 13 * 13);
  CHECK(m.at(-5, 0) == pw(13, 3));
  CHECK(m.at(-6, 0) == pw(13, 3));
  CHECK(m.at(-7, -3) == -14 * 13);
  CHECK(m.at(-7, -2) == -12 * 169);
  CHECK(m.at(-7, -1) == 0);
  CHECK(m.at(-7, 0) == pw(13, 4));
  CHECK(m.at(-8, 0) == pw(13, 4));
  CHECK(m.at(-9, -4) == 18 * 13);
  CHECK(m.at(-9, -3) == -36 * 169);
  CHECK(m.at(-9, -2) == -40 * pw(13, 3));
  CHECK(m.at(-9, -1) == -14 * pw(13, 4));
  CHECK(m.at(-9, 0) == -pw(13, 5));
  CHECK(m.at(-10, 0) == pw(13, 5));
  CHECK(m.at(-11, -5) == 82 * 13);
  CHECK(m.at(-11, -4) == 456 * 169);
  CHECK(m.at(-11, -3) == 360 * pw(13, 3));
  CHECK(m.at(-11, -2) == 126 * pw(13, 4));
  CHECK(m.at(-11, -1) == 18 * pw(13, 5));
  CHECK(m.at(-11, 0) == pw(13, 6));
  CHECK(m.at(-12, 0) == pw(13, 6));
}

TEST_CASE("recurrence extension") {
  CHECK(first_recurrence_row(5) == 5);
  CHECK(first_recurrence_row(7) == 7);
  CHECK(first_recurrence_row(13) == 1);
  CHECK(ab_stride(5) == 6);
  CHECK(ab_stride(7) == 4);
  CHECK(ab_stride(13) == 2);

  MMatrix m5 = base_rows(5);
  extend_rows(m5, 8);
  CHECK(m5.max_row() == 8);
  CHECK(m5.at(5, 1) == 1);
  CHECK(m5.at(6, 2) == 1575);
  extend_rows(m5, 4);  // no-op
  CHECK(m5.max_row() == 8);

  MMatrix m13 = base_rows(13);
  extend_rows(m13, 2);
  CHECK(m13.at(1, 1) == 143);
}

TEST_CASE("a/b matrices read strided rows") {
  MMatrix m = base_rows(5);
  extend_rows(m, 19);
  ABMatrices ab = ab_matrices(m, 3);
  CHECK(ab.a.at(0).at(0) == 1);
  CHECK(ab.a.at(1).at(1) == m.at(6, 2));
  CHECK(ab.b.at(1).at(1) == m.at(7, 2));
  CHECK(ab.a.at(3).at(2) == m.at(18, 5));
  CHECK(ab.b.at(3).at(2) == m.at(19, 5));
}

TEST_CASE("x vectors") {
  XVector s5 = x_seed(5);
  CHECK(s5.entries.at(0) == -5);
  CHECK(s5.entries.at(1) == 625);

  XVector s7 = x_seed(7);
  CHECK(s7.entries.at(0) == -7);
  CHECK(s7.entries.at(1) == 1029);
  CHECK(s7.entries.at(2) == 16807);

  XVector s13 = x_seed(13);
  CHECK(s13.entries.at(0) == 13);
  CHECK(s13.entries.at(1) == 1859);
  CHECK(s13.entries.at(2) == 237276);
  CHECK(s13.entries.at(7) == 815730721);

  XVector x2 = x_vector(5, 2);
  CHECK(x2.entries.at(0) == -5);
  CHECK(x2.entries.at(1) == 63 * pw(5, 6));
  CHECK(x2.entries.at(2) == 104 * pw(5, 9));
  CHECK(x2.entries.at(3) == 189 * pw(5, 11));
  CHECK(x2.entries.at(4) == 24 * pw(5, 14));
  CHECK(x2.entries.at(5) == pw(5, 17));

  XVector x3 = x_vector(5, 3);
  CHECK(x3.entries.count(0) == 0);
  CHECK(x3.entries.at(1) == 669303124 * pw(5, 4));
  CHECK(x3.entries.at(2) == Int("3328977476") * pw(5, 11));
  CHECK(x3.entries.at(4) == Int("201318006648837") * pw(5, 15));

  CHECK_THROWS_AS(x_vector(7, 5), std::invalid_argument);
  CHECK_THROWS_AS(x_vector(13, 4), std::invalid_argument);
  CHECK_THROWS_AS(x_vector(5, 0), std::invalid_argument);
}

TEST_CASE("prefix vectors agree with exact ones") {
  XVector full = x_vector(5, 4);
  XVector pre = x_vector_prefix(5, 4, 9);
  for (long j = 0; j <= 9; ++j) {
    Int want = full.entries.count(j) ? full.entries.at(j) : 0;
    Int got = pre.entries.count(j) ? pre.entries.at(j) : 0;
    CHECK(want == got);
  }

  Int mod = pw(5, 40);
  XVector prem = x_vector_prefix(5, 4, 9, mod);
  for (long j = 0; j <= 9; ++j) {
    Int want = full.entries.count(j) ? full.entries.at(j) : 0;
    Int got = prem.entries.count(j) ? prem.entries.at(j) : 0;
    CHECK((want - got) % mod == 0);
  }

  // beyond the exact ceiling only the prefix route works
  XVector deep = x_vector_prefix(7, 5, 4, pw(7, 50));
  CHECK(deep.generation == 5);
  CHECK(deep.entries.count(1) == 1);
}

TEST_CASE("valuations and bounds") {
  CHECK(!pi_val(0, 5).has_value());
  CHECK(pi_val(1, 5) == 0);
  CHECK(pi_val(250, 5) == 3);
  CHECK(pi_val(-75, 5) == 2);
  CHECK(pi_val(pw(13, 9), 13) == 9);

  for (long n = 1; n <= 6; ++n)
    for (long x = -30; x <= 30; ++x)
      for (long y = -30; y <= 30; ++y) CHECK(floor_bound(x, y, n));

  CHECK(m_entry_bound(5, 2, 1) == 2);   // pi_5(100) = 2 meets it exactly
  CHECK(m_entry_bound(5, 30, 0) == -15);  // vacuous but well-defined
  CHECK(m_entry_bound(7, 1, 2) == 3);   // pi_7(2401) = 4 clears it
  CHECK(m_entry_bound(13, 0, 1) == 1);
  CHECK(!m_entry_bound(5, -1, 0).has_value());
  CHECK(a_entry_bound(5, 1, 1) == 2);   // pi_5(1575) = 2
  CHECK(b_entry_bound(5, 1, 1) == 2);
  CHECK(!a_entry_bound(5, 0, -1).has_value());
  CHECK(x_entry_bound(5, 3, 1) == 4);   // pi_5(x_{3,1}) = 4 meets it exactly
  CHECK(x_entry_bound(5, 4, 1) == 6);
  CHECK(!x_entry_bound(5, 2, 1).has_value());
  CHECK(x_entry_bound(13, 2, 1) == 3);
  CHECK(!x_entry_bound(5, 3, 0).has_value());
}

TEST_CASE("modular equations and operator action at small order") {
  for (long ell : {5L, 7L, 13L}) {
    VerificationReport me = verify_modular_equation(ell, 40);
    CHECK(me.pass);
    CHECK(me.task_id == "modeq." + std::to_string(ell));
  }
  VerificationReport ua = verify_u_action(5, 0, 6, 40);
  CHECK(ua.pass);
  VerificationReport ua13 = verify_u_action(13, -12, 3, 40);
  CHECK(ua13.pass);
  CHECK_THROWS_AS(verify_u_action(5, -1, 3, 40), std::invalid_argument);
  CHECK_THROWS_AS(verify_u_action(13, -13, 0, 40), std::invalid_argument);
}
