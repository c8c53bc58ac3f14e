#include "sptq/verify.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sptq/forms.hpp"
#include "sptq/modeq.hpp"

namespace sptq {

namespace {

bool is_fast(const VerifyContext& ctx) {
  return ctx.opt.suite == Suite::kFast;
}
bool is_full(const VerifyContext& ctx) {
  return ctx.opt.suite == Suite::kFull;
}

Int pow_int(long base, long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(e));
  return r;
}

// Least nonnegative residue of 1/24 mod ell^a; the a = 0 member of the
// congruence families is 1 (the value that matches the strong a = 0 forms),
// not the vacuous residue mod 1.
long inv24_mod(long ell, int a) {
  if (a == 0) return 1;
  Int mod = pow_int(ell, a);
  Int inv;
  Int twentyfour = 24;
  if (mpz_invert(inv.get_mpz_t(), twentyfour.get_mpz_t(), mod.get_mpz_t()) == 0)
    throw std::logic_error("inv24_mod: 24 not invertible");
  return inv.get_si();
}

// sum_j x_j Y^j as a series (Horner over the dense column range).
QSeries x_polynomial(const XVector& x, const QSeries& y, int order) {
  long jhi = 0;
  for (const auto& [j, v] : x.entries)
    if (v != 0) jhi = std::max(jhi, j);
  auto coeff = [&](long j) -> Int {
    auto it = x.entries.find(j);
    return it == x.entries.end() ? Int(0) : it->second;
  };
  QSeries poly = QSeries::constant(coeff(jhi), order);
  for (long j = jhi - 1; j >= 0; --j)
    poly = add(mul(poly, y), QSeries::constant(coeff(j), order));
  return poly;
}

void note_range(VerificationReport& rep, const std::string& key, long n_count) {
  rep.param(key, n_count <= 0 ? "skipped" : std::to_string(n_count));
}

// ---------------------------------------------------------------------------
// oracles

VerificationReport task_oracle_p(VerifyContext& ctx) {
  Stopwatch sw;
  VerificationReport rep;
  rep.task_id = "oracle.p";
  int n_max = is_fast(ctx) ? 200 : 500;
  rep.truncation = n_max;
  const SptTables& t = ctx.tab();
  QSeries prod = invert(euler_product(n_max + 1));
  for (int n = 0; n <= n_max && rep.pass; ++n)
    if (t.p[static_cast<size_t>(n)] != prod.coeff(n))
      rep.fail(n, prod.coeff(n).get_str(), t.p[static_cast<size_t>(n)].get_str());
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

VerificationReport task_oracle_spt(VerifyContext& ctx) {
  Stopwatch sw;
  VerificationReport rep;
  rep.task_id = "oracle.spt";
  int n_max = is_fast(ctx) ? 25 : 40;
  rep.truncation = n_max;
  const SptTables& t = ctx.tab();
  for (int n = 0; n <= n_max && rep.pass; ++n) {
    Int brute = spt_bruteforce(n);
    if (brute != t.spt[static_cast<size_t>(n)])
      rep.fail(n, brute.get_str(), t.spt[static_cast<size_t>(n)].get_str());
  }
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

// ---------------------------------------------------------------------------
// closed-form series identities at 5

VerificationReport series_identity(const char* id, const QSeries& lhs,
                                   const QSeries& rhs, int n_terms, long ell,
                                   Stopwatch& sw, const Int& modulus = 0) {
  VerificationReport rep;
  rep.task_id = id;
  rep.ell = ell;
  rep.truncation = n_terms;
  auto bad = first_mismatch(lhs, rhs, n_terms, modulus);
  if (bad) rep.fail(bad->exponent24, bad->rhs.get_str(), bad->lhs.get_str());
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

VerificationReport task_identity_a5n1(VerifyContext& ctx) {
  Stopwatch sw;
  int n = ctx.trunc;
  const SptTables& t = ctx.tab();
  QSeries lhs = alpha_ell_series(t, 5, n);
  int m = n + 4;
  QSeries e = eisenstein_e2ell(5, m);
  QSeries rhs = scale(5, mul(mul(e, invert(eta_quotient_series(EtaQuotient{{5, 1}}, m))),
                             sub(scale(125, eta_quotient_series(EtaQuotient{{5, 6}, {1, -6}}, m)),
                                 QSeries::constant(1, m))));
  return series_identity("identity.a5n1", lhs, rhs, n, 5, sw);
}

VerificationReport task_identity_a25n1(VerifyContext& ctx) {
  Stopwatch sw;
  int n = ctx.trunc;
  const SptTables& t = ctx.tab();
  std::vector<Int> v(static_cast<size_t>(n));
  for (long k = 0; k < n; ++k)
    v[static_cast<size_t>(k)] = t.a_at(Int(25 * k - 1)) + 5 * t.a_at(Int(k));
  QSeries lhs(-1, std::move(v));
  int m = n + 4;
  XVector x2 = x_vector(5, 2);
  QSeries y = eta_quotient_series(EtaQuotient{{5, 6}, {1, -6}}, m);
  QSeries rhs = mul(mul(eisenstein_e2ell(5, m), invert(eta_series(m))),
                    x_polynomial(x2, y, m));
  return series_identity("identity.a25n1", lhs, rhs, n, 5, sw);
}

VerificationReport task_identity_a5twist(VerifyContext& ctx) {
  Stopwatch sw;
  int n = ctx.trunc;
  QSeries lhs = beta_ell_series(ctx.tab(), 5, n);
  int m = n + 4;
  QSeries rhs = scale(5, mul(mul(eisenstein_e2ell(5, m), invert(eta_series(m))),
                             sub(QSeries::constant(1, m),
                                 eta_quotient_series(EtaQuotient{{1, 6}, {5, -6}}, m))));
  return series_identity("identity.a5twist", lhs, rhs, n, 5, sw);
}

VerificationReport task_identity_g5(VerifyContext& ctx) {
  Stopwatch sw;
  int n = ctx.trunc;
  QSeries lhs = g_ell_series(ctx.tab(), 5, n);
  int m = n + 6;
  QSeries rhs = scale(5, mul(eisenstein_e2ell(5, m),
                             sub(scale(125, eta_quotient_series(EtaQuotient{{5, 4}, {1, 4}}, m)),
                                 eta_quotient_series(EtaQuotient{{1, 10}, {5, -2}}, m))));
  return series_identity("identity.g5", lhs, rhs, n, 5, sw);
}

VerificationReport task_identity_j5(VerifyContext& ctx) {
  Stopwatch sw;
  int n = ctx.trunc;
  QSeries lhs = j_ell_series(ctx.tab(), 5, n);
  int m = n + 6;
  QSeries rhs = scale(5, mul(eisenstein_e2ell(5, m),
                             sub(eta_quotient_series(EtaQuotient{{5, 10}, {1, -2}}, m),
                                 eta_quotient_series(EtaQuotient{{5, 4}, {1, 4}}, m))));
  return series_identity("identity.j5", lhs, rhs, n, 5, sw);
}

// ---------------------------------------------------------------------------
// structural checks: G/J land on the holomorphic integer grid

VerificationReport task_holo(VerifyContext& ctx, long ell) {
  Stopwatch sw;
  VerificationReport rep;
  rep.task_id = "holo." + std::to_string(ell);
  rep.ell = ell;
  int n = std::min(ctx.trunc, ell == 17 ? 60 : 100);
  rep.truncation = n;
  const SptTables& t = ctx.tab();
  // construction itself throws if any term sits off the grid
  QSeries g = g_ell_series(t, ell, n);
  QSeries j = j_ell_series(t, ell, n);
  long s = (ell * ell - 1) / 24;
  if (g.prefactor() != 0)
    rep.fail(g.prefactor(), "leading exponent24 0", std::to_string(g.prefactor()));
  if (rep.pass && j.prefactor() != 24 * s)
    rep.fail(j.prefactor(), "leading exponent24 " + std::to_string(24 * s),
             std::to_string(j.prefactor()));
  rep.param("g0", g.coeff(0).get_str());
  rep.param("j0", j.coeff(0).get_str());
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

VerificationReport task_holo_5(VerifyContext& ctx) { return task_holo(ctx, 5); }
VerificationReport task_holo_7(VerifyContext& ctx) { return task_holo(ctx, 7); }
VerificationReport task_holo_13(VerifyContext& ctx) { return task_holo(ctx, 13); }
VerificationReport task_holo_17(VerifyContext& ctx) { return task_holo(ctx, 17); }

// ---------------------------------------------------------------------------
// modular equations and operator action

VerificationReport task_modeq_5(VerifyContext& ctx) {
  return verify_modular_equation(5, ctx.trunc);
}
VerificationReport task_modeq_7(VerifyContext& ctx) {
  return verify_modular_equation(7, ctx.trunc);
}
VerificationReport task_modeq_13(VerifyContext& ctx) {
  return verify_modular_equation(13, ctx.trunc);
}

VerificationReport task_uaction_5(VerifyContext& ctx) {
  return verify_u_action(5, 0, 15, std::min(ctx.trunc, 150));
}
VerificationReport task_uaction_7(VerifyContext& ctx) {
  return verify_u_action(7, 0, 10, std::min(ctx.trunc, 150));
}
VerificationReport task_uaction_13(VerifyContext& ctx) {
  return verify_u_action(13, -12, 15, std::min(ctx.trunc, 150));
}

// ---------------------------------------------------------------------------
// frozen vector data

VerificationReport task_vectors_x2_5(VerifyContext&) {
  Stopwatch sw;
  VerificationReport rep;
  rep.task_id = "vectors.x2.5";
  rep.ell = 5;
  rep.truncation = 5;
  XVector x = x_vector(5, 2);
  const std::map<long, Int> want = {
      {0, -5},
      {1, 63 * pow_int(5, 6)},
      {2, 104 * pow_int(5, 9)},
      {3, 189 * pow_int(5, 11)},
      {4, 24 * pow_int(5, 14)},
      {5, pow_int(5, 17)},
  };
  for (const auto& [j, v] : want) {
    auto it = x.entries.find(j);
    Int got = it == x.entries.end() ? Int(0) : it->second;
    if (got != v) {
      rep.fail(j, v.get_str(), got.get_str());
      break;
    }
  }
  if (rep.pass)
    for (const auto& [j, v] : x.entries)
      if (want.count(j) == 0 && v != 0) {
        rep.fail(j, "0", v.get_str());
        break;
      }
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

VerificationReport task_vectors_x3pi_5(VerifyContext&) {
  Stopwatch sw;
  VerificationReport rep;
  rep.task_id = "vectors.x3pi.5";
  rep.ell = 5;
  rep.truncation = 26;
  XVector x = x_vector(5, 3);
  // 5-adic valuation profile of the generation-3 vector, columns 1..26;
  // column 0 vanishes and everything past column 26 vanishes.
  static const long profile[] = {4,  11, 14, 15, 18, 21, 25, 28, 30,
                                 33, 36, 39, 42, 44, 47, 50, 54, 57,
                                 59, 62, 65, 69, 72, 74, 77, 80};
  auto entry = [&](long j) -> Int {
    auto it = x.entries.find(j);
    return it == x.entries.end() ? Int(0) : it->second;
  };
  if (entry(0) != 0) rep.fail(0, "0", entry(0).get_str());
  Int x31 = 669303124 * pow_int(5, 4);
  if (rep.pass && entry(1) != x31) rep.fail(1, x31.get_str(), entry(1).get_str());
  for (long j = 1; j <= 26 && rep.pass; ++j) {
    auto pv = pi_val(entry(j), 5);
    long want = profile[j - 1];
    if (!pv || *pv != want)
      rep.fail(j, "pi = " + std::to_string(want),
               pv ? "pi = " + std::to_string(*pv) : "pi = inf");
  }
  if (rep.pass)
    for (const auto& [j, v] : x.entries)
      if (j > 26 && v != 0) {
        rep.fail(j, "0", v.get_str());
        break;
      }
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

// ---------------------------------------------------------------------------
// valuation sweeps

ValuationSweepOptions sweep_options(const VerifyContext& ctx) {
  ValuationSweepOptions o;
  if (is_fast(ctx)) {
    o.m_max_row = 15;
    o.ab_max_i = 3;
    o.x_max_generation = 4;
    o.x_prefix_cap = 10;
  } else if (is_full(ctx)) {
    o.m_max_row = 40;
    o.ab_max_i = 6;
    o.x_max_generation = 6;
    o.x_prefix_cap = 80;
  }
  return o;
}

VerificationReport task_valuation_5(VerifyContext& ctx) {
  return check_valuation_bounds(5, sweep_options(ctx));
}
VerificationReport task_valuation_7(VerifyContext& ctx) {
  return check_valuation_bounds(7, sweep_options(ctx));
}
VerificationReport task_valuation_13(VerifyContext& ctx) {
  return check_valuation_bounds(13, sweep_options(ctx));
}

// ---------------------------------------------------------------------------
// congruence families

// spt(step*n + off) == 0 mod m for every representable n.
VerificationReport residue_class_cong(const char* id, VerifyContext& ctx,
                                      long ell, long step, long off, const Int& m) {
  Stopwatch sw;
  VerificationReport rep;
  rep.task_id = id;
  rep.ell = ell;
  const SptTables& t = ctx.tab();
  long count = 0;
  for (long n = 0; step * n + off < t.order; ++n, ++count) {
    Int v = t.spt[static_cast<size_t>(step * n + off)];
    if (v % m != 0) {
      rep.fail(n, "0 mod " + m.get_str(), v.get_str());
      break;
    }
  }
  rep.truncation = static_cast<int>(count);
  rep.param("checked", std::to_string(count));
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

VerificationReport task_cong_spt5(VerifyContext& ctx) {
  return residue_class_cong("cong.spt5", ctx, 5, 5, 4, 5);
}
VerificationReport task_cong_spt7(VerifyContext& ctx) {
  return residue_class_cong("cong.spt7", ctx, 7, 7, 5, 7);
}
VerificationReport task_cong_spt13(VerifyContext& ctx) {
  return residue_class_cong("cong.spt13", ctx, 13, 13, 6, 13);
}

// spt(ell^2 n - u) + sign*ell*spt(n) == 0 mod ell^2.
VerificationReport square_shift_cong(const char* id, VerifyContext& ctx,
                                     long ell, long u, int sign, long n_cap) {
  Stopwatch sw;
  VerificationReport rep;
  rep.task_id = id;
  rep.ell = ell;
  const SptTables& t = ctx.tab();
  Int m = ell * ell;
  long n_max = std::min(n_cap, (t.order - 1 + u) / (ell * ell));
  rep.truncation = static_cast<int>(n_max);
  rep.param("n_max", std::to_string(n_max));
  for (long n = 1; n <= n_max && rep.pass; ++n) {
    Int v = t.spt_at(Int(ell * ell * n - u)) + sign * ell * t.spt_at(Int(n));
    if (v % m != 0) rep.fail(n, "0 mod " + m.get_str(), v.get_str());
  }
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

VerificationReport task_cong_spt25(VerifyContext& ctx) {
  long cap = is_fast(ctx) ? 100 : is_full(ctx) ? 2000 : 300;
  return square_shift_cong("cong.spt25", ctx, 5, 1, +1, cap);
}
VerificationReport task_cong_spt49(VerifyContext& ctx) {
  long cap = is_fast(ctx) ? 50 : is_full(ctx) ? 1000 : 150;
  return square_shift_cong("cong.spt49", ctx, 7, 2, +1, cap);
}
VerificationReport task_cong_spt169(VerifyContext& ctx) {
  long cap = is_fast(ctx) ? 15 : is_full(ctx) ? 290 : 40;
  return square_shift_cong("cong.spt169", ctx, 13, 7, -1, cap);
}

// spt(ell^{a+2} n + d_{a+2}) + sign*ell*spt(ell^a n + d_a) == 0 mod ell^e(a),
// for a = a_lo..a_hi (d_0 = 1 by the strong a = 0 forms).
VerificationReport two_term_family(const char* id, VerifyContext& ctx, long ell,
                                   int a_lo, int a_hi, int sign,
                                   const std::function<long(int)>& mod_exp,
                                   const Int& a0_modulus = 0) {
  Stopwatch sw;
  VerificationReport rep;
  rep.task_id = id;
  rep.ell = ell;
  const SptTables& t = ctx.tab();
  long total = 0;
  for (int a = a_lo; a <= a_hi && rep.pass; ++a) {
    Int big = pow_int(ell, a + 2);
    Int small = pow_int(ell, a);
    long d_hi = inv24_mod(ell, a + 2);
    long d_lo = inv24_mod(ell, a);
    Int m = (a == 0 && a0_modulus != 0) ? a0_modulus : pow_int(ell, mod_exp(a));
    long count = 0;
    for (long n = 0; big * n + d_hi < t.order; ++n) {
      ++count;
      ++total;
      Int v = t.spt_at(big * n + d_hi) + sign * ell * t.spt_at(small * n + d_lo);
      if (v % m != 0) {
        rep.param("a_fail", std::to_string(a));
        rep.fail(n, "0 mod " + m.get_str(), v.get_str());
        break;
      }
    }
    note_range(rep, "a" + std::to_string(a), count);
  }
  rep.truncation = static_cast<int>(total);
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

VerificationReport task_cong_twoterm_5(VerifyContext& ctx) {
  return two_term_family("cong.twoterm.5", ctx, 5, 0, 3, +1,
                         [](int a) { return 2L * a + 1; }, 25);
}
VerificationReport task_cong_twoterm_7(VerifyContext& ctx) {
  return two_term_family("cong.twoterm.7", ctx, 7, 0, 3, +1,
                         [](int a) { return (3L * a + 4) / 2; });
}
VerificationReport task_cong_twoterm_13(VerifyContext& ctx) {
  return two_term_family("cong.twoterm.13", ctx, 13, 0, 2, -1,
                         [](int a) { return a + 1L; }, 169);
}

// a(.) two-term congruences in the same shape.
struct APair {
  long big_pow, big_off;     // a(ell^big_pow n + big_off)
  long small_pow, small_off; // companion index
  long mod_exp;
  std::string label;
};

VerificationReport a_family(const char* id, VerifyContext& ctx, long ell,
                            int sign, const std::vector<APair>& pairs) {
  Stopwatch sw;
  VerificationReport rep;
  rep.task_id = id;
  rep.ell = ell;
  const SptTables& t = ctx.tab();
  long total = 0;
  for (const APair& p : pairs) {
    Int big = pow_int(ell, p.big_pow);
    Int small = pow_int(ell, p.small_pow);
    Int m = pow_int(ell, p.mod_exp);
    long count = 0;
    for (long n = 0; big * n + p.big_off < t.order; ++n) {
      ++count;
      ++total;
      Int v = t.a_at(big * n + p.big_off) + sign * ell * t.a_at(small * n + p.small_off);
      if (v % m != 0) {
        rep.param("pair_fail", p.label);
        rep.fail(n, "0 mod " + m.get_str(), v.get_str());
        break;
      }
    }
    note_range(rep, p.label, count);
    if (!rep.pass) break;
  }
  rep.truncation = static_cast<int>(total);
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

VerificationReport task_acong_5(VerifyContext& ctx) {
  std::vector<APair> pairs;
  for (long a = 3; a <= 6; ++a)
    pairs.push_back({a, inv24_mod(5, static_cast<int>(a)),
                     a - 2, inv24_mod(5, static_cast<int>(a - 2)),
                     (5 * a - 7) / 2, "a" + std::to_string(a)});
  return a_family("acong.5", ctx, 5, +1, pairs);
}

VerificationReport task_acong_7(VerifyContext& ctx) {
  std::vector<APair> pairs;
  for (long a = 3; a <= 5; ++a)
    pairs.push_back({a, inv24_mod(7, static_cast<int>(a)),
                     a - 2, inv24_mod(7, static_cast<int>(a - 2)),
                     (3 * a - 2) / 2, "a" + std::to_string(a)});
  return a_family("acong.7", ctx, 7, +1, pairs);
}

VerificationReport task_acong_13(VerifyContext& ctx) {
  std::vector<APair> pairs;
  for (long c = 2; c <= 4; ++c)
    pairs.push_back({c, inv24_mod(13, static_cast<int>(c)),
                     c - 2, inv24_mod(13, static_cast<int>(c - 2)),
                     c - 1, "c" + std::to_string(c)});
  return a_family("acong.13", ctx, 13, -1, pairs);
}

// spt(ell^a n + d_a) == 0 mod ell^floor((a+1)/2).
VerificationReport little_family(const char* id, VerifyContext& ctx, long ell,
                                 int a_hi) {
  Stopwatch sw;
  VerificationReport rep;
  rep.task_id = id;
  rep.ell = ell;
  const SptTables& t = ctx.tab();
  long total = 0;
  for (int a = 1; a <= a_hi && rep.pass; ++a) {
    Int step = pow_int(ell, a);
    long off = inv24_mod(ell, a);
    Int m = pow_int(ell, (a + 1) / 2);
    long count = 0;
    for (long n = 0; step * n + off < t.order; ++n) {
      ++count;
      ++total;
      Int v = t.spt_at(step * n + off);
      if (v % m != 0) {
        rep.param("a_fail", std::to_string(a));
        rep.fail(n, "0 mod " + m.get_str(), v.get_str());
        break;
      }
    }
    note_range(rep, "a" + std::to_string(a), count);
  }
  rep.truncation = static_cast<int>(total);
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

VerificationReport task_cong_little_5(VerifyContext& ctx) {
  return little_family("cong.little.5", ctx, 5, 4);
}
VerificationReport task_cong_little_7(VerifyContext& ctx) {
  return little_family("cong.little.7", ctx, 7, 4);
}
VerificationReport task_cong_little_13(VerifyContext& ctx) {
  return little_family("cong.little.13", ctx, 13, 3);
}

// (1-24n | ell) = 1 implies spt(ell^2 n - s_ell) == 0 mod ell.
VerificationReport ono_cong(const char* id, VerifyContext& ctx, long ell) {
  Stopwatch sw;
  VerificationReport rep;
  rep.task_id = id;
  rep.ell = ell;
  const SptTables& t = ctx.tab();
  long s = (ell * ell - 1) / 24;
  long admissible = 0;
  long n_max = (t.order - 1 + s) / (ell * ell);
  rep.truncation = static_cast<int>(n_max);
  for (long n = 1; n <= n_max && rep.pass; ++n) {
    if (legendre(Int(1 - 24 * n), ell) != 1) continue;
    ++admissible;
    Int v = t.spt_at(Int(ell * ell * n - s));
    if (v % ell != 0) rep.fail(n, "0 mod " + std::to_string(ell), v.get_str());
  }
  rep.param("admissible", std::to_string(admissible));
  if (admissible == 0) rep.fail(-1, "admissible n in range", "none");
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

VerificationReport task_cong_ono_5(VerifyContext& ctx) { return ono_cong("cong.ono.5", ctx, 5); }
VerificationReport task_cong_ono_7(VerifyContext& ctx) { return ono_cong("cong.ono.7", ctx, 7); }
VerificationReport task_cong_ono_11(VerifyContext& ctx) { return ono_cong("cong.ono.11", ctx, 11); }
VerificationReport task_cong_ono_13(VerifyContext& ctx) { return ono_cong("cong.ono.13", ctx, 13); }

// ---------------------------------------------------------------------------
// weight-18 form and the mod-17 residue series

VerificationReport task_ell17_k(VerifyContext& ctx) {
  Stopwatch sw;
  int n = std::min(ctx.trunc, 50);
  QSeries lhs = k_ell_series(ctx.tab(), 17, n);
  int m = n + 4;
  QSeries e6 = eisenstein_e6(m);
  QSeries rhs = add(scale(-17, pow(e6, 3)),
                    scale(-26148, mul(delta_series(m), e6)));
  return series_identity("ell17.k", lhs, rhs, n, 17, sw);
}

VerificationReport task_ell17_spt(VerifyContext& ctx) {
  Stopwatch sw;
  int n = std::min(ctx.trunc, 100);
  const SptTables& t = ctx.tab();
  std::vector<Int> v(static_cast<size_t>(n));
  for (long k = 0; k < n; ++k)
    v[static_cast<size_t>(k)] = t.spt[static_cast<size_t>(17 * k + 5)];
  QSeries lhs(7, std::move(v));
  int m = n + 4;
  QSeries rhs = scale(14, mul(eta_quotient_series(EtaQuotient{{1, 7}}, m),
                              eisenstein_e6(m)));
  return series_identity("ell17.spt", lhs, rhs, n, 17, sw, 17);
}

VerificationReport task_ell17_n2(VerifyContext& ctx) {
  Stopwatch sw;
  int n = std::min(ctx.trunc, 100);
  const SptTables& t = ctx.tab();
  std::vector<Int> v(static_cast<size_t>(n));
  for (long k = 0; k < n; ++k)
    v[static_cast<size_t>(k)] = t.n2[static_cast<size_t>(17 * k + 5)];
  QSeries lhs(7, std::move(v));
  int m = n + 4;
  QSeries rhs = mul(eta_quotient_series(EtaQuotient{{1, 7}}, m),
                    add(scale(2, eisenstein_e4(m)), scale(6, eisenstein_e6(m))));
  return series_identity("ell17.n2", lhs, rhs, n, 17, sw, 17);
}

// ---------------------------------------------------------------------------
// property suites (deterministic: fixed seeds)

QSeries random_series(std::mt19937_64& rng, long prefactor, int order) {
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::vector<Int> v(static_cast<size_t>(order));
  for (Int& c : v) c = coeff(rng);
  return QSeries(prefactor, std::move(v));
}

VerificationReport task_property_ring(VerifyContext& ctx) {
  Stopwatch sw;
  VerificationReport rep;
  rep.task_id = "property.ring";
  int trials = is_fast(ctx) ? 10 : 25;
  rep.truncation = trials;
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_int_distribution<long> pf(-3, 3);
  for (int t = 0; t < trials && rep.pass; ++t) {
    long base = 24 * pf(rng);
    QSeries f = random_series(rng, base, 40);
    QSeries g = random_series(rng, base + 24 * pf(rng), 40);
    QSeries h = random_series(rng, base, 40);
    if (!equal_upto(add(add(f, g), h), add(f, add(g, h)), 30))
      rep.fail(t, "associative add", "mismatch");
    if (rep.pass && !equal_upto(mul(f, g), mul(g, f), 30))
      rep.fail(t, "commutative mul", "mismatch");
    if (rep.pass && !equal_upto(mul(f, add(g, h)), add(mul(f, g), mul(f, h)), 25))
      rep.fail(t, "distributive", "mismatch");
    if (rep.pass && !equal_upto(pow(f, 3), mul(f, mul(f, f)), 35))
      rep.fail(t, "pow3", "mismatch");
    if (rep.pass) {
      QSeries u = f;
      std::vector<Int> c = u.coeffs();
      c[0] = (t % 2 == 0) ? 1 : -1;
      QSeries unit(u.prefactor(), std::move(c));
      if (!equal_upto(mul(unit, invert(unit)), QSeries::constant(1, 40), 35))
        rep.fail(t, "mul by inverse = 1", "mismatch");
    }
    if (rep.pass && !equal_upto(dilate(mul(f, g), 3), mul(dilate(f, 3), dilate(g, 3)), 35))
      rep.fail(t, "dilation respects mul", "mismatch");
  }
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

VerificationReport task_property_ugrid(VerifyContext& ctx) {
  Stopwatch sw;
  VerificationReport rep;
  rep.task_id = "property.ugrid";
  int trials = is_fast(ctx) ? 8 : 20;
  rep.truncation = trials;
  std::mt19937_64 rng(0xabcddcbaULL);
  std::uniform_int_distribution<long> pf(-2, 2);
  const long ells[] = {5, 7, 13};
  for (int t = 0; t < trials && rep.pass; ++t) {
    long ell = ells[t % 3];
    long base = 24 * pf(rng) + (t % 5);  // exercise off-integer grids too
    QSeries f = random_series(rng, base, 26 * static_cast<int>(ell));
    QSeries g = random_series(rng, base, 26 * static_cast<int>(ell));
    // additivity
    QSeries lhs = u_grid(add(f, g), ell);
    QSeries rhs = add(u_grid(f, ell), u_grid(g, ell));
    if (!lhs.empty() && !equal_upto(lhs, rhs, 20)) rep.fail(t, "additive", "mismatch");
    // pull-out: u(f * w(q^ell)) = u(f) * w for w on the integer grid
    if (rep.pass) {
      QSeries w = random_series(rng, 0, 26);
      QSeries prod = u_grid(mul(f, dilate(w, ell)), ell);
      QSeries expect = mul(u_grid(f, ell), w);
      if (!prod.empty() && !equal_upto(prod, expect, 18))
        rep.fail(t, "pull-out", "mismatch");
    }
    // dilate then u recovers the original
    if (rep.pass) {
      QSeries back = u_grid(dilate(f, ell), ell);
      if (!equal_upto(back, f, 24)) rep.fail(t, "u after dilate", "mismatch");
    }
  }
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

VerificationReport task_property_eta(VerifyContext& ctx) {
  Stopwatch sw;
  VerificationReport rep;
  rep.task_id = "property.eta";
  int trials = is_fast(ctx) ? 6 : 15;
  rep.truncation = trials;
  std::mt19937_64 rng(0x00e7a717ULL);
  std::uniform_int_distribution<int> exp_d(-3, 3);
  const long dil[] = {1, 5, 7};
  for (int t = 0; t < trials && rep.pass; ++t) {
    EtaQuotient e1, e2;
    for (long d : dil) {
      e1.times(d, exp_d(rng));
      e2.times(d, exp_d(rng));
    }
    QSeries lhs = mul(eta_quotient_series(e1, 40), eta_quotient_series(e2, 40));
    QSeries rhs = eta_quotient_series(e1 * e2, 40);
    if (!equal_upto(lhs, rhs, 40)) rep.fail(t, "eta quotient product", "mismatch");
  }
  if (rep.pass) {
    // euler product support: exponents k(3k+-1)/2 only, coefficients +-1
    QSeries ep = euler_product(400);
    std::vector<int> expect(400, 0);
    expect[0] = 1;
    for (long k = 1;; ++k) {
      long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 >= 400) break;
      int sgn = (k % 2 == 0) ? 1 : -1;
      if (g1 < 400) expect[static_cast<size_t>(g1)] += sgn;
      if (g2 < 400) expect[static_cast<size_t>(g2)] += sgn;
    }
    for (int n = 0; n < 400 && rep.pass; ++n)
      if (ep.coeff(n) != expect[static_cast<size_t>(n)])
        rep.fail(n, std::to_string(expect[static_cast<size_t>(n)]), ep.coeff(n).get_str());
  }
  if (rep.pass) {
    // 1728 Delta = E4^3 - E6^2, and Delta = eta^24
    int n = 60;
    QSeries d = delta_series(n);
    QSeries rhs = sub(pow(eisenstein_e4(n), 3), pow(eisenstein_e6(n), 2));
    if (!equal_upto(scale(1728, d), rhs, n)) rep.fail(-1, "1728*Delta = E4^3-E6^2", "mismatch");
  }
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

VerificationReport task_property_legendre(VerifyContext&) {
  Stopwatch sw;
  VerificationReport rep;
  rep.task_id = "property.legendre";
  const long primes[] = {5, 7, 11, 13, 17};
  for (long p : primes) {
    for (long a = -20; a <= 20 && rep.pass; ++a) {
      for (long b = -20; b <= 20 && rep.pass; ++b)
        if (legendre(Int(a) * Int(b), p) != legendre(Int(a), p) * legendre(Int(b), p))
          rep.fail(a * 100 + b, "multiplicative at " + std::to_string(p), "mismatch");
      if (rep.pass && legendre(Int(a + p), p) != legendre(Int(a), p))
        rep.fail(a, "periodic at " + std::to_string(p), "mismatch");
    }
  }
  if (rep.pass) {
    bool threw = false;
    try {
      legendre(2, 15);
    } catch (const std::invalid_argument&) {
      threw = true;
    }
    if (!threw) rep.fail(15, "reject composite modulus", "accepted");
  }
  if (rep.pass) {
    // quadratic-character values of the weight-offset character at the levels
    if (chi12(5) != -1 || chi12(7) != -1 || chi12(13) != 1 || chi12(17) != -1 ||
        chi12(11) != 1 || chi12(6) != 0)
      rep.fail(12, "character table", "mismatch");
    for (long n = -60; n <= 60 && rep.pass; ++n)
      if (chi12(n) != chi12(n + 12) || chi12(n) != chi12(-n))
        rep.fail(n, "period 12, even", "mismatch");
  }
  rep.truncation = 41 * 41;
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

VerificationReport task_property_floor(VerifyContext&) {
  Stopwatch sw;
  VerificationReport rep;
  rep.task_id = "property.floor";
  long checked = 0;
  for (long n = 1; n <= 12 && rep.pass; ++n)
    for (long x = -50; x <= 50 && rep.pass; ++x)
      for (long y = -50; y <= 50; ++y, ++checked)
        if (!floor_bound(x, y, n)) {
          rep.fail(x * 1000 + y, "floor inequality at n=" + std::to_string(n),
                   "violated");
          break;
        }
  rep.truncation = static_cast<int>(checked);
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

}  // namespace

// ---------------------------------------------------------------------------
// registry / driver

const std::vector<TaskInfo>& task_registry() {
  static const std::vector<TaskInfo> reg = {
      {"oracle.p", task_oracle_p},
      {"oracle.spt", task_oracle_spt},
      {"identity.a5n1", task_identity_a5n1},
      {"identity.a25n1", task_identity_a25n1},
      {"identity.a5twist", task_identity_a5twist},
      {"identity.g5", task_identity_g5},
      {"identity.j5", task_identity_j5},
      {"holo.5", task_holo_5},
      {"holo.7", task_holo_7},
      {"holo.13", task_holo_13},
      {"holo.17", task_holo_17},
      {"modeq.5", task_modeq_5},
      {"modeq.7", task_modeq_7},
      {"modeq.13", task_modeq_13},
      {"uaction.5", task_uaction_5},
      {"uaction.7", task_uaction_7},
      {"uaction.13", task_uaction_13},
      {"vectors.x2.5", task_vectors_x2_5},
      {"vectors.x3pi.5", task_vectors_x3pi_5},
      {"valuation.5", task_valuation_5},
      {"valuation.7", task_valuation_7},
      {"valuation.13", task_valuation_13},
      {"cong.spt5", task_cong_spt5},
      {"cong.spt7", task_cong_spt7},
      {"cong.spt13", task_cong_spt13},
      {"cong.spt25", task_cong_spt25},
      {"cong.spt49", task_cong_spt49},
      {"cong.spt169", task_cong_spt169},
      {"cong.twoterm.5", task_cong_twoterm_5},
      {"cong.twoterm.7", task_cong_twoterm_7},
      {"cong.twoterm.13", task_cong_twoterm_13},
      {"acong.5", task_acong_5},
      {"acong.7", task_acong_7},
      {"acong.13", task_acong_13},
      {"cong.little.5", task_cong_little_5},
      {"cong.little.7", task_cong_little_7},
      {"cong.little.13", task_cong_little_13},
      {"cong.ono.5", task_cong_ono_5},
      {"cong.ono.7", task_cong_ono_7},
      {"cong.ono.11", task_cong_ono_11},
      {"cong.ono.13", task_cong_ono_13},
      {"ell17.k", task_ell17_k},
      {"ell17.spt", task_ell17_spt},
      {"ell17.n2", task_ell17_n2},
      {"property.ring", task_property_ring},
      {"property.ugrid", task_property_ugrid},
      {"property.eta", task_property_eta},
      {"property.legendre", task_property_legendre},
      {"property.floor", task_property_floor},
  };
  return reg;
}

std::vector<std::string> task_ids() {
  std::vector<std::string> out;
  for (const TaskInfo& t : task_registry()) out.emplace_back(t.id);
  return out;
}

bool has_task(const std::string& id) {
  for (const TaskInfo& t : task_registry())
    if (id == t.id) return true;
  return false;
}

namespace {

int suite_trunc(Suite s) {
  switch (s) {
    case Suite::kFast:
      return 100;
    case Suite::kFull:
      return 2000;
    default:
      return 500;
  }
}

int suite_table_order(Suite s) {
  switch (s) {
    case Suite::kFast:
      return 2605;
    case Suite::kFull:
      return 50001;
    default:
      return 16001;
  }
}

std::shared_ptr<const SptTables> load_cached_tables(const std::string& path,
                                                    int order) {
  std::ifstream is(path);
  if (!is) return nullptr;
  int file_order = 0;
  if (!(is >> file_order) || file_order < order) return nullptr;
  auto t = std::make_shared<SptTables>();
  t->order = file_order;
  size_t n = static_cast<size_t>(file_order);
  t->p.resize(n);
  t->spt.resize(n);
  t->n2.resize(n);
  t->a.resize(n);
  std::string tok1, tok2;
  for (size_t m = 0; m < n; ++m) {
    if (!(is >> tok1 >> tok2)) return nullptr;
    t->p[m] = Int(tok1);
    t->spt[m] = Int(tok2);
    t->n2[m] = 2 * static_cast<long>(m) * t->p[m] - 2 * t->spt[m];
    t->a[m] = 12 * t->spt[m] + (24 * static_cast<long>(m) - 1) * t->p[m];
  }
  if (t->p[0] != 1 || t->spt[0] != 0) return nullptr;
  return t;
}

void save_cached_tables(const std::string& path, const SptTables& t) {
  std::ofstream os(path);
  if (!os) return;  // cache is best-effort
  os << t.order << '\n';
  for (int m = 0; m < t.order; ++m)
    os << t.p[static_cast<size_t>(m)].get_str() << ' '
       << t.spt[static_cast<size_t>(m)].get_str() << '\n';
}

}  // namespace

const SptTables& VerifyContext::tab() {
  if (tables_) return *tables_;
  if (!opt.cache_dir.empty()) {
    std::filesystem::create_directories(opt.cache_dir);
    std::string path = opt.cache_dir + "/spt_tables_" +
                       std::to_string(table_order) + ".txt";
    tables_ = load_cached_tables(path, table_order);
    if (!tables_) {
      tables_ = tables_for(table_order);
      save_cached_tables(path, *tables_);
    }
    return *tables_;
  }
  tables_ = tables_for(table_order);
  return *tables_;
}

VerifyContext make_context(const VerifyOptions& opt) {
  VerifyContext ctx;
  ctx.opt = opt;
  ctx.trunc = opt.trunc > 0 ? opt.trunc : suite_trunc(opt.suite);
  // tables must cover every index the series tasks can touch
  ctx.table_order = std::max(suite_table_order(opt.suite), 25 * ctx.trunc + 10);
  return ctx;
}

std::vector<VerificationReport> run_tasks(
    const VerifyOptions& opt, const std::vector<std::string>& ids,
    const std::function<void(const VerificationReport&)>& on_report) {
  for (const std::string& id : ids)
    if (!has_task(id)) throw std::invalid_argument("unknown task id: " + id);
  VerifyContext ctx = make_context(opt);
  std::vector<VerificationReport> out;
  for (const TaskInfo& t : task_registry()) {
    if (!ids.empty() &&
        std::find(ids.begin(), ids.end(), t.id) == ids.end())
      continue;
    VerificationReport rep;
    try {
      rep = t.fn(ctx);
    } catch (const std::exception& e) {
      rep = VerificationReport{};
      rep.task_id = t.id;
      rep.fail(-1, "task completes", e.what());
    }
    if (on_report) on_report(rep);
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace sptq
