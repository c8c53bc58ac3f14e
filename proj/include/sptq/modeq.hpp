#ifndef SPTQ_MODEQ_HPP
#define SPTQ_MODEQ_HPP

#include <map>
#include <optional>

#include "sptq/qseries.hpp"
#include "sptq/report.hpp"

namespace sptq {

// Coefficient matrix of the level-ell operator in the eta-quotient basis:
// applying the grid operator to E*Z^i yields E * sum_j m_{i,j} Y^j with
//   ell = 5:  Y = eta(5z)^6/eta(z)^6,   Z = eta(25z)/eta(z)
//   ell = 7:  Y = eta(7z)^4/eta(z)^4,   Z = eta(49z)/eta(z)
//   ell = 13: Y = eta(13z)^2/eta(z)^2,  Z = eta(169z)/eta(z)
// Rows start at 0 for ell=5/7 and at -12 for ell=13 (the transcribed block
// covers i=-12..0, j=-6..0); later rows follow the level's linear recurrence.
struct MMatrix {
  long ell = 0;
  std::map<int, std::map<long, Int>> rows;

  bool has_row(int i) const { return rows.count(i) != 0; }
  int min_row() const;
  int max_row() const;
  // Entry lookup: the row must have been generated; a missing column inside a
  // generated row is a genuine zero.
  const Int& at(int i, long j) const;
};

// ell=5 and ell=13 initial rows are transcribed; ell=7 rows 0..6 are computed
// from the series route (apply the operator to E*Z^i, divide by E, peel powers
// of Y) and cross-checked downstream against the displayed table.
MMatrix base_rows(long ell);
void extend_rows(MMatrix& m, int max_i);

// Row index of the first recurrence-generated row (5, 7, 1).
int first_recurrence_row(long ell);
// The stride between consecutive basis rows used by A/B: 6, 4, 2.
int ab_stride(long ell);

// A and B express the operator on E*Y^i between even and odd passes:
// a_{i,j} = m_{K i, i+j}, b_{i,j} = m_{K i + 1, i+j} with K = ab_stride.
struct ABMatrices {
  long ell = 0;
  std::map<int, std::map<long, Int>> a;
  std::map<int, std::map<long, Int>> b;
};

// Derive A/B rows 0..max_i from m (which must already hold the source rows).
ABMatrices ab_matrices(const MMatrix& m, int max_i);

// Coefficient vector of generation g: generation 1 is the transcribed seed,
// then x_{g+1} = x_g * A for g odd, x_g * B for g even.  Finitely supported;
// support grows by roughly a factor ell per generation, so exact full vectors
// are only sensible for small g (5: g<=6, 7: g<=4, 13: g<=3).
struct XVector {
  long ell = 0;
  int generation = 0;
  std::map<long, Int> entries;  // only (possibly) nonzero columns
};

XVector x_seed(long ell);
XVector x_vector(long ell, int generation);
// Exact prefix: entries j <= j_cap of the requested generation, computed by
// chaining prefixes (a column j of generation g+1 only sees columns <= ell*j
// of generation g).  With a nonzero modulus all arithmetic is done in
// Z/modulus, which preserves divisibility tests up to that power.
XVector x_vector_prefix(long ell, int generation, long j_cap,
                        const Int& modulus = 0);

// ell-adic valuation; nullopt encodes infinity (x = 0).
std::optional<long> pi_val(const Int& x, long ell);

// floor(x/n) + floor(y/n) >= floor((x+y-n+1)/n) for n >= 1.
bool floor_bound(long x, long y, long n);

// Valuation lower bounds attached to each level; nullopt where no bound is
// claimed.  x_entry_bound covers generations >= 3 for ell=5/7 and >= 2 for
// ell=13 (j >= 1; at 13 the entry pi(x_{2,0}) = 1 is pinned exactly, which
// the sweep asserts as an equality).
std::optional<long> m_entry_bound(long ell, long i, long j);
std::optional<long> a_entry_bound(long ell, long i, long j);
std::optional<long> b_entry_bound(long ell, long i, long j);
std::optional<long> x_entry_bound(long ell, int generation, long j);

// Series-level checks ------------------------------------------------------

// The level's eta-quotient modular equation, verified to `order` terms past
// the leading exponent of Z^ell.
VerificationReport verify_modular_equation(long ell, int order);

// u_grid(E * Z^i) == E * sum_j m_{i,j} Y^j to `order` terms, for each i in
// [i_lo, i_hi].  Negative i (ell=13) exercises the transcribed block.
VerificationReport verify_u_action(long ell, int i_lo, int i_hi, int order);

// Valuation sweeps ---------------------------------------------------------

struct ValuationSweepOptions {
  int m_max_row = 30;     // m_{i,j} rows swept exactly
  int ab_max_i = 5;       // A/B rows swept exactly
  int x_max_generation = 6;
  // Full exact vectors are used while affordable; beyond that the sweep
  // checks an exact prefix computed modulo ell^T.  0 disables prefix checks.
  long x_prefix_cap = 50;
};

VerificationReport check_valuation_bounds(long ell,
                                          const ValuationSweepOptions& opt);

}  // namespace sptq

#endif
