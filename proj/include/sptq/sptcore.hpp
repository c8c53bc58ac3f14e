#ifndef SPTQ_SPTCORE_HPP
#define SPTQ_SPTCORE_HPP

#include <memory>

#include "sptq/qseries.hpp"

namespace sptq {

// Exact tables of the partition-statistic family, indexed 0..order-1:
//   p(n)    partition count (pentagonal recurrence)
//   spt(n)  total number of smallest parts across partitions of n
//   n2(n)   second rank moment, n2 = 2n*p - 2*spt
//   a(n)    12*spt(n) + (24n - 1)*p(n)
struct SptTables {
  int order = 0;
  std::vector<Int> p;
  std::vector<Int> spt;
  std::vector<Int> n2;
  std::vector<Int> a;

  // a(x) with the usual convention: zero unless x is a nonnegative integer
  // (in range).  num/den lets callers pass fractional indices like n/ell.
  Int a_at(const Int& num, const Int& den = 1) const;
  Int spt_at(const Int& n) const;
};

SptTables build_tables(int order);

// Shared, mutex-guarded table cache: grows to the largest order requested.
std::shared_ptr<const SptTables> tables_for(int order);

// Independent oracle: enumerate every partition of n and add up the
// multiplicity of its smallest part.  Deliberately slow; refuses n > 60.
Int spt_bruteforce(int n);

// alpha(z) = sum_{n>=0} a(n) q^{n - 1/24}   (prefactor -1)
QSeries alpha_series(const SptTables& t, int order);

enum class AlphaRoute {
  kDirect,    // coefficients a(ell*n - s) - chi12(ell)*ell*a(n/ell)
  kOperator,  // u_grid(alpha, ell) - chi12(ell)*ell*alpha(ell z)
};

// alpha_ell(z) = sum_{n>=0} (a(ell n - s_ell) - chi12(ell) ell a(n/ell)) q^{n - ell/24}.
// Both routes must agree; kOperator needs the tables to reach ell*order.
QSeries alpha_ell_series(const SptTables& t, long ell, int order,
                         AlphaRoute route = AlphaRoute::kDirect);

// beta_ell(z) = sum_{n >= -s_ell} (chi12(ell) a(n) ((1-24n | ell) - 1)
//                                  + ell a((n + s_ell)/ell^2)) q^{n - 1/24}.
QSeries beta_ell_series(const SptTables& t, long ell, int order);

// G_ell = alpha_ell * eta(z)^{2 ell} / eta(ell z): holomorphic, integer grid.
QSeries g_ell_series(const SptTables& t, long ell, int order);
// J_ell = beta_ell * eta(ell z)^{2 ell} / eta(z): starts at q^{s_ell}.
QSeries j_ell_series(const SptTables& t, long ell, int order);
// K_ell = G_ell + (-1)^{(ell-1)/2} ell sum_n j_ell(ell n) q^n.
QSeries k_ell_series(const SptTables& t, long ell, int order);

// Throws unless every retained nonzero term sits on a nonnegative integer
// q-power (exponent numerator >= 0 and divisible by 24).
void require_holomorphic_integer_grid(const QSeries& f, const char* what);

}  // namespace sptq

#endif
