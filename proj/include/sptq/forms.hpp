#ifndef SPTQ_FORMS_HPP
#define SPTQ_FORMS_HPP

#include <map>

#include "sptq/qseries.hpp"

namespace sptq {

// Finite product of eta factors: maps dilation d to exponent e, i.e.
// prod_d eta(d z)^{e_d}.  Exponents may be negative.
struct EtaQuotient {
  std::map<long, long> factors;

  EtaQuotient() = default;
  EtaQuotient(std::initializer_list<std::pair<const long, long>> init)
      : factors(init) {}
  EtaQuotient& times(long d, long e);
  // Sum over factors of d*e, the exponent numerator (in 1/24 units) of the
  // leading q-power.
  long prefactor24() const;
};

EtaQuotient operator*(const EtaQuotient& a, const EtaQuotient& b);

// prod_{n>=1} (1 - q^n) to `order` terms, via the sparse pentagonal-number
// expansion (exponents k(3k +- 1)/2 with sign (-1)^k).
QSeries euler_product(int order);
// eta(z) = q^{1/24} prod (1-q^n): euler_product shifted onto the 1/24 grid.
QSeries eta_series(int order);
QSeries eta_quotient_series(const EtaQuotient& eq, int order);

// Normalized Eisenstein series on the integer grid.
QSeries eisenstein_e2(int order);    // 1 - 24 sum sigma_1(n) q^n
QSeries eisenstein_e4(int order);    // 1 + 240 sum sigma_3(n) q^n
QSeries eisenstein_e6(int order);    // 1 - 504 sum sigma_5(n) q^n
QSeries delta_series(int order);     // eta(z)^24
// (ell*E2(ell z) - E2(z))/(ell - 1) = 1 + 24/(ell-1) sum (sigma(n) - ell*sigma(n/ell)) q^n.
// Integral only when (ell-1) | 24, which covers every level used here;
// anything else is rejected.
QSeries eisenstein_e2ell(long ell, int order);

// +1 for n = +-1 mod 12, -1 for n = +-5 mod 12, 0 otherwise.
int chi12(long n);
// Legendre symbol (a|ell) in {-1,0,1}; ell must be an odd prime.
int legendre(const Int& a, long ell);

// The small arithmetic constants attached to a prime ell with gcd(ell,24)=1:
//   d       24 d = 1 (mod ell), least positive
//   r       (24 d - 1)/ell
//   r_star  (24 d + ell^2 - 1)/(24 ell)
//   s       (ell^2 - 1)/24
//   delta[a]  24^{-1} mod ell^a, least positive (delta[0] = 0)
//   t[a]      (ell^{2a} - 1)/24
struct LevelConstants {
  long ell = 0;
  long d = 0;
  long r = 0;
  long r_star = 0;
  long s = 0;
  std::vector<Int> delta;
  std::vector<Int> t;
};

LevelConstants level_constants(long ell, int max_power);

}  // namespace sptq

#endif
