#include "sptq/forms.hpp"

#include <mutex>
#include <numeric>
#include <stdexcept>

namespace sptq {

EtaQuotient& EtaQuotient::times(long d, long e) {
  if (d < 1) throw std::invalid_argument("EtaQuotient: dilation must be >= 1");
  factors[d] += e;
  if (factors[d] == 0) factors.erase(d);
  return *this;
}

long EtaQuotient::prefactor24() const {
  long s = 0;
  for (const auto& [d, e] : factors) s += d * e;
  return s;
}

EtaQuotient operator*(const EtaQuotient& a, const EtaQuotient& b) {
  EtaQuotient out = a;
  for (const auto& [d, e] : b.factors) out.times(d, e);
  return out;
}

QSeries euler_product(int order) {
  if (order < 1) throw std::invalid_argument("euler_product: order < 1");
  std::vector<Int> v(static_cast<size_t>(order), 0);
  v[0] = 1;
  for (long k = 1;; ++k) {
    long g1 = k * (3 * k - 1) / 2;
    long g2 = k * (3 * k + 1) / 2;
    if (g1 >= order && g2 >= order) break;
    int sign = (k % 2 == 0) ? 1 : -1;
    if (g1 < order) v[static_cast<size_t>(g1)] += sign;
    if (g2 < order) v[static_cast<size_t>(g2)] += sign;
  }
  return QSeries(0, std::move(v));
}

QSeries eta_series(int order) { return shift24(euler_product(order), 1); }

QSeries eta_quotient_series(const EtaQuotient& eq, int order) {
  if (order < 1)
    throw std::invalid_argument("eta_quotient_series: order < 1");
  if (eq.factors.empty()) return QSeries::constant(1, order);
  QSeries acc = QSeries::constant(1, order);
  for (const auto& [d, e] : eq.factors) {
    // (1-q^d)(1-q^{2d})... needs only ceil(order/d) base terms before dilation.
    int base_order = static_cast<int>((order + d - 1) / d);
    QSeries factor = dilate(euler_product(base_order), d);
    if (factor.order() > order) factor = truncate(factor, order);
    if (factor.order() < order) {
      // pad: the dilated product is exact, so extending with the next
      // pentagonal terms is sound; simplest is to recompute at the padded order
      factor = truncate(dilate(euler_product(base_order + 1), d), order);
    }
    acc = mul(acc, pow(factor, e));
  }
  return QSeries(eq.prefactor24(), acc.coeffs());
}

namespace {

// sigma_k(n) tables, grown on demand and shared; guarded for concurrent use.
std::mutex sigma_mutex;
std::map<int, std::vector<Int>> sigma_cache;

std::vector<Int> sigma_table(int k, int order) {
  std::lock_guard<std::mutex> lock(sigma_mutex);
  std::vector<Int>& tab = sigma_cache[k];
  if (static_cast<int>(tab.size()) < order) {
    tab.assign(static_cast<size_t>(order), 0);
    for (long d = 1; d < order; ++d) {
      Int dk;
      mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d),
                    static_cast<unsigned long>(k));
      for (long m = d; m < order; m += d) tab[static_cast<size_t>(m)] += dk;
    }
  }
  return std::vector<Int>(tab.begin(), tab.begin() + order);
}

QSeries eisenstein(int k, const Int& factor, int order) {
  std::vector<Int> v = sigma_table(k, order);
  for (size_t n = 1; n < v.size(); ++n) v[n] *= factor;
  v[0] = 1;
  return QSeries(0, std::move(v));
}

}  // namespace

QSeries eisenstein_e2(int order) { return eisenstein(1, -24, order); }
QSeries eisenstein_e4(int order) { return eisenstein(3, 240, order); }
QSeries eisenstein_e6(int order) { return eisenstein(5, -504, order); }

QSeries delta_series(int order) {
  return eta_quotient_series(EtaQuotient{{1, 24}}, order);
}

QSeries eisenstein_e2ell(long ell, int order) {
  if (ell < 2 || 24 % (ell - 1) != 0)
    throw std::invalid_argument(
        "eisenstein_e2ell: need (ell-1) | 24 for an integral expansion");
  long c = 24 / (ell - 1);
  std::vector<Int> sig = sigma_table(1, order);
  std::vector<Int> v(static_cast<size_t>(order), 0);
  v[0] = 1;
  for (long n = 1; n < order; ++n) {
    Int s = sig[static_cast<size_t>(n)];
    if (n % ell == 0) s -= ell * sig[static_cast<size_t>(n / ell)];
    v[static_cast<size_t>(n)] = c * s;
  }
  return QSeries(0, std::move(v));
}

int chi12(long n) {
  long r = n % 12;
  if (r < 0) r += 12;
  if (r == 1 || r == 11) return 1;
  if (r == 5 || r == 7) return -1;
  return 0;
}

int legendre(const Int& a, long ell) {
  if (ell < 3 || ell % 2 == 0)
    throw std::invalid_argument("legendre: modulus must be an odd prime");
  Int p(ell);
  if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    throw std::invalid_argument("legendre: modulus must be an odd prime");
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

LevelConstants level_constants(long ell, int max_power) {
  if (ell < 5 || std::gcd(ell, 24L) != 1)
    throw std::invalid_argument(
        "level_constants: ell must be a prime >= 5 (coprime to 24)");
  Int p(ell);
  if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    throw std::invalid_argument("level_constants: ell must be prime");
  if (max_power < 1)
    throw std::invalid_argument("level_constants: max_power < 1");

  LevelConstants lc;
  lc.ell = ell;
  Int inv24;
  Int twentyfour = 24;
  if (mpz_invert(inv24.get_mpz_t(), twentyfour.get_mpz_t(), p.get_mpz_t()) == 0)
    throw std::logic_error("level_constants: 24 not invertible");
  lc.d = static_cast<long>(inv24.get_si());
  lc.r = (24 * lc.d - 1) / ell;
  if ((24 * lc.d - 1) % ell != 0)
    throw std::logic_error("level_constants: r is not integral");
  long num = 24 * lc.d + ell * ell - 1;
  if (num % (24 * ell) != 0)
    throw std::logic_error("level_constants: r_star is not integral");
  lc.r_star = num / (24 * ell);
  if ((ell * ell - 1) % 24 != 0)
    throw std::logic_error("level_constants: s is not integral");
  lc.s = (ell * ell - 1) / 24;

  lc.delta.resize(static_cast<size_t>(max_power) + 1);
  lc.t.resize(static_cast<size_t>(max_power) + 1);
  lc.delta[0] = 0;
  lc.t[0] = 0;
  for (int a = 1; a <= max_power; ++a) {
    Int mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(ell),
                  static_cast<unsigned long>(a));
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), twentyfour.get_mpz_t(), mod.get_mpz_t()) == 0)
      throw std::logic_error("level_constants: 24 not invertible mod ell^a");
    lc.delta[static_cast<size_t>(a)] = inv;
    Int sq;
    mpz_ui_pow_ui(sq.get_mpz_t(), static_cast<unsigned long>(ell),
                  static_cast<unsigned long>(2 * a));
    lc.t[static_cast<size_t>(a)] = (sq - 1) / 24;
    if ((sq - 1) % 24 != 0)
      throw std::logic_error("level_constants: t_a is not integral");
    // 24*delta_a = 1 + (something)*ell^a by construction; check anyway
    Int chk = 24 * lc.delta[static_cast<size_t>(a)] - 1;
    if (chk % mod != 0)
      throw std::logic_error("level_constants: delta_a inverse check failed");
  }
  return lc;
}

}  // namespace sptq
