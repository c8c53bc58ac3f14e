#include "sptq/qseries.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace sptq {

namespace {

const Int kZero = 0;

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long mod_pos(long a, long b) {
  long r = a % b;
  return r < 0 ? r + b : r;
}

}  // namespace

QSeries::QSeries(long prefactor, std::vector<Int> coeffs)
    : prefactor_(prefactor), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty())
    throw std::invalid_argument("QSeries: need at least one coefficient");
}

QSeries QSeries::constant(const Int& c, int order) {
  if (order < 1) throw std::invalid_argument("QSeries::constant: order < 1");
  std::vector<Int> v(order, kZero);
  v[0] = c;
  return QSeries(0, std::move(v));
}

QSeries QSeries::zero(long prefactor, int order) {
  if (order < 1) throw std::invalid_argument("QSeries::zero: order < 1");
  return QSeries(prefactor, std::vector<Int>(order, kZero));
}

QSeries QSeries::empty_at(long prefactor) {
  QSeries s;
  s.prefactor_ = prefactor;
  return s;
}

const Int& QSeries::coeff(int k) const {
  if (k < 0 || k >= order())
    throw std::invalid_argument("QSeries::coeff: index outside truncation");
  return coeffs_[static_cast<size_t>(k)];
}

const Int& QSeries::coeff_at(long e24) const {
  if (mod_pos(e24 - prefactor_, 24) != 0)
    throw std::invalid_argument("QSeries::coeff_at: exponent off the grid");
  long k = (e24 - prefactor_) / 24;
  if (k < 0) return kZero;
  if (k >= order())
    throw std::invalid_argument("QSeries::coeff_at: exponent past truncation");
  return coeffs_[static_cast<size_t>(k)];
}

bool QSeries::is_identically_zero() const {
  for (const Int& c : coeffs_)
    if (c != 0) return false;
  return true;
}

std::optional<int> QSeries::first_nonzero() const {
  for (int k = 0; k < order(); ++k)
    if (coeffs_[static_cast<size_t>(k)] != 0) return k;
  return std::nullopt;
}

namespace {

QSeries add_scaled(const QSeries& f, const QSeries& g, int sign) {
  if (f.empty() || g.empty())
    throw std::invalid_argument("add: empty operand");
  if (mod_pos(f.prefactor() - g.prefactor(), 24) != 0)
    throw std::invalid_argument("add: exponent grids differ mod 24");
  long first = std::min(f.prefactor(), g.prefactor());
  long last = std::min(f.exponent24(f.order() - 1), g.exponent24(g.order() - 1));
  if (last < first)
    throw std::invalid_argument("add: truncation windows do not overlap");
  int n = static_cast<int>((last - first) / 24) + 1;
  std::vector<Int> out(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    long e = first + 24L * k;
    long kf = (e - f.prefactor()) / 24;
    long kg = (e - g.prefactor()) / 24;
    Int v = kf >= 0 ? f.coeff(static_cast<int>(kf)) : kZero;
    if (kg >= 0) {
      if (sign > 0)
        v += g.coeff(static_cast<int>(kg));
      else
        v -= g.coeff(static_cast<int>(kg));
    }
    out[static_cast<size_t>(k)] = std::move(v);
  }
  return QSeries(first, std::move(out));
}

}  // namespace

QSeries add(const QSeries& f, const QSeries& g) { return add_scaled(f, g, +1); }
QSeries sub(const QSeries& f, const QSeries& g) { return add_scaled(f, g, -1); }

QSeries scale(const Int& c, const QSeries& f) {
  std::vector<Int> out(f.coeffs());
  for (Int& v : out) v *= c;
  return QSeries(f.prefactor(), std::move(out));
}

QSeries mul(const QSeries& f, const QSeries& g) {
  if (f.empty() || g.empty())
    throw std::invalid_argument("mul: empty operand");
  int n = std::min(f.order(), g.order());
  const std::vector<Int>& a = f.coeffs();
  const std::vector<Int>& b = g.coeffs();
  std::vector<Int> out(static_cast<size_t>(n), kZero);
  for (int i = 0; i < n; ++i) {
    if (a[static_cast<size_t>(i)] == 0) continue;
    const mpz_srcptr ai = a[static_cast<size_t>(i)].get_mpz_t();
    for (int k = i; k < n; ++k) {
      const Int& bj = b[static_cast<size_t>(k - i)];
      if (bj == 0) continue;
      mpz_addmul(out[static_cast<size_t>(k)].get_mpz_t(), ai, bj.get_mpz_t());
    }
  }
  return QSeries(f.prefactor() + g.prefactor(), std::move(out));
}

QSeries invert(const QSeries& f) {
  if (f.empty()) throw std::invalid_argument("invert: empty operand");
  const std::vector<Int>& a = f.coeffs();
  if (a[0] != 1 && a[0] != -1)
    throw std::invalid_argument("invert: leading coefficient must be +-1");
  int n = f.order();
  std::vector<Int> b(static_cast<size_t>(n), kZero);
  b[0] = a[0];  // 1/(+-1)
  for (int k = 1; k < n; ++k) {
    Int acc = 0;
    for (int i = 1; i <= k; ++i) {
      if (a[static_cast<size_t>(i)] == 0) continue;
      mpz_addmul(acc.get_mpz_t(), a[static_cast<size_t>(i)].get_mpz_t(),
                 b[static_cast<size_t>(k - i)].get_mpz_t());
    }
    // b_k = -(1/a_0) * sum = -a_0 * sum  since a_0 in {1,-1}
    acc *= a[0];
    b[static_cast<size_t>(k)] = -acc;
  }
  return QSeries(-f.prefactor(), std::move(b));
}

QSeries pow(const QSeries& f, long e) {
  if (e < 0) return pow(invert(f), -e);
  if (e == 0) return QSeries::constant(1, f.order());
  QSeries base = f;
  QSeries acc = QSeries::constant(1, f.order());
  unsigned long u = static_cast<unsigned long>(e);
  while (u > 0) {
    if (u & 1UL) acc = mul(acc, base);
    u >>= 1;
    if (u > 0) base = mul(base, base);
  }
  return acc;
}

QSeries truncate(const QSeries& f, int order) {
  if (order < 1) throw std::invalid_argument("truncate: order < 1");
  if (order > f.order())
    throw std::invalid_argument("truncate: cannot extend a series");
  std::vector<Int> out(f.coeffs().begin(), f.coeffs().begin() + order);
  return QSeries(f.prefactor(), std::move(out));
}

QSeries shift24(const QSeries& f, long delta24) {
  return QSeries(f.prefactor() + delta24, f.coeffs());
}

QSeries dilate(const QSeries& f, long m) {
  if (m < 1) throw std::invalid_argument("dilate: factor must be positive");
  if (f.empty()) throw std::invalid_argument("dilate: empty operand");
  size_t n = static_cast<size_t>(f.order());
  std::vector<Int> out((n - 1) * static_cast<size_t>(m) + 1, kZero);
  for (size_t k = 0; k < n; ++k)
    out[k * static_cast<size_t>(m)] = f.coeffs()[k];
  return QSeries(f.prefactor() * m, std::move(out));
}

QSeries u_grid(const QSeries& f, long ell) {
  if (ell < 1 || std::gcd(ell, 24L) != 1)
    throw std::invalid_argument("u_grid: ell must be positive and coprime to 24");
  // smallest k0 >= 0 with prefactor + 24*k0 = 0 mod ell
  long k0 = 0;
  while (k0 < ell && mod_pos(f.prefactor() + 24L * k0, ell) != 0) ++k0;
  std::vector<Int> out;
  for (long k = k0; k < f.order(); k += ell)
    out.push_back(f.coeff(static_cast<int>(k)));
  long pf = (f.prefactor() + 24L * k0) / ell;
  if (out.empty()) return QSeries::empty_at(pf);
  return QSeries(pf, std::move(out));
}

QSeries operator+(const QSeries& f, const QSeries& g) { return add(f, g); }
QSeries operator-(const QSeries& f, const QSeries& g) { return sub(f, g); }
QSeries operator*(const QSeries& f, const QSeries& g) { return mul(f, g); }
QSeries operator*(const Int& c, const QSeries& f) { return scale(c, f); }
QSeries operator-(const QSeries& f) { return scale(-1, f); }

std::optional<Mismatch> first_mismatch(const QSeries& f, const QSeries& g,
                                       int n_terms, const Int& modulus) {
  if (f.empty() || g.empty())
    throw std::invalid_argument("compare: empty operand");
  if (n_terms < 1) throw std::invalid_argument("compare: n_terms < 1");
  if (mod_pos(f.prefactor() - g.prefactor(), 24) != 0)
    throw std::invalid_argument("compare: exponent grids differ mod 24");
  long first = std::min(f.prefactor(), g.prefactor());
  long last = std::min(f.exponent24(f.order() - 1), g.exponent24(g.order() - 1));
  long avail = floor_div(last - first, 24) + 1;
  if (avail < n_terms) {
    std::ostringstream msg;
    msg << "compare: requested " << n_terms << " terms but only " << avail
        << " are inside both truncations";
    throw std::invalid_argument(msg.str());
  }
  for (int k = 0; k < n_terms; ++k) {
    long e = first + 24L * k;
    const Int& a = (e >= f.prefactor()) ? f.coeff(static_cast<int>((e - f.prefactor()) / 24)) : kZero;
    const Int& b = (e >= g.prefactor()) ? g.coeff(static_cast<int>((e - g.prefactor()) / 24)) : kZero;
    bool ok;
    if (modulus == 0) {
      ok = (a == b);
    } else {
      Int d = a - b;
      ok = mpz_divisible_p(d.get_mpz_t(), modulus.get_mpz_t()) != 0;
    }
    if (!ok) return Mismatch{e, a, b};
  }
  return std::nullopt;
}

bool equal_upto(const QSeries& f, const QSeries& g, int n_terms) {
  return !first_mismatch(f, g, n_terms).has_value();
}

bool congruent_upto(const QSeries& f, const QSeries& g, const Int& modulus,
                    int n_terms) {
  if (modulus == 0)
    throw std::invalid_argument("congruent_upto: modulus must be nonzero");
  return !first_mismatch(f, g, n_terms, modulus).has_value();
}

void write_series(std::ostream& os, const QSeries& f) {
  os << f.prefactor() << ' ' << f.order() << '\n';
  for (const Int& c : f.coeffs()) os << c.get_str() << '\n';
}

QSeries read_series(std::istream& is) {
  long pf = 0;
  long n = 0;
  if (!(is >> pf >> n) || n < 1)
    throw std::runtime_error("read_series: bad header");
  std::vector<Int> v(static_cast<size_t>(n));
  for (long k = 0; k < n; ++k) {
    std::string tok;
    if (!(is >> tok)) throw std::runtime_error("read_series: short file");
    v[static_cast<size_t>(k)] = Int(tok);
  }
  return QSeries(pf, std::move(v));
}

void save_series(const std::string& path, const QSeries& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_series: cannot open " + path);
  write_series(os, f);
  if (!os) throw std::runtime_error("save_series: write failed for " + path);
}

QSeries load_series(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_series: cannot open " + path);
  return read_series(is);
}

}  // namespace sptq
