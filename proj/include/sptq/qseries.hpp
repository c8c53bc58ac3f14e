#ifndef SPTQ_QSERIES_HPP
#define SPTQ_QSERIES_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sptq {

using Int = mpz_class;

// Truncated q-expansion with exact integer coefficients on the denominator-24
// exponent grid: coeffs[k] multiplies q^((prefactor + 24k)/24).  A series is
// exactly zero below its prefactor; everything past the last retained
// coefficient is unknown (truncated).  Operations propagate the guaranteed-
// valid window and refuse comparisons that would reach past it.
class QSeries {
 public:
  QSeries() : prefactor_(0) {}
  QSeries(long prefactor, std::vector<Int> coeffs);

  // c + 0*q + ... with `order` retained terms on the integer grid.
  static QSeries constant(const Int& c, int order);
  static QSeries zero(long prefactor, int order);
  // Zero retained terms (u_grid can legitimately keep nothing); the
  // prefactor records where the first term would have sat.  Arithmetic and
  // comparisons on an empty series are errors.
  static QSeries empty_at(long prefactor);

  long prefactor() const { return prefactor_; }
  int order() const { return static_cast<int>(coeffs_.size()); }
  bool empty() const { return coeffs_.empty(); }
  const std::vector<Int>& coeffs() const { return coeffs_; }
  const Int& coeff(int k) const;
  // Exponent numerator of term k (exponent itself is this over 24).
  long exponent24(int k) const { return prefactor_ + 24L * k; }
  // Coefficient at exponent numerator e24; exact 0 below the window,
  // error past the truncation or off-grid.
  const Int& coeff_at(long e24) const;

  bool is_identically_zero() const;
  // Index of first nonzero coefficient, or nullopt if none retained.
  std::optional<int> first_nonzero() const;

 private:
  long prefactor_;
  std::vector<Int> coeffs_;
};

QSeries add(const QSeries& f, const QSeries& g);
QSeries sub(const QSeries& f, const QSeries& g);
QSeries scale(const Int& c, const QSeries& f);
QSeries mul(const QSeries& f, const QSeries& g);
// Requires leading retained coefficient +-1 (all inverses needed here are of
// eta-type units).
QSeries invert(const QSeries& f);
// Integer power, negative allowed when invertible.  f^0 keeps f's order.
QSeries pow(const QSeries& f, long e);
QSeries truncate(const QSeries& f, int order);
// Multiply by q^(delta24/24).
QSeries shift24(const QSeries& f, long delta24);
// f(q) -> f(q^m): prefactor scales by m, m-1 zeros between coefficients.
QSeries dilate(const QSeries& f, long m);
// Atkin-style operator on the 1/24 grid for gcd(ell,24)=1: keep terms whose
// exponent numerator m is divisible by ell and send q^(m/24) -> q^(m/(24*ell)).
// The kept exponents form an arithmetic progression, so the result is again
// consecutive on the grid.  May come out empty.
QSeries u_grid(const QSeries& f, long ell);

QSeries operator+(const QSeries& f, const QSeries& g);
QSeries operator-(const QSeries& f, const QSeries& g);
QSeries operator*(const QSeries& f, const QSeries& g);
QSeries operator*(const Int& c, const QSeries& f);
QSeries operator-(const QSeries& f);

struct Mismatch {
  long exponent24 = 0;
  Int lhs;
  Int rhs;
};

// Compare the first n_terms positions of the common grid (from the smaller
// prefactor; positions below a series' own start read as exact zeros).
// Error if n_terms reaches past either truncation.  modulus 0 = exact.
std::optional<Mismatch> first_mismatch(const QSeries& f, const QSeries& g,
                                       int n_terms, const Int& modulus = 0);
bool equal_upto(const QSeries& f, const QSeries& g, int n_terms);
bool congruent_upto(const QSeries& f, const QSeries& g, const Int& modulus,
                    int n_terms);

// Text cache format: first line "prefactor order", then one decimal
// coefficient per line.  Round-trips bit-exactly.
void write_series(std::ostream& os, const QSeries& f);
QSeries read_series(std::istream& is);
void save_series(const std::string& path, const QSeries& f);
QSeries load_series(const std::string& path);

}  // namespace sptq

#endif
