#include "sptq/sptcore.hpp"

#include <mutex>
#include <stdexcept>

#include "sptq/forms.hpp"

namespace sptq {

Int SptTables::a_at(const Int& num, const Int& den) const {
  if (den != 1) {
    if (num % den != 0) return 0;
    return a_at(num / den, 1);
  }
  if (num < 0) return 0;
  if (num >= order)
    throw std::out_of_range("SptTables::a_at: index past table order");
  return a[num.get_ui()];
}

Int SptTables::spt_at(const Int& n) const {
  if (n < 0) return 0;
  if (n >= order)
    throw std::out_of_range("SptTables::spt_at: index past table order");
  return spt[n.get_ui()];
}

SptTables build_tables(int order) {
  if (order < 1) throw std::invalid_argument("build_tables: order < 1");
  SptTables t;
  t.order = order;
  size_t n = static_cast<size_t>(order);

  // p(n) by the pentagonal recurrence.
  t.p.assign(n, 0);
  t.p[0] = 1;
  for (size_t m = 1; m < n; ++m) {
    Int acc = 0;
    for (long k = 1;; ++k) {
      long g1 = k * (3 * k - 1) / 2;
      long g2 = k * (3 * k + 1) / 2;
      if (g1 > static_cast<long>(m)) break;
      if (k % 2 == 1) {
        acc += t.p[m - static_cast<size_t>(g1)];
        if (g2 <= static_cast<long>(m)) acc += t.p[m - static_cast<size_t>(g2)];
      } else {
        acc -= t.p[m - static_cast<size_t>(g1)];
        if (g2 <= static_cast<long>(m)) acc -= t.p[m - static_cast<size_t>(g2)];
      }
    }
    t.p[m] = acc;
  }

  // spt generating function: sum_{k>=1} q^k/(1-q^k)^2 prod_{m>k} 1/(1-q^m).
  // r starts as prod_{m>=1} 1/(1-q^m) (the p table) and picks up one (1-q^k)
  // factor per step; tmp = r/(1-q^k)^2 is added shifted by k.  Every
  // intermediate coefficient stays nonnegative, so no cancellation blowup.
  std::vector<Int> r(t.p);
  std::vector<Int> tmp(n);
  std::vector<Int> s(n, 0);
  for (size_t k = 1; k < n; ++k) {
    for (size_t m = n - 1; m >= k; --m) r[m] -= r[m - k];
    for (size_t m = 0; m < n; ++m) tmp[m] = r[m];
    for (int pass = 0; pass < 2; ++pass)
      for (size_t m = k; m < n; ++m) tmp[m] += tmp[m - k];
    for (size_t m = k; m < n; ++m) s[m] += tmp[m - k];
  }
  t.spt = std::move(s);

  t.n2.assign(n, 0);
  t.a.assign(n, 0);
  for (size_t m = 0; m < n; ++m) {
    // n2 = 2n*p - 2*spt, a = 12*spt + (24n-1)*p
    t.n2[m] = 2 * static_cast<long>(m) * t.p[m] - 2 * t.spt[m];
    t.a[m] = 12 * t.spt[m] + (24 * static_cast<long>(m) - 1) * t.p[m];
  }
  if (t.spt[0] != 0 || t.p[0] != 1 || t.a[0] != -1)
    throw std::logic_error("build_tables: base values wrong");
  return t;
}

namespace {
std::mutex tables_mutex;
std::shared_ptr<const SptTables> tables_shared;
}  // namespace

std::shared_ptr<const SptTables> tables_for(int order) {
  std::lock_guard<std::mutex> lock(tables_mutex);
  if (!tables_shared || tables_shared->order < order)
    tables_shared = std::make_shared<const SptTables>(build_tables(order));
  return tables_shared;
}

Int spt_bruteforce(int n) {
  if (n < 0) throw std::invalid_argument("spt_bruteforce: n < 0");
  if (n > 60)
    throw std::invalid_argument("spt_bruteforce: refusing n > 60 (oracle only)");
  if (n == 0) return 0;
  // Smallest part s with multiplicity k, rest partitioned into parts > s.
  // count_ge(m, s) = number of partitions of m into parts >= s, computed by
  // plain recursion (n <= 60 keeps this honest and fast enough).
  struct Rec {
    static Int count_ge(int m, int s) {
      if (m == 0) return 1;
      if (s > m) return 0;
      Int total = 0;
      for (int first = s; first <= m; ++first)
        total += count_ge(m - first, first);
      return total;
    }
  };
  Int total = 0;
  for (int s = 1; s <= n; ++s)
    for (int k = 1; s * k <= n; ++k) {
      int rest = n - s * k;
      if (rest == 0)
        total += k;
      else
        total += k * Rec::count_ge(rest, s + 1);
    }
  return total;
}

QSeries alpha_series(const SptTables& t, int order) {
  if (order < 1 || order > t.order)
    throw std::invalid_argument("alpha_series: order out of table range");
  std::vector<Int> v(t.a.begin(), t.a.begin() + order);
  return QSeries(-1, std::move(v));
}

QSeries alpha_ell_series(const SptTables& t, long ell, int order,
                         AlphaRoute route) {
  LevelConstants lc = level_constants(ell, 1);
  int chi = chi12(ell);
  if (route == AlphaRoute::kOperator) {
    int in_order = static_cast<int>(ell) * order + static_cast<int>(ell);
    QSeries al = alpha_series(t, in_order);
    QSeries op = u_grid(al, ell);
    QSeries twist = scale(Int(-chi * ell), dilate(al, ell));
    QSeries out = add(op, twist);
    return truncate(out, std::min(out.order(), order));
  }
  std::vector<Int> v(static_cast<size_t>(order));
  for (long n = 0; n < order; ++n) {
    Int c = t.a_at(Int(ell * n - lc.s));
    c -= chi * ell * t.a_at(Int(n), Int(ell));
    v[static_cast<size_t>(n)] = c;
  }
  return QSeries(-ell, std::move(v));
}

QSeries beta_ell_series(const SptTables& t, long ell, int order) {
  LevelConstants lc = level_constants(ell, 1);
  int chi = chi12(ell);
  std::vector<Int> v(static_cast<size_t>(order));
  for (long k = 0; k < order; ++k) {
    long n = k - lc.s;
    Int c = 0;
    if (n >= 0) {
      Int an = t.a_at(Int(n));
      c = chi * an * (legendre(Int(1 - 24 * n), ell) - 1);
    }
    c += ell * t.a_at(Int(n + lc.s), Int(ell) * ell);
    v[static_cast<size_t>(k)] = c;
  }
  // leading exponent (n - 1/24 at n = -s) in 1/24 units: -24 s - 1 = -ell^2
  return QSeries(-ell * ell, std::move(v));
}

void require_holomorphic_integer_grid(const QSeries& f, const char* what) {
  for (int k = 0; k < f.order(); ++k) {
    if (f.coeff(k) == 0) continue;
    long e = f.exponent24(k);
    if (e < 0 || e % 24 != 0)
      throw std::logic_error(std::string(what) +
                             ": nonzero coefficient off the holomorphic "
                             "integer grid at exponent24 " +
                             std::to_string(e));
  }
}

QSeries g_ell_series(const SptTables& t, long ell, int order) {
  QSeries al = alpha_ell_series(t, ell, order + 2, AlphaRoute::kDirect);
  EtaQuotient eq{{1, 2 * ell}, {ell, -1}};
  QSeries g = mul(al, eta_quotient_series(eq, al.order()));
  require_holomorphic_integer_grid(g, "G_ell");
  return truncate(g, std::min(g.order(), order));
}

QSeries j_ell_series(const SptTables& t, long ell, int order) {
  QSeries be = beta_ell_series(t, ell, order + 2);
  EtaQuotient eq{{ell, 2 * ell}, {1, -1}};
  QSeries j = mul(be, eta_quotient_series(eq, be.order()));
  require_holomorphic_integer_grid(j, "J_ell");
  return truncate(j, std::min(j.order(), order));
}

QSeries k_ell_series(const SptTables& t, long ell, int order) {
  QSeries g = g_ell_series(t, ell, order);
  int j_order = static_cast<int>(ell) * order + static_cast<int>(ell);
  QSeries j = j_ell_series(t, ell, j_order);
  QSeries picked = u_grid(j, ell);
  int sign = ((ell - 1) / 2) % 2 == 0 ? 1 : -1;
  QSeries k = add(g, scale(Int(sign * ell), picked));
  return truncate(k, std::min(k.order(), order));
}

}  // namespace sptq
