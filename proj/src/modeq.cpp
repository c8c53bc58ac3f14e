#include "sptq/modeq.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <mutex>
#include <stdexcept>

#include "sptq/forms.hpp"

namespace sptq {

namespace {

const Int kZero = 0;

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long ceil_div_pos(long a, long b) {  // a >= 0, b > 0
  return (a + b - 1) / b;
}

long pow_long(long base, int e) {
  long r = 1;
  while (e-- > 0) r *= base;
  return r;
}

// One linear tap of the row recurrence: m_{i,j} += coef * m_{i-dr, j-ds}.
// The taps are exactly the coefficients of the level's modular equation
// Z^ell = sum_taps coef * Y(ell z)^ds * Z^{ell-dr}.
struct Tap {
  int dr;
  int ds;
  long coef;
};

struct LevelData {
  long ell;
  int stride;                // A/B row stride K: a_{i,j} = m_{K i, i+j}
  int window;                // recurrence depth == number of base rows
  int first_rec_row;         // 5, 7, 1
  std::vector<Tap> taps;
  EtaQuotient y, z, y_at_ellz;
};

long p13(int k) { return pow_long(13, k); }

const LevelData& level_data(long ell) {
  static const LevelData d5{
      5,
      6,
      5,
      5,
      {{1, 1, 25}, {2, 1, 25}, {3, 1, 15}, {4, 1, 5}, {5, 1, 1}},
      EtaQuotient{{5, 6}, {1, -6}},
      EtaQuotient{{25, 1}, {1, -1}},
      EtaQuotient{{25, 6}, {5, -6}}};
  static const LevelData d7{
      7,
      4,
      7,
      7,
      {{1, 1, 49},
       {2, 1, 35},
       {3, 1, 7},
       {1, 2, 343},
       {2, 2, 343},
       {3, 2, 147},
       {4, 2, 49},
       {5, 2, 21},
       {6, 2, 7},
       {7, 2, 1}},
      EtaQuotient{{7, 4}, {1, -4}},
      EtaQuotient{{49, 1}, {1, -1}},
      EtaQuotient{{49, 4}, {7, -4}}};
  static const LevelData d13 = [] {
    LevelData d;
    d.ell = 13;
    d.stride = 2;
    d.window = 13;
    d.first_rec_row = 1;
    // psi_{r,s}, rows r = 1..13, columns s = floor((r+2)/2)..7
    const std::vector<std::vector<std::pair<int, long>>> psi = {
        /* r=1 */ {{1, 11 * p13(1)}, {2, 36 * p13(2)}, {3, 38 * p13(3)},
                   {4, 20 * p13(4)}, {5, 6 * p13(5)}, {6, p13(6)}, {7, p13(6)}},
        /* r=2 */ {{2, -204 * p13(1)}, {3, -346 * p13(2)}, {4, -222 * p13(3)},
                   {5, -74 * p13(4)}, {6, -p13(6)}, {7, -p13(6)}},
        /* r=3 */ {{2, 36 * p13(1)}, {3, 126 * p13(2)}, {4, 102 * p13(3)},
                   {5, 38 * p13(4)}, {6, 7 * p13(5)}, {7, 7 * p13(5)}},
        /* r=4 */ {{3, -346 * p13(1)}, {4, -422 * p13(2)}, {5, -184 * p13(3)},
                   {6, -37 * p13(4)}, {7, -3 * p13(5)}},
        /* r=5 */ {{3, 38 * p13(1)}, {4, 102 * p13(2)}, {5, 56 * p13(3)},
                   {6, p13(5)}, {7, 15 * p13(4)}},
        /* r=6 */ {{4, -222 * p13(1)}, {5, -184 * p13(2)}, {6, -51 * p13(3)},
                   {7, -5 * p13(4)}},
        /* r=7 */ {{4, 20 * p13(1)}, {5, 38 * p13(2)}, {6, p13(4)},
                   {7, 19 * p13(3)}},
        /* r=8 */ {{5, -74 * p13(1)}, {6, -37 * p13(2)}, {7, -5 * p13(3)}},
        /* r=9 */ {{5, 6 * p13(1)}, {6, 7 * p13(2)}, {7, 15 * p13(2)}},
        /* r=10 */ {{6, -p13(2)}, {7, -3 * p13(2)}},
        /* r=11 */ {{6, p13(1)}, {7, 7 * p13(1)}},
        /* r=12 */ {{7, -p13(1)}},
        /* r=13 */ {{7, 1}},
    };
    for (int r = 1; r <= 13; ++r)
      for (const auto& [s, c] : psi[static_cast<size_t>(r - 1)])
        d.taps.push_back(Tap{r, s, c});
    d.y = EtaQuotient{{13, 2}, {1, -2}};
    d.z = EtaQuotient{{169, 1}, {1, -1}};
    d.y_at_ellz = EtaQuotient{{169, 2}, {13, -2}};
    return d;
  }();
  switch (ell) {
    case 5:
      return d5;
    case 7:
      return d7;
    case 13:
      return d13;
    default:
      throw std::invalid_argument("level must be 5, 7 or 13");
  }
}

// Claimed support of row i: nonzero entries confined to [lo, hi].
std::pair<long, long> row_support(long ell, int i) {
  if (ell == 5) return i == 0 ? std::pair<long, long>{0, 0}
                              : std::pair<long, long>{ceil_div_pos(i, 5), i};
  if (ell == 7) return i == 0 ? std::pair<long, long>{0, 0}
                              : std::pair<long, long>{ceil_div_pos(2L * i, 7), 2L * i};
  if (i <= 0) return {-6, 0};
  return {ceil_div_pos(7L * i, 13), 7L * i};
}

// ----------------------------------------------------------------------------
// Row stream

struct Row {
  int i = 0;
  long jmin = 0;
  std::vector<Int> c;  // columns jmin .. jmin + c.size() - 1

  long jmax() const { return jmin + static_cast<long>(c.size()) - 1; }
};

Row make_row(int i, std::initializer_list<std::pair<long, long>> entries) {
  Row r;
  r.i = i;
  r.jmin = entries.begin()->first;
  long last = (entries.end() - 1)->first;
  r.c.assign(static_cast<size_t>(last - r.jmin + 1), kZero);
  for (const auto& [j, v] : entries) r.c[static_cast<size_t>(j - r.jmin)] = v;
  return r;
}

std::vector<Row> base_rows_5() {
  return {make_row(0, {{0, 1}}),
          make_row(1, {{1, 125}}),
          make_row(2, {{1, 100}, {2, 3125}}),
          make_row(3, {{1, 45}, {2, 5625}, {3, 78125}}),
          make_row(4, {{1, 10}, {2, 5500}, {3, 218750}, {4, 1953125}})};
}

std::vector<Row> base_rows_13() {
  return {
      make_row(-12, {{0, p13(6)}}),
      make_row(-11, {{-5, 82 * p13(1)}, {-4, 456 * p13(2)}, {-3, 360 * p13(3)},
                     {-2, 126 * p13(4)}, {-1, 18 * p13(5)}, {0, p13(6)}}),
      make_row(-10, {{0, p13(5)}}),
      make_row(-9, {{-4, 18 * p13(1)}, {-3, -36 * p13(2)}, {-2, -40 * p13(3)},
                    {-1, -14 * p13(4)}, {0, -p13(5)}}),
      make_row(-8, {{0, p13(4)}}),
      make_row(-7, {{-3, -14 * p13(1)}, {-2, -12 * p13(2)}, {0, p13(4)}}),
      make_row(-6, {{0, p13(3)}}),
      make_row(-5, {{-2, 4 * p13(1)}, {-1, 6 * p13(2)}, {0, p13(3)}}),
      make_row(-4, {{0, p13(2)}}),
      make_row(-3, {{0, -p13(2)}}),
      make_row(-2, {{0, p13(1)}}),
      make_row(-1, {{0, -p13(1)}}),
      make_row(0, {{0, 1}}),
  };
}

// ell = 7 base rows come from the series route: apply the grid operator to
// E*Z^i, divide by E, and peel ascending powers of Y.  The result is checked
// to be a genuine Y-polynomial within the working truncation.
std::vector<Row> base_rows_7_series() {
  const int out_order = 40;
  const int in_order = 7 * out_order + 8;
  const LevelData& d = level_data(7);
  QSeries e_in = eisenstein_e2ell(7, in_order);
  QSeries z = eta_quotient_series(d.z, in_order);
  QSeries e_inv = invert(eisenstein_e2ell(7, out_order));
  QSeries y = eta_quotient_series(d.y, out_order);
  std::vector<QSeries> ypow;
  ypow.push_back(QSeries::constant(1, out_order));
  for (int j = 1; j <= 12; ++j) ypow.push_back(mul(ypow.back(), y));

  std::vector<Row> rows;
  QSeries cur = e_in;
  for (int i = 0; i <= 6; ++i) {
    if (i > 0) cur = mul(cur, z);
    QSeries s = mul(u_grid(cur, 7), e_inv);
    Row row;
    row.i = i;
    row.jmin = 0;
    row.c.assign(static_cast<size_t>(2 * i) + 1, kZero);
    QSeries rem = s;
    for (int j = 0; j <= 2 * i; ++j) {
      const Int& c = rem.coeff_at(24L * j);
      if (c == 0) continue;
      row.c[static_cast<size_t>(j)] = c;
      rem = sub(rem, scale(c, ypow[static_cast<size_t>(j)]));
    }
    if (!rem.is_identically_zero())
      throw std::logic_error(
          "base rows (7): residual after peeling Y-powers is nonzero");
    // trim leading zero columns so stored support is honest
    size_t lead = 0;
    while (lead + 1 < row.c.size() && row.c[lead] == 0) ++lead;
    row.jmin += static_cast<long>(lead);
    row.c.erase(row.c.begin(), row.c.begin() + static_cast<long>(lead));
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::vector<Row>& base_row_cache(long ell) {
  static std::mutex mu;
  static std::map<long, std::vector<Row>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(ell);
  if (it != cache.end()) return it->second;
  std::vector<Row> rows;
  if (ell == 5)
    rows = base_rows_5();
  else if (ell == 7)
    rows = base_rows_7_series();
  else if (ell == 13)
    rows = base_rows_13();
  else
    throw std::invalid_argument("level must be 5, 7 or 13");
  return cache.emplace(ell, std::move(rows)).first->second;
}

// Streams matrix rows in index order while holding only the recurrence window
// in memory.  col_cap >= 0 truncates every row to columns <= col_cap, which is
// sound because column j of a row only ever reads columns < j of earlier rows.
// A nonzero modulus reduces every entry (valuation checks only need the value
// mod ell^T for T above the claimed bound).
class RowStream {
 public:
  RowStream(long ell, long col_cap = -1, Int modulus = 0)
      : data_(level_data(ell)), col_cap_(col_cap), mod_(std::move(modulus)) {
    for (const Row& r : base_row_cache(ell)) pending_.push_back(clip(r));
    next_i_ = pending_.front().i;
  }

  int next_index() const { return next_i_; }

  const Row& next() {
    if (!pending_.empty()) {
      push(std::move(pending_.front()));
      pending_.pop_front();
      ++next_i_;
      return window_.back();
    }
    int i = next_i_++;
    long jmin = LONG_MAX;
    long jmax = LONG_MIN;
    for (const Tap& t : data_.taps) {
      const Row& src = at(i - t.dr);
      if (src.c.empty()) continue;
      jmin = std::min(jmin, src.jmin + t.ds);
      jmax = std::max(jmax, src.jmax() + t.ds);
    }
    Row out;
    out.i = i;
    if (col_cap_ >= 0) jmax = std::min(jmax, col_cap_);
    if (jmin == LONG_MAX || jmin > jmax) {
      push(std::move(out));
      return window_.back();
    }
    out.jmin = jmin;
    out.c.assign(static_cast<size_t>(jmax - jmin + 1), kZero);
    for (const Tap& t : data_.taps) {
      const Row& src = at(i - t.dr);
      for (size_t k = 0; k < src.c.size(); ++k) {
        const Int& v = src.c[k];
        if (v == 0) continue;
        long j = src.jmin + static_cast<long>(k) + t.ds;
        if (j > jmax) break;
        Int& dst = out.c[static_cast<size_t>(j - jmin)];
        if (t.coef >= 0)
          mpz_addmul_ui(dst.get_mpz_t(), v.get_mpz_t(),
                        static_cast<unsigned long>(t.coef));
        else
          mpz_submul_ui(dst.get_mpz_t(), v.get_mpz_t(),
                        static_cast<unsigned long>(-t.coef));
      }
    }
    if (mod_ != 0)
      for (Int& v : out.c)
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), mod_.get_mpz_t());
    push(std::move(out));
    return window_.back();
  }

 private:
  const Row& at(int i) const {
    // window_ holds consecutive rows ending at next_i_ - 1
    int front_i = window_.front().i;
    return window_[static_cast<size_t>(i - front_i)];
  }

  Row clip(const Row& r) const {
    Row out = r;
    if (col_cap_ >= 0 && out.jmax() > col_cap_) {
      long keep = col_cap_ - out.jmin + 1;
      if (keep <= 0) {
        out.c.clear();
      } else {
        out.c.resize(static_cast<size_t>(keep));
      }
    }
    if (mod_ != 0)
      for (Int& v : out.c)
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), mod_.get_mpz_t());
    return out;
  }

  void push(Row&& r) {
    window_.push_back(std::move(r));
    if (static_cast<int>(window_.size()) > data_.window) window_.pop_front();
  }

  const LevelData& data_;
  long col_cap_;
  Int mod_;
  std::deque<Row> window_;
  std::deque<Row> pending_;
  int next_i_ = 0;
};

std::map<long, Int> row_to_sparse(const Row& r) {
  std::map<long, Int> out;
  for (size_t k = 0; k < r.c.size(); ++k)
    if (r.c[k] != 0) out[r.jmin + static_cast<long>(k)] = r.c[k];
  return out;
}

}  // namespace

// ----------------------------------------------------------------------------
// MMatrix

int MMatrix::min_row() const {
  if (rows.empty()) throw std::logic_error("MMatrix: no rows");
  return rows.begin()->first;
}

int MMatrix::max_row() const {
  if (rows.empty()) throw std::logic_error("MMatrix: no rows");
  return rows.rbegin()->first;
}

const Int& MMatrix::at(int i, long j) const {
  auto it = rows.find(i);
  if (it == rows.end())
    throw std::invalid_argument("MMatrix::at: row " + std::to_string(i) +
                                " has not been generated");
  auto jt = it->second.find(j);
  return jt == it->second.end() ? kZero : jt->second;
}

int first_recurrence_row(long ell) { return level_data(ell).first_rec_row; }
int ab_stride(long ell) { return level_data(ell).stride; }

MMatrix base_rows(long ell) {
  MMatrix m;
  m.ell = ell;
  for (const Row& r : base_row_cache(ell)) m.rows[r.i] = row_to_sparse(r);
  return m;
}

void extend_rows(MMatrix& m, int max_i) {
  if (m.rows.empty()) m = base_rows(m.ell);
  RowStream stream(m.ell);
  while (stream.next_index() <= max_i) {
    const Row& r = stream.next();
    if (!m.has_row(r.i)) m.rows[r.i] = row_to_sparse(r);
  }
}

ABMatrices ab_matrices(const MMatrix& m, int max_i) {
  ABMatrices ab;
  ab.ell = m.ell;
  int k = ab_stride(m.ell);
  for (int i = 0; i <= max_i; ++i) {
    for (int which = 0; which < 2; ++which) {
      int src = k * i + which;
      auto it = m.rows.find(src);
      if (it == m.rows.end())
        throw std::invalid_argument(
            "ab_matrices: matrix row " + std::to_string(src) +
            " missing; call extend_rows first");
      std::map<long, Int> row;
      for (const auto& [col, v] : it->second) {
        long j = col - i;
        if (j < 0 && v != 0)
          throw std::logic_error("ab_matrices: negative target column");
        row[j] = v;
      }
      (which == 0 ? ab.a : ab.b)[i] = std::move(row);
    }
  }
  return ab;
}

// ----------------------------------------------------------------------------
// x-vectors

XVector x_seed(long ell) {
  XVector x;
  x.ell = ell;
  x.generation = 1;
  if (ell == 5) {
    x.entries = {{0, -5}, {1, 625}};
  } else if (ell == 7) {
    x.entries = {{0, -7}, {1, 3 * 343}, {2, 16807}};
  } else if (ell == 13) {
    x.entries = {{0, 13},
                 {1, 11 * p13(2)},
                 {2, 108 * p13(3)},
                 {3, 190 * p13(4)},
                 {4, 140 * p13(5)},
                 {5, 54 * p13(6)},
                 {6, 11 * p13(7)},
                 {7, p13(8)}};
  } else {
    throw std::invalid_argument("level must be 5, 7 or 13");
  }
  return x;
}

namespace {

// One multiplication by A (odd generation) or B (even): x'_j = sum_i x_i *
// m_{K i + c, i + j}.  Rows are streamed; j_cap >= 0 keeps only columns
// j <= j_cap (sound: column j of the product reads matrix columns <= i + j).
XVector advance_x(const XVector& x, long j_cap, const Int& modulus) {
  const LevelData& d = level_data(x.ell);
  int k = d.stride;
  int c = (x.generation % 2 == 1) ? 0 : 1;
  std::map<int, long> need;  // matrix row -> source index i
  long max_i = -1;
  for (const auto& [i, xi] : x.entries) {
    if (xi == 0) continue;
    if (j_cap >= 0) {
      long jlo = row_support(x.ell, k * static_cast<int>(i) + c).first - i;
      if (jlo > j_cap) continue;
    }
    need[k * static_cast<int>(i) + c] = i;
    max_i = std::max(max_i, i);
  }
  XVector out;
  out.ell = x.ell;
  out.generation = x.generation + 1;
  if (need.empty()) return out;
  long col_cap = (j_cap >= 0) ? max_i + j_cap : -1;
  RowStream stream(x.ell, col_cap, modulus);
  int last = need.rbegin()->first;
  while (stream.next_index() <= last) {
    const Row& row = stream.next();
    auto it = need.find(row.i);
    if (it == need.end()) continue;
    long i = it->second;
    const Int& xi = x.entries.at(i);
    for (size_t t = 0; t < row.c.size(); ++t) {
      const Int& v = row.c[t];
      if (v == 0) continue;
      long j = row.jmin + static_cast<long>(t) - i;
      if (j < 0) continue;
      if (j_cap >= 0 && j > j_cap) break;
      mpz_addmul(out.entries[j].get_mpz_t(), xi.get_mpz_t(), v.get_mpz_t());
    }
  }
  if (modulus != 0)
    for (auto& [j, v] : out.entries)
      mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

int max_exact_generation(long ell) {
  // support (hence cost) grows by a factor ell per generation
  if (ell == 5) return 6;
  if (ell == 7) return 4;
  return 3;
}

}  // namespace

XVector x_vector(long ell, int generation) {
  if (generation < 1)
    throw std::invalid_argument("x_vector: generation must be >= 1");
  if (generation > max_exact_generation(ell))
    throw std::invalid_argument(
        "x_vector: generation too large for exact full support; use "
        "x_vector_prefix");
  XVector x = x_seed(ell);
  while (x.generation < generation) x = advance_x(x, -1, 0);
  return x;
}

XVector x_vector_prefix(long ell, int generation, long j_cap,
                        const Int& modulus) {
  if (generation < 1)
    throw std::invalid_argument("x_vector_prefix: generation must be >= 1");
  if (j_cap < 0) throw std::invalid_argument("x_vector_prefix: j_cap < 0");
  XVector x = x_seed(ell);
  while (x.generation < generation) {
    int steps_left = generation - x.generation - 1;
    long cap = j_cap;
    for (int t = 0; t < steps_left; ++t) {
      if (cap > (LONG_MAX / 2) / ell) {
        cap = -1;  // effectively unbounded
        break;
      }
      cap *= ell;
    }
    x = advance_x(x, cap, modulus);
  }
  return x;
}

// ----------------------------------------------------------------------------
// valuations

std::optional<long> pi_val(const Int& x, long ell) {
  if (x == 0) return std::nullopt;
  Int rem;
  Int p(ell);
  return static_cast<long>(
      mpz_remove(rem.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

bool floor_bound(long x, long y, long n) {
  return floor_div(x, n) + floor_div(y, n) >= floor_div(x + y - n + 1, n);
}

std::optional<long> m_entry_bound(long ell, long i, long j) {
  if (i < 0 || j < 0) return std::nullopt;
  if (ell == 5) return floor_div(5 * j - i + 1, 2);
  if (ell == 7) return floor_div(7 * j - 2 * i + 3, 4);
  if (ell == 13) return floor_div(13 * j - 7 * i + 13, 14);
  throw std::invalid_argument("level must be 5, 7 or 13");
}

std::optional<long> a_entry_bound(long ell, long i, long j) {
  if (i < 0 || j < 0) return std::nullopt;
  if (ell == 5) return floor_div(5 * j - i + 1, 2);
  if (ell == 7) return floor_div(7 * j - i + 3, 4);
  if (ell == 13) return floor_div(13 * j - i + 13, 14);
  throw std::invalid_argument("level must be 5, 7 or 13");
}

std::optional<long> b_entry_bound(long ell, long i, long j) {
  if (i < 0 || j < 0) return std::nullopt;
  if (ell == 5) return floor_div(5 * j - i, 2);
  if (ell == 7) return floor_div(7 * j - i + 1, 4);
  if (ell == 13) return floor_div(13 * j - i + 6, 14);
  throw std::invalid_argument("level must be 5, 7 or 13");
}

std::optional<long> x_entry_bound(long ell, int generation, long j) {
  if (j < 1) return std::nullopt;
  int b = (generation + 1) / 2;  // generation = 2b-1 (odd) or 2b (even)
  bool odd = generation % 2 == 1;
  if (ell == 5) {
    if (b < 2) return std::nullopt;
    if (odd) return 5L * b - 6 + std::max(0L, floor_div(5 * j - 7, 2));
    return 5L * b - 4 + floor_div(5 * j - 5, 2);
  }
  if (ell == 7) {
    if (b < 2) return std::nullopt;
    if (odd) return 3L * b - 3 + floor_div(7 * j - 4, 4);
    return 3L * b - 1 + floor_div(7 * j - 6, 4);
  }
  if (ell == 13) {
    if (generation == 2) return 3 + floor_div(13 * j, 14);
    if (b < 2) return std::nullopt;
    if (odd) return 2L * b - 2 + floor_div(13 * j - 10, 14);
    return 2L * b - 1 + floor_div(13 * j, 14);
  }
  throw std::invalid_argument("level must be 5, 7 or 13");
}

// ----------------------------------------------------------------------------
// series-level checks

VerificationReport verify_modular_equation(long ell, int order) {
  Stopwatch sw;
  const LevelData& d = level_data(ell);
  VerificationReport rep;
  rep.task_id = "modeq." + std::to_string(ell);
  rep.ell = ell;
  rep.truncation = order;

  int n = order + 6;
  QSeries z = eta_quotient_series(d.z, n);
  QSeries lhs = pow(z, ell);
  QSeries y_ellz = eta_quotient_series(d.y_at_ellz, n);

  // group the taps by ds: rhs = sum_s Y(ell z)^s * (sum_r coef * Z^{ell-r})
  std::vector<QSeries> zpow;
  zpow.push_back(QSeries::constant(1, n));
  for (long t = 1; t < ell; ++t) zpow.push_back(mul(zpow.back(), z));
  std::map<int, QSeries> by_s;
  for (const Tap& t : d.taps) {
    QSeries term = scale(t.coef, zpow[static_cast<size_t>(ell - t.dr)]);
    auto it = by_s.find(t.ds);
    if (it == by_s.end())
      by_s.emplace(t.ds, std::move(term));
    else
      it->second = add(it->second, term);
  }
  QSeries ypow = y_ellz;
  std::optional<QSeries> rhs;
  for (int s = 1; s <= by_s.rbegin()->first; ++s) {
    if (s > 1) ypow = mul(ypow, y_ellz);
    auto it = by_s.find(s);
    if (it == by_s.end()) continue;
    QSeries term = mul(it->second, ypow);
    rhs = rhs ? add(*rhs, term) : term;
  }

  auto bad = first_mismatch(lhs, *rhs, order);
  if (bad) rep.fail(bad->exponent24, bad->lhs.get_str(), bad->rhs.get_str());
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

VerificationReport verify_u_action(long ell, int i_lo, int i_hi, int order) {
  Stopwatch sw;
  const LevelData& d = level_data(ell);
  VerificationReport rep;
  rep.task_id = "uaction." + std::to_string(ell);
  rep.ell = ell;
  rep.truncation = order;
  rep.param("i_lo", std::to_string(i_lo));
  rep.param("i_hi", std::to_string(i_hi));
  if (i_lo > i_hi) throw std::invalid_argument("verify_u_action: empty range");
  if (ell != 13 && i_lo < 0)
    throw std::invalid_argument("verify_u_action: negative i only at 13");

  MMatrix m = base_rows(ell);
  if (i_lo < m.min_row())
    throw std::invalid_argument("verify_u_action: i_lo below first stored row");
  extend_rows(m, std::max(i_hi, 0));

  int out_order = order + 4;
  int in_order = static_cast<int>(ell) * out_order;
  QSeries e_in = eisenstein_e2ell(ell, in_order);
  QSeries z = eta_quotient_series(d.z, in_order);
  QSeries zinv = (i_lo < 0) ? invert(z) : QSeries();
  QSeries e_out = eisenstein_e2ell(ell, out_order);
  QSeries y = eta_quotient_series(d.y, out_order);

  // walk i away from 0 in both directions so Z^i builds incrementally
  std::vector<int> is;
  for (int i = std::max(i_lo, 0); i <= i_hi; ++i) is.push_back(i);
  for (int i = -1; i >= i_lo; --i) is.push_back(i);

  QSeries zpos = QSeries::constant(1, in_order);
  QSeries zneg = QSeries::constant(1, in_order);
  for (int i : is) {
    QSeries* cur;
    if (i > 0) {
      zpos = mul(zpos, z);
      cur = &zpos;
    } else if (i < 0) {
      zneg = mul(zneg, zinv);
      cur = &zneg;
    } else {
      cur = &zpos;  // Z^0 = 1
    }
    QSeries lhs = u_grid(i == 0 ? e_in : mul(e_in, *cur), ell);

    const auto& row = m.rows.at(i);
    long jlo = row.empty() ? 0 : row.begin()->first;
    long jhi = row.empty() ? 0 : row.rbegin()->first;
    QSeries poly = QSeries::constant(m.at(i, jhi), out_order);
    for (long j = jhi - 1; j >= jlo; --j)
      poly = add(mul(poly, y), QSeries::constant(m.at(i, j), out_order));
    if (jlo != 0) poly = mul(poly, pow(y, jlo));
    QSeries rhs = mul(e_out, poly);

    auto bad = first_mismatch(lhs, rhs, order);
    if (bad) {
      rep.param("i_fail", std::to_string(i));
      rep.fail(bad->exponent24, bad->lhs.get_str(), bad->rhs.get_str());
      break;
    }
  }
  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

// ----------------------------------------------------------------------------
// valuation sweeps

namespace {

std::string val_str(const std::optional<long>& v) {
  return v ? std::to_string(*v) : "inf";
}

void check_entry_bound(VerificationReport& rep, long ell, const char* kind,
                       long i, long j, const Int& v,
                       const std::optional<long>& bound) {
  if (!bound) return;
  std::optional<long> pv = pi_val(v, ell);
  if (pv && *pv < *bound) {
    rep.param("fail_kind", kind);
    rep.param("fail_i", std::to_string(i));
    rep.param("fail_j", std::to_string(j));
    rep.fail(j, "pi >= " + std::to_string(*bound), "pi = " + val_str(pv));
  }
}

void check_x_generation(VerificationReport& rep, long ell, int gen,
                        const XVector& x, long check_cap) {
  for (const auto& [j, v] : x.entries) {
    if (!rep.pass) return;
    if (check_cap >= 0 && j > check_cap) break;
    if (ell == 13 && gen == 2 && j == 0) {
      // this entry's valuation is pinned exactly, not just bounded
      std::optional<long> pv = pi_val(v, ell);
      if (!pv || *pv != 1) {
        rep.param("fail_kind", "x2_0");
        rep.fail(0, "pi = 1", "pi = " + val_str(pv));
      }
      continue;
    }
    check_entry_bound(rep, ell, ("x_gen" + std::to_string(gen)).c_str(), gen,
                      j, v, x_entry_bound(ell, gen, j));
  }
  // support claim for the displayed generation-2 vector at 13
  if (ell == 13 && gen == 2) {
    for (const auto& [j, v] : x.entries)
      if (j > 91 && v != 0) {
        rep.param("fail_kind", "x2_support");
        rep.fail(j, "0", v.get_str());
        break;
      }
  }
}

}  // namespace

VerificationReport check_valuation_bounds(long ell,
                                          const ValuationSweepOptions& opt) {
  Stopwatch sw;
  VerificationReport rep;
  rep.task_id = "valuation." + std::to_string(ell);
  rep.ell = ell;
  rep.truncation = opt.m_max_row;
  rep.param("m_max_row", std::to_string(opt.m_max_row));
  rep.param("ab_max_i", std::to_string(opt.ab_max_i));
  rep.param("x_max_generation", std::to_string(opt.x_max_generation));

  // m_{i,j} lower bounds and support, exact rows
  int k = ab_stride(ell);
  MMatrix m = base_rows(ell);
  extend_rows(m, std::max(opt.m_max_row, k * opt.ab_max_i + 1));
  for (const auto& [i, row] : m.rows) {
    if (i > opt.m_max_row) break;
    auto [lo, hi] = row_support(ell, i);
    for (const auto& [j, v] : row) {
      if (!rep.pass) break;
      if (v != 0 && (j < lo || j > hi)) {
        rep.param("fail_kind", "m_support");
        rep.param("fail_i", std::to_string(i));
        rep.fail(j, "0", v.get_str());
        break;
      }
      check_entry_bound(rep, ell, "m", i, j, v, m_entry_bound(ell, i, j));
    }
    if (!rep.pass) break;
  }

  // tap coefficients at 13 carry their own claimed bounds
  if (rep.pass && ell == 13) {
    for (const Tap& t : level_data(13).taps) {
      std::optional<long> pv = pi_val(Int(t.coef), 13);
      long bound = floor_div(13L * t.ds - 7L * t.dr + 13, 14);
      if (pv && *pv < bound) {
        rep.param("fail_kind", "psi");
        rep.param("fail_i", std::to_string(t.dr));
        rep.fail(t.ds, "pi >= " + std::to_string(bound), "pi = " + val_str(pv));
        break;
      }
    }
  }

  // A/B entries derived from the exact rows
  if (rep.pass) {
    ABMatrices ab = ab_matrices(m, opt.ab_max_i);
    for (const auto& [i, row] : ab.a)
      for (const auto& [j, v] : row) {
        if (!rep.pass) break;
        check_entry_bound(rep, ell, "a", i, j, v, a_entry_bound(ell, i, j));
      }
    for (const auto& [i, row] : ab.b)
      for (const auto& [j, v] : row) {
        if (!rep.pass) break;
        check_entry_bound(rep, ell, "b", i, j, v, b_entry_bound(ell, i, j));
      }
  }

  // x-vector generations: exact full support while affordable, then exact
  // prefixes computed mod ell^T (reduction is a ring hom, so divisibility by
  // ell^bound with bound <= T is decided exactly)
  if (rep.pass && opt.x_max_generation >= 2) {
    int exact_max = std::min(opt.x_max_generation, max_exact_generation(ell));
    XVector x = x_seed(ell);
    while (x.generation < exact_max && rep.pass) {
      x = advance_x(x, -1, 0);
      check_x_generation(rep, ell, x.generation, x, -1);
    }
    std::string cov = "exact<=" + std::to_string(exact_max);

    if (rep.pass && opt.x_max_generation > exact_max && opt.x_prefix_cap > 0) {
      // per-generation check caps, shrinking with depth
      std::map<int, long> check_cap;
      long cap = opt.x_prefix_cap;
      for (int g = exact_max + 1; g <= opt.x_max_generation; ++g) {
        check_cap[g] = std::max(2L, cap);
        cap = std::max(2L, cap / (ell / 2));
      }
      // chain caps must reach the deepest requested prefix
      std::map<int, long> chain_cap;
      long need = 0;
      for (int g = opt.x_max_generation; g > exact_max; --g) {
        chain_cap[g] = std::max(check_cap[g], need);
        need = chain_cap[g] * ell;
      }
      // modulus covering every bound actually checked
      long max_bound = 1;
      for (int g = exact_max + 1; g <= opt.x_max_generation; ++g) {
        auto b = x_entry_bound(ell, g, check_cap[g]);
        if (b) max_bound = std::max(max_bound, *b);
      }
      Int modulus;
      mpz_ui_pow_ui(modulus.get_mpz_t(), static_cast<unsigned long>(ell),
                    static_cast<unsigned long>(max_bound + 2));
      for (auto& [j, v] : x.entries)
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
      for (int g = exact_max + 1; g <= opt.x_max_generation && rep.pass; ++g) {
        x = advance_x(x, chain_cap[g], modulus);
        check_x_generation(rep, ell, g, x, check_cap[g]);
        cov += ";g" + std::to_string(g) + "<=" + std::to_string(check_cap[g]);
      }
      cov += ";mod_pow=" + std::to_string(max_bound + 2);
    }
    rep.param("x_coverage", cov);
  }

  rep.runtime_ms = sw.elapsed_ms();
  return rep;
}

}  // namespace sptq
