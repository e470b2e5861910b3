#ifndef CSYMP_LINALG_HPP
#define CSYMP_LINALG_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace csymp {

/// Sparse row: (column, value) pairs sorted by column, values nonzero.
using SparseRow = std::vector<std::pair<int, Rat>>;

/// Sparse exact matrix over Q, stored row-wise.
class SparseMat {
 public:
  SparseMat(int rows, int cols) : cols_(cols), rows_(static_cast<std::size_t>(rows)) {
    if (rows < 0 || cols < 0) throw precondition_error("negative matrix dimension");
    if (static_cast<std::size_t>(rows) > kMaxDim || static_cast<std::size_t>(cols) > kMaxDim)
      throw resource_error("matrix dimension exceeds guardrail");
  }

  static constexpr std::size_t kMaxDim = 10000;

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }

  void set(int r, int c, const Rat& v) {
    if (v == 0) return;
    auto& row = rows_[static_cast<std::size_t>(r)];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& a, int col) { return a.first < col; });
    if (it != row.end() && it->first == c)
      it->second = v;
    else
      row.insert(it, {c, v});
  }

  const SparseRow& row(int r) const { return rows_[static_cast<std::size_t>(r)]; }
  SparseRow& row(int r) { return rows_[static_cast<std::size_t>(r)]; }

  SparseMat transpose() const {
    SparseMat t(cols_, rows());
    for (int r = 0; r < rows(); ++r)
      for (const auto& [c, v] : rows_[static_cast<std::size_t>(r)])
        t.rows_[static_cast<std::size_t>(c)].push_back({r, v});
    return t;
  }

 private:
  int cols_;
  std::vector<SparseRow> rows_;
};

namespace detail {

using IntRow = std::vector<std::pair<int, Int>>;

/// Clears denominators and divides out content; the row sign is untouched.
inline IntRow scale_to_primitive(const SparseRow& row) {
  IntRow out;
  out.reserve(row.size());
  Int l = 1;
  for (const auto& [c, v] : row) l = boost::multiprecision::lcm(l, rat_den(v));
  Int g = 0;
  for (const auto& [c, v] : row) {
    Int x = rat_num(v) * (l / rat_den(v));
    g = boost::multiprecision::gcd(g, x);
    out.push_back({c, std::move(x)});
  }
  if (g > 1)
    for (auto& [c, x] : out) x /= g;
  return out;
}

/// piv*target - t_lead*pivrow, all divided by prev (exact by construction).
inline IntRow ff_combine(const IntRow& target, const IntRow& pivrow, const Int& piv,
                         const Int& t_lead, const Int& prev) {
  IntRow out;
  out.reserve(target.size() + pivrow.size());
  std::size_t i = 0, j = 0;
  while (i < target.size() || j < pivrow.size()) {
    int ct = i < target.size() ? target[i].first : INT32_MAX;
    int cp = j < pivrow.size() ? pivrow[j].first : INT32_MAX;
    Int val;
    int col;
    if (ct < cp) {
      col = ct;
      val = piv * target[i].second;
      ++i;
    } else if (cp < ct) {
      col = cp;
      val = -t_lead * pivrow[j].second;
      ++j;
    } else {
      col = ct;
      val = piv * target[i].second - t_lead * pivrow[j].second;
      ++i;
      ++j;
    }
    if (val != 0) out.push_back({col, prev == 1 ? std::move(val) : Int(val / prev)});
  }
  return out;
}

struct FFEchelon {
  std::vector<IntRow> rows;      // pivot rows first (in pivot order), then nothing else
  std::vector<int> pivot_cols;   // one per pivot row
};

/// Fraction-free (Bareiss-style) row elimination with deterministic pivoting:
/// columns are swept in order and the first remaining row with a nonzero
/// entry in the current column becomes the pivot.
inline FFEchelon ff_echelon(const SparseMat& m) {
  std::vector<IntRow> work;
  work.reserve(static_cast<std::size_t>(m.rows()));
  for (int r = 0; r < m.rows(); ++r) {
    IntRow row = scale_to_primitive(m.row(r));
    if (!row.empty()) work.push_back(std::move(row));
  }
  FFEchelon res;
  Int prev = 1;
  std::size_t npiv = 0;
  for (int c = 0; c < m.cols() && npiv < work.size(); ++c) {
    std::size_t pick = npiv;
    while (pick < work.size() && work[pick].front().first != c) ++pick;
    if (pick == work.size()) continue;
    std::swap(work[npiv], work[pick]);
    const Int piv = work[npiv].front().second;
    for (std::size_t r = npiv + 1; r < work.size(); ++r) {
      if (work[r].front().first == c)
        work[r] = ff_combine(work[r], work[npiv], piv, work[r].front().second, prev);
      else if (prev != 1) {
        // rows untouched by the pivot still pick up the Bareiss rescale
        for (auto& [col, v] : work[r]) v = v * piv / prev;
      } else {
        for (auto& [col, v] : work[r]) v = v * piv;
      }
    }
    // drop rows that became zero
    work.erase(std::remove_if(work.begin() + static_cast<std::ptrdiff_t>(npiv) + 1, work.end(),
                              [](const IntRow& r) { return r.empty(); }),
               work.end());
    res.pivot_cols.push_back(c);
    prev = piv;
    ++npiv;
  }
  work.resize(npiv);
  res.rows = std::move(work);
  return res;
}

}  // namespace detail

inline int rank(const SparseMat& m) {
  return static_cast<int>(detail::ff_echelon(m).pivot_cols.size());
}

/// Reduced row echelon form: pivot entries are 1 and pivot columns are
/// cleared; rows are returned sparse in pivot order. Canonical for the row
/// space, hence usable for golden tests.
struct Rref {
  std::vector<SparseRow> rows;
  std::vector<int> pivot_cols;
  int cols = 0;

  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

inline Rref rref(const SparseMat& m) {
  auto ech = detail::ff_echelon(m);
  Rref out;
  out.cols = m.cols();
  out.pivot_cols = ech.pivot_cols;
  const std::size_t n = ech.rows.size();
  std::vector<SparseRow> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i].reserve(ech.rows[i].size());
    Rat inv = Rat(1, ech.rows[i].front().second);
    for (const auto& [c, v] : ech.rows[i]) rows[i].push_back({c, Rat(v) * inv});
  }
  // eliminate above each pivot, bottom-up
  for (std::size_t i = n; i-- > 0;) {
    int pc = out.pivot_cols[i];
    for (std::size_t j = 0; j < i; ++j) {
      auto it = std::lower_bound(rows[j].begin(), rows[j].end(), pc,
                                 [](const auto& a, int col) { return a.first < col; });
      if (it == rows[j].end() || it->first != pc) continue;
      Rat f = it->second;
      SparseRow merged;
      merged.reserve(rows[j].size() + rows[i].size());
      std::size_t a = 0, b = 0;
      while (a < rows[j].size() || b < rows[i].size()) {
        int ca = a < rows[j].size() ? rows[j][a].first : INT32_MAX;
        int cb = b < rows[i].size() ? rows[i][b].first : INT32_MAX;
        int col;
        Rat val;
        if (ca < cb) {
          col = ca;
          val = rows[j][a].second;
          ++a;
        } else if (cb < ca) {
          col = cb;
          val = -f * rows[i][b].second;
          ++b;
        } else {
          col = ca;
          val = rows[j][a].second - f * rows[i][b].second;
          ++a;
          ++b;
        }
        if (val != 0) merged.push_back({col, std::move(val)});
      }
      rows[j] = std::move(merged);
    }
  }
  out.rows = std::move(rows);
  return out;
}

/// Basis of the right kernel {x : Mx = 0}, one dense vector per free column,
/// in ascending free-column order. Deterministic and canonical.
inline std::vector<std::vector<Rat>> kernel_basis(const SparseMat& m) {
  Rref r = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int c : r.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<Rat>> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<Rat> v(static_cast<std::size_t>(m.cols()), Rat(0));
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      auto it = std::lower_bound(r.rows[i].begin(), r.rows[i].end(), f,
                                 [](const auto& a, int col) { return a.first < col; });
      if (it != r.rows[i].end() && it->first == f)
        v[static_cast<std::size_t>(r.pivot_cols[i])] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One solution of Mx = b with free variables set to zero, or nullopt when
/// the system is inconsistent.
inline std::optional<std::vector<Rat>> solve(const SparseMat& m, const std::vector<Rat>& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw precondition_error("solve: rhs length mismatch");
  SparseMat aug(m.rows(), m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    aug.row(r) = m.row(r);
    if (b[static_cast<std::size_t>(r)] != 0) aug.row(r).push_back({m.cols(), b[static_cast<std::size_t>(r)]});
  }
  Rref r = rref(aug);
  std::vector<Rat> x(static_cast<std::size_t>(m.cols()), Rat(0));
  for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) {
    if (r.pivot_cols[i] == m.cols()) return std::nullopt;  // pivot in the rhs column
    // with free variables pinned to zero, each pivot variable equals the rhs
    // entry of its row
    const auto& row = r.rows[i];
    if (!row.empty() && row.back().first == m.cols())
      x[static_cast<std::size_t>(r.pivot_cols[i])] = row.back().second;
  }
  return x;
}

/// Rank over the prime field F_p with p = 2^61 - 1. Used only as a sound
/// shortcut: rank_p <= rank_Q always, so a full-rank certificate mod p is a
/// full-rank certificate over Q.
class ModRank {
 public:
  static constexpr std::uint64_t P = (std::uint64_t(1) << 61) - 1;

  explicit ModRank(int cols) : cols_(cols) {}

  static std::uint64_t reduce_int(const Int& v) {
    Int m = v % Int(P);
    if (m < 0) m += P;
    return static_cast<std::uint64_t>(m);
  }

  /// Reduces a row against the current basis; inserts the remainder when it
  /// is nonzero. Returns true when the row enlarged the span.
  bool add_row(std::vector<std::uint64_t> row) {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      std::uint64_t lead = row[static_cast<std::size_t>(lead_[i])];
      if (lead) axpy(row, basis_[i], P - lead);
    }
    int lc = -1;
    for (int c = 0; c < cols_; ++c)
      if (row[static_cast<std::size_t>(c)]) {
        lc = c;
        break;
      }
    if (lc < 0) return false;
    std::uint64_t inv = inverse(row[static_cast<std::size_t>(lc)]);
    for (auto& x : row) x = mulmod(x, inv);
    // keep basis ordered by leading column
    std::size_t pos = 0;
    while (pos < lead_.size() && lead_[pos] < lc) ++pos;
    basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(row));
    lead_.insert(lead_.begin() + static_cast<std::ptrdiff_t>(pos), lc);
    return true;
  }

  int rank() const { return static_cast<int>(basis_.size()); }

  static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(t & P);
    std::uint64_t hi = static_cast<std::uint64_t>(t >> 61);
    std::uint64_t r = lo + hi;
    if (r >= P) r -= P;
    return r;
  }

 private:
  static void axpy(std::vector<std::uint64_t>& row, const std::vector<std::uint64_t>& src,
                   std::uint64_t c) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      row[i] = (row[i] + mulmod(c, src[i]));
      if (row[i] >= P) row[i] -= P;
    }
  }

  static std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  }

  static std::uint64_t inverse(std::uint64_t a) { return powmod(a, P - 2); }

  int cols_;
  std::vector<std::vector<std::uint64_t>> basis_;
  std::vector<int> lead_;
};

}  // namespace csymp

#endif
