#ifndef CSYMP_COHOMOLOGY_HPP
#define CSYMP_COHOMOLOGY_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "differential.hpp"
#include "linalg.hpp"
#include "model_io.hpp"

namespace csymp {

/// Thrown when an operation that needs a cocycle receives one with D(e) != 0.
struct cocycle_error : precondition_error {
  std::string residue;
  explicit cocycle_error(const std::string& residue_text)
      : precondition_error("element is not a cocycle; D(e) = " + residue_text),
        residue(residue_text) {}
};

/// Degree-indexed cache of slices and differential matrices for one model.
/// Slice computations for distinct degrees are independent; instances are
/// cheap and meant to live inside a single operation.
class Cochain {
 public:
  explicit Cochain(const Model& m) : m_(&m) {}

  const Model& model() const { return *m_; }

  const DegreeSlice& slice(long long n) {
    auto it = slices_.find(n);
    if (it == slices_.end())
      it = slices_.emplace(n, enumerate_degree_basis(m_->algebra(), n)).first;
    return it->second;
  }

  /// Matrix of D from the degree-n basis (rows) to the degree-(n+1) basis
  /// (columns); deterministic given the slice orders.
  const SparseMat& matrix(long long n) {
    auto it = mats_.find(n);
    if (it != mats_.end()) return it->second;
    const DegreeSlice& src = slice(n);
    const DegreeSlice& dst = slice(n + 1);
    SparseMat m(static_cast<int>(src.dim()), static_cast<int>(dst.dim()));
    for (std::size_t i = 0; i < src.dim(); ++i) {
      Element img = m_->apply(Element::term(m_->algebra(), src.basis[i], Rat(1)));
      for (const auto& [mono, c] : img.terms()) {
        auto jt = dst.index.find(mono);
        if (jt != dst.index.end()) m.set(static_cast<int>(i), static_cast<int>(jt->second), c);
      }
    }
    return mats_.emplace(n, std::move(m)).first->second;
  }

  /// Same map with rows = target basis, columns = source basis; the right
  /// kernel of this matrix is the cocycle space.
  SparseMat equations(long long n) { return matrix(n).transpose(); }

  int rank_d(long long n) {
    auto it = ranks_.find(n);
    if (it == ranks_.end()) it = ranks_.emplace(n, rank(matrix(n))).first;
    return it->second;
  }

  int betti(long long n) {
    if (n < 0) return 0;
    int dim_n = static_cast<int>(slice(n).dim());
    return dim_n - rank_d(n) - (n >= 1 ? rank_d(n - 1) : 0);
  }

 private:
  const Model* m_;
  std::map<long long, DegreeSlice> slices_;
  std::map<long long, SparseMat> mats_;
  std::map<long long, int> ranks_;
};

inline SparseMat differential_matrix(const Model& m, long long n) {
  Cochain c(m);
  return c.matrix(n);
}

/// dim H^n over Q, by exact fraction-free elimination.
inline int betti(const Model& m, long long n) {
  Cochain c(m);
  return c.betti(n);
}

struct CoboundaryResult {
  bool exact = false;
  std::optional<Element> witness;  // D(witness) == e when exact
};

namespace detail {

inline void require_cocycle(const Model& m, const Element& e) {
  Element de = m.apply(e);
  if (!de.is_zero()) throw cocycle_error(de.str());
}

inline CoboundaryResult coboundary_in(Cochain& c, const Element& e) {
  const Model& m = c.model();
  detail::require_cocycle(m, e);
  CoboundaryResult res;
  if (e.is_zero()) {
    res.exact = true;
    res.witness = Element::zero(m.algebra());
    return res;
  }
  auto deg = e.degree();
  if (!deg) throw degree_mismatch_error("element is not homogeneous");
  SparseMat eqs = c.equations(*deg - 1);
  auto x = solve(eqs, coordinates(e, c.slice(*deg)));
  if (!x) return res;
  res.exact = true;
  res.witness = from_coordinates(m.algebra(), c.slice(*deg - 1), *x);
  return res;
}

}  // namespace detail

/// Decides whether a cocycle is exact; an exact verdict carries a witness x
/// with D(x) = e, a negative verdict is certified by the exact elimination.
inline CoboundaryResult is_coboundary(const Model& m, const Element& e) {
  Cochain c(m);
  return detail::coboundary_in(c, e);
}

/// One degree of cohomology: canonical representative cocycles (echelon
/// pivots of the cocycle space modulo coboundaries) and a canonical basis of
/// the coboundary subspace.
struct CohomologySlice {
  long long degree = 0;
  DegreeSlice ambient;
  std::vector<Element> representatives;
  std::vector<Element> coboundary_basis;
  std::vector<std::vector<Rat>> rep_coords;
  std::vector<std::vector<Rat>> cob_coords;

  std::size_t dim() const { return representatives.size(); }
};

namespace detail {

inline CohomologySlice cohomology_slice_in(Cochain& c, long long n) {
  CohomologySlice out;
  out.degree = n;
  out.ambient = c.slice(n);
  const auto& alg = c.model().algebra();
  const int dim_n = static_cast<int>(out.ambient.dim());
  if (dim_n == 0) return out;

  Rref cob = rref(c.matrix(n - 1));  // rows span the coboundary subspace
  std::vector<bool> cob_pivot(static_cast<std::size_t>(dim_n), false);
  for (int p : cob.pivot_cols) cob_pivot[static_cast<std::size_t>(p)] = true;
  for (const auto& row : cob.rows) {
    std::vector<Rat> v(static_cast<std::size_t>(dim_n), Rat(0));
    for (const auto& [col, val] : row) v[static_cast<std::size_t>(col)] = val;
    out.coboundary_basis.push_back(from_coordinates(alg, out.ambient, v));
    out.cob_coords.push_back(std::move(v));
  }

  auto cocycles = kernel_basis(c.equations(n));
  SparseMat stacked(static_cast<int>(cob.rows.size() + cocycles.size()), dim_n);
  int r = 0;
  for (const auto& row : cob.rows) {
    stacked.row(r) = row;
    ++r;
  }
  for (const auto& z : cocycles) {
    for (int j = 0; j < dim_n; ++j) stacked.set(r, j, z[static_cast<std::size_t>(j)]);
    ++r;
  }
  Rref all = rref(stacked);
  for (std::size_t i = 0; i < all.pivot_cols.size(); ++i) {
    if (cob_pivot[static_cast<std::size_t>(all.pivot_cols[i])]) continue;
    std::vector<Rat> v(static_cast<std::size_t>(dim_n), Rat(0));
    for (const auto& [col, val] : all.rows[i]) v[static_cast<std::size_t>(col)] = val;
    out.representatives.push_back(from_coordinates(alg, out.ambient, v));
    out.rep_coords.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

inline CohomologySlice cohomology_slice(const Model& m, long long n) {
  Cochain c(m);
  return detail::cohomology_slice_in(c, n);
}

/// Coordinates of the class [e] relative to the slice representatives;
/// representatives map to standard basis vectors.
inline std::vector<Rat> express_class(const Model& m, const Element& e, const CohomologySlice& s) {
  detail::require_cocycle(m, e);
  if (!e.is_zero()) {
    auto d = e.degree();
    if (!d || *d != s.degree) throw degree_mismatch_error("element degree does not match the slice");
  }
  const int reps = static_cast<int>(s.rep_coords.size());
  const int cobs = static_cast<int>(s.cob_coords.size());
  const int dim = static_cast<int>(s.ambient.dim());
  SparseMat a(dim, reps + cobs);
  for (int j = 0; j < reps; ++j)
    for (int i = 0; i < dim; ++i) a.set(i, j, s.rep_coords[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
  for (int j = 0; j < cobs; ++j)
    for (int i = 0; i < dim; ++i)
      a.set(i, reps + j, s.cob_coords[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
  auto x = solve(a, coordinates(e, s.ambient));
  if (!x) throw precondition_error("cocycle does not lie in the slice span");
  return std::vector<Rat>(x->begin(), x->begin() + reps);
}

/// Evaluates a polynomial relation in named cocycles (names fall back to
/// generators) and reports whether the result is exact. Degrees of the
/// nonzero terms must agree.
inline bool verify_relation(const Model& m, const std::vector<std::pair<std::string, Element>>& reps,
                            const std::string& relation) {
  const auto& alg = m.algebra();
  for (const auto& [name, e] : reps) {
    if (!e.is_homogeneous()) throw degree_mismatch_error("representative '" + name + "' is not homogeneous");
    detail::require_cocycle(m, e);
  }
  auto lookup = [&](const std::string& name) -> Element {
    for (const auto& [n, e] : reps)
      if (n == name) return e;
    auto idx = alg->find(name);
    if (!idx) throw parse_error("unknown name '" + name + "' in relation");
    return Element::generator(alg, *idx);
  };
  Element total(alg);
  std::optional<long long> term_degree;
  for (const auto& term : detail::tokenize_element(relation)) {
    Element e = Element::constant(alg, term.sign);
    for (const auto& f : term.factors)
      e = e * (f.is_coeff ? Element::constant(alg, f.coeff) : lookup(f.name).pow(f.power));
    if (!e.is_zero()) {
      auto d = e.degree();
      if (!d) throw degree_mismatch_error("relation term is not homogeneous");
      if (term_degree && *term_degree != *d) throw degree_mismatch_error("relation mixes degrees");
      term_degree = d;
    }
    total = total + e;
  }
  if (total.is_zero()) return true;
  return is_coboundary(m, total).exact;
}

/// Poincare duality diagnostics at the stated formal dimension: top class is
/// one-dimensional, Betti numbers are symmetric, and a window above the top
/// degree vanishes.
struct PoincareReport {
  bool ok = true;
  long long fd = 0;
  long long window_end = 0;
  std::vector<std::pair<long long, int>> betti_table;
  std::vector<std::string> failures;
};

inline long long default_window(const Model& m) {
  int max_even = 0;
  for (std::size_t i = 0; i < m.algebra()->size(); ++i)
    if (!m.algebra()->is_odd(i)) max_even = std::max(max_even, m.algebra()->degree(i));
  return 2LL * std::max(max_even, 2) + 2;
}

inline PoincareReport poincare_check(const Model& m, long long fd, long long window = -1) {
  if (window < 0) window = default_window(m);
  PoincareReport rep;
  rep.fd = fd;
  rep.window_end = fd + window;
  Cochain c(m);
  std::vector<int> b(static_cast<std::size_t>(fd + window + 1), 0);
  for (long long n = 0; n <= fd + window; ++n) {
    b[static_cast<std::size_t>(n)] = c.betti(n);
    rep.betti_table.push_back({n, b[static_cast<std::size_t>(n)]});
  }
  if (b[static_cast<std::size_t>(fd)] != 1) {
    rep.ok = false;
    rep.failures.push_back("betti(" + std::to_string(fd) + ") = " +
                           std::to_string(b[static_cast<std::size_t>(fd)]) + ", expected 1");
  }
  for (long long n = fd + 1; n <= fd + window; ++n)
    if (b[static_cast<std::size_t>(n)] != 0) {
      rep.ok = false;
      rep.failures.push_back("betti(" + std::to_string(n) + ") = " +
                             std::to_string(b[static_cast<std::size_t>(n)]) + " above the top degree");
    }
  for (long long n = 0; n <= fd / 2; ++n)
    if (b[static_cast<std::size_t>(n)] != b[static_cast<std::size_t>(fd - n)]) {
      rep.ok = false;
      rep.failures.push_back("betti(" + std::to_string(n) + ") = " +
                             std::to_string(b[static_cast<std::size_t>(n)]) + " != betti(" +
                             std::to_string(fd - n) + ") = " +
                             std::to_string(b[static_cast<std::size_t>(fd - n)]));
    }
  return rep;
}

/// Cup product with powers of a degree-2 class, tested for bijectivity
/// H^{m-k} -> H^{m+k} at every 1 <= k <= m, fd = 2m.
struct LefschetzStep {
  long long k = 0;
  bool pass = false;
  int dim_low = 0;
  int dim_high = 0;
  std::vector<Element> kernel;
};

struct LefschetzReport {
  bool pass = true;
  std::vector<LefschetzStep> steps;
};

inline LefschetzReport hard_lefschetz(const Model& m, const Element& omega, long long fd) {
  if (fd % 2 != 0) throw precondition_error("hard Lefschetz needs an even formal dimension");
  if (omega.is_zero() || !omega.degree() || *omega.degree() != 2)
    throw precondition_error("the Lefschetz class must have degree 2");
  detail::require_cocycle(m, omega);
  const long long half = fd / 2;
  LefschetzReport rep;
  Cochain c(m);
  Element omega_k = Element::one(m.algebra());
  std::map<long long, CohomologySlice> hs;
  auto slice_of = [&](long long n) -> const CohomologySlice& {
    auto it = hs.find(n);
    if (it == hs.end()) it = hs.emplace(n, detail::cohomology_slice_in(c, n)).first;
    return it->second;
  };
  for (long long k = 1; k <= half; ++k) {
    omega_k = omega_k * omega;
    const CohomologySlice& lo = slice_of(half - k);
    const CohomologySlice& hi = slice_of(half + k);
    LefschetzStep step;
    step.k = k;
    step.dim_low = static_cast<int>(lo.dim());
    step.dim_high = static_cast<int>(hi.dim());
    SparseMat map(static_cast<int>(hi.dim()), static_cast<int>(lo.dim()));
    for (std::size_t j = 0; j < lo.dim(); ++j) {
      auto col = express_class(m, lo.representatives[j] * omega_k, hi);
      for (std::size_t i = 0; i < col.size(); ++i) map.set(static_cast<int>(i), static_cast<int>(j), col[i]);
    }
    int r = rank(map);
    step.pass = (step.dim_low == step.dim_high) && r == step.dim_low;
    if (!step.pass) {
      for (const auto& v : kernel_basis(map)) {
        Element ker(m.algebra());
        for (std::size_t j = 0; j < lo.dim(); ++j) ker = ker + (v[j] * lo.representatives[j]);
        if (!ker.is_zero()) step.kernel.push_back(ker);
      }
      rep.pass = false;
    }
    rep.steps.push_back(std::move(step));
  }
  return rep;
}

/// Largest s such that the fundamental class has a representative cocycle all
/// of whose monomials have word length >= s. Requires a minimal model whose
/// top cohomology is one-dimensional.
inline int toomer(const Model& m, long long fd) {
  if (!is_minimal(m)) throw precondition_error("Toomer invariant requires a minimal model");
  Cochain c(m);
  if (c.betti(fd) != 1)
    throw precondition_error("top cohomology is not one-dimensional at degree " + std::to_string(fd));
  const DegreeSlice& top = c.slice(fd);
  Rref cob = rref(c.matrix(fd - 1));
  long long max_len = 0;
  for (const auto& mono : top.basis) max_len = std::max(max_len, mono.word_length());

  int best = 0;
  for (long long s = 1; s <= max_len; ++s) {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < top.basis.size(); ++i)
      if (top.basis[i].word_length() >= s) cols.push_back(i);
    if (cols.empty()) break;
    // cocycles supported on the filtered monomials
    SparseMat eqs = c.equations(fd);
    SparseMat sub(eqs.rows(), static_cast<int>(cols.size()));
    for (int r = 0; r < eqs.rows(); ++r) {
      const auto& row = eqs.row(r);
      std::size_t k = 0;
      for (const auto& [col, v] : row) {
        while (k < cols.size() && static_cast<int>(cols[k]) < col) ++k;
        if (k < cols.size() && static_cast<int>(cols[k]) == col) sub.row(r).push_back({static_cast<int>(k), v});
      }
    }
    auto zs = kernel_basis(sub);
    if (zs.empty()) break;
    SparseMat stacked(static_cast<int>(cob.rows.size() + zs.size()), static_cast<int>(top.dim()));
    int r = 0;
    for (const auto& row : cob.rows) stacked.row(r++) = row;
    for (const auto& z : zs) {
      for (std::size_t k = 0; k < cols.size(); ++k)
        if (z[k] != 0) stacked.set(r, static_cast<int>(cols[k]), z[k]);
      ++r;
    }
    if (rank(stacked) == cob.rank()) break;  // every filtered cocycle is exact
    best = static_cast<int>(s);
  }
  return best;
}

}  // namespace csymp

#endif
