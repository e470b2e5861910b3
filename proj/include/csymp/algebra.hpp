#ifndef CSYMP_ALGEBRA_HPP
#define CSYMP_ALGEBRA_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace csymp {

/// A named generator of a free graded-commutative algebra. Odd degree means
/// exterior (square zero), even degree means polynomial (unbounded powers).
struct Generator {
  std::string name;
  int degree = 0;
};

class FreeGCA;
using AlgebraPtr = std::shared_ptr<const FreeGCA>;

/// Free graded-commutative algebra over Q on an ordered list of generators.
/// Declaration order is the canonical total order used by monomials, bases
/// and printed output.
class FreeGCA {
 public:
  explicit FreeGCA(std::vector<Generator> gens) : gens_(std::move(gens)) {
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      const auto& g = gens_[i];
      if (g.degree < 1) throw precondition_error("generator '" + g.name + "' must have degree >= 1");
      if (g.name.empty()) throw precondition_error("generator with empty name");
      if (!index_.emplace(g.name, i).second)
        throw precondition_error("duplicate generator name '" + g.name + "'");
    }
  }

  static AlgebraPtr make(std::vector<Generator> gens) {
    return std::make_shared<FreeGCA>(std::move(gens));
  }

  std::size_t size() const { return gens_.size(); }
  const Generator& gen(std::size_t i) const { return gens_[i]; }
  const std::vector<Generator>& gens() const { return gens_; }
  int degree(std::size_t i) const { return gens_[i].degree; }
  const std::string& name(std::size_t i) const { return gens_[i].name; }
  bool is_odd(std::size_t i) const { return gens_[i].degree % 2 != 0; }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const std::string& name) const {
    auto i = find(name);
    if (!i) throw precondition_error("unknown generator '" + name + "'");
    return *i;
  }

  friend bool operator==(const FreeGCA& a, const FreeGCA& b) {
    if (a.gens_.size() != b.gens_.size()) return false;
    for (std::size_t i = 0; i < a.gens_.size(); ++i)
      if (a.gens_[i].name != b.gens_[i].name || a.gens_[i].degree != b.gens_[i].degree) return false;
    return true;
  }

 private:
  std::vector<Generator> gens_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw algebra_mismatch_error("values live over different algebras");
}

/// Exponent vector in declaration order. Odd generators carry exponent 0/1.
struct Monomial {
  std::vector<std::uint32_t> e;

  static Monomial unit(std::size_t ngens) { return Monomial{std::vector<std::uint32_t>(ngens, 0)}; }

  long long degree(const FreeGCA& alg) const {
    long long d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += static_cast<long long>(e[i]) * alg.degree(i);
    return d;
  }

  long long word_length() const {
    long long w = 0;
    for (auto x : e) w += x;
    return w;
  }

  bool is_unit() const {
    return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
};

/// Strict order placing lexicographically larger exponent vectors first; this
/// is the canonical basis and printing order everywhere.
struct MonoLexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return std::lexicographical_compare(b.e.begin(), b.e.end(), a.e.begin(), a.e.end());
  }
};

/// Merges two monomials. Returns 0 when an odd generator repeats, otherwise
/// the Koszul sign (-1)^k where k counts inversions between the two odd
/// occurrence sequences under the declaration order.
inline int merge_monomials(const FreeGCA& alg, const Monomial& a, const Monomial& b, Monomial& out) {
  const std::size_t n = alg.size();
  long long inversions = 0;
  long long odd_seen_in_b = 0;  // odd gens of b with index < current position
  out.e.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (alg.is_odd(i)) {
      if (a.e[i] && b.e[i]) return 0;
      // an odd factor of a at position i must jump over every odd factor of b
      // with smaller index
      if (a.e[i]) inversions += odd_seen_in_b;
      if (b.e[i]) ++odd_seen_in_b;
    }
    out.e[i] = a.e[i] + b.e[i];
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

/// Canonical finite sum of rational multiples of monomials; the universal
/// value type. No zero coefficients are ever stored. Mixed-degree sums are
/// legal values; homogeneity is checked at linear-algebra boundaries.
class Element {
 public:
  using TermMap = std::map<Monomial, Rat, MonoLexDesc>;

  explicit Element(AlgebraPtr alg) : alg_(std::move(alg)) {}

  static Element zero(AlgebraPtr alg) { return Element(std::move(alg)); }

  static Element constant(AlgebraPtr alg, const Rat& c) {
    Element e(std::move(alg));
    if (c != 0) e.terms_.emplace(Monomial::unit(e.alg_->size()), c);
    return e;
  }

  static Element one(AlgebraPtr alg) { return constant(std::move(alg), Rat(1)); }

  static Element generator(AlgebraPtr alg, std::size_t i) {
    Element e(std::move(alg));
    Monomial m = Monomial::unit(e.alg_->size());
    m.e[i] = 1;
    e.terms_.emplace(std::move(m), Rat(1));
    return e;
  }

  static Element term(AlgebraPtr alg, Monomial m, const Rat& c) {
    Element e(std::move(alg));
    if (c != 0) e.terms_.emplace(std::move(m), c);
    return e;
  }

  const AlgebraPtr& algebra() const { return alg_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Degree when homogeneous; nullopt for zero or mixed-degree values.
  std::optional<long long> degree() const {
    if (terms_.empty()) return std::nullopt;
    long long d = terms_.begin()->first.degree(*alg_);
    for (const auto& [m, c] : terms_)
      if (m.degree(*alg_) != d) return std::nullopt;
    return d;
  }

  bool is_homogeneous() const { return terms_.empty() || degree().has_value(); }

  /// Smallest word length over the terms; 0 for the zero element.
  long long min_word_length() const {
    long long w = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      long long l = m.word_length();
      if (first || l < w) w = l;
      first = false;
    }
    return first ? 0 : w;
  }

  Element& add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return *this;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
    return *this;
  }

  friend Element operator+(const Element& a, const Element& b) {
    require_same_algebra(a.alg_, b.alg_);
    Element r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }

  friend Element operator-(const Element& a, const Element& b) {
    require_same_algebra(a.alg_, b.alg_);
    Element r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }

  friend Element operator-(const Element& a) {
    Element r(a.alg_);
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
    return r;
  }

  friend Element operator*(const Rat& c, const Element& a) {
    Element r(a.alg_);
    if (c == 0) return r;
    for (const auto& [m, k] : a.terms_) r.terms_.emplace(m, c * k);
    return r;
  }

  friend Element operator*(const Element& a, const Element& b) {
    require_same_algebra(a.alg_, b.alg_);
    Element r(a.alg_);
    Monomial merged;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        int sign = merge_monomials(*a.alg_, ma, mb, merged);
        if (sign == 0) continue;
        Rat prod = ca * cb;
        if (sign < 0) prod = -prod;
        r.add_term(merged, prod);
      }
    return r;
  }

  Element pow(unsigned k) const {
    Element r = one(alg_);
    for (unsigned i = 0; i < k; ++i) r = r * (*this);
    return r;
  }

  friend bool operator==(const Element& a, const Element& b) {
    require_same_algebra(a.alg_, b.alg_);
    return a.terms_ == b.terms_;
  }

  std::string str() const;

 private:
  AlgebraPtr alg_;
  TermMap terms_;
};

/// One graded piece of the algebra: its full monomial basis in descending
/// lexicographic order on exponent vectors.
struct DegreeSlice {
  long long degree = 0;
  std::vector<Monomial> basis;
  std::map<Monomial, std::size_t, MonoLexDesc> index;

  std::size_t dim() const { return basis.size(); }
};

inline constexpr std::size_t kMaxSliceDim = 10000;

namespace detail {
inline void enumerate_rec(const FreeGCA& alg, std::size_t i, long long remaining, Monomial& cur,
                          std::vector<Monomial>& out) {
  if (i == alg.size()) {
    if (remaining == 0) {
      if (out.size() >= kMaxSliceDim)
        throw resource_error("degree slice exceeds " + std::to_string(kMaxSliceDim) + " monomials");
      out.push_back(cur);
    }
    return;
  }
  const long long d = alg.degree(i);
  long long emax = remaining / d;
  if (alg.is_odd(i)) emax = std::min<long long>(emax, 1);
  for (long long e = emax; e >= 0; --e) {  // descending keeps the output lex-descending
    cur.e[i] = static_cast<std::uint32_t>(e);
    enumerate_rec(alg, i + 1, remaining - e * d, cur, out);
  }
  cur.e[i] = 0;
}
}  // namespace detail

/// All monomials of the given degree, lex-descending; deterministic across runs.
inline DegreeSlice enumerate_degree_basis(const AlgebraPtr& alg, long long n) {
  DegreeSlice s;
  s.degree = n;
  if (n < 0) return s;
  Monomial cur = Monomial::unit(alg->size());
  detail::enumerate_rec(*alg, 0, n, cur, s.basis);
  for (std::size_t i = 0; i < s.basis.size(); ++i) s.index.emplace(s.basis[i], i);
  return s;
}

/// Coefficient vector of a homogeneous element in slice order. The zero
/// element maps to the zero vector of any slice.
inline std::vector<Rat> coordinates(const Element& e, const DegreeSlice& s) {
  std::vector<Rat> v(s.basis.size(), Rat(0));
  if (e.is_zero()) return v;
  auto d = e.degree();
  if (!d) throw degree_mismatch_error("element is not homogeneous");
  if (*d != s.degree)
    throw degree_mismatch_error("element degree " + std::to_string(*d) + " != slice degree " +
                                std::to_string(s.degree));
  for (const auto& [m, c] : e.terms()) {
    auto it = s.index.find(m);
    if (it == s.index.end()) throw degree_mismatch_error("monomial outside slice basis");
    v[it->second] = c;
  }
  return v;
}

inline Element from_coordinates(const AlgebraPtr& alg, const DegreeSlice& s, const std::vector<Rat>& v) {
  if (v.size() != s.basis.size()) throw degree_mismatch_error("coordinate vector has wrong length");
  Element e(alg);
  for (std::size_t i = 0; i < v.size(); ++i) e.add_term(s.basis[i], v[i]);
  return e;
}

// ---------------------------------------------------------------------------
// Element text syntax: terms joined by +/-, each term an optional rational
// coefficient and '*'-separated factors name^k. Whitespace is insignificant.
// Example: v1*v2*t + t^4,  -3/2*t^10.
// ---------------------------------------------------------------------------

namespace detail {

inline bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Factor {
  bool is_coeff = false;
  Rat coeff;
  std::string name;
  unsigned power = 1;
};

struct ParsedTerm {
  Rat sign;
  std::vector<Factor> factors;
};

inline std::vector<ParsedTerm> tokenize_element(const std::string& text) {
  std::string t;
  t.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw parse_error("empty element text");

  std::vector<ParsedTerm> terms;
  std::size_t pos = 0;
  while (pos < t.size()) {
    ParsedTerm term;
    term.sign = 1;
    while (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) {
      if (t[pos] == '-') term.sign = -term.sign;
      ++pos;
    }
    if (pos >= t.size()) throw parse_error("dangling sign in element text");
    bool expect_factor = true;
    while (expect_factor) {
      Factor f;
      if (std::isdigit(static_cast<unsigned char>(t[pos]))) {
        std::size_t start = pos;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
        if (pos < t.size() && t[pos] == '/') {
          ++pos;
          if (pos >= t.size() || !std::isdigit(static_cast<unsigned char>(t[pos])))
            throw parse_error("bad rational in element text");
          while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
        }
        f.is_coeff = true;
        f.coeff = parse_rat(t.substr(start, pos - start));
      } else if (name_start(t[pos])) {
        std::size_t start = pos;
        while (pos < t.size() && name_char(t[pos])) ++pos;
        f.name = t.substr(start, pos - start);
        if (pos < t.size() && t[pos] == '^') {
          ++pos;
          std::size_t ps = pos;
          while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
          if (ps == pos) throw parse_error("missing exponent after '^'");
          f.power = static_cast<unsigned>(std::stoul(t.substr(ps, pos - ps)));
        }
      } else {
        throw parse_error(std::string("unexpected character '") + t[pos] + "' in element text");
      }
      term.factors.push_back(std::move(f));
      if (pos < t.size() && t[pos] == '*') {
        ++pos;
        expect_factor = true;
        if (pos >= t.size()) throw parse_error("dangling '*' in element text");
      } else {
        expect_factor = false;
      }
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

}  // namespace detail

/// Parses the element text syntax over the given algebra. Factor order inside
/// a term is respected, so "v2*v1" parses to the negative of "v1*v2".
inline Element parse_element(const AlgebraPtr& alg, const std::string& text) {
  Element result(alg);
  for (const auto& term : detail::tokenize_element(text)) {
    Element e = Element::constant(alg, term.sign);
    for (const auto& f : term.factors) {
      if (f.is_coeff) {
        e = f.coeff * e;
      } else {
        auto idx = alg->find(f.name);
        if (!idx) throw parse_error("unknown generator '" + f.name + "'");
        e = e * Element::generator(alg, *idx).pow(f.power);
      }
    }
    result = result + e;
  }
  return result;
}

inline std::string format_monomial(const FreeGCA& alg, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.e.size(); ++i) {
    if (m.e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += alg.name(i);
    if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
  }
  return out;
}

inline std::string Element::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rat a = c;
    if (first) {
      if (a < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += a < 0 ? " - " : " + ";
      if (a < 0) a = -a;
    }
    first = false;
    std::string mono = format_monomial(*alg_, m);
    if (mono.empty()) {
      out += format_rat(a);
    } else {
      if (a != 1) out += format_rat(a) + "*";
      out += mono;
    }
  }
  return out;
}

}  // namespace csymp

#endif
