#ifndef CSYMP_DIFFERENTIAL_HPP
#define CSYMP_DIFFERENTIAL_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"

namespace csymp {

/// A free algebra with a degree +1 differential given on generators and
/// extended by the graded Leibniz rule d(xy) = d(x)y + (-1)^{|x|} x d(y).
/// Construction checks image degrees only; D*D = 0 is a separate report so
/// that deliberately broken models remain representable.
class Model {
 public:
  explicit Model(AlgebraPtr alg) : alg_(std::move(alg)) {
    images_.assign(alg_->size(), Element::zero(alg_));
  }

  Model(AlgebraPtr alg, const std::map<std::string, Element>& images) : Model(std::move(alg)) {
    for (const auto& [name, img] : images) set_image(name, img);
  }

  const AlgebraPtr& algebra() const { return alg_; }

  void set_image(const std::string& gen_name, const Element& img) {
    std::size_t i = alg_->index_of(gen_name);
    require_same_algebra(alg_, img.algebra());
    if (!img.is_zero()) {
      auto d = img.degree();
      if (!d) throw degree_mismatch_error("image of '" + gen_name + "' is not homogeneous");
      if (*d != alg_->degree(i) + 1)
        throw degree_mismatch_error("image of '" + gen_name + "' has degree " + std::to_string(*d) +
                                    ", expected " + std::to_string(alg_->degree(i) + 1));
    }
    images_[i] = img;
  }

  const Element& image(std::size_t i) const { return images_[i]; }
  const Element& image(const std::string& name) const { return images_[alg_->index_of(name)]; }

  /// Leibniz extension of the differential to an arbitrary element.
  Element apply(const Element& e) const {
    require_same_algebra(alg_, e.algebra());
    Element out(alg_);
    for (const auto& [m, c] : e.terms()) {
      int prefix_parity = 0;  // parity of the degree left of the current factor
      for (std::size_t i = 0; i < alg_->size(); ++i) {
        if (m.e[i] == 0) continue;
        if (!images_[i].is_zero()) {
          // c * (prefix sign) * e_i * (m with one factor of g_i removed) * D(g_i)
          Monomial rest = m;
          rest.e[i] -= 1;
          Rat coeff = c * Rat(m.e[i]);
          if (prefix_parity) coeff = -coeff;
          out = out + (coeff * (Element::term(alg_, rest, Rat(1)) * images_[i]));
        }
        prefix_parity = (prefix_parity + static_cast<int>(m.e[i]) * alg_->degree(i)) % 2;
      }
    }
    return out;
  }

  friend bool operator==(const Model& a, const Model& b) {
    if (!(*a.alg_ == *b.alg_)) return false;
    return a.images_ == b.images_;
  }

 private:
  AlgebraPtr alg_;
  std::vector<Element> images_;
};

inline Element extend_leibniz(const Model& m, const Element& e) { return m.apply(e); }

/// Per-generator residues of D(D(g)); empty means the differential squares
/// to zero (sufficient by the Leibniz rule).
struct D2Report {
  bool ok = true;
  std::vector<std::pair<std::string, Element>> failures;
};

inline D2Report check_d_squared(const Model& m) {
  D2Report rep;
  const auto& alg = m.algebra();
  for (std::size_t i = 0; i < alg->size(); ++i) {
    Element r = m.apply(m.image(i));
    if (!r.is_zero()) {
      rep.ok = false;
      rep.failures.push_back({alg->name(i), r});
    }
  }
  return rep;
}

/// True when every image term has word length >= 2 (decomposable differential).
inline bool is_minimal(const Model& m) {
  const auto& alg = m.algebra();
  for (std::size_t i = 0; i < alg->size(); ++i)
    for (const auto& [mono, c] : m.image(i).terms())
      if (mono.word_length() < 2) return false;
  return true;
}

/// Relative model of a Borel-type fibration: the total algebra is the fiber
/// algebra with the even base generators appended, the base generators are
/// cycles, and the total differential restricts to the fiber differential
/// modulo the base ideal.
struct KSExtension {
  Model fiber;
  Model total;
  std::vector<std::string> base_names;

  std::size_t base_count() const { return base_names.size(); }
};

namespace detail {

inline bool in_ideal_of(const Element& e, const std::vector<std::size_t>& gen_indices) {
  for (const auto& [m, c] : e.terms()) {
    bool hit = false;
    for (std::size_t g : gen_indices)
      if (m.e[g] > 0) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

}  // namespace detail

/// Embeds a fiber element into a total algebra that contains the fiber
/// generators by name.
inline Element embed(const Element& e, const AlgebraPtr& total_alg) {
  const auto& src = *e.algebra();
  std::vector<std::size_t> map(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto j = total_alg->find(src.name(i));
    if (!j || total_alg->degree(*j) != src.degree(i))
      throw algebra_mismatch_error("generator '" + src.name(i) + "' missing in target algebra");
    map[i] = *j;
  }
  Element out(total_alg);
  for (const auto& [m, c] : e.terms()) {
    Monomial t = Monomial::unit(total_alg->size());
    for (std::size_t i = 0; i < src.size(); ++i) t.e[map[i]] = m.e[i];
    out.add_term(t, c);
  }
  return out;
}

/// Builds and validates a KS extension of `fiber` by the given even base
/// generators. `total_images` assigns images over the extended algebra to the
/// fiber generators (omitted ones keep a lift of their fiber image) and must
/// be congruent to the fiber differential modulo the base ideal.
inline KSExtension ks_extend(const Model& fiber, const std::vector<Generator>& base,
                             const std::map<std::string, Element>& total_images) {
  std::vector<Generator> gens = fiber.algebra()->gens();
  for (const auto& b : base) {
    if (b.degree % 2 != 0) throw precondition_error("base generator '" + b.name + "' must be even");
    gens.push_back(b);
  }
  AlgebraPtr total_alg = FreeGCA::make(std::move(gens));

  Model total(total_alg);
  const std::size_t nf = fiber.algebra()->size();
  std::vector<std::size_t> base_idx;
  std::vector<std::string> base_names;
  for (const auto& b : base) {
    base_idx.push_back(total_alg->index_of(b.name));
    base_names.push_back(b.name);
  }
  for (std::size_t i = 0; i < nf; ++i) {
    const std::string& name = fiber.algebra()->name(i);
    auto it = total_images.find(name);
    Element img = it != total_images.end() ? it->second : embed(fiber.image(i), total_alg);
    total.set_image(name, img);
    Element diff = img - embed(fiber.image(i), total_alg);
    if (!detail::in_ideal_of(diff, base_idx))
      throw precondition_error("not a KS extension over given fiber: image of '" + name +
                               "' is not congruent to the fiber differential modulo the base ideal");
  }
  for (const auto& [name, img] : total_images)
    if (!fiber.algebra()->find(name))
      throw precondition_error("total image given for unknown fiber generator '" + name + "'");

  auto d2 = check_d_squared(total);
  if (!d2.ok)
    throw precondition_error("extension differential does not square to zero; residue on '" +
                             d2.failures.front().first + "': " + d2.failures.front().second.str());
  return KSExtension{fiber, total, base_names};
}

/// Wraps an existing total model as a KS extension over `fiber`, checking the
/// same conditions as ks_extend. `rename` maps fiber generator names to total
/// generator names when they differ.
inline KSExtension as_ks_extension(const Model& fiber, const Model& total,
                                   const std::vector<std::string>& base_names,
                                   const std::map<std::string, std::string>& rename = {}) {
  const auto& ta = total.algebra();
  const auto& fa = fiber.algebra();
  auto mapped = [&](const std::string& n) {
    auto it = rename.find(n);
    return it == rename.end() ? n : it->second;
  };
  std::vector<std::size_t> base_idx;
  for (const auto& b : base_names) {
    std::size_t i = ta->index_of(b);
    if (ta->degree(i) % 2 != 0) throw precondition_error("base generator '" + b + "' must be even");
    if (!total.image(i).is_zero())
      throw precondition_error("base generator '" + b + "' must be a cycle");
    base_idx.push_back(i);
  }
  if (fa->size() + base_names.size() != ta->size())
    throw precondition_error("total algebra does not split as fiber plus base");
  // fiber generators must appear in order, with the base generators appended
  std::size_t expect = 0;
  for (std::size_t i = 0; i < fa->size(); ++i, ++expect) {
    std::size_t j = ta->index_of(mapped(fa->name(i)));
    if (j != expect || ta->degree(j) != fa->degree(i))
      throw precondition_error("fiber generator '" + fa->name(i) + "' does not match the total algebra");
  }

  AlgebraPtr fa_renamed = fa;
  Model fiber_r = fiber;
  if (!rename.empty()) {
    std::vector<Generator> gens;
    for (const auto& g : fa->gens()) gens.push_back({mapped(g.name), g.degree});
    fa_renamed = FreeGCA::make(std::move(gens));
    Model tmp(fa_renamed);
    for (std::size_t i = 0; i < fa->size(); ++i) {
      Element img = fiber.image(i);
      tmp.set_image(mapped(fa->name(i)), embed(img, fa_renamed));
    }
    fiber_r = tmp;
  }

  for (std::size_t i = 0; i < fa_renamed->size(); ++i) {
    Element diff = total.image(fa_renamed->name(i)) - embed(fiber_r.image(i), ta);
    if (!detail::in_ideal_of(diff, base_idx))
      throw precondition_error("not a KS extension over given fiber: image of '" +
                               fa_renamed->name(i) +
                               "' is not congruent to the fiber differential modulo the base ideal");
  }
  auto d2 = check_d_squared(total);
  if (!d2.ok)
    throw precondition_error("total differential does not square to zero; residue on '" +
                             d2.failures.front().first + "'");
  return KSExtension{fiber_r, total, base_names};
}

/// Quotient by the listed even generators: drops them from the algebra and
/// sets them to zero in every image. This is the fiber restriction of a KS
/// extension.
inline Model restrict_mod(const Model& total, const std::vector<std::string>& kill) {
  const auto& ta = total.algebra();
  std::vector<bool> killed(ta->size(), false);
  for (const auto& n : kill) {
    std::size_t i = ta->index_of(n);
    if (ta->degree(i) % 2 != 0) throw precondition_error("cannot quotient by odd generator '" + n + "'");
    killed[i] = true;
  }
  std::vector<Generator> gens;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < ta->size(); ++i)
    if (!killed[i]) {
      keep.push_back(i);
      gens.push_back(ta->gen(i));
    }
  AlgebraPtr fa = FreeGCA::make(std::move(gens));
  Model out(fa);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    Element img(fa);
    for (const auto& [m, c] : total.image(keep[k]).terms()) {
      bool drop = false;
      for (std::size_t i = 0; i < ta->size(); ++i)
        if (killed[i] && m.e[i] > 0) {
          drop = true;
          break;
        }
      if (drop) continue;
      Monomial t = Monomial::unit(fa->size());
      for (std::size_t j = 0; j < keep.size(); ++j) t.e[j] = m.e[keep[j]];
      img.add_term(t, c);
    }
    out.set_image(fa->name(k), img);
  }
  return out;
}

}  // namespace csymp

#endif
