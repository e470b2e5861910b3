#ifndef CSYMP_TORAL_HPP
#define CSYMP_TORAL_HPP

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "csym.hpp"

namespace csymp {

/// Lattice diagram of Borel-space classes for almost-free torus actions:
/// points (s, t) with 0 <= s, t and s + t <= r0, ordered by one-step torus
/// extensions (s weakly increases, t strictly increases along edges). The
/// declared r0 is data, supported by witnesses but not decided here.
struct HasseDiagram {
  struct Point {
    int s = 0, t = 0;
    std::string label;
    std::string model_file;  // optional reference into the catalog
  };
  struct Edge {
    int s1 = 0, t1 = 0, s2 = 0, t2 = 0;
  };

  int r0 = 0;
  std::vector<Point> points;
  std::vector<Edge> edges;

  bool has_point(int s, int t) const {
    for (const auto& p : points)
      if (p.s == s && p.t == t) return true;
    return false;
  }

  /// Structural validation: bounds, a root at the origin, unique points, and
  /// monotone edges between declared points.
  std::vector<std::string> validate() const {
    std::vector<std::string> problems;
    if (r0 < 0) problems.push_back("negative r0");
    if (!has_point(0, 0)) problems.push_back("missing root point (0,0)");
    std::set<std::pair<int, int>> seen;
    for (const auto& p : points) {
      if (p.s < 0 || p.t < 0 || p.s + p.t > r0)
        problems.push_back("point (" + std::to_string(p.s) + "," + std::to_string(p.t) +
                           ") outside 0 <= s,t with s+t <= r0");
      if (!seen.emplace(p.s, p.t).second)
        problems.push_back("duplicate point (" + std::to_string(p.s) + "," + std::to_string(p.t) + ")");
    }
    for (const auto& e : edges) {
      if (!has_point(e.s1, e.t1) || !has_point(e.s2, e.t2))
        problems.push_back("edge references an undeclared point");
      if (!(e.s1 <= e.s2 && e.t1 < e.t2))
        problems.push_back("edge (" + std::to_string(e.s1) + "," + std::to_string(e.t1) + ")->(" +
                           std::to_string(e.s2) + "," + std::to_string(e.t2) +
                           ") violates s1 <= s2, t1 < t2");
    }
    return problems;
  }

  /// The necessary leaf for a pre-c-symplectic root: the point (r0 - 1, 1).
  bool has_leaf_point() const { return has_point(r0 - 1, 1); }

  /// No points in the s = 1 column (holds for products of odd spheres).
  bool row_s1_empty() const {
    for (const auto& p : points)
      if (p.s == 1) return false;
    return true;
  }
};

// Line format:
//   r0 <n>
//   point <s> <t> [label] [model-file]
//   edge <s1> <t1> <s2> <t2>
//   # comment
inline HasseDiagram parse_hasse(std::istream& in) {
  HasseDiagram h;
  std::string line;
  int line_no = 0;
  bool saw_r0 = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "r0") {
      if (!(ls >> h.r0)) throw parse_error("expected 'r0 <n>'", line_no);
      saw_r0 = true;
    } else if (head == "point") {
      HasseDiagram::Point p;
      if (!(ls >> p.s >> p.t)) throw parse_error("expected 'point <s> <t> [label] [model]'", line_no);
      ls >> p.label >> p.model_file;
      h.points.push_back(std::move(p));
    } else if (head == "edge") {
      HasseDiagram::Edge e;
      if (!(ls >> e.s1 >> e.t1 >> e.s2 >> e.t2)) throw parse_error("expected 'edge <s1> <t1> <s2> <t2>'", line_no);
      h.edges.push_back(e);
    } else {
      throw parse_error("unknown statement '" + head + "'", line_no);
    }
  }
  if (!saw_r0) throw parse_error("missing 'r0' line");
  return h;
}

inline HasseDiagram load_hasse(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open diagram file '" + path + "'");
  return parse_hasse(in);
}

inline std::string format_hasse(const HasseDiagram& h) {
  std::ostringstream out;
  out << "r0 " << h.r0 << "\n";
  for (const auto& p : h.points) {
    out << "point " << p.s << " " << p.t;
    if (!p.label.empty()) out << " " << p.label;
    if (!p.model_file.empty()) out << " " << p.model_file;
    out << "\n";
  }
  for (const auto& e : h.edges) out << "edge " << e.s1 << " " << e.t1 << " " << e.s2 << " " << e.t2 << "\n";
  return out.str();
}

inline std::string hasse_to_dot(const HasseDiagram& h) {
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n";
  for (const auto& p : h.points) {
    out << "  \"" << p.s << "," << p.t << "\" [label=\"";
    if (!p.label.empty()) out << p.label << "\\n";
    out << "(" << p.s << "," << p.t << ")\"];\n";
  }
  for (const auto& e : h.edges)
    out << "  \"" << e.s1 << "," << e.t1 << "\" -> \"" << e.s2 << "," << e.t2 << "\";\n";
  out << "}\n";
  return out.str();
}

/// A validated extension with finite total cohomology certifies that the
/// fiber admits an almost-free torus of the base rank, so r0 >= base count.
inline bool verify_r0_witness(const KSExtension& ext, const FinitenessOptions& opts = {}) {
  for (const auto& b : ext.base_names)
    if (ext.total.algebra()->degree(ext.total.algebra()->index_of(b)) != 2)
      throw precondition_error("r0 witnesses need degree-2 base generators");
  return finiteness(ext.total, opts).status == Finiteness::Finite;
}

/// Odd-minus-even generator count; an upper bound for r0 of elliptic models.
inline long long euler_homotopy_bound(const Model& m) {
  long long odd = 0, even = 0;
  for (std::size_t i = 0; i < m.algebra()->size(); ++i)
    (m.algebra()->is_odd(i) ? odd : even) += 1;
  return odd - even;
}

/// Verifies one order step: `factorization` must present `upper` as a KS
/// extension whose fiber is `lower` (zero new generators degenerate to
/// equality), with both ends of verified finite cohomology when they carry
/// even generators.
inline bool verify_order(const Model& lower, const Model& upper, const KSExtension& factorization,
                         std::vector<std::string>* diagnostics = nullptr) {
  auto note = [&](const std::string& s) {
    if (diagnostics) diagnostics->push_back(s);
  };
  if (!(factorization.fiber == lower)) {
    note("factorization fiber does not equal the lower model");
    return false;
  }
  if (!(factorization.total == upper)) {
    note("factorization total does not equal the upper model");
    return false;
  }
  auto has_even = [](const Model& m) {
    for (std::size_t i = 0; i < m.algebra()->size(); ++i)
      if (!m.algebra()->is_odd(i)) return true;
    return false;
  };
  if (has_even(lower) && finiteness(lower).status != Finiteness::Finite) {
    note("lower model is not verified finite");
    return false;
  }
  if (has_even(upper) && finiteness(upper).status != Finiteness::Finite) {
    note("upper model is not verified finite");
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Pure full-torus completion
// ---------------------------------------------------------------------------

struct CompletionResult {
  bool found = false;
  std::optional<KSExtension> extension;
  std::string diagnostics;
};

namespace detail {

/// Deterministic low-height coefficient stream; index mixing keeps distinct
/// (seed, sample, generator) triples spread over the table.
inline Rat sample_coefficient(std::uint64_t seed, std::uint64_t sample, std::uint64_t slot) {
  static const Rat table[] = {Rat(1),  Rat(-1), Rat(2),  Rat(1, 2), Rat(3),
                              Rat(-2), Rat(5),  Rat(2, 3), Rat(-3), Rat(1, 3)};
  std::uint64_t h = seed * 0x9e3779b97f4a7c15ULL + sample * 0xbf58476d1ce4e5b9ULL + slot * 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return table[h % 10];
}

}  // namespace detail

/// Adjoins one more degree-2 base generator to a finite partial extension of
/// a zero-differential odd fiber and searches deterministic coefficient
/// samples for pure adjustments that keep the total finite. Success is
/// generic when a completion exists; exhausting the budget never claims
/// nonexistence.
inline CompletionResult complete_to_full_torus(const Model& fiber, const KSExtension& partial,
                                               std::uint64_t seed, int budget = 64) {
  for (std::size_t i = 0; i < fiber.algebra()->size(); ++i) {
    if (!fiber.algebra()->is_odd(i)) throw precondition_error("fiber must be generated in odd degrees");
    if (!fiber.image(i).is_zero()) throw precondition_error("fiber must carry the zero differential");
  }
  if (!(partial.fiber == fiber)) throw precondition_error("partial extension is not over the given fiber");
  {
    FinitenessOptions fast;
    fast.certify_only = true;
    fast.cross_check = false;
    if (!partial.base_names.empty() && !verify_r0_witness(partial, fast))
      throw precondition_error("partial extension is not verified finite");
  }

  const std::size_t n = fiber.algebra()->size();
  if (n >= 62) throw resource_error("completion search supports at most 61 fiber generators");
  std::string new_name = "t" + std::to_string(partial.base_names.size() + 1);
  while (partial.total.algebra()->find(new_name)) new_name += "x";

  std::vector<Generator> base_gens;
  for (const auto& b : partial.base_names) base_gens.push_back({b, 2});
  base_gens.push_back({new_name, 2});

  CompletionResult res;
  FinitenessOptions fast;
  fast.certify_only = true;
  fast.cross_check = false;
  const std::uint64_t all_mask = n >= 63 ? ~0ULL : ((1ULL << n) - 1);
  int tried = 0;
  for (int sample = 0; sample < budget; ++sample, ++tried) {
    // sample 0 activates every generator; later samples cycle through the
    // activation masks so forced-zero adjustments are eventually respected
    std::uint64_t mask = all_mask - (static_cast<std::uint64_t>(sample) % (all_mask + 1));
    if (mask == 0) mask = all_mask;
    std::map<std::string, Element> images;
    try {
      std::vector<Generator> gens = fiber.algebra()->gens();
      for (const auto& b : base_gens) gens.push_back(b);
      AlgebraPtr alg = FreeGCA::make(gens);
      Element tn = Element::generator(alg, alg->index_of(new_name));
      for (std::size_t i = 0; i < n; ++i) {
        Element img = embed(partial.total.image(fiber.algebra()->name(i)), alg);
        if (mask & (1ULL << i)) {
          Rat c = detail::sample_coefficient(seed, static_cast<std::uint64_t>(sample), i);
          long long power = (fiber.algebra()->degree(i) + 1) / 2;
          img = img + (c * tn.pow(static_cast<unsigned>(power)));
        }
        images.insert_or_assign(fiber.algebra()->name(i), img);
      }
      KSExtension ext = ks_extend(fiber, base_gens, images);
      if (verify_r0_witness(ext, fast)) {
        res.found = true;
        res.extension = std::move(ext);
        res.diagnostics = "completed with sample " + std::to_string(sample);
        return res;
      }
    } catch (const error&) {
      continue;  // differential or congruence failure for this sample
    }
  }
  res.diagnostics = "budget of " + std::to_string(budget) + " samples exhausted (" +
                    std::to_string(tried) + " tried); existence undetermined";
  return res;
}

}  // namespace csymp

#endif
