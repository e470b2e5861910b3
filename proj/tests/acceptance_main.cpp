// Acceptance suite: replays the recorded headline facts end to end and
// prints one pass/fail line per criterion. Exit status is nonzero when any
// criterion fails.
//
// Criterion 5 records the hard-Lefschetz claims for the two catalog models
// exactly as stated; exact computation refutes two of the sub-claims (see
// the analysis it prints), so that criterion is expected to stay red.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "csymp/catalog.hpp"
#include "csymp/pairing.hpp"

using namespace csymp;

namespace {

const char* kCatalogDir = CSYMP_CATALOG_DIR;

struct Outcome {
  bool pass = true;
  std::ostringstream notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      notes << "    failed: " << what << "\n";
    }
  }
  void note(const std::string& what) { notes << "    " << what << "\n"; }
};

bool entry_ok(const Catalog& cat, const std::string& id, Outcome& o) {
  auto rep = cat.run(id);
  for (const auto& [ok, text] : rep.lines)
    if (!ok) o.note(id + ": " + text);
  o.require(rep.ok, "catalog entry " + id);
  return rep.ok;
}

// ---- criterion bodies -----------------------------------------------------

void c1_classification(Outcome& o) {
  int checked = 0;
  for (auto fam : {LieFamily::A, LieFamily::B, LieFamily::C, LieFamily::D}) {
    int lo = fam == LieFamily::D ? 3 : 2;
    for (int r = lo; r <= 15; ++r) {
      bool expected = (fam == LieFamily::B || fam == LieFamily::C) && r % 2 == 1;
      o.require(classify({fam, r}) == expected, "classification of " + LieType{fam, r}.str());
      ++checked;
    }
  }
  o.require(classify({LieFamily::G, 2}) == false, "classification of G2");
  o.require(classify({LieFamily::F, 4}) == false, "classification of F4");
  for (int r : {6, 7, 8})
    o.require(classify({LieFamily::E, r}) == (r == 7), "classification of E" + std::to_string(r));
  o.note("checked " + std::to_string(checked + 5) + " simple types");
}

void c2_sp5(const Catalog& cat, Outcome& o) {
  for (const char* id : {"sp5.i", "sp5.ii", "sp5.iii", "sp5.iv"}) entry_ok(cat, id, o);
  o.require(pre_csymplectic_criterion(DegreeTuple({3, 7, 11, 15, 19})).holds,
            "criterion on (3,7,11,15,19)");
}

void c3_twenty(const Catalog& cat, Outcome& o) {
  for (int n = 0; n <= 20; ++n) entry_ok(cat, "twenty." + std::to_string(n), o);
  entry_ok(cat, "twenty.chain", o);
  entry_ok(cat, "rigid.35571", o);
}

void c4_pipeline(Outcome& o) {
  Model w = witness_model(DegreeTuple({3, 3, 7}));
  o.require(formal_dimension(w) == 12, "witness formal dimension 12");
  auto v = is_c_symplectic(w);
  o.require(v.status == CsymStatus::CSymplectic && v.witness && v.witness->power == 6,
            "witness verdict with top power 6");
  if (v.witness)
    o.require(!is_coboundary(w, v.witness->omega.pow(6)).exact, "re-verified [t^6] != 0");

  Model fiber = parse_model_text("gen v1 3\ngen v2 3\ngen v3 7\n");
  Model partial_total = parse_model_text(
      "gen v1 3\ngen v2 3\ngen v3 7\ngen t1 2\ngen t2 2\n"
      "d v1 = t1^2\nd v2 = t2^2\n");
  KSExtension partial = as_ks_extension(fiber, partial_total, {"t1", "t2"});
  auto res = complete_to_full_torus(fiber, partial, 2026);
  o.require(res.found, "three-torus completion found");
  if (res.found) {
    o.require(formal_dimension(res.extension->total) == 10, "completion formal dimension 10");
    auto cv = is_c_symplectic(res.extension->total);
    o.require(cv.status == CsymStatus::CSymplectic && cv.witness && cv.witness->power == 5,
              "sampled degree-2 class with nonzero 5th power");
    if (cv.witness)
      o.require(!is_coboundary(res.extension->total, cv.witness->omega.pow(5)).exact,
                "re-verified omega^5 != 0");
  }
}

void c5_lefschetz(const Catalog& cat, Outcome& o) {
  const Model& a = cat.model_of("lefschetz.a");
  const Model& b = cat.model_of("lefschetz.b");
  Element ta = parse_element(a.algebra(), "t");
  Element tb = parse_element(b.algebra(), "t");

  auto ra = hard_lefschetz(a, ta, formal_dimension(a));
  o.require(ra.pass, "recorded claim: structure a) passes at every k");
  if (!ra.pass) {
    for (const auto& s : ra.steps)
      if (!s.pass && !s.kernel.empty())
        o.note("a) fails at k=" + std::to_string(s.k) + ", kernel class [" +
               s.kernel.front().str() + "]");
    o.note("analysis: for z = v1*v2*t^2 + v3*v4 + t^5, z*t = D(v5) while no differential");
    o.note("reaches degree 10, so [z] != 0 dies under cup t^3; the claim cannot hold");
  }

  auto rb = hard_lefschetz(b, tb, formal_dimension(b));
  std::vector<long long> fail_k;
  for (const auto& s : rb.steps)
    if (!s.pass) fail_k.push_back(s.k);
  bool v1_in_kernel_at_10 = false;
  for (const auto& s : rb.steps)
    if (s.k == 10 && !s.pass) {
      auto hi = cohomology_slice(b, formal_dimension(b) / 2 + 10);
      auto coords = express_class(b, parse_element(b.algebra(), "v1") * tb.pow(10), hi);
      bool dies = true;
      for (const auto& c : coords) dies &= (c == 0);
      v1_in_kernel_at_10 = dies && !is_coboundary(b, parse_element(b.algebra(), "v1")).exact;
    }
  o.require(v1_in_kernel_at_10, "structure b) kills [v1] at k = 10");
  bool only_ten = fail_k == std::vector<long long>{10};
  o.require(only_ten, "recorded claim: structure b) passes at every k other than 10");
  if (!only_ten) {
    std::string ks;
    for (auto k : fail_k) ks += (ks.empty() ? "" : ",") + std::to_string(k);
    o.note("b) fails at k in {" + ks + "}; the k=10 kernel facts themselves verify");
  }
}

void c6_leafgap(const Catalog& cat, Outcome& o) {
  entry_ok(cat, "leafgap.x", o);
  entry_ok(cat, "leafgap.borel", o);
  auto r = pre_csymplectic_criterion(DegreeTuple({3, 3, 9, 11, 13, 15, 19}));
  o.require(!r.holds && r.violation && *r.violation == std::pair<long long, long long>{9, 11},
            "criterion certificate pair (9,11)");
}

void c7_witness_soundness(Outcome& o) {
  std::mt19937_64 rng(20260810);
  int produced = 0, attempts = 0;
  while (produced < 200 && attempts < 100000) {
    ++attempts;
    std::size_t n = 3 + 2 * (rng() % 3);  // 3, 5 or 7
    std::vector<long long> ks;
    for (std::size_t i = 0; i < n; ++i) ks.push_back(3 + 2 * static_cast<long long>(rng() % 20));
    std::sort(ks.begin(), ks.end());
    DegreeTuple k(ks);
    if (!pre_csymplectic_criterion(k).holds) continue;
    ++produced;
    Model w = witness_model(k);
    bool ok_d2 = check_d_squared(w).ok;
    bool ok_fin = finiteness(w).status == Finiteness::Finite;
    bool ok_cs = ok_fin && is_c_symplectic(w).status == CsymStatus::CSymplectic;
    if (!(ok_d2 && ok_fin && ok_cs))
      o.require(false, "witness for " + k.str() + " (d2=" + std::to_string(ok_d2) +
                           " finite=" + std::to_string(ok_fin) +
                           " csym=" + std::to_string(ok_cs) + ")");
  }
  o.require(produced == 200, "generated 200 admissible tuples");
  o.note("200 witnesses over tuples with n in {3,5,7}, degrees <= 41");
}

void c8_pairing_oracle(Outcome& o) {
  std::mt19937_64 rng(4096);
  int bad = 0;
  for (int iter = 0; iter < 5000; ++iter) {
    int n = 1 + static_cast<int>(rng() % 4);
    std::vector<long long> a;
    for (int i = 0; i < 2 * n; ++i) a.push_back(3 + 2 * static_cast<long long>(rng() % 14));
    std::sort(a.begin(), a.end());
    long long bound = 6 + static_cast<long long>(rng() % 53);
    if (brute_force_check(a, bound) != crosswise_check(a, bound)) ++bad;
  }
  o.require(bad == 0, "brute force vs crosswise on 5000 sampled tuples");
  for (long long k = 1; k <= 5; ++k) {
    std::vector<long long> s;
    for (long long d = 3; d <= 8 * k - 5; d += 4) s.push_back(d);
    s.push_back(4 * k + 1);
    std::sort(s.begin(), s.end());
    long long n = static_cast<long long>(s.size()) / 2;
    o.require(s[static_cast<std::size_t>(n - 1)] + s[static_cast<std::size_t>(n)] == 8 * k,
              "middle crosswise sum is 8k at k=" + std::to_string(k));
    o.require(!crosswise_check(s, 8 * k - 1), "bound 8k-1 fails at k=" + std::to_string(k));
    if (s.size() <= 12)
      o.require(!brute_force_check(s, 8 * k - 1), "no partition at k=" + std::to_string(k));
  }
}

void c9_linalg_oracle(const Catalog& cat, Outcome& o) {
  // independent dense rational elimination (partial pivoting by position)
  auto naive_rank = [](std::vector<std::vector<Rat>> m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size(), rk = 0;
    for (std::size_t c = 0; c < cols && rk < rows; ++c) {
      std::size_t p = rk;
      while (p < rows && m[p][c] == 0) ++p;
      if (p == rows) continue;
      std::swap(m[rk], m[p]);
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == rk || m[r][c] == 0) continue;
        Rat f = m[r][c] / m[rk][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rk][j];
      }
      ++rk;
    }
    return static_cast<int>(rk);
  };
  auto dense_d = [](const Model& model, long long n) {
    auto src = enumerate_degree_basis(model.algebra(), n);
    auto dst = enumerate_degree_basis(model.algebra(), n + 1);
    std::vector<std::vector<Rat>> m(src.dim(), std::vector<Rat>(dst.dim(), Rat(0)));
    for (std::size_t i = 0; i < src.dim(); ++i) {
      Element img = model.apply(Element::term(model.algebra(), src.basis[i], Rat(1)));
      for (const auto& [mono, c] : img.terms()) m[i][dst.index.at(mono)] = c;
    }
    return m;
  };
  constexpr std::size_t kCap = 200;  // the oracle property is stated for slices up to this size
  long long compared = 0, skipped = 0;
  for (const auto& id : cat.ids()) {
    if (!cat.entry(id).model_file) continue;
    const Model& m = cat.model_of(id);
    long long top = formal_dimension(m) + default_window(m);
    if (top < 2) top = 2;
    Cochain c(m);
    for (long long n = 0; n <= top; ++n) {
      bool small = true;
      try {
        small =
            c.slice(n - 1).dim() <= kCap && c.slice(n).dim() <= kCap && c.slice(n + 1).dim() <= kCap;
      } catch (const resource_error&) {
        small = false;
      }
      if (!small) {
        ++skipped;
        continue;
      }
      auto src = c.slice(n);
      int oracle = static_cast<int>(src.dim()) - naive_rank(dense_d(m, n)) -
                   (n >= 1 ? naive_rank(dense_d(m, n - 1)) : 0);
      if (c.betti(n) != oracle)
        o.require(false, "betti mismatch at " + id + " degree " + std::to_string(n));
      ++compared;
    }
  }
  o.note("compared " + std::to_string(compared) + " Betti numbers, skipped " +
         std::to_string(skipped) + " degrees above the stated slice cap " + std::to_string(kCap));
  o.require(compared > 1000, "comparison coverage");
}

void c10_poincare(const Catalog& cat, Outcome& o) {
  int models = 0;
  for (const auto& id : cat.ids()) {
    if (!cat.entry(id).model_file) continue;
    const Model& m = cat.model_of(id);
    FinitenessReport fin;
    try {
      fin = finiteness(m);
    } catch (const error&) {
      continue;  // outside the guard (no degree-2 framing)
    }
    if (fin.status != Finiteness::Finite) continue;
    ++models;
    long long fd = formal_dimension(m);

    std::size_t n_odd = 0;
    for (std::size_t i = 0; i < m.algebra()->size(); ++i)
      if (m.algebra()->is_odd(i)) ++n_odd;
    if (is_pure(m) && n_odd == m.algebra()->size() - n_odd) {
      // pure square models: cohomology is the polynomial quotient, whose
      // graded dimensions are exact and cheap to symmetrize
      auto pd = detail::pure_parts_of(m);
      o.require(fd % 2 == 0, id + ": even formal dimension");
      o.require(detail::quotient_slice_dim(pd, fd / 2, false) == 1,
                id + ": top quotient dimension 1");
      for (long long k = 0; 2 * k <= fd; ++k)
        o.require(detail::quotient_slice_dim(pd, k, false) ==
                      detail::quotient_slice_dim(pd, fd / 2 - k, false),
                  id + ": quotient symmetry at degree " + std::to_string(2 * k));
      continue;
    }
    auto rep = poincare_check(m, fd);
    o.require(rep.ok, id + ": duality at fd " + std::to_string(fd));
    if (!rep.ok)
      for (const auto& f : rep.failures) o.note(id + ": " + f);
  }
  o.note("checked " + std::to_string(models) + " finite catalog models");
  o.require(models >= 30, "finite-model coverage");
}

void c11_category_bound(const Catalog& cat, Outcome& o) {
  const Model& x = cat.model_of("ctable.x1");
  const Model& cand = cat.model_of("ctable.x1cand");
  Rat c = c_invariant_lower(x, {cand});
  o.require(c == Rat(5, 8), "lower bound 5/8 for the (7,7,3) product, got " + format_rat(c));
  o.require(toomer(cand, formal_dimension(cand)) == 5, "candidate word-length invariant 5");
}

void c12_hasse(const Catalog& cat, Outcome& o) {
  for (const char* id :
       {"rank1.diagram", "rank2.diagram", "rank3.s337.diagram", "rank3.mixed.diagram",
        "rank3.mixed11.diagram", "rank4.diagram", "rank5a.diagram", "rank5b.diagram", "paths.a",
        "paths.b", "paths.c", "paths.d"})
    entry_ok(cat, id, o);
  o.require(cat.hasse_of("rank3.s337.diagram").has_leaf_point(), "(3,3,7) diagram has its leaf");
  o.require(!cat.hasse_of("rank3.mixed11.diagram").has_leaf_point(),
            "the (3,3,5,9,11) variant has no (2,1) point");
  for (const char* id : {"rank3.s337.x", "rank3.s337.p4", "rank3.mixed.x", "rank3.mixed.p3",
                         "rank3.mixed.p4", "rank3.mixed.p5", "rank3.mixed.p6", "rank3.mixed11.x",
                         "rank3.mixed11.p", "rank3.mixed11.ext", "rank4.x", "rank4.p5", "rank4.p6",
                         "rank4.p7", "rank4.p9", "rank4.p10", "rank5a.x", "rank5a.c1", "rank5a.c2",
                         "rank5a.p6", "rank5a.p9", "rank5a.star", "rank5a.dstar", "rank5a.dstar.r1",
                         "rank5b.x", "rank5b.p6", "rank5b.p9", "rank5b.r", "rank5b.q", "rank5b.full",
                         "rank1.x", "rank1.cp3", "rank1.blocks", "rank1.chain5", "rank2.x",
                         "rank2.p2", "rank2.p3"})
    entry_ok(cat, id, o);
}

}  // namespace

int main() {
  Catalog cat(kCatalogDir);
  struct Check {
    int id;
    const char* name;
    double limit_s;
    std::function<void(Outcome&)> run;
  };
  std::vector<Check> checks = {
      {1, "simple-type classification over ranks 2..15", 1.0, [&](Outcome& o) { c1_classification(o); }},
      {2, "the four rank-five symplectic structures", 60.0, [&](Outcome& o) { c2_sp5(cat, o); }},
      {3, "the twenty structures, their chain and the rigid tuple", 300.0, [&](Outcome& o) { c3_twenty(cat, o); }},
      {4, "the (3,3,7) witness and its three-torus completion", 600.0, [&](Outcome& o) { c4_pipeline(o); }},
      {5, "hard Lefschetz pair as recorded", 600.0, [&](Outcome& o) { c5_lefschetz(cat, o); }},
      {6, "the seven-generator leaf-gap model", 600.0, [&](Outcome& o) { c6_leafgap(cat, o); }},
      {7, "witness soundness on 200 random tuples", 600.0, [&](Outcome& o) { c7_witness_soundness(o); }},
      {8, "partition oracle equivalence", 600.0, [&](Outcome& o) { c8_pairing_oracle(o); }},
      {9, "elimination vs naive dense oracle", 900.0, [&](Outcome& o) { c9_linalg_oracle(cat, o); }},
      {10, "duality of every finite catalog model", 900.0, [&](Outcome& o) { c10_poincare(cat, o); }},
      {11, "category lower bound 5/8", 600.0, [&](Outcome& o) { c11_category_bound(cat, o); }},
      {12, "diagram suite and point models", 900.0, [&](Outcome& o) { c12_hasse(cat, o); }},
  };

  int failures = 0;
  for (auto& c : checks) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) o.require(false, "time limit exceeded");
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " - " << c.name
              << " [" << static_cast<long long>(secs * 1000) << " ms]\n";
    std::cout << o.notes.str();
    if (!o.pass) ++failures;
  }
  std::cout << (failures == 0 ? "acceptance: all criteria pass"
                              : "acceptance: " + std::to_string(failures) + " criteria FAILED")
            << "\n";
  return failures == 0 ? 0 : 1;
}
