#ifndef CSYMP_CATALOG_HPP
#define CSYMP_CATALOG_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lie.hpp"
#include "toral.hpp"

namespace csymp {

/// One replayable catalog entry: a model, diagram or degree tuple plus a list
/// of expectations, each carrying a source annotation that must resolve in
/// the registry file. Entries are plain data so transcription stays diffable.
struct CatalogEntry {
  std::string id;
  std::optional<std::string> model_file;
  std::optional<std::string> hasse_file;
  std::optional<std::vector<long long>> tuple;

  struct Expectation {
    std::string body;
    std::string cite;
    int line = 0;
  };
  std::vector<Expectation> expectations;
};

struct EntryReport {
  std::string id;
  bool ok = true;
  std::vector<std::pair<bool, std::string>> lines;

  void add(bool line_ok, const std::string& text) {
    ok = ok && line_ok;
    lines.push_back({line_ok, text});
  }
};

class Catalog {
 public:
  explicit Catalog(std::string dir) : dir_(std::move(dir)) {
    namespace fs = std::filesystem;
    fs::path sources = fs::path(dir_) / "sources.txt";
    if (fs::exists(sources)) {
      std::ifstream in(sources.string());
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw parse_error("sources.txt: expected 'slug: description'");
        sources_[trim(line.substr(0, colon))] = trim(line.substr(colon + 1));
      }
    }
    for (const auto& de : fs::directory_iterator(dir_)) {
      if (de.path().extension() != ".expect") continue;
      CatalogEntry e = parse_entry(de.path().string());
      e.id = de.path().stem().string();
      entries_[e.id] = std::move(e);
    }
    if (entries_.empty()) throw parse_error("no catalog entries under '" + dir_ + "'");
  }

  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    for (const auto& [id, e] : entries_) out.push_back(id);
    return out;  // std::map iteration is already sorted
  }

  const CatalogEntry& entry(const std::string& id) const {
    auto it = entries_.find(id);
    if (it == entries_.end()) throw precondition_error("unknown catalog id '" + id + "'");
    return it->second;
  }

  const Model& model_of(const std::string& id) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);  // entries may replay concurrently
    auto it = model_cache_.find(id);
    if (it != model_cache_.end()) return it->second;
    const CatalogEntry& e = entry(id);
    if (!e.model_file) throw precondition_error("catalog entry '" + id + "' has no model");
    Model m = load_model((std::filesystem::path(dir_) / *e.model_file).string());
    return model_cache_.emplace(id, std::move(m)).first->second;
  }

  HasseDiagram hasse_of(const std::string& id) const {
    const CatalogEntry& e = entry(id);
    if (!e.hasse_file) throw precondition_error("catalog entry '" + id + "' has no diagram");
    return load_hasse((std::filesystem::path(dir_) / *e.hasse_file).string());
  }

  EntryReport run(const std::string& id) const {
    const CatalogEntry& e = entry(id);
    EntryReport rep;
    rep.id = id;
    for (const auto& ex : e.expectations) {
      try {
        run_expectation(e, ex, rep);
      } catch (const error& err) {
        rep.add(false, ex.body + ": error: " + err.what());
      }
    }
    return rep;
  }

  std::vector<EntryReport> run_all() const {
    std::vector<EntryReport> out;
    for (const auto& [id, e] : entries_) out.push_back(run(id));
    return out;
  }

 private:
  static std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
  }

  CatalogEntry parse_entry(const std::string& path) const {
    CatalogEntry e;
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string head;
      if (!(ls >> head)) continue;
      if (head == "model") {
        std::string f;
        ls >> f;
        e.model_file = f;
      } else if (head == "hasse") {
        std::string f;
        ls >> f;
        e.hasse_file = f;
      } else if (head == "tuple") {
        std::vector<long long> ks;
        long long k;
        while (ls >> k) ks.push_back(k);
        e.tuple = ks;
      } else if (head == "expect") {
        std::string rest;
        std::getline(ls, rest);
        rest = trim(rest);
        auto cite_pos = rest.rfind("cite=");
        if (cite_pos == std::string::npos)
          throw parse_error("expectation without a source annotation", line_no);
        CatalogEntry::Expectation ex;
        ex.body = trim(rest.substr(0, cite_pos));
        ex.cite = trim(rest.substr(cite_pos + 5));
        ex.line = line_no;
        if (!sources_.count(ex.cite))
          throw parse_error("unknown source slug '" + ex.cite + "'", line_no);
        e.expectations.push_back(std::move(ex));
      } else {
        throw parse_error("unknown statement '" + head + "' in " + path, line_no);
      }
    }
    return e;
  }

  static std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
      if (c == sep) {
        out.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
  }

  static std::string kv(const std::vector<std::string>& toks, const std::string& key) {
    for (const auto& t : toks)
      if (t.rfind(key + "=", 0) == 0) return t.substr(key.size() + 1);
    return "";
  }

  void run_expectation(const CatalogEntry& e, const CatalogEntry::Expectation& ex,
                       EntryReport& rep) const {
    std::istringstream ls(ex.body);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty()) throw parse_error("empty expectation");
    const std::string& op = toks[0];

    auto model = [&]() -> const Model& { return model_of(e.id); };
    auto elem = [&](const std::string& text) { return parse_element(model().algebra(), text); };

    if (op == "d2") {
      auto d2 = check_d_squared(model());
      if (toks.at(1) == "pass") {
        rep.add(d2.ok, d2.ok ? "d2: pass" : "d2: FAIL on " + d2.failures.front().first + " (expected pass)");
      } else {
        std::string gen = toks.at(2);
        bool hit = !d2.ok;
        std::string who;
        for (auto& [g, r] : d2.failures) who += (who.empty() ? "" : ",") + g;
        bool named = false;
        for (auto& [g, r] : d2.failures) named |= (g == gen);
        rep.add(hit && named, "d2: fails on {" + who + "}" + (hit && named ? " as recorded" : " (expected failure on " + gen + ")"));
      }
    } else if (op == "fd") {
      long long want = std::stoll(toks.at(1));
      long long got = formal_dimension(model());
      rep.add(got == want, "fd: " + std::to_string(got) + (got == want ? "" : " (expected " + toks[1] + ")"));
    } else if (op == "minimal") {
      bool want = toks.at(1) == "true";
      bool got = is_minimal(model());
      rep.add(got == want, std::string("minimal: ") + (got ? "true" : "false"));
    } else if (op == "finite") {
      auto fin = finiteness(model());
      std::string got = to_string(fin.status);
      rep.add(got == toks.at(1), "finite: " + got + (got == toks[1] ? "" : " (expected " + toks[1] + "; " + fin.diagnostics + ")"));
    } else if (op == "csym") {
      auto v = is_c_symplectic(model());
      std::string got = to_string(v.status);
      bool ok = got == toks.at(1);
      std::string text = "csym: status=" + got;
      if (v.witness) text += " witness_power=" + std::to_string(v.witness->power);
      std::string want_power = kv(toks, "power");
      if (ok && !want_power.empty())
        ok = v.witness && v.witness->power == std::stoll(want_power);
      rep.add(ok, text + (ok ? "" : " (expected " + ex.body.substr(5) + ")"));
    } else if (op == "betti") {
      long long deg = std::stoll(toks.at(1));
      int want = std::stoi(toks.at(2));
      int got = betti(model(), deg);
      rep.add(got == want, "betti(" + toks[1] + "): " + std::to_string(got) +
                               (got == want ? "" : " (expected " + toks[2] + ")"));
    } else if (op == "nonzero") {
      auto r = is_coboundary(model(), elem(toks.at(1)));
      rep.add(!r.exact, "class [" + toks[1] + "]: " + (r.exact ? "exact (expected nonzero)" : "nonzero"));
    } else if (op == "exact") {
      auto r = is_coboundary(model(), elem(toks.at(1)));
      bool ok = r.exact;
      std::string text = "class [" + toks[1] + "]: " + (r.exact ? "exact" : "not exact (expected exact)");
      std::string want_w = kv(toks, "witness");
      if (ok && !want_w.empty()) {
        Element w = elem(want_w);
        ok = model().apply(w) == elem(toks.at(1));
        text += ok ? ", recorded witness checks" : ", recorded witness does NOT check";
      }
      if (ok && r.witness) {
        bool honest = model().apply(*r.witness) == elem(toks.at(1));
        ok = ok && honest;
        if (!honest) text += ", computed witness dishonest";
      }
      rep.add(ok, text);
    } else if (op == "not_cocycle") {
      Element x = elem(toks.at(1));
      Element dx = model().apply(x);
      rep.add(!dx.is_zero(), toks[1] + ": D = " + dx.str() + (dx.is_zero() ? " (expected non-cocycle)" : ""));
    } else if (op == "cohomologous") {
      Element a = elem(toks.at(1));
      Element b = elem(toks.at(2));
      auto diff = is_coboundary(model(), a - b);
      bool ok = diff.exact;
      std::string text = "[" + toks[1] + "] = [" + toks[2] + "]: " + (ok ? "yes" : "NO");
      bool want_nonzero = toks.size() > 3 && toks[3] == "nonzero";
      if (ok && want_nonzero) {
        bool nz = !is_coboundary(model(), a).exact;
        ok = nz;
        text += nz ? ", nonzero" : ", but the class vanishes";
      }
      rep.add(ok, text);
    } else if (op == "relation") {
      std::vector<std::pair<std::string, Element>> reps;
      std::size_t i = 1;
      for (; i < toks.size() && toks[i] != ":"; ++i) {
        auto eq = toks[i].find('=');
        if (eq == std::string::npos) throw parse_error("relation bindings must be name=element");
        reps.push_back({toks[i].substr(0, eq), elem(toks[i].substr(eq + 1))});
      }
      if (i >= toks.size()) throw parse_error("relation expectation missing ':'");
      std::string poly;
      for (++i; i < toks.size(); ++i) poly += toks[i];
      bool ok = verify_relation(model(), reps, poly);
      rep.add(ok, "relation " + poly + ": " + (ok ? "holds" : "FAILS"));
    } else if (op == "lefschetz") {
      const Model& m = model();
      auto h2 = cohomology_slice(m, 2);
      if (h2.dim() != 1) throw precondition_error("lefschetz expectation needs a unique degree-2 class");
      auto repre = hard_lefschetz(m, h2.representatives[0], formal_dimension(m));
      if (toks.at(1) == "pass") {
        std::string bad;
        for (const auto& s : repre.steps)
          if (!s.pass) bad += (bad.empty() ? "" : ",") + std::to_string(s.k);
        rep.add(repre.pass, repre.pass ? "lefschetz: pass at every k" : "lefschetz: FAIL at k in {" + bad + "}");
      } else if (toks.at(1) == "fails") {
        // a specific failing step with a recorded kernel class; other steps
        // are unconstrained
        long long want_k = std::stoll(kv(toks, "k"));
        Element kern = elem(kv(toks, "kernel_contains"));
        bool found = false;
        for (const auto& s : repre.steps) found |= (s.k == want_k && !s.pass);
        bool ok = found;
        if (ok) {
          auto hi = cohomology_slice(m, formal_dimension(m) / 2 + want_k);
          auto coords = express_class(m, kern * h2.representatives[0].pow(static_cast<unsigned>(want_k)), hi);
          bool dies = true;
          for (const auto& cc : coords) dies &= (cc == 0);
          ok = dies && !is_coboundary(m, kern).exact;
        }
        rep.add(ok, "lefschetz: FAIL at k=" + std::to_string(want_k) + " kernel=[" +
                        kv(toks, "kernel_contains") + "]" + (ok ? "" : " (not reproduced)"));
      } else {
        long long want_k = std::stoll(kv(toks, "k"));
        std::string kern_text = kv(toks, "kernel_contains");
        Element kern = elem(kern_text);
        long long fails = 0, fail_k = -1;
        for (const auto& s : repre.steps)
          if (!s.pass) {
            ++fails;
            fail_k = s.k;
          }
        bool ok = fails == 1 && fail_k == want_k;
        std::string text;
        if (ok) {
          // the recorded kernel class must really die under the cup power
          auto hi = cohomology_slice(m, formal_dimension(m) / 2 + want_k);
          Element omega_k = h2.representatives[0].pow(static_cast<unsigned>(want_k));
          auto coords = express_class(m, kern * omega_k, hi);
          bool dies = true;
          for (const auto& cc : coords) dies &= (cc == 0);
          bool alive = !is_coboundary(m, kern).exact;
          ok = dies && alive;
          text = "lefschetz: FAIL at k=" + std::to_string(fail_k) + " kernel=[" + kern_text + "]";
          if (!dies) text += " (recorded kernel class survives)";
          if (!alive) text += " (recorded kernel class is exact)";
        } else {
          text = "lefschetz: failing steps " + std::to_string(fails) + ", first at k=" +
                 std::to_string(fail_k) + " (expected exactly k=" + std::to_string(want_k) + ")";
        }
        rep.add(ok, text);
      }
    } else if (op == "toomer") {
      int want = std::stoi(toks.at(1));
      int got = toomer(model(), formal_dimension(model()));
      rep.add(got == want, "toomer: " + std::to_string(got) + (got == want ? "" : " (expected " + toks[1] + ")"));
    } else if (op == "criterion") {
      if (!e.tuple) throw parse_error("criterion expectation needs a tuple");
      auto res = pre_csymplectic_criterion(DegreeTuple(*e.tuple));
      bool want = toks.at(1) == "true";
      bool ok = res.holds == want;
      std::string pair_want = kv(toks, "pair");
      if (ok && !pair_want.empty()) {
        auto parts = split(pair_want, ',');
        ok = res.violation && res.violation->first == std::stoll(parts.at(0)) &&
             res.violation->second == std::stoll(parts.at(1));
      }
      rep.add(ok, std::string("criterion: ") + (res.holds ? "true" : "false (" + res.reason + ")"));
    } else if (op == "necessary") {
      if (!e.tuple) throw parse_error("necessary expectation needs a tuple");
      bool got = necessary_condition(DegreeTuple(*e.tuple));
      bool want = toks.at(1) == "true";
      rep.add(got == want, std::string("necessary: ") + (got ? "true" : "false"));
    } else if (op == "coverage") {
      std::string want = toks.at(1);
      try {
        bool got = coverage_sufficient(model());
        rep.add(want == (got ? "true" : "false"),
                std::string("coverage: ") + (got ? "true" : "false"));
      } catch (const shape_error& se) {
        rep.add(want == "shape_error", std::string("coverage: shape_error (") + se.what() + ")");
      }
    } else if (op == "normal_form") {
      auto nf = normal_form_report(model());
      std::string text = "normal_form: " + std::string(nf.ok ? "pass" : "FAIL");
      if (nf.lambda_prime) text += " pairing_scalar=" + format_rat(*nf.lambda_prime);
      for (const auto& f : nf.failures) text += "; " + f;
      rep.add(nf.ok, text);
    } else if (op == "euler_bound") {
      long long want = std::stoll(toks.at(1));
      long long got = euler_homotopy_bound(model());
      rep.add(got == want, "euler_bound: " + std::to_string(got));
    } else if (op == "ks_over" || op == "r0_witness") {
      std::string fiber_id = op == "ks_over" ? toks.at(1) : kv(toks, "fiber");
      auto base_names = split(kv(toks, "base"), ',');
      KSExtension ext = as_ks_extension(model_of(fiber_id), model(), base_names);
      bool fin = verify_r0_witness(ext);
      std::string text = op == "ks_over"
                             ? "ks extension over " + fiber_id + ": valid"
                             : "r0(" + fiber_id + ") >= " + std::to_string(base_names.size()) + ": " +
                                   (fin ? "certified" : "NOT certified");
      rep.add(op == "ks_over" ? true : fin, text);
    } else if (op == "order") {
      const Model& lower = model_of(kv(toks, "lower"));
      const Model& upper = model_of(kv(toks, "upper"));
      auto base_names = split(kv(toks, "base"), ',');
      std::vector<std::string> diag;
      KSExtension ext = as_ks_extension(lower, upper, base_names);
      bool ok = verify_order(lower, upper, ext, &diag);
      std::string text = "order " + kv(toks, "lower") + " < " + kv(toks, "upper") + ": " +
                         (ok ? "verified" : "FAILED");
      for (const auto& d : diag) text += "; " + d;
      rep.add(ok, text);
    } else if (op == "restriction") {
      auto kill = split(kv(toks, "kill"), ',');
      const Model& want = model_of(kv(toks, "equals"));
      Model got = restrict_mod(model(), kill);
      bool ok = got == want;
      rep.add(ok, "restriction mod {" + kv(toks, "kill") + "}: " + (ok ? "matches " : "does NOT match ") + kv(toks, "equals"));
    } else if (op == "hasse_valid") {
      auto problems = hasse_of(e.id).validate();
      std::string text = "hasse: " + std::string(problems.empty() ? "valid" : "INVALID");
      for (const auto& p : problems) text += "; " + p;
      rep.add(problems.empty(), text);
    } else if (op == "leaf_check") {
      bool got = hasse_of(e.id).has_leaf_point();
      bool want = toks.at(1) == "true";
      rep.add(got == want, std::string("leaf point (r0-1,1): ") + (got ? "present" : "absent"));
    } else if (op == "no_row_s1") {
      bool got = hasse_of(e.id).row_s1_empty();
      rep.add(got, std::string("column s=1: ") + (got ? "empty" : "NOT empty"));
    } else if (op == "r0_le_euler") {
      const Model& root = model_of(toks.at(1));
      auto h = hasse_of(e.id);
      long long bound = euler_homotopy_bound(root);
      rep.add(h.r0 <= bound, "r0 " + std::to_string(h.r0) + " <= homotopy Euler bound " + std::to_string(bound));
    } else if (op == "c_lower") {
      Rat want = parse_rat(toks.at(1));
      std::vector<Model> cands;
      for (const auto& cid : split(kv(toks, "candidates"), ',')) cands.push_back(model_of(cid));
      std::vector<std::string> diag;
      Rat got = c_invariant_lower(model(), cands, &diag);
      bool ok = got >= want;
      std::string text = "c >= " + format_rat(got) + (ok ? "" : " (expected at least " + toks[1] + ")");
      for (const auto& d : diag) text += "; " + d;
      rep.add(ok, text);
    } else {
      throw parse_error("unknown expectation '" + op + "'");
    }
  }

  std::string dir_;
  std::map<std::string, std::string> sources_;
  std::map<std::string, CatalogEntry> entries_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::string, Model> model_cache_;
};

}  // namespace csymp

#endif
