// Command-line front end: parse model files, run the library operations,
// replay the catalog, emit reports and DOT.
//
// Exit codes: 0 = all checks pass, 1 = a mathematical expectation failed,
// 2 = input or parse error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "csymp/catalog.hpp"
#include "csymp/pairing.hpp"

using namespace csymp;

namespace {

int g_exit = 0;

void math_fail() { g_exit = std::max(g_exit, 1); }

Model load(const std::string& path) { return load_model(path); }

std::vector<long long> parse_tuple_args(const std::vector<long long>& ks) { return ks; }

void cmd_betti(const std::string& file, long long from, long long to, bool machine) {
  Model m = load(file);
  if (to < 0) to = formal_dimension(m) + default_window(m);
  if (from < 0) from = 0;
  Cochain c(m);
  for (long long n = from; n <= to; ++n) {
    if (machine)
      std::cout << "betti." << n << "=" << c.betti(n) << "\n";
    else
      std::cout << n << "\t" << c.betti(n) << "\n";
  }
}

void cmd_fd(const std::string& file, bool machine) {
  std::cout << (machine ? "fd=" : "") << formal_dimension(load(file)) << "\n";
}

void cmd_finite(const std::string& file, long long bound, bool machine) {
  FinitenessOptions opts;
  opts.bound = bound;
  auto rep = finiteness(load(file), opts);
  if (machine) {
    std::cout << "finite=" << to_string(rep.status) << "\n";
  } else {
    std::cout << "verdict: " << to_string(rep.status) << "\n";
    std::cout << rep.diagnostics << "\n";
    for (std::size_t i = 0; i < rep.pure_parts.size(); ++i)
      std::cout << "pure part " << i + 1 << ": " << rep.pure_parts[i].str() << "\n";
  }
}

void cmd_csym(const std::string& file, const std::string& samples, bool machine) {
  CsymOptions opts;
  if (!samples.empty()) {
    opts.samples.clear();
    std::istringstream ss(samples);
    std::string tok;
    while (std::getline(ss, tok, ',')) opts.samples.push_back(std::stoll(tok));
  }
  auto v = is_c_symplectic(load(file), opts);
  std::cout << "status=" << to_string(v.status);
  if (v.witness) std::cout << " witness_power=" << v.witness->power;
  std::cout << "\n";
  if (!machine) {
    if (v.witness) std::cout << "omega = " << v.witness->omega.str() << "\n";
    if (!v.diagnostics.empty()) std::cout << v.diagnostics << "\n";
  }
}

void cmd_criterion(const std::vector<long long>& ks) {
  auto res = pre_csymplectic_criterion(DegreeTuple(ks));
  if (res.holds)
    std::cout << "pre-c-symplectic: yes\n";
  else
    std::cout << "no (" << res.reason << ")\n";
}

void cmd_necessary(const std::vector<long long>& ks) {
  std::cout << "necessary condition: " << (necessary_condition(DegreeTuple(ks)) ? "holds" : "fails")
            << "\n";
}

void cmd_witness(const std::vector<long long>& ks, const std::string& out_file) {
  Model m = witness_model(DegreeTuple(ks));
  std::string text = format_model(m);
  if (out_file.empty() || out_file == "-") {
    std::cout << text;
  } else {
    std::ofstream out(out_file);
    if (!out) throw parse_error("cannot write '" + out_file + "'");
    out << text;
    std::cout << "wrote " << out_file << "\n";
  }
}

void cmd_lefschetz(const std::string& file) {
  Model m = load(file);
  auto v = is_c_symplectic(m);
  if (v.status != CsymStatus::CSymplectic) {
    std::cout << "model is not certified c-symplectic (" << to_string(v.status)
              << "); no Lefschetz class to test\n";
    math_fail();
    return;
  }
  auto rep = hard_lefschetz(m, v.witness->omega, formal_dimension(m));
  for (const auto& s : rep.steps) {
    std::cout << "k=" << s.k << " H^" << (formal_dimension(m) / 2 - s.k) << "->H^"
              << (formal_dimension(m) / 2 + s.k) << " dims " << s.dim_low << "/" << s.dim_high
              << ": " << (s.pass ? "pass" : "FAIL");
    if (!s.pass) {
      std::cout << " kernel:";
      for (const auto& kelem : s.kernel) std::cout << " [" << kelem.str() << "]";
    }
    std::cout << "\n";
  }
  std::cout << "hard Lefschetz: " << (rep.pass ? "holds" : "fails") << "\n";
}

void cmd_toomer(const std::string& file) {
  Model m = load(file);
  std::cout << "toomer=" << toomer(m, formal_dimension(m)) << "\n";
}

void cmd_lie(const std::string& spec) {
  LieType g = parse_lie_type(spec);
  bool pre = classify(g);
  std::cout << g.str() << " " << rational_type(g).str() << ": pre-c-symplectic: "
            << (pre ? "yes" : "no") << "\n";
}

void cmd_pairing(const std::string& mode, long long bound, const std::vector<long long>& vals) {
  if (mode == "brute") {
    std::cout << "partition with all sums <= " << bound << ": "
              << (brute_force_check(vals, bound) ? "exists" : "does not exist") << "\n";
  } else if (mode == "check") {
    bool ok = crosswise_check(vals, bound);
    std::cout << "crosswise sums:";
    for (std::size_t i = 0; i < vals.size() / 2; ++i)
      std::cout << " " << vals[i] + vals[vals.size() - 1 - i];
    std::cout << "\nall <= " << bound << ": " << (ok ? "yes" : "no") << "\n";
  } else {
    throw parse_error("pairing mode must be 'check' or 'brute'");
  }
}

void cmd_hasse(const std::string& mode, const std::string& file) {
  HasseDiagram h = load_hasse(file);
  if (mode == "dot") {
    std::cout << hasse_to_dot(h);
    return;
  }
  auto problems = h.validate();
  for (const auto& p : problems) std::cout << "problem: " << p << "\n";
  std::cout << "structure: " << (problems.empty() ? "valid" : "INVALID") << "\n";
  std::cout << "leaf point (r0-1,1): " << (h.has_leaf_point() ? "present" : "absent") << "\n";
  if (!problems.empty()) math_fail();
}

void print_report(const EntryReport& rep, bool machine) {
  if (machine) {
    std::cout << "entry=" << rep.id << " ok=" << (rep.ok ? "1" : "0") << "\n";
    for (const auto& [ok, text] : rep.lines)
      std::cout << "  check=" << (ok ? "pass" : "fail") << " detail=" << text << "\n";
  } else {
    std::cout << "== " << rep.id << " ==\n";
    for (const auto& [ok, text] : rep.lines)
      std::cout << (ok ? "  ok   " : "  FAIL ") << text << "\n";
  }
  if (!rep.ok) math_fail();
}

void cmd_catalog(const std::string& mode, const std::string& id, const std::string& dir, bool machine) {
  Catalog cat(dir);
  if (mode == "list") {
    for (const auto& i : cat.ids()) std::cout << i << "\n";
  } else if (mode == "run") {
    print_report(cat.run(id), machine);
  } else if (mode == "run-all") {
    int bad = 0;
    for (const auto& rep : cat.run_all()) {
      print_report(rep, machine);
      if (!rep.ok) ++bad;
    }
    std::cout << (bad == 0 ? "catalog: all entries pass\n"
                           : "catalog: " + std::to_string(bad) + " entries FAILED\n");
  } else {
    throw parse_error("catalog mode must be list, run or run-all");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Sullivan-model calculator for c-symplectic Borel constructions"};
  app.require_subcommand(1);
  app.fallthrough();
  bool machine = false;
  app.add_flag("--machine", machine, "line-oriented key=value output");

  std::string file, out_file, samples, lie_spec, mode, id;
  std::string catalog_dir = "catalog";
  long long from = -1, to = -1, bound = -1;
  std::vector<long long> ks, vals;

  auto* c_betti = app.add_subcommand("betti", "Betti table of a model file");
  c_betti->add_option("file", file)->required();
  c_betti->add_option("--from", from);
  c_betti->add_option("--to", to);

  auto* c_fd = app.add_subcommand("fd", "formal dimension of a model file");
  c_fd->add_option("file", file)->required();

  auto* c_finite = app.add_subcommand("finite", "finiteness verdict with diagnostics");
  c_finite->add_option("file", file)->required();
  c_finite->add_option("--bound", bound);

  auto* c_csym = app.add_subcommand("csym", "c-symplectic verdict");
  c_csym->add_option("file", file)->required();
  c_csym->add_option("--samples", samples, "comma-separated sample points for several classes");

  auto* c_crit = app.add_subcommand("criterion", "odd-sphere criterion on a degree tuple");
  c_crit->add_option("degrees", ks)->required()->expected(-1);

  auto* c_nec = app.add_subcommand("necessary", "weak degree condition on a tuple");
  c_nec->add_option("degrees", ks)->required()->expected(-1);

  auto* c_wit = app.add_subcommand("witness", "emit the Borel witness model for a tuple");
  c_wit->add_option("degrees", ks)->required()->expected(-1);
  c_wit->add_option("-o,--output", out_file);

  auto* c_lef = app.add_subcommand("lefschetz", "hard Lefschetz report");
  c_lef->add_option("file", file)->required();

  auto* c_too = app.add_subcommand("toomer", "word-length invariant of the top class");
  c_too->add_option("file", file)->required();

  auto* c_lie = app.add_subcommand("lie", "classify a simple group type");
  c_lie->add_subcommand("classify")->add_option("type", lie_spec)->required();

  auto* c_pair = app.add_subcommand("pairing", "pair-partition bounds");
  c_pair->add_option("mode", mode)->required()->check(CLI::IsMember({"check", "brute"}));
  c_pair->add_option("bound", bound)->required();
  c_pair->add_option("values", vals)->required()->expected(-1);

  auto* c_hasse = app.add_subcommand("hasse", "diagram checks and DOT export");
  c_hasse->add_option("mode", mode)->required()->check(CLI::IsMember({"verify", "dot"}));
  c_hasse->add_option("file", file)->required();

  auto* c_cat = app.add_subcommand("catalog", "replay recorded models and expectations");
  c_cat->add_option("mode", mode)->required()->check(CLI::IsMember({"list", "run", "run-all"}));
  c_cat->add_option("id", id);
  c_cat->add_option("--dir", catalog_dir);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_betti) cmd_betti(file, from, to, machine);
    else if (*c_fd) cmd_fd(file, machine);
    else if (*c_finite) cmd_finite(file, bound, machine);
    else if (*c_csym) cmd_csym(file, samples, machine);
    else if (*c_crit) cmd_criterion(parse_tuple_args(ks));
    else if (*c_nec) cmd_necessary(ks);
    else if (*c_wit) cmd_witness(ks, out_file);
    else if (*c_lef) cmd_lefschetz(file);
    else if (*c_too) cmd_toomer(file);
    else if (*c_lie) cmd_lie(lie_spec);
    else if (*c_pair) cmd_pairing(mode, bound, vals);
    else if (*c_hasse) cmd_hasse(mode, file);
    else if (*c_cat) {
      if (mode == "run" && id.empty()) throw parse_error("catalog run needs an id");
      cmd_catalog(mode, id, catalog_dir, machine);
    }
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return g_exit;
}
