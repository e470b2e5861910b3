#ifndef CSYMP_MODEL_IO_HPP
#define CSYMP_MODEL_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "differential.hpp"

namespace csymp {

// Model file format, one statement per line:
//   gen <name> <degree>          declaration order = generator order
//   d <name> = <element text>    omitted generators have zero differential
//   # comment
// Duplicate generator names and images of the wrong degree are rejected with
// line-numbered errors.

inline Model parse_model(std::istream& in) {
  std::vector<Generator> gens;
  std::vector<std::pair<int, std::pair<std::string, std::string>>> images;  // line, (gen, text)
  std::string line;
  int line_no = 0;
  bool gens_done = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = line;
    auto hash = s.find('#');
    if (hash != std::string::npos) s.erase(hash);
    std::istringstream ls(s);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "gen") {
      if (gens_done) throw parse_error("'gen' after 'd' statements", line_no);
      Generator g;
      if (!(ls >> g.name >> g.degree)) throw parse_error("expected 'gen <name> <degree>'", line_no);
      std::string extra;
      if (ls >> extra) throw parse_error("trailing input after generator declaration", line_no);
      if (g.degree < 1) throw parse_error("generator degree must be >= 1", line_no);
      for (const auto& h : gens)
        if (h.name == g.name) throw parse_error("duplicate generator '" + g.name + "'", line_no);
      gens.push_back(std::move(g));
    } else if (head == "d") {
      gens_done = true;
      std::string name, eq;
      if (!(ls >> name >> eq) || eq != "=") throw parse_error("expected 'd <name> = <element>'", line_no);
      std::string rest;
      std::getline(ls, rest);
      images.push_back({line_no, {name, rest}});
    } else {
      throw parse_error("unknown statement '" + head + "'", line_no);
    }
  }
  if (gens.empty()) throw parse_error("model declares no generators");
  AlgebraPtr alg = FreeGCA::make(std::move(gens));
  Model m(alg);
  std::vector<bool> seen(alg->size(), false);
  for (const auto& [ln, kv] : images) {
    try {
      auto idx = alg->find(kv.first);
      if (!idx) throw parse_error("differential for unknown generator '" + kv.first + "'");
      if (seen[*idx]) throw parse_error("duplicate differential for '" + kv.first + "'");
      seen[*idx] = true;
      m.set_image(kv.first, parse_element(alg, kv.second));
    } catch (const parse_error& e) {
      throw parse_error(e.what(), ln);
    } catch (const error& e) {
      throw parse_error(e.what(), ln);
    }
  }
  return m;
}

inline Model parse_model_text(const std::string& text) {
  std::istringstream in(text);
  return parse_model(in);
}

inline Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open model file '" + path + "'");
  try {
    return parse_model(in);
  } catch (const parse_error& e) {
    throw parse_error(std::string(e.what()) + " [" + path + "]", 0);
  }
}

inline std::string format_model(const Model& m) {
  std::ostringstream out;
  const auto& alg = m.algebra();
  for (std::size_t i = 0; i < alg->size(); ++i)
    out << "gen " << alg->name(i) << " " << alg->degree(i) << "\n";
  for (std::size_t i = 0; i < alg->size(); ++i)
    if (!m.image(i).is_zero()) out << "d " << alg->name(i) << " = " << m.image(i).str() << "\n";
  return out.str();
}

}  // namespace csymp

#endif
