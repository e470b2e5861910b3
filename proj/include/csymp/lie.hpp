#ifndef CSYMP_LIE_HPP
#define CSYMP_LIE_HPP

#include <string>
#include <vector>

#include "csym.hpp"

namespace csymp {

enum class LieFamily { A, B, C, D, G, F, E };

/// A compact connected simple Lie group type, with the usual rank bounds
/// (E6/E7/E8, G2, F4; D needs rank >= 3 here so the degree list is defined).
struct LieType {
  LieFamily family;
  int rank = 0;

  void validate() const {
    switch (family) {
      case LieFamily::A:
      case LieFamily::B:
      case LieFamily::C:
        if (rank < 1) throw precondition_error("rank must be positive");
        return;
      case LieFamily::D:
        if (rank < 3) throw precondition_error("D requires rank >= 3");
        return;
      case LieFamily::G:
        if (rank != 2) throw precondition_error("G requires rank 2");
        return;
      case LieFamily::F:
        if (rank != 4) throw precondition_error("F requires rank 4");
        return;
      case LieFamily::E:
        if (rank < 6 || rank > 8) throw precondition_error("E requires rank 6, 7 or 8");
        return;
    }
    throw precondition_error("unknown family");
  }

  std::string str() const {
    static const char* names = "ABCDGFE";
    return std::string(1, names[static_cast<int>(family)]) + std::to_string(rank);
  }
};

/// Parses "C5", "E7", "b3", ...
inline LieType parse_lie_type(const std::string& text) {
  if (text.size() < 2) throw parse_error("expected a family letter followed by a rank");
  LieFamily fam;
  switch (std::toupper(static_cast<unsigned char>(text[0]))) {
    case 'A': fam = LieFamily::A; break;
    case 'B': fam = LieFamily::B; break;
    case 'C': fam = LieFamily::C; break;
    case 'D': fam = LieFamily::D; break;
    case 'G': fam = LieFamily::G; break;
    case 'F': fam = LieFamily::F; break;
    case 'E': fam = LieFamily::E; break;
    default: throw parse_error("unknown family '" + text.substr(0, 1) + "'");
  }
  int rank;
  try {
    rank = std::stoi(text.substr(1));
  } catch (...) {
    throw parse_error("bad rank in '" + text + "'");
  }
  LieType t{fam, rank};
  t.validate();
  return t;
}

/// Degrees of the odd generators of the rational cohomology, sorted.
inline DegreeTuple rational_type(const LieType& g) {
  g.validate();
  std::vector<long long> d;
  switch (g.family) {
    case LieFamily::A:
      for (int i = 1; i <= g.rank; ++i) d.push_back(2 * i + 1);
      break;
    case LieFamily::B:
    case LieFamily::C:
      for (int i = 1; i <= g.rank; ++i) d.push_back(4 * i - 1);
      break;
    case LieFamily::D:
      for (int i = 1; i <= g.rank - 1; ++i) d.push_back(4 * i - 1);
      d.push_back(2 * g.rank - 1);
      break;
    case LieFamily::G:
      d = {3, 11};
      break;
    case LieFamily::F:
      d = {3, 11, 15, 23};
      break;
    case LieFamily::E:
      if (g.rank == 6) d = {3, 9, 11, 15, 17, 23};
      else if (g.rank == 7) d = {3, 11, 15, 19, 23, 27, 35};
      else d = {3, 15, 23, 27, 35, 39, 47, 59};
      break;
  }
  std::sort(d.begin(), d.end());
  return DegreeTuple(d);
}

/// Runs the odd-sphere criterion on the rational type. The table is data and
/// the criterion is computed, so this genuinely exercises the pairing test
/// rather than a hard-coded answer.
inline bool classify(const LieType& g) {
  if (g.rank < 2) throw precondition_error("classification covers rank >= 2 only");
  return pre_csymplectic_criterion(rational_type(g)).holds;
}

}  // namespace csymp

#endif
