#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sheafkit/poly.hpp"

namespace sheafkit {

// Numerical class of a pair piece: Hilbert polynomial d*m + chi, plus whether
// the section factors through it.
struct PairClass {
  int d = 1;
  int chi = 0;
  bool has_section = false;

  std::string to_string() const;  // "(d,chi,section)" / "(d,chi,no-section)"
  bool operator==(const PairClass& o) const { return d == o.d && chi == o.chi && has_section == o.has_section; }
};

// Achievable chi(O_C) for connected Cohen-Macaulay curves of degree e in P^3.
struct CurveChiTable {
  std::map<int, std::set<int>> chis;
  static CurveChiTable defaults();  // {1:{1}, 2:{1}, 3:{0,1}, 4:{-2,0,1}}
};

// A strictly semistable decomposition sub + quotient. The record is normalized
// so that `sub` is the piece without the section.
struct Wall {
  Scalar alpha;
  PairClass sub;
  PairClass quotient;
  bool admissible = false;
  std::string reason;
};

// True iff some connected CM curve of degree e <= piece.d has chi'' with
// chi''/e <= piece.chi/piece.d, i.e. its structure sheaf can be the image of the
// section without destabilizing. Throws Argument when a degree 1..piece.d is
// missing from the table.
bool section_admissible(const PairClass& piece, const CurveChiTable& table);

// All candidate walls for pairs with Hilbert polynomial d*m + chi, sub-pieces
// ranging over chi_1 in [chi_lo, chi_hi]; sorted by (alpha, sub.d, sub.chi).
std::vector<Wall> walls(int d, int chi, int chi_lo, int chi_hi, const CurveChiTable& table = CurveChiTable::defaults());
// Default window [chi - 2d, chi + 2d].
std::vector<Wall> walls(int d, int chi, const CurveChiTable& table = CurveChiTable::defaults());
std::vector<Wall> admissible_walls(const std::vector<Wall>& all);

struct ExtensionOrder {
  std::string side;  // "alpha > a" or "alpha < a"
  PairClass sub;
  PairClass quotient;
  std::string display;  // 0 -> (0,H) -> (1,F) -> (1,G) -> 0 with classes filled in
};

struct Crossing {
  Wall wall;
  ExtensionOrder above;  // stable just above the wall
  ExtensionOrder below;  // the flipped extension, stable just below
};

std::vector<Crossing> crossing_report(int d, int chi, const CurveChiTable& table = CurveChiTable::defaults());

}  // namespace sheafkit
