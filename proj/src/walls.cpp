#include "sheafkit/walls.hpp"

#include <algorithm>
#include <tuple>

namespace sheafkit {

std::string PairClass::to_string() const {
  return "(" + std::to_string(d) + "," + std::to_string(chi) + "," + (has_section ? "section" : "no-section") + ")";
}

CurveChiTable CurveChiTable::defaults() {
  CurveChiTable t;
  t.chis = {{1, {1}}, {2, {1}}, {3, {0, 1}}, {4, {-2, 0, 1}}};
  return t;
}

bool section_admissible(const PairClass& piece, const CurveChiTable& table) {
  if (!piece.has_section) throw Error(ErrorKind::Argument, "admissibility is defined for the piece carrying the section");
  for (int e = 1; e <= piece.d; ++e) {
    auto it = table.chis.find(e);
    if (it == table.chis.end())
      throw Error(ErrorKind::Argument, "curve chi table has no entry for degree " + std::to_string(e));
    for (int c : it->second)
      if (static_cast<long>(c) * piece.d <= static_cast<long>(piece.chi) * e) return true;
  }
  return false;
}

namespace {

std::string admissibility_reason(const PairClass& piece, const CurveChiTable& table) {
  for (int e = 1; e <= piece.d; ++e)
    for (int c : table.chis.at(e))
      if (static_cast<long>(c) * piece.d <= static_cast<long>(piece.chi) * e)
        return "section image can be O_C with deg C = " + std::to_string(e) + ", chi = " + std::to_string(c);
  return "no curve of degree <= " + std::to_string(piece.d) + " has chi/deg <= " + std::to_string(piece.chi) + "/" +
         std::to_string(piece.d);
}

}  // namespace

std::vector<Wall> walls(int d, int chi, int chi_lo, int chi_hi, const CurveChiTable& table) {
  if (d < 1) throw Error(ErrorKind::Argument, "degree must be positive");
  if (chi_lo > chi_hi) throw Error(ErrorKind::Argument, "empty chi range");
  std::vector<Wall> out;
  for (int d1 = 1; d1 < d; ++d1)
    for (int c1 = chi_lo; c1 <= chi_hi; ++c1)
      for (int delta = 0; delta <= 1; ++delta) {
        // (c1 + delta*a)/d1 = (chi + a)/d
        Scalar alpha;
        if (delta == 1)
          alpha = Scalar(mpz_class(static_cast<long>(chi) * d1 - static_cast<long>(c1) * d), mpz_class(d - d1));
        else
          alpha = Scalar(mpz_class(static_cast<long>(c1) * d - static_cast<long>(chi) * d1), mpz_class(d1));
        alpha.canonicalize();
        if (alpha <= 0) continue;
        PairClass sub{d1, c1, delta == 1};
        PairClass quo{d - d1, chi - c1, delta == 0};
        if (sub.has_section) std::swap(sub, quo);  // mirror: keep one record per decomposition
        Wall w{alpha, sub, quo, false, ""};
        w.admissible = section_admissible(w.quotient, table);
        w.reason = admissibility_reason(w.quotient, table);
        out.push_back(std::move(w));
      }
  auto key = [](const Wall& w) { return std::make_tuple(w.alpha, w.sub.d, w.sub.chi); };
  std::sort(out.begin(), out.end(), [&](const Wall& a, const Wall& b) { return key(a) < key(b); });
  out.erase(std::unique(out.begin(), out.end(), [&](const Wall& a, const Wall& b) { return key(a) == key(b); }),
            out.end());
  return out;
}

std::vector<Wall> walls(int d, int chi, const CurveChiTable& table) {
  return walls(d, chi, chi - 2 * d, chi + 2 * d, table);
}

std::vector<Wall> admissible_walls(const std::vector<Wall>& all) {
  std::vector<Wall> out;
  std::copy_if(all.begin(), all.end(), std::back_inserter(out), [](const Wall& w) { return w.admissible; });
  return out;
}

std::vector<Crossing> crossing_report(int d, int chi, const CurveChiTable& table) {
  std::vector<Crossing> out;
  for (const auto& w : admissible_walls(walls(d, chi, table))) {
    const std::string a = format_scalar(w.alpha);
    const std::string H = "H" + w.sub.to_string(), G = "G" + w.quotient.to_string();
    Crossing c;
    c.wall = w;
    c.above = {"alpha > " + a, w.sub, w.quotient, "0 -> (0," + H + ") -> (1,F) -> (1," + G + ") -> 0"};
    c.below = {"alpha < " + a, w.quotient, w.sub, "0 -> (1," + G + ") -> (1,F) -> (0," + H + ") -> 0"};
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace sheafkit
