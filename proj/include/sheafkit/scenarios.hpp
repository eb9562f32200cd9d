#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sheafkit/sheaf.hpp"

namespace sheafkit {

// A named bundle of concrete objects with the checks that were run when it was built.
struct Fixture {
  std::string name;
  std::string citation;
  RingPtr ring;
  std::map<std::string, ModulePresentation> modules;
  std::map<std::string, GradedMatrix> matrices;
  std::map<std::string, Ideal> ideals;
  std::map<std::string, std::vector<Scalar>> points;
  std::vector<std::string> checks;  // human-readable self-checks that passed on load

  const ModulePresentation& module(const std::string& key) const;
  const GradedMatrix& matrix(const std::string& key) const;
  const Ideal& ideal(const std::string& key) const;
  const std::vector<Scalar>& point(const std::string& key) const;
};

std::vector<std::string> fixture_names();
// Builds (once per field) and returns the fixture; throws Error(NotFound) for
// unknown names and Error(Internal) when a self-check fails.
const Fixture& load_fixture(const std::string& name, const Field& field = Field::rationals());

// Ideal of a rational point in projective space.
Ideal point_ideal(const RingPtr& ring, const std::vector<Scalar>& p);

struct JumpExt {
  int rank_at_p = 0;      // rank of the syzygy matrix of I_C evaluated at p
  int predicted_ext = 0;  // 2 - rank, on the three-generator resolution shape
  int computed_ext = 0;   // dim Ext^1(C_p, O_C) computed directly
  bool agree() const { return predicted_ext == computed_ext; }
};

// I must be the ideal of a curve containing p. A complete intersection of two
// quadrics is first padded with a trivial summand so that the syzygy matrix has
// the 3 x 2 shape shared by the other curve types.
JumpExt jumpext_case(const Ideal& I, const std::vector<Scalar>& p);

// Non-split extension 0 -> B -> E -> A -> 0 realized by a mapping cone. A class in
// Ext^1_S(A_{>=e}, B)_0 is chosen (the first basis cocycle that is not a coboundary),
// lifted to a matrix theta, and E = coker [[d_B, -theta], [0, d_1]].
struct ExtensionLift {
  ModulePresentation module;
  int e = 0;
  int ext_dim = 0;  // dim Ext^1_S(A_{>=e}, B)_0
};
ExtensionLift extension_from_class(const ModulePresentation& A, const ModulePresentation& B, int e);

// Graded module sum_d k[s,t]_{kd} over k[x_0..x_{n-1}], where x_i acts by
// multiplication with forms[i] (a zero form means the variable acts by 0).
// Relations are found by linear algebra up to degree max_deg.
ModulePresentation binary_form_module(const RingPtr& ring, const std::vector<Polynomial>& forms, int max_deg);

}  // namespace sheafkit
