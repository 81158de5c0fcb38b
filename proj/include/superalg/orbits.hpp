#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "superalg/certify.hpp"
#include "superalg/group.hpp"

namespace superalg {

// The coadjoint orbits of the standard model fall into four families, told
// apart by which of the two central coordinates is non-zero at the base
// point: neither (a single point), only the even one (2|2 chart, even form),
// only the odd one (2|2 chart, odd form), or both (3|3 chart, mixed form).
enum class OrbitCase { Point, Even22, Odd22, Mixed33 };

std::string to_string(OrbitCase c);

// A base point has every odd component zero and every even component a plain
// real rational.
bool is_base_point(const DualSpace& D, const DualPoint& mu);

// Classification record for the orbit through one base point: the family
// tag, the labels separating orbits within the family (coordinate name with
// its frozen value; the mixed family adds the combination s), the chart
// coordinates and the graded chart dimension.
struct OrbitClass {
  OrbitCase tag = OrbitCase::Point;
  std::vector<std::pair<std::string, SuperScalar>> labels;
  std::vector<SymbolId> chart;
  int even_dim = 0;
  int odd_dim = 0;
};

// Decides the family of the orbit through a base point.  Rejects points with
// a non-zero odd component or a non-rational even component.
OrbitClass classify(const DualSpace& D, const DualPoint& mu);

// Symbolic model of one orbit family over the generic base point.  Holds the
// chart, the substitution restricting dual quantities to the orbit, the
// generic orbit point and the restricted fundamental fields.  Frozen base
// components appear as label symbols (coordinate name plus a trailing o),
// declared on first use; the mixed family keeps y0 and yb1 live and trades
// its two dependent coordinates for the label so.
class OrbitGeometry {
 public:
  OrbitGeometry(const StandardModel& M, OrbitCase tag, SignConventions sc = {});

  // the stored fields point into chart(), so the geometry must stay put
  OrbitGeometry(const OrbitGeometry&) = delete;
  OrbitGeometry& operator=(const OrbitGeometry&) = delete;

  OrbitCase tag() const { return tag_; }
  const StandardModel& model() const { return *M_; }
  const Chart& chart() const { return chart_; }
  const SignConventions& conventions() const { return sc_; }

  // images of the dual coordinates under restriction to the orbit
  const std::map<SymbolId, SuperScalar>& restriction() const { return images_; }

  // the restriction applied to a function on the dual
  SuperScalar on_orbit(const SuperScalar& f) const;

  // the generic point of the orbit, written in the dual's components
  const DualPoint& generic_point() const { return point_; }

  // fundamental field of basis vector b, restricted to the chart
  const SuperVectorField& field(int b) const { return fields_.at(size_t(b)); }
  const std::vector<SuperVectorField>& fields() const { return fields_; }

  // restriction of the fundamental field of a homogeneous algebra element;
  // raises kernel_error when a leg along a non-orbit direction survives
  SuperVectorField fundamental(const AlgElem& v, Parity pv) const;

 private:
  SuperVectorField restrict_field(const SuperVectorField& X) const;

  const StandardModel* M_;
  OrbitCase tag_;
  SignConventions sc_;
  std::map<SymbolId, SuperScalar> images_;
  Chart chart_;
  DualPoint point_;
  std::vector<SuperVectorField> fields_;
};

// the coordinate direction d/dz as a vector field on the chart
SuperVectorField coordinate_field(const Chart& ch, SymbolId z);

// The orbit's two-form, reconstructed from the defining property of the
// coadjoint construction: contracting the fundamental fields of two basis
// vectors into the form gives minus the pairing of their bracket with the
// generic orbit point.  A general degree-2 ansatz over the chart
// differentials is solved with solve_linear; the point family gets the zero
// form.  Solver failures are rethrown with the family named.
SuperScalar kks_form(const OrbitGeometry& orb);

// Verifies the working facts about the form: it is closed, annihilated by
// the Lie derivative along every restricted fundamental field, its table of
// coordinate contractions matches the family's normal form, and the even and
// odd row blocks of that table each have full row rank over the coefficient
// ring (unit pivots).  The blocks are checked separately because a form with
// both an even and an odd part pairs the two parities into the same
// covectors and only homogeneous fields can witness a degeneracy.
Certificate symplectic_checks(const OrbitGeometry& orb, const SuperScalar& omega);

// basis indices whose fundamental field vanishes on the orbit, ascending
std::vector<int> stabilizer(const OrbitGeometry& orb);

// Stabilizer facts: brackets of members pair to zero against the orbit and
// the centre is contained in the member set.
Certificate stabilizer_checks(const OrbitGeometry& orb);

// One sign branch of a family of invariant polarizations; the sign is baked
// into the spanning rows.
struct PolarizationVariant {
  int eps = 0;  // 0 when the family carries no sign choice
  std::vector<AlgElem> span;
};

// A family of invariant polarizations: graded dimension, free coefficient
// parameters (declared on first use; normalization is left to the caller)
// and one variant per admissible sign.
struct PolarizationFamily {
  int even_dim = 0;
  int odd_dim = 0;
  std::vector<SymbolId> params;
  std::vector<PolarizationVariant> variants;
};

// the maximal isotropic subalgebra families for the orbit's pairing, each
// containing the centre
std::vector<PolarizationFamily> polarizations(const OrbitGeometry& orb);

// For every variant: rows are parity homogeneous with the stated graded
// dimension, every pairing of a bracket of rows with the orbit vanishes, the
// stabilizer members all appear as rows, and no basis vector outside the
// rows extends the span without breaking that vanishing.
Certificate polarization_checks(const OrbitGeometry& orb, const PolarizationFamily& fam);

// the variant with the family parameters bound to concrete values in every
// spanning row
PolarizationVariant bind_params(const PolarizationVariant& pol,
                                const std::map<SymbolId, SuperScalar>& values);

}  // namespace superalg
