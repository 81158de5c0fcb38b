#pragma once

#include <map>
#include <string>
#include <vector>

#include "superalg/calculus.hpp"
#include "superalg/certify.hpp"
#include "superalg/group.hpp"
#include "superalg/orbits.hpp"

namespace superalg {

// Global parameters of the quantization: an invertible even scale, its odd
// companion, and the even period of the compact direction.  The period is
// carried for reporting only; the compatibility relation between it and the
// scale is a statement about integrality, not something the symbolic layer
// can impose.
struct QuantParams {
  SymbolId hbar = -1;
  SymbolId kappa = -1;
  SymbolId period = -1;
};

// declares hb (invertible even), kp (odd) and dper (even) on first use
QuantParams standard_quant_params(SymbolContext& ctx);

// A connection potential split by coordinate parity.  gamma0 is the even
// one-form carrying dt, gamma1 the odd one-form carrying dtau; their
// exterior derivatives recover the two parity parts of the orbit form.
struct Connection {
  SuperScalar gamma0;
  SuperScalar gamma1;
};

// The bundle over one orbit family: the orbit chart extended by an even
// coordinate t and an odd coordinate tau, together with the family's
// closed-form connection potential and the finite bundle action of the
// group.  The stored action template realizes the flows of the lifted
// generators; both are frozen per family and cross-checked by the
// certificate functions below.
class Prequantization {
 public:
  Prequantization(const OrbitGeometry& orb, const QuantParams& qp);

  // the action template and fields point into bundle_chart()
  Prequantization(const Prequantization&) = delete;
  Prequantization& operator=(const Prequantization&) = delete;

  const OrbitGeometry& orbit() const { return *orb_; }
  const QuantParams& params() const { return qp_; }
  const Chart& bundle_chart() const { return ychart_; }
  SymbolId t() const { return t_; }
  SymbolId tau() const { return tau_; }
  const Connection& connection() const { return conn_; }
  const SuperScalar& orbit_form() const { return omega_; }

  // an orbit field viewed on the bundle chart (no t or tau legs)
  SuperVectorField extend(const SuperVectorField& X) const;

  // Generator of a homogeneous algebra element on the bundle: the
  // restricted fundamental field plus t and tau legs solved from the
  // momentum condition  contract(lift, gamma) = pairing with the generic
  // orbit point, split by parity.
  SuperVectorField lift(const AlgElem& v, Parity pv) const;

  // image of every moving bundle coordinate under the finite action of g
  std::map<SymbolId, SuperScalar> action(const GroupPoint& g) const;

  // the action map extended by identity images, convenient for substitute
  SuperScalar image_of(const std::map<SymbolId, SuperScalar>& act, SymbolId z) const;

 private:
  void build_connection();
  void build_action();

  const OrbitGeometry* orb_;
  QuantParams qp_;
  SymbolId t_ = -1;
  SymbolId tau_ = -1;
  Chart ychart_;
  SuperScalar omega_;
  Connection conn_;
  std::map<SymbolId, SuperScalar> action_tmpl_;
};

// Validates a candidate potential against the bundle: each component is a
// one-form of its parity pairing to one with its own compact direction and
// to zero with the other, and the exterior derivatives reproduce the parity
// parts of the orbit form.  Adding any closed one-form to a component
// leaves the certificate satisfied; that freedom is the gauge ambiguity of
// the potential.
Certificate curvature_checks(const Prequantization& pq, const Connection& conn);

// For every basis vector: the momentum condition holds and the lifted
// generator preserves both potential components.
Certificate lift_checks(const Prequantization& pq);

// The finite action against its infinitesimal data: the identity acts
// trivially, double substitution composes to the group product, the
// coordinate derivative at the identity along each basis direction is minus
// the lifted generator, and the pullback fixes both potential components.
Certificate action_checks(const Prequantization& pq);

// Solution space of one invariant polarization: functions of the listed
// transverse invariants dressed by a fixed exponential factor.  foliation
// holds the orbit directions normalized to a unit leading leg, horizontal
// their lifts to the bundle chart, and constraints the multipliers c in the
// per-direction equation  X g + c g = 0  for the reduced function g.  The
// dressed solutions are  exp(dressing) * h(invariants).
struct PolarizedSolution {
  std::vector<SuperVectorField> foliation;
  std::vector<SuperVectorField> horizontal;
  std::vector<SuperScalar> constraints;
  std::vector<SuperScalar> invariants;
  SuperScalar dressing;
};

// Computes the solution space of a variant with concrete coefficients.
// Solver failures surface as kernel_error: a constraint whose phase has no
// polynomial antiderivative along its own direction reports a
// non-integrable phase, and a dressing that fails the final re-check
// reports inconsistent constraints.
PolarizedSolution polarized_solve(const Prequantization& pq, const PolarizationVariant& pol);

// horizontal lifts annihilate both potential components, the invariants are
// constant along the foliation, and the dressed equivariant factor solves
// every constraint
Certificate solution_checks(const Prequantization& pq, const PolarizedSolution& sol);

// Affine change from the transverse invariants to the reduced variables the
// representation acts on.  vars lists the new symbols in invariant order;
// to_orbit writes each one as an expression in the orbit chart.
struct VariableChange {
  std::vector<SymbolId> vars;
  std::map<SymbolId, SuperScalar> to_orbit;
};

// The family's standard reduced variables: each invariant is rescaled so
// the acting element translates the variable by exactly minus its first
// moving group coordinate.  centered additionally subtracts the base-point
// value of an even leading coordinate (declared as its label symbol), which
// removes the artificial base-point dependence from the translation part at
// the cost of extra multiplier terms; the uncentered form drops the shifts.
VariableChange reduced_variables(const Prequantization& pq, const PolarizedSolution& sol,
                                 bool centered = true);

// concrete representation data for one acting group element
struct RepFormula {
  std::map<SymbolId, SuperScalar> shift;
  SuperScalar multiplier;
};

// The representation induced on functions of the reduced variables: the
// acting element substitutes shift_template into the arguments and
// multiplies by exp(multiplier_exponent).  Both templates are symbolic in
// the group coordinates; at() binds them to a concrete point.
// orbit_exponent keeps the multiplier before the variable change for
// inspection.  Construction throws kernel_error when the action fails to
// act affinely on the variables or the multiplier does not reduce to them.
class InducedRep {
 public:
  InducedRep(const Prequantization& pq, const PolarizedSolution& sol, VariableChange vc);

  InducedRep(const InducedRep&) = delete;
  InducedRep& operator=(const InducedRep&) = delete;

  const Prequantization& bundle() const { return *pq_; }
  const VariableChange& variables() const { return vc_; }
  const Chart& hchart() const { return hchart_; }
  const SuperScalar& shift_template(SymbolId var) const { return shift_tmpl_.at(var); }
  const SuperScalar& multiplier_exponent() const { return exponent_; }
  const SuperScalar& orbit_exponent() const { return orbit_exponent_; }

  RepFormula at(const GroupPoint& g) const;

  // The scalar part of the generator along basis vector b: minus the
  // derivative of the multiplier exponent at the identity.  For the two
  // central directions this is the full generator, since their shifts are
  // trivial.
  SuperScalar central_character(int b) const;

 private:
  const Prequantization* pq_;
  VariableChange vc_;
  Chart hchart_;
  std::map<SymbolId, SuperScalar> shift_tmpl_;
  SuperScalar orbit_exponent_;
  SuperScalar exponent_;
};

// the multiplier exponent is even, the multiplier is a unit, the identity
// acts trivially, double substitution composes to the group product, and
// the two central directions act by rescaling alone
Certificate rep_checks(const InducedRep& rep);

}  // namespace superalg
