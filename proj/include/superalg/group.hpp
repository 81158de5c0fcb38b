#pragma once

#include <string>
#include <vector>

#include "superalg/calculus.hpp"
#include "superalg/context.hpp"
#include "superalg/scalar.hpp"

namespace superalg {

// Input datum for the nilpotent supergroup construction: a graded vector
// space E with basis e_1..e_n, a central complement C with basis c_1..c_m,
// and an even graded skew form Omega on E with values in C.  The bracket of
// the resulting Lie superalgebra is the form itself,
//   [e_i, e_j] = Omega(e_i, e_j),
// all other brackets vanish, so the algebra is 2-step nilpotent and C sits
// inside the centre.
struct OmegaSpec {
  struct BasisEntry {
    std::string name;
    Parity parity = Parity::Even;
  };

  std::vector<BasisEntry> e;  // primal basis, in order
  std::vector<BasisEntry> c;  // central basis, in order

  // omega[i][j][k] = coefficient of c_k in Omega(e_i, e_j)
  std::vector<std::vector<std::vector<GRat>>> omega;

  int e_dim() const { return int(e.size()); }
  int c_dim() const { return int(c.size()); }
  int dim() const { return e_dim() + c_dim(); }

  // Checks the table shape, evenness (a non-zero entry needs
  // |e_i| + |e_j| = |c_k|) and graded skew symmetry
  //   Omega(e_j, e_i) = -(-1)^{|e_i||e_j|} Omega(e_i, e_j).
  void validate() const;
};

// The 3|3 workhorse used throughout: e1,e2,e3 even, e4,e5,e6 odd, centre
// spanned by k0 (even) and k1 (odd), with
//   Omega(e2,e1) = Omega(e5,e5) = -Omega(e6,e6) = k0
//   Omega(e4,e1) = Omega(e5,e3) = k1
// completed by graded skew symmetry.
OmegaSpec omega33();

// Parses the declarative format of data/omega33.txt:
//   basis e <name> even|odd
//   basis c <name> even|odd
//   omega <ei> <ej> = <term> [<term> ...]     term: [+|-][<p>[/<q>]*]<ck>
// '#' starts a comment, basis lines must precede omega lines.  Mirror
// entries are filled in by skew symmetry; entries given twice must agree.
OmegaSpec parse_omega_spec(const std::string& text);

// A group point in exponential coordinates.  Slots are ordered evens first
// (primal evens in basis order, then central evens) followed by the odds
// (again primal before central); each slot value must be homogeneous of the
// slot parity.
struct GroupPoint {
  std::vector<SuperScalar> s;
};

// An algebra element as the coefficient tuple over the basis e_1..e_n,
// c_1..c_m (primal first, central last).  Coefficients multiply their basis
// vector from the left, which matters once a coefficient is odd.
struct AlgElem {
  std::vector<SuperScalar> a;
};

class SuperGroup {
 public:
  // Declares the chart on the group (coordinates plus differentials), two
  // scratch symbols used to differentiate the multiplication law, and the
  // ansatz unknowns for the coframe solve.  coord_names come in slot order;
  // suffix keeps names distinct when one context carries several groups.
  SuperGroup(SymbolContext& ctx, OmegaSpec spec, std::vector<std::string> coord_names,
             const std::string& suffix = "");

  SuperGroup(const SuperGroup&) = delete;  // fields hand out pointers to chart()
  SuperGroup& operator=(const SuperGroup&) = delete;

  SymbolContext& context() const { return *ctx_; }
  const OmegaSpec& spec() const { return spec_; }
  int dim() const { return spec_.dim(); }
  int e_dim() const { return spec_.e_dim(); }
  int c_dim() const { return spec_.c_dim(); }

  Parity basis_parity(int b) const;
  const std::string& basis_name(int b) const;
  int slot_of_basis(int b) const { return slot_of_basis_.at(size_t(b)); }
  int basis_of_slot(int k) const { return basis_of_slot_.at(size_t(k)); }
  Parity slot_parity(int k) const { return basis_parity(basis_of_slot(k)); }
  SymbolId coord(int k) const { return chart_.coords.at(size_t(k)); }
  const Chart& chart() const { return chart_; }
  // the reserved symbol used for derivatives of the law; points passed to
  // adjoint or the field constructors must not mention it
  SymbolId scratch(Parity p) const { return p == Parity::Even ? s_even_ : s_odd_; }

  GroupPoint identity() const;
  GroupPoint symbolic_point() const;  // the chart coordinates themselves
  // a fresh generic point with symbols <prefix><coord name>, declared on
  // first use and reused afterwards
  GroupPoint symbolic_point(const std::string& prefix) const;
  // exponential coordinates make exp the slot-for-slot copy of coefficients
  GroupPoint exp_point(const AlgElem& v) const;
  void check_point(const GroupPoint& g) const;

  GroupPoint multiply(const GroupPoint& lhs, const GroupPoint& rhs) const;
  GroupPoint inverse(const GroupPoint& g) const;
  GroupPoint triple_product(const GroupPoint& g, const GroupPoint& h) const;  // g h g^{-1}

  AlgElem zero_elem() const;
  AlgElem basis_elem(int b) const;
  void check_elem(const AlgElem& v) const;
  // the E-slot values of a point, viewed as an algebra element
  AlgElem point_to_elem(const GroupPoint& g) const;
  AlgElem bracket(const AlgElem& x, const AlgElem& y) const;
  bool jacobi_holds() const;

  // Ad(g) e_b for every basis index b, read off from the s-derivative of
  // triple_product(g, exp(s e_b)) at s = 0
  std::vector<AlgElem> adjoint_columns(const GroupPoint& g) const;
  AlgElem adjoint(const GroupPoint& g, const AlgElem& v) const;

  // frame of left-invariant vector fields, indexed like the basis; the field
  // for basis vector b is the s-derivative of g -> multiply(g, exp(s e_b))
  std::vector<SuperVectorField> left_invariant_fields() const;
  // the dual coframe of 1-forms, obtained by solving the duality equations
  // contract(L_i, theta_b) = delta_{ib}
  std::vector<SuperScalar> left_invariant_forms(const SignConventions& sc = {}) const;
  // brackets of the frame fields evaluated at the identity, as basis
  // coefficient tuples; reproduces the Omega table
  std::vector<std::vector<AlgElem>> structure_constants() const;

 private:
  std::vector<SuperScalar> central_gain(const GroupPoint& lhs, const GroupPoint& rhs) const;

  SymbolContext* ctx_;
  OmegaSpec spec_;
  std::vector<int> slot_of_basis_, basis_of_slot_;
  Chart chart_;
  SymbolId s_even_ = -1, s_odd_ = -1;
  std::vector<SymbolId> u_even_, u_odd_;  // coframe ansatz unknowns, one pair per slot
};

// A point of the left dual: along every basis direction the coordinate has
// an even and an odd component, stored separately and indexed like the basis.
struct DualPoint {
  std::vector<SuperScalar> ev, od;
};

class DualSpace {
 public:
  // Declares one even and one odd coordinate per basis direction (plus their
  // differentials).  invertible_even lists basis indices whose even
  // coordinate may be divided by.
  DualSpace(const SuperGroup& G, std::vector<std::string> even_names,
            std::vector<std::string> odd_names, const std::vector<int>& invertible_even = {});

  DualSpace(const DualSpace&) = delete;
  DualSpace& operator=(const DualSpace&) = delete;

  const SuperGroup& group() const { return *G_; }
  const Chart& chart() const { return chart_; }
  SymbolId even_coord(int b) const { return ev_.at(size_t(b)); }
  SymbolId odd_coord(int b) const { return od_.at(size_t(b)); }

  DualPoint generic_point() const;
  void check_point(const DualPoint& mu) const;

  // <v, mu> with the coefficients of v kept on the left; the odd component
  // along a basis direction of parity p contributes with sign (-1)^p
  SuperScalar pair(const AlgElem& v, const DualPoint& mu) const;

  // nu with <w, nu> = <Ad(g^{-1}) w, mu> for every w
  DualPoint coadjoint(const GroupPoint& g, const DualPoint& mu) const;

  // The field generating the coadjoint flow of v through the generic point:
  // the s-derivative of coadjoint(exp(s v), mu) at s = 0, negated when
  // sc.fund_negate is set.  v must be homogeneous of parity pv, meaning
  // coefficient b has parity pv + |e_b|; the field then has parity pv.
  SuperVectorField fundamental_field(const AlgElem& v, Parity pv,
                                     const SignConventions& sc = {}) const;

 private:
  const SuperGroup* G_;
  std::vector<SymbolId> ev_, od_;
  Chart chart_;
  // flow parameters owned by the dual chart; fundamental_field cannot borrow
  // the group's scratch symbols because adjoint_columns substitutes those away
  SymbolId fs_even_, fs_odd_;
};

// The fixture shared across the project: the 3|3 group of omega33() in
// coordinates (a1,a2,a3,b,al4,al5,al6,be) together with its 8|8 dual chart.
// y0 and yb1 are declared invertible because orbit charts divide by them.
struct StandardModel {
  SuperGroup group;
  DualSpace dual;

  explicit StandardModel(SymbolContext& ctx);
  StandardModel(const StandardModel&) = delete;
  StandardModel& operator=(const StandardModel&) = delete;
};

}  // namespace superalg
