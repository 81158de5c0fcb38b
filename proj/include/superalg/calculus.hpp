#pragma once

#include <map>
#include <vector>

#include "superalg/scalar.hpp"

namespace superalg {

// The three sign choices that are not forced by the algebra alone.  The
// shipped defaults are pinned by the curvature, lift and generator checks in
// the orbit and quantization suites; flipping any toggle makes at least one
// of those checks fail (the conventions suite asserts exactly that).
struct SignConventions {
  bool d_front = true;             // differentials multiply from the left in d
  bool contract_from_right = true; // contraction acts as a right derivation
  bool fund_negate = true;         // generating fields carry the leading minus
};

// a list of coordinates whose differentials exist in the shared context
struct Chart {
  const SymbolContext* ctx = nullptr;
  std::vector<SymbolId> coords;

  Chart() = default;
  Chart(SymbolContext& c, std::vector<SymbolId> zs) : ctx(&c), coords(std::move(zs)) {
    for (SymbolId z : coords) c.differential(z);
  }
  bool has_coord(SymbolId z) const {
    for (SymbolId c : coords)
      if (c == z) return true;
    return false;
  }
};

// X = sum coeff[z] * d/dz with the coefficient written on the left
struct SuperVectorField {
  const Chart* chart = nullptr;
  std::map<SymbolId, SuperScalar> coeff;

  SuperVectorField() = default;
  explicit SuperVectorField(const Chart& ch) : chart(&ch) {}

  void set(SymbolId z, const SuperScalar& v) {
    if (v.is_zero())
      coeff.erase(z);
    else
      coeff[z] = v;
  }
  SuperScalar get(SymbolId z) const {
    auto it = coeff.find(z);
    return it == coeff.end() ? SuperScalar(*chart->ctx) : it->second;
  }
  bool is_zero() const { return coeff.empty(); }

  SuperVectorField& operator+=(const SuperVectorField& o);
  friend SuperVectorField operator+(SuperVectorField a, const SuperVectorField& b) {
    a += b;
    return a;
  }
  SuperVectorField operator-() const;
};

SuperVectorField scale_field(const SuperScalar& c, const SuperVectorField& X);
bool operator==(const SuperVectorField& a, const SuperVectorField& b);

// keeps the parts c*d/dz with |c| + |z| = p
SuperVectorField field_parity_part(const SuperVectorField& X, Parity p);
bool field_has_parity(const SuperVectorField& X, Parity p);

// number of differential factors per term; throws when terms disagree
int form_degree(const SuperScalar& w);

// terms with exactly k differential factors, exponents counted
SuperScalar degree_part(const SuperScalar& w, int k);

// terms whose count of odd-sourced factors has the given parity; an odd
// coordinate letter counts one, a differential counts the parity of the
// coordinate it came from (so dx counts zero and dxi counts one per power)
SuperScalar source_parity_part(const SuperScalar& w, Parity p);

// Product that treats differential degree and source parity as independent
// gradings layered over the plain ring product: per homogeneous factors,
// wedge(a, b) = (-1)^{deg(a) * srcpar(b)} * a * b.  Left-associated chains
// compose consistently, so multi-factor products can be built pairwise.
SuperScalar wedge(const SuperScalar& a, const SuperScalar& b);

SuperScalar d(const Chart& ch, const SuperScalar& w, SignConventions sc = {});

// interior product; the default removal sign counts word letters to the
// right for an even coordinate's differential and all other charged factors
// less one for an odd coordinate's, with the coefficient joining from the left
SuperScalar contract(const SuperVectorField& X, const SuperScalar& w, SignConventions sc = {});

// iterated interior product, applying the first listed field first
SuperScalar contract(const std::vector<SuperVectorField>& Xs, const SuperScalar& w,
                     SignConventions sc = {});

SuperScalar lie(const SuperVectorField& X, const SuperScalar& w, SignConventions sc = {});

// X acting on a function (no differentials consumed)
SuperScalar apply(const SuperVectorField& X, const SuperScalar& f);

// graded commutator of derivations, [X,Y] = X Y - (-1)^{|X||Y|} Y X taken
// per homogeneous part; both fields must live on the same chart
SuperVectorField field_bracket(const SuperVectorField& X, const SuperVectorField& Y);

// substitution of coordinates together with the induced map on differentials
SuperScalar pullback(const Chart& target, const std::map<SymbolId, SuperScalar>& images,
                     const SuperScalar& w, SignConventions sc = {});

struct SolveError : kernel_error {
  enum class Kind { NonUnitPivot, Inconsistent, Underdetermined, Nonlinear };
  Kind kind;
  std::vector<SymbolId> free_vars;
  SolveError(Kind k, const std::string& msg, std::vector<SymbolId> fv = {})
      : kernel_error(msg), kind(k), free_vars(std::move(fv)) {}
};

// Gaussian elimination over the scalar ring.  Unknowns may be even or odd
// symbols; they must occur linearly (degree one, at most one per term, never
// inside a formal exponent) and every pivot must be a single invertible term.
// Internally each term is rewritten as coefficient * unknown with the unknown
// moved to the far right, which for odd unknowns costs a sign per odd factor
// it hops over.
std::map<SymbolId, SuperScalar> solve_linear(
    const SymbolContext& ctx, const std::vector<std::pair<SuperScalar, SuperScalar>>& eqs,
    const std::vector<SymbolId>& unknowns);

}  // namespace superalg
