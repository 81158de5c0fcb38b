#include "superalg/orbits.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace superalg {

namespace {

// base-point components must be plain real rationals
bool rational_value(const SuperScalar& x, GRat* out) {
  if (x.is_zero()) {
    *out = GRat();
    return true;
  }
  if (x.terms.size() != 1) return false;
  const Term& t = x.terms.front();
  if (!t.m.empty() || !t.p.empty() || !t.w.empty()) return false;
  *out = t.c;
  return true;
}

// frozen base components keep their coordinate name with a trailing o
SymbolId label_symbol(SymbolContext& ctx, const std::string& coord) {
  std::string nm = coord + "o";
  return ctx.has(nm) ? ctx.id(nm) : ctx.declare(nm, Parity::Even);
}

bool elem_eq(const AlgElem& x, const AlgElem& y) {
  if (x.a.size() != y.a.size()) return false;
  for (size_t i = 0; i < x.a.size(); ++i)
    if (!(x.a[i] == y.a[i])) return false;
  return true;
}

bool unit_scalar(const SuperScalar& x) {
  if (x.terms.size() != 1) return false;
  try {
    (void)inverse(x);
  } catch (const kernel_error&) {
    return false;
  }
  return true;
}

// Gaussian elimination with unit pivots on a rectangular block; true when
// every row receives a pivot, meaning the rows are independent over the
// coefficient ring
bool unit_row_rank(std::vector<std::vector<SuperScalar>> m) {
  size_t rows = m.size();
  if (rows == 0) return true;
  size_t cols = m[0].size();
  size_t done = 0;
  for (size_t col = 0; col < cols && done < rows; ++col) {
    size_t piv = rows;
    for (size_t r = done; r < rows; ++r)
      if (unit_scalar(m[r][col])) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[done], m[piv]);
    SuperScalar inv = inverse(m[done][col]);
    for (size_t r = done + 1; r < rows; ++r) {
      if (m[r][col].is_zero()) continue;
      SuperScalar f = m[r][col] * inv;
      for (size_t k = col; k < cols; ++k) m[r][k] -= f * m[done][k];
    }
    ++done;
  }
  return done == rows;
}

// the table of coordinate contractions each family's form must reproduce
std::vector<std::vector<SuperScalar>> expected_pairings(const OrbitGeometry& orb) {
  const Chart& ch = orb.chart();
  const SymbolContext& ctx = *ch.ctx;
  const DualSpace& D = orb.model().dual;
  size_t n = ch.coords.size();
  std::vector<std::vector<SuperScalar>> m(n, std::vector<SuperScalar>(n, SuperScalar(ctx)));
  auto put = [&](size_t u, size_t v, const SuperScalar& val) {
    m[u][v] = val;
    if (u != v) {
      // two coordinate contractions commute exactly when both directions are
      // odd coordinates, otherwise they anticommute
      bool both_odd = ctx.parity(ch.coords[u]) == Parity::Odd &&
                      ctx.parity(ch.coords[v]) == Parity::Odd;
      m[v][u] = both_odd ? val : -val;
    }
  };
  switch (orb.tag()) {
    case OrbitCase::Point:
      break;
    case OrbitCase::Even22: {
      SuperScalar iy = inverse(sym(ctx, D.even_coord(6)));
      put(0, 1, iy);   // x1 against x2
      put(2, 2, -iy);  // xi5 against itself
      put(3, 3, iy);   // xi6 against itself
      break;
    }
    case OrbitCase::Odd22: {
      SuperScalar ib = inverse(sym(ctx, D.even_coord(7)));
      put(2, 0, ib);  // xib1 against xb4
      put(3, 1, ib);  // xib3 against xb5
      break;
    }
    case OrbitCase::Mixed33: {
      SuperScalar iy = inverse(sym(ctx, D.even_coord(6)));
      put(0, 1, iy);   // x1 against x2
      put(3, 1, iy);   // xib1 against x2
      put(2, 4, iy);   // xb5 against xi5
      put(4, 4, -iy);  // xi5 against itself
      put(5, 5, iy);   // xi6 against itself
      break;
    }
  }
  return m;
}

}  // namespace

std::string to_string(OrbitCase c) {
  switch (c) {
    case OrbitCase::Point: return "point";
    case OrbitCase::Even22: return "even-2|2";
    case OrbitCase::Odd22: return "odd-2|2";
    case OrbitCase::Mixed33: return "mixed-3|3";
  }
  throw kernel_error("orbit case out of range");
}

bool is_base_point(const DualSpace& D, const DualPoint& mu) {
  D.check_point(mu);
  for (const SuperScalar& x : mu.od)
    if (!x.is_zero()) return false;
  GRat c;
  for (const SuperScalar& x : mu.ev)
    if (!rational_value(x, &c) || !c.is_real()) return false;
  return true;
}

OrbitClass classify(const DualSpace& D, const DualPoint& mu) {
  const SymbolContext& ctx = D.group().context();
  if (!is_base_point(D, mu))
    throw kernel_error(
        "orbit classification needs a base point: odd components zero, even components real "
        "rationals");
  auto value = [&](int b) {
    GRat c;
    rational_value(mu.ev.at(size_t(b)), &c);
    return c;
  };
  GRat y0 = value(6), yb1 = value(7);
  OrbitClass cls;
  auto label = [&](int b) {
    cls.labels.push_back({ctx.name(D.even_coord(b)), num(ctx, value(b))});
  };
  if (y0.is_zero() && yb1.is_zero()) {
    cls.tag = OrbitCase::Point;
    for (int b = 0; b < 6; ++b) label(b);
  } else if (!y0.is_zero() && yb1.is_zero()) {
    cls.tag = OrbitCase::Even22;
    for (int b : {2, 3, 4, 5, 6}) label(b);
    cls.chart = {D.even_coord(0), D.even_coord(1), D.odd_coord(4), D.odd_coord(5)};
    cls.even_dim = cls.odd_dim = 2;
  } else if (y0.is_zero()) {
    cls.tag = OrbitCase::Odd22;
    for (int b : {0, 1, 2, 5, 7}) label(b);
    cls.chart = {D.even_coord(3), D.even_coord(4), D.odd_coord(0), D.odd_coord(2)};
    cls.even_dim = cls.odd_dim = 2;
  } else {
    cls.tag = OrbitCase::Mixed33;
    for (int b : {2, 5, 6, 7}) label(b);
    // the remaining even invariant: y0 xb4 - yb1 x2 at the base point
    cls.labels.push_back({"s", num(ctx, y0 * value(3) - yb1 * value(1))});
    cls.chart = {D.even_coord(0), D.even_coord(1), D.even_coord(4),
                 D.odd_coord(0),  D.odd_coord(4),  D.odd_coord(5)};
    cls.even_dim = cls.odd_dim = 3;
  }
  return cls;
}

OrbitGeometry::OrbitGeometry(const StandardModel& M, OrbitCase tag, SignConventions sc)
    : M_(&M), tag_(tag), sc_(sc) {
  SymbolContext& ctx = M.group.context();
  const DualSpace& D = M.dual;
  SuperScalar zero(ctx);
  auto lbl = [&](int b) { return sym(ctx, label_symbol(ctx, ctx.name(D.even_coord(b)))); };

  std::vector<SymbolId> coords;
  switch (tag) {
    case OrbitCase::Point: {
      for (int b = 0; b < 6; ++b) images_[D.even_coord(b)] = lbl(b);
      images_[D.even_coord(6)] = zero;
      images_[D.even_coord(7)] = zero;
      for (int b = 0; b < 8; ++b) images_[D.odd_coord(b)] = zero;
      break;
    }
    case OrbitCase::Even22: {
      coords = {D.even_coord(0), D.even_coord(1), D.odd_coord(4), D.odd_coord(5)};
      for (int b : {2, 3, 4, 5}) images_[D.even_coord(b)] = lbl(b);
      images_[D.even_coord(7)] = zero;
      for (int b : {0, 1, 2, 3, 6, 7}) images_[D.odd_coord(b)] = zero;
      break;
    }
    case OrbitCase::Odd22: {
      coords = {D.even_coord(3), D.even_coord(4), D.odd_coord(0), D.odd_coord(2)};
      for (int b : {0, 1, 2, 5}) images_[D.even_coord(b)] = lbl(b);
      images_[D.even_coord(6)] = zero;
      for (int b : {1, 3, 4, 5, 6, 7}) images_[D.odd_coord(b)] = zero;
      break;
    }
    case OrbitCase::Mixed33: {
      coords = {D.even_coord(0), D.even_coord(1), D.even_coord(4),
                D.odd_coord(0),  D.odd_coord(4),  D.odd_coord(5)};
      for (int b : {2, 5}) images_[D.even_coord(b)] = lbl(b);
      // the even invariant takes the value so on the orbit and the odd one
      // vanishes there; that pins the two dependent coordinates
      SuperScalar so = sym(ctx, label_symbol(ctx, "s"));
      SuperScalar y0 = sym(ctx, D.even_coord(6));
      SuperScalar yb1 = sym(ctx, D.even_coord(7));
      images_[D.even_coord(3)] = inverse(y0) * (so + yb1 * sym(ctx, D.even_coord(1)));
      images_[D.odd_coord(2)] = -(inverse(y0) * yb1 * sym(ctx, D.odd_coord(4)));
      for (int b : {1, 3, 6, 7}) images_[D.odd_coord(b)] = zero;
      break;
    }
  }
  chart_ = Chart(ctx, coords);
  point_ = D.generic_point();
  for (SuperScalar& c : point_.ev) c = substitute(c, images_);
  for (SuperScalar& c : point_.od) c = substitute(c, images_);
  for (int b = 0; b < M.group.dim(); ++b)
    fields_.push_back(restrict_field(
        D.fundamental_field(M.group.basis_elem(b), M.group.basis_parity(b), sc_)));
}

SuperScalar OrbitGeometry::on_orbit(const SuperScalar& f) const {
  return substitute(f, images_);
}

SuperVectorField OrbitGeometry::fundamental(const AlgElem& v, Parity pv) const {
  return restrict_field(M_->dual.fundamental_field(v, pv, sc_));
}

SuperVectorField OrbitGeometry::restrict_field(const SuperVectorField& X) const {
  SymbolContext& ctx = M_->group.context();
  const DualSpace& D = M_->dual;
  SuperVectorField out(chart_);
  auto reduced = [&](SymbolId z) { return substitute(X.get(z), images_); };
  std::vector<SymbolId> traded;
  if (tag_ == OrbitCase::Mixed33) {
    // legs along the two dependent coordinates are rerouted through the
    // invariant combinations, which must not move; the chart legs then
    // coincide with the plain coordinate legs
    SuperScalar y0 = sym(ctx, D.even_coord(6));
    SuperScalar yb1 = sym(ctx, D.even_coord(7));
    SuperScalar s_leg = y0 * reduced(D.even_coord(3)) - yb1 * reduced(D.even_coord(1));
    SuperScalar sig_leg = y0 * reduced(D.odd_coord(2)) + yb1 * reduced(D.odd_coord(4));
    if (!s_leg.is_zero() || !sig_leg.is_zero())
      throw kernel_error("orbit restriction: field moves an invariant of the mixed family");
    traded = {D.even_coord(3), D.odd_coord(2)};
  }
  for (int b = 0; b < M_->group.dim(); ++b) {
    for (SymbolId z : {D.even_coord(b), D.odd_coord(b)}) {
      if (std::find(traded.begin(), traded.end(), z) != traded.end()) continue;
      SuperScalar c = reduced(z);
      if (chart_.has_coord(z))
        out.set(z, c);
      else if (!c.is_zero())
        throw kernel_error("orbit restriction: stray leg along " + ctx.name(z));
    }
  }
  return out;
}

SuperVectorField coordinate_field(const Chart& ch, SymbolId z) {
  if (!ch.has_coord(z)) throw kernel_error("coordinate field: not a chart coordinate");
  SuperVectorField X(ch);
  X.set(z, num(*ch.ctx, 1));
  return X;
}

SuperScalar kks_form(const OrbitGeometry& orb) {
  const StandardModel& M = orb.model();
  SymbolContext& ctx = M.group.context();
  const Chart& ch = orb.chart();
  if (ch.coords.empty()) return SuperScalar(ctx);  // the point family carries the zero form

  // degree-2 ansatz over the chart differentials; squares survive only for
  // differentials of odd coordinates
  std::vector<SuperScalar> shapes;
  for (size_t i = 0; i < ch.coords.size(); ++i)
    for (size_t j = i; j < ch.coords.size(); ++j) {
      if (i == j && ctx.parity(ch.coords[i]) == Parity::Even) continue;
      shapes.push_back(sym(ctx, ctx.diff_of(ch.coords[i])) * sym(ctx, ctx.diff_of(ch.coords[j])));
    }
  std::vector<SymbolId> unknowns;
  SuperScalar ansatz(ctx);
  for (size_t k = 0; k < shapes.size(); ++k) {
    std::string nm = "oc" + std::to_string(k);
    SymbolId u = ctx.has(nm) ? ctx.id(nm) : ctx.declare(nm, Parity::Even);
    unknowns.push_back(u);
    ansatz += sym(ctx, u) * shapes[k];
  }

  // one equation per ordered pair of basis vectors: contracting their
  // fundamental fields must give minus the pairing of their bracket
  std::vector<std::pair<SuperScalar, SuperScalar>> eqs;
  for (int i = 0; i < M.group.dim(); ++i)
    for (int j = 0; j < M.group.dim(); ++j) {
      SuperScalar lhs = contract({orb.field(i), orb.field(j)}, ansatz, orb.conventions());
      SuperScalar rhs = -M.dual.pair(
          M.group.bracket(M.group.basis_elem(i), M.group.basis_elem(j)), orb.generic_point());
      if (lhs.is_zero() && rhs.is_zero()) continue;
      eqs.push_back({lhs, rhs});
    }
  try {
    return substitute(ansatz, solve_linear(ctx, eqs, unknowns));
  } catch (const SolveError& e) {
    throw SolveError(e.kind, "orbit form reconstruction (" + to_string(orb.tag()) + "): " + e.what(),
                     e.free_vars);
  }
}

Certificate symplectic_checks(const OrbitGeometry& orb, const SuperScalar& omega) {
  Certificate cert;
  const Chart& ch = orb.chart();
  const SymbolContext& ctx = *ch.ctx;
  const SuperGroup& G = orb.model().group;
  const SignConventions& sc = orb.conventions();

  SuperScalar dw = d(ch, omega, sc);
  cert.record("closed", dw.is_zero(), to_string(dw));

  for (int b = 0; b < G.dim(); ++b) {
    SuperScalar lw = lie(orb.field(b), omega, sc);
    cert.record("invariant along " + G.basis_name(b), lw.is_zero(), to_string(lw));
  }

  size_t n = ch.coords.size();
  auto expect = expected_pairings(orb);
  std::vector<std::vector<SuperScalar>> table(n, std::vector<SuperScalar>(n, SuperScalar(ctx)));
  bool match = true;
  std::string witness;
  for (size_t u = 0; u < n; ++u)
    for (size_t v = 0; v < n; ++v) {
      table[u][v] = contract(
          {coordinate_field(ch, ch.coords[u]), coordinate_field(ch, ch.coords[v])}, omega, sc);
      if (match && !(table[u][v] == expect[u][v])) {
        match = false;
        witness = "d/d" + ctx.name(ch.coords[u]) + " against d/d" + ctx.name(ch.coords[v]) +
                  " gives " + to_string(table[u][v]);
      }
    }
  cert.record("coordinate contraction table", match, witness);

  // A form with both an even and an odd part is degenerate for the naive
  // whole-table test: an even and an odd direction may contract to the very
  // same covector.  Only a homogeneous field can vanish under the pairing,
  // and its even-direction and odd-direction coefficients have opposite
  // parities, so the two row blocks must be independent separately.
  std::vector<std::vector<SuperScalar>> even_rows, odd_rows;
  for (size_t u = 0; u < n; ++u)
    (ctx.parity(ch.coords[u]) == Parity::Even ? even_rows : odd_rows).push_back(table[u]);
  cert.record("even directions pair with full rank", unit_row_rank(even_rows));
  cert.record("odd directions pair with full rank", unit_row_rank(odd_rows));
  return cert;
}

std::vector<int> stabilizer(const OrbitGeometry& orb) {
  std::vector<int> out;
  for (int b = 0; b < orb.model().group.dim(); ++b)
    if (orb.field(b).is_zero()) out.push_back(b);
  return out;
}

Certificate stabilizer_checks(const OrbitGeometry& orb) {
  Certificate cert;
  const SuperGroup& G = orb.model().group;
  const DualSpace& D = orb.model().dual;
  std::vector<int> stab = stabilizer(orb);

  bool vanishing = true;
  std::string wit;
  for (int i : stab)
    for (int j : stab) {
      SuperScalar p =
          D.pair(G.bracket(G.basis_elem(i), G.basis_elem(j)), orb.generic_point());
      if (!p.is_zero() && vanishing) {
        vanishing = false;
        wit = G.basis_name(i) + " with " + G.basis_name(j);
      }
    }
  cert.record("member brackets pair to zero", vanishing, wit);

  bool has_centre = true;
  for (int b = G.e_dim(); b < G.dim(); ++b)
    if (std::find(stab.begin(), stab.end(), b) == stab.end()) has_centre = false;
  cert.record("centre belongs to the stabilizer", has_centre);
  return cert;
}

std::vector<PolarizationFamily> polarizations(const OrbitGeometry& orb) {
  const SuperGroup& G = orb.model().group;
  SymbolContext& ctx = G.context();
  auto param = [&](const char* nm) {
    return ctx.has(nm) ? ctx.id(nm) : ctx.declare(nm, Parity::Even);
  };
  auto E = [&](int b) { return G.basis_elem(b); };
  auto mix2 = [&](int b1, const SuperScalar& c1, int b2, const SuperScalar& c2) {
    AlgElem v = G.zero_elem();
    v.a[size_t(b1)] = c1;
    v.a[size_t(b2)] = c2;
    return v;
  };

  std::vector<PolarizationFamily> out;
  switch (orb.tag()) {
    case OrbitCase::Point: {
      // every pairing vanishes at the base point, so the whole algebra works
      PolarizationFamily f;
      f.even_dim = 4;
      f.odd_dim = 4;
      PolarizationVariant var;
      for (int b = 0; b < G.dim(); ++b) var.span.push_back(E(b));
      f.variants.push_back(std::move(var));
      out.push_back(std::move(f));
      break;
    }
    case OrbitCase::Even22: {
      // one balanced family with a free even coefficient pair and a sign
      PolarizationFamily f;
      f.even_dim = 3;
      f.odd_dim = 3;
      SymbolId pa = param("pa"), pb = param("pb");
      f.params = {pa, pb};
      for (int eps : {1, -1}) {
        PolarizationVariant var;
        var.eps = eps;
        var.span = {mix2(0, sym(ctx, pa), 1, sym(ctx, pb)), E(2), E(3),
                    mix2(4, num(ctx, 1), 5, num(ctx, -eps)), E(6), E(7)};
        f.variants.push_back(std::move(var));
      }
      out.push_back(std::move(f));
      break;
    }
    case OrbitCase::Odd22: {
      PolarizationFamily f1;  // largest even part
      f1.even_dim = 4;
      f1.odd_dim = 2;
      f1.variants.push_back({0, {E(0), E(1), E(2), E(5), E(6), E(7)}});
      out.push_back(std::move(f1));

      PolarizationFamily f2;  // largest odd part
      f2.even_dim = 2;
      f2.odd_dim = 4;
      f2.variants.push_back({0, {E(1), E(3), E(4), E(5), E(6), E(7)}});
      out.push_back(std::move(f2));

      PolarizationFamily f3;  // balanced, one free even coefficient pair
      f3.even_dim = 3;
      f3.odd_dim = 3;
      SymbolId pa = param("pa"), pb = param("pb");
      f3.params = {pa, pb};
      f3.variants.push_back({0, {mix2(0, sym(ctx, pa), 2, sym(ctx, pb)), E(1),
                                 mix2(3, sym(ctx, pb), 4, -sym(ctx, pa)), E(5), E(6), E(7)}});
      out.push_back(std::move(f3));
      break;
    }
    case OrbitCase::Mixed33: {
      PolarizationFamily f1;  // largest even part
      f1.even_dim = 3;
      f1.odd_dim = 2;
      f1.variants.push_back({0, {E(1), E(2), E(3), E(6), E(7)}});
      out.push_back(std::move(f1));

      PolarizationFamily f2;  // largest odd part, one sign choice
      f2.even_dim = 2;
      f2.odd_dim = 3;
      for (int eps : {1, -1}) {
        PolarizationVariant var;
        var.eps = eps;
        var.span = {E(1), E(3), mix2(4, num(ctx, 1), 5, num(ctx, eps)), E(6), E(7)};
        f2.variants.push_back(std::move(var));
      }
      out.push_back(std::move(f2));
      break;
    }
  }
  return out;
}

Certificate polarization_checks(const OrbitGeometry& orb, const PolarizationFamily& fam) {
  Certificate cert;
  const SuperGroup& G = orb.model().group;
  const DualSpace& D = orb.model().dual;
  const DualPoint& mu = orb.generic_point();
  std::vector<int> stab = stabilizer(orb);

  for (const PolarizationVariant& var : fam.variants) {
    std::string tagp =
        fam.variants.size() > 1 ? " (sign " + std::to_string(var.eps) + ")" : std::string();

    // every row must sit inside one parity, and the counts must match
    int ev = 0, od = 0;
    bool homog = true;
    for (const AlgElem& h : var.span) {
      int seen = -1;
      for (int b = 0; b < G.dim(); ++b) {
        if (h.a.at(size_t(b)).is_zero()) continue;
        int p = G.basis_parity(b) == Parity::Even ? 0 : 1;
        if (seen < 0)
          seen = p;
        else if (seen != p)
          homog = false;
      }
      if (seen == 0) ++ev;
      if (seen == 1) ++od;
    }
    cert.record("rows parity homogeneous" + tagp, homog);
    cert.record("graded dimension" + tagp, ev == fam.even_dim && od == fam.odd_dim,
                std::to_string(ev) + "|" + std::to_string(od));

    bool iso = true;
    std::string wit;
    for (const AlgElem& h1 : var.span)
      for (const AlgElem& h2 : var.span) {
        SuperScalar p = D.pair(G.bracket(h1, h2), mu);
        if (!p.is_zero() && iso) {
          iso = false;
          wit = to_string(p);
        }
      }
    cert.record("isotropic on the orbit" + tagp, iso, wit);

    auto is_row = [&](const AlgElem& v) {
      for (const AlgElem& h : var.span)
        if (elem_eq(h, v)) return true;
      return false;
    };
    bool contains = true;
    for (int b : stab)
      if (!is_row(G.basis_elem(b))) contains = false;
    cert.record("contains the stabilizer" + tagp, contains);

    // a basis vector not already a row must break the vanishing, through a
    // bracket with some row or through its own self bracket
    bool maximal = true;
    std::string wmax;
    for (int b = 0; b < G.dim(); ++b) {
      AlgElem cand = G.basis_elem(b);
      if (is_row(cand)) continue;
      bool breaks = !D.pair(G.bracket(cand, cand), mu).is_zero();
      for (const AlgElem& h : var.span) {
        if (breaks) break;
        breaks = !D.pair(G.bracket(cand, h), mu).is_zero() ||
                 !D.pair(G.bracket(h, cand), mu).is_zero();
      }
      if (!breaks && maximal) {
        maximal = false;
        wmax = G.basis_name(b) + " extends the span";
      }
    }
    cert.record("maximal over the basis" + tagp, maximal, wmax);
  }
  return cert;
}

PolarizationVariant bind_params(const PolarizationVariant& pol,
                                const std::map<SymbolId, SuperScalar>& values) {
  PolarizationVariant out = pol;
  for (AlgElem& row : out.span)
    for (SuperScalar& c : row.a) c = substitute(c, values);
  return out;
}

}  // namespace superalg
