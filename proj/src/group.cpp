#include "superalg/group.hpp"

#include <algorithm>
#include <sstream>

namespace superalg {

namespace {

int parity_bit(Parity p) { return p == Parity::Odd ? 1 : 0; }

// the coefficient of moving a left coefficient of parity q across a basis
// vector of parity p: used when extending the bracket bilinearly
SuperScalar move_adjusted(const SuperScalar& coeff, Parity basis_par) {
  if (basis_par == Parity::Even) return coeff;
  return parity_part(coeff, Parity::Even) - parity_part(coeff, Parity::Odd);
}

}  // namespace

void OmegaSpec::validate() const {
  size_t n = e.size(), m = c.size();
  if (omega.size() != n) throw kernel_error("omega table: wrong number of rows");
  for (size_t i = 0; i < n; ++i) {
    if (omega[i].size() != n) throw kernel_error("omega table: row " + e[i].name + " has wrong length");
    for (size_t j = 0; j < n; ++j)
      if (omega[i][j].size() != m)
        throw kernel_error("omega table: entry (" + e[i].name + "," + e[j].name +
                           ") has wrong central dimension");
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      bool both_odd = e[i].parity == Parity::Odd && e[j].parity == Parity::Odd;
      for (size_t k = 0; k < m; ++k) {
        const GRat& v = omega[i][j][k];
        if (v.is_zero()) continue;
        if (add(e[i].parity, e[j].parity) != c[k].parity)
          throw kernel_error("omega table: entry (" + e[i].name + "," + e[j].name +
                             ") hits central direction " + c[k].name + " of the wrong parity");
        GRat mirror = both_odd ? v : -v;
        if (omega[j][i][k] != mirror)
          throw kernel_error("omega table: entries (" + e[i].name + "," + e[j].name +
                             ") and the mirror violate graded skew symmetry");
      }
    }
}

OmegaSpec omega33() {
  OmegaSpec s;
  s.e = {{"e1", Parity::Even}, {"e2", Parity::Even}, {"e3", Parity::Even},
         {"e4", Parity::Odd},  {"e5", Parity::Odd},  {"e6", Parity::Odd}};
  s.c = {{"k0", Parity::Even}, {"k1", Parity::Odd}};
  s.omega.assign(6, std::vector<std::vector<GRat>>(6, std::vector<GRat>(2)));
  auto set = [&](int i, int j, int k, int v) {
    s.omega[i][j][k] = GRat(v);
    bool both_odd = s.e[i].parity == Parity::Odd && s.e[j].parity == Parity::Odd;
    s.omega[j][i][k] = both_odd ? GRat(v) : GRat(-v);
  };
  set(1, 0, 0, 1);   // Omega(e2,e1) = k0
  set(4, 4, 0, 1);   // Omega(e5,e5) = k0
  set(5, 5, 0, -1);  // Omega(e6,e6) = -k0
  set(3, 0, 1, 1);   // Omega(e4,e1) = k1
  set(4, 2, 1, 1);   // Omega(e5,e3) = k1
  s.validate();
  return s;
}

OmegaSpec parse_omega_spec(const std::string& text) {
  OmegaSpec out;
  std::map<std::string, int> eidx, cidx;
  std::vector<std::vector<std::vector<bool>>> given;
  int lineno = 0;

  auto fail = [&](const std::string& msg) -> void {
    throw kernel_error("omega spec line " + std::to_string(lineno) + ": " + msg);
  };

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (tok[0] == "basis") {
      if (tok.size() != 4) fail("basis lines read: basis e|c <name> even|odd");
      if (!out.omega.empty()) fail("basis lines must precede omega lines");
      Parity p;
      if (tok[3] == "even")
        p = Parity::Even;
      else if (tok[3] == "odd")
        p = Parity::Odd;
      else
        fail("parity must be 'even' or 'odd'");
      if (eidx.count(tok[2]) || cidx.count(tok[2])) fail("duplicate basis name " + tok[2]);
      if (tok[1] == "e") {
        eidx[tok[2]] = out.e_dim();
        out.e.push_back({tok[2], p});
      } else if (tok[1] == "c") {
        cidx[tok[2]] = out.c_dim();
        out.c.push_back({tok[2], p});
      } else {
        fail("basis kind must be 'e' or 'c'");
      }
      continue;
    }

    if (tok[0] == "omega") {
      if (out.omega.empty()) {
        if (out.e.empty() || out.c.empty()) fail("omega line before any basis");
        size_t n = out.e.size(), m = out.c.size();
        out.omega.assign(n, std::vector<std::vector<GRat>>(n, std::vector<GRat>(m)));
        given.assign(n, std::vector<std::vector<bool>>(n, std::vector<bool>(m, false)));
      }
      if (tok.size() < 5 || tok[3] != "=") fail("omega lines read: omega <ei> <ej> = <terms>");
      auto ei = eidx.find(tok[1]), ej = eidx.find(tok[2]);
      if (ei == eidx.end()) fail("unknown basis vector " + tok[1]);
      if (ej == eidx.end()) fail("unknown basis vector " + tok[2]);
      int i = ei->second, j = ej->second;
      for (size_t t = 4; t < tok.size(); ++t) {
        std::string term = tok[t];
        GRat sign(1);
        if (term[0] == '+') {
          term.erase(0, 1);
        } else if (term[0] == '-') {
          sign = GRat(-1);
          term.erase(0, 1);
        }
        if (term.empty()) fail("dangling sign; write terms without inner spaces, e.g. -1/2*k0");
        GRat coef(1);
        std::string name = term;
        if (auto star = term.find('*'); star != std::string::npos) {
          coef = parse_grat(term.substr(0, star));
          name = term.substr(star + 1);
        }
        auto ck = cidx.find(name);
        if (ck == cidx.end()) fail("unknown central vector " + name);
        int k = ck->second;
        if (given[size_t(i)][size_t(j)][size_t(k)]) fail("entry given twice");
        out.omega[size_t(i)][size_t(j)][size_t(k)] = sign * coef;
        given[size_t(i)][size_t(j)][size_t(k)] = true;
      }
      continue;
    }

    fail("unrecognized directive " + tok[0]);
  }

  if (out.omega.empty()) {
    size_t n = out.e.size(), m = out.c.size();
    out.omega.assign(n, std::vector<std::vector<GRat>>(n, std::vector<GRat>(m)));
    given.assign(n, std::vector<std::vector<bool>>(n, std::vector<bool>(m, false)));
  }

  // complete the table by graded skew symmetry; explicit entries win but must
  // agree with the mirror of the other direction
  size_t n = out.e.size(), m = out.c.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      bool both_odd = out.e[i].parity == Parity::Odd && out.e[j].parity == Parity::Odd;
      for (size_t k = 0; k < m; ++k) {
        if (!given[i][j][k]) continue;
        GRat mirror = both_odd ? out.omega[i][j][k] : -out.omega[i][j][k];
        if (given[j][i][k]) {
          if (out.omega[j][i][k] != mirror)
            throw kernel_error("omega spec: entries (" + out.e[i].name + "," + out.e[j].name +
                               ") and (" + out.e[j].name + "," + out.e[i].name +
                               ") violate graded skew symmetry");
        } else if (i != j) {
          out.omega[j][i][k] = mirror;
        }
      }
    }

  out.validate();
  return out;
}

SuperGroup::SuperGroup(SymbolContext& ctx, OmegaSpec spec, std::vector<std::string> coord_names,
                       const std::string& suffix)
    : ctx_(&ctx), spec_(std::move(spec)) {
  spec_.validate();
  if (int(coord_names.size()) != dim())
    throw kernel_error("group chart: need one coordinate name per slot");

  for (int pass = 0; pass < 2; ++pass) {
    Parity want = pass == 0 ? Parity::Even : Parity::Odd;
    for (int b = 0; b < dim(); ++b)
      if (basis_parity(b) == want) basis_of_slot_.push_back(b);
  }
  slot_of_basis_.assign(size_t(dim()), -1);
  for (int k = 0; k < dim(); ++k) slot_of_basis_[size_t(basis_of_slot_[size_t(k)])] = k;

  std::vector<SymbolId> zs;
  zs.reserve(size_t(dim()));
  for (int k = 0; k < dim(); ++k)
    zs.push_back(ctx.declare(coord_names[size_t(k)] + suffix, slot_parity(k)));
  chart_ = Chart(ctx, zs);

  s_even_ = ctx.declare("_s" + suffix, Parity::Even);
  s_odd_ = ctx.declare("_t" + suffix, Parity::Odd);
  for (int k = 0; k < dim(); ++k) {
    u_even_.push_back(ctx.declare("_u" + std::to_string(k) + "e" + suffix, Parity::Even));
    u_odd_.push_back(ctx.declare("_u" + std::to_string(k) + "o" + suffix, Parity::Odd));
  }
}

Parity SuperGroup::basis_parity(int b) const {
  if (b < 0 || b >= dim()) throw kernel_error("basis index out of range");
  return b < e_dim() ? spec_.e[size_t(b)].parity : spec_.c[size_t(b - e_dim())].parity;
}

const std::string& SuperGroup::basis_name(int b) const {
  if (b < 0 || b >= dim()) throw kernel_error("basis index out of range");
  return b < e_dim() ? spec_.e[size_t(b)].name : spec_.c[size_t(b - e_dim())].name;
}

GroupPoint SuperGroup::identity() const {
  GroupPoint g;
  g.s.assign(size_t(dim()), SuperScalar(*ctx_));
  return g;
}

GroupPoint SuperGroup::symbolic_point() const {
  GroupPoint g;
  g.s.reserve(size_t(dim()));
  for (int k = 0; k < dim(); ++k) g.s.push_back(sym(*ctx_, coord(k)));
  return g;
}

GroupPoint SuperGroup::symbolic_point(const std::string& prefix) const {
  GroupPoint g;
  g.s.reserve(size_t(dim()));
  for (int k = 0; k < dim(); ++k) {
    std::string nm = prefix + ctx_->name(coord(k));
    SymbolId s = ctx_->has(nm) ? ctx_->id(nm) : ctx_->declare(nm, slot_parity(k));
    if (ctx_->parity(s) != slot_parity(k))
      throw kernel_error("prefixed point symbol has the wrong parity: " + nm);
    g.s.push_back(sym(*ctx_, s));
  }
  return g;
}

GroupPoint SuperGroup::exp_point(const AlgElem& v) const {
  check_elem(v);
  GroupPoint g = identity();
  for (int b = 0; b < dim(); ++b) g.s[size_t(slot_of_basis_[size_t(b)])] = v.a[size_t(b)];
  check_point(g);
  return g;
}

void SuperGroup::check_point(const GroupPoint& g) const {
  if (int(g.s.size()) != dim()) throw kernel_error("group point: wrong slot count");
  for (int k = 0; k < dim(); ++k)
    if (!has_parity(g.s[size_t(k)], slot_parity(k)))
      throw kernel_error("group point: slot " + ctx_->name(coord(k)) +
                         " is not homogeneous of the slot parity");
}

std::vector<SuperScalar> SuperGroup::central_gain(const GroupPoint& lhs,
                                                  const GroupPoint& rhs) const {
  AlgElem br = bracket(point_to_elem(lhs), point_to_elem(rhs));
  return {br.a.begin() + e_dim(), br.a.end()};
}

GroupPoint SuperGroup::multiply(const GroupPoint& lhs, const GroupPoint& rhs) const {
  check_point(lhs);
  check_point(rhs);
  std::vector<SuperScalar> gain = central_gain(lhs, rhs);
  GroupPoint out;
  out.s.reserve(size_t(dim()));
  for (int k = 0; k < dim(); ++k) {
    SuperScalar v = lhs.s[size_t(k)] + rhs.s[size_t(k)];
    int b = basis_of_slot_[size_t(k)];
    if (b >= e_dim()) v += scale(GRat(Rat(1, 2)), gain[size_t(b - e_dim())]);
    out.s.push_back(std::move(v));
  }
  return out;
}

GroupPoint SuperGroup::inverse(const GroupPoint& g) const {
  check_point(g);
  GroupPoint out;
  out.s.reserve(size_t(dim()));
  for (const SuperScalar& v : g.s) out.s.push_back(-v);
  return out;
}

GroupPoint SuperGroup::triple_product(const GroupPoint& g, const GroupPoint& h) const {
  return multiply(multiply(g, h), inverse(g));
}

AlgElem SuperGroup::zero_elem() const {
  AlgElem v;
  v.a.assign(size_t(dim()), SuperScalar(*ctx_));
  return v;
}

AlgElem SuperGroup::basis_elem(int b) const {
  if (b < 0 || b >= dim()) throw kernel_error("basis index out of range");
  AlgElem v = zero_elem();
  v.a[size_t(b)] = num(*ctx_, 1);
  return v;
}

void SuperGroup::check_elem(const AlgElem& v) const {
  if (int(v.a.size()) != dim()) throw kernel_error("algebra element: wrong coefficient count");
}

AlgElem SuperGroup::point_to_elem(const GroupPoint& g) const {
  if (int(g.s.size()) != dim()) throw kernel_error("group point: wrong slot count");
  AlgElem v = zero_elem();
  for (int b = 0; b < dim(); ++b) v.a[size_t(b)] = g.s[size_t(slot_of_basis_[size_t(b)])];
  return v;
}

AlgElem SuperGroup::bracket(const AlgElem& x, const AlgElem& y) const {
  check_elem(x);
  check_elem(y);
  AlgElem out = zero_elem();
  for (int i = 0; i < e_dim(); ++i) {
    if (x.a[size_t(i)].is_zero()) continue;
    for (int j = 0; j < e_dim(); ++j) {
      if (y.a[size_t(j)].is_zero()) continue;
      bool any = false;
      for (int k = 0; k < c_dim(); ++k)
        if (!spec_.omega[size_t(i)][size_t(j)][size_t(k)].is_zero()) any = true;
      if (!any) continue;
      // [x^i e_i, y^j e_j] = (-1)^{|y^j||e_i|} x^i y^j Omega(e_i,e_j): the
      // right coefficient moves across e_i, so its odd part flips sign when
      // e_i is odd
      SuperScalar prod =
          x.a[size_t(i)] * move_adjusted(y.a[size_t(j)], spec_.e[size_t(i)].parity);
      if (prod.is_zero()) continue;
      for (int k = 0; k < c_dim(); ++k) {
        const GRat& cfk = spec_.omega[size_t(i)][size_t(j)][size_t(k)];
        if (!cfk.is_zero()) out.a[size_t(e_dim() + k)] += scale(cfk, prod);
      }
    }
  }
  return out;
}

bool SuperGroup::jacobi_holds() const {
  auto elem_is_zero = [](const AlgElem& v) {
    for (const SuperScalar& c : v.a)
      if (!c.is_zero()) return false;
    return true;
  };
  for (int a = 0; a < dim(); ++a)
    for (int b = 0; b < dim(); ++b)
      for (int c = 0; c < dim(); ++c) {
        int pa = parity_bit(basis_parity(a)), pb = parity_bit(basis_parity(b)),
            pc = parity_bit(basis_parity(c));
        AlgElem t1 = bracket(basis_elem(a), bracket(basis_elem(b), basis_elem(c)));
        AlgElem t2 = bracket(basis_elem(b), bracket(basis_elem(c), basis_elem(a)));
        AlgElem t3 = bracket(basis_elem(c), bracket(basis_elem(a), basis_elem(b)));
        AlgElem sum = zero_elem();
        for (int n = 0; n < dim(); ++n) {
          sum.a[size_t(n)] += scale(GRat((pa & pc) ? -1 : 1), t1.a[size_t(n)]);
          sum.a[size_t(n)] += scale(GRat((pb & pa) ? -1 : 1), t2.a[size_t(n)]);
          sum.a[size_t(n)] += scale(GRat((pc & pb) ? -1 : 1), t3.a[size_t(n)]);
        }
        if (!elem_is_zero(sum)) return false;
      }
  return true;
}

std::vector<AlgElem> SuperGroup::adjoint_columns(const GroupPoint& g) const {
  check_point(g);
  std::map<SymbolId, SuperScalar> kill{{s_even_, SuperScalar(*ctx_)},
                                       {s_odd_, SuperScalar(*ctx_)}};
  std::vector<AlgElem> cols;
  cols.reserve(size_t(dim()));
  for (int b = 0; b < dim(); ++b) {
    SymbolId s = scratch(basis_parity(b));
    GroupPoint h = identity();
    h.s[size_t(slot_of_basis_[size_t(b)])] = sym(*ctx_, s);
    GroupPoint t = triple_product(g, h);
    AlgElem col = zero_elem();
    for (int j = 0; j < dim(); ++j)
      col.a[size_t(j)] =
          substitute(partial_left(t.s[size_t(slot_of_basis_[size_t(j)])], s), kill);
    cols.push_back(std::move(col));
  }
  return cols;
}

AlgElem SuperGroup::adjoint(const GroupPoint& g, const AlgElem& v) const {
  check_elem(v);
  std::vector<AlgElem> cols = adjoint_columns(g);
  AlgElem out = zero_elem();
  for (int b = 0; b < dim(); ++b) {
    if (v.a[size_t(b)].is_zero()) continue;
    for (int j = 0; j < dim(); ++j)
      if (!cols[size_t(b)].a[size_t(j)].is_zero())
        out.a[size_t(j)] += v.a[size_t(b)] * cols[size_t(b)].a[size_t(j)];
  }
  return out;
}

std::vector<SuperVectorField> SuperGroup::left_invariant_fields() const {
  GroupPoint g = symbolic_point();
  std::map<SymbolId, SuperScalar> kill{{s_even_, SuperScalar(*ctx_)},
                                       {s_odd_, SuperScalar(*ctx_)}};
  std::vector<SuperVectorField> out;
  out.reserve(size_t(dim()));
  for (int b = 0; b < dim(); ++b) {
    SymbolId s = scratch(basis_parity(b));
    GroupPoint h = identity();
    h.s[size_t(slot_of_basis_[size_t(b)])] = sym(*ctx_, s);
    GroupPoint m = multiply(g, h);
    SuperVectorField X(chart_);
    for (int k = 0; k < dim(); ++k)
      X.set(coord(k), substitute(partial_left(m.s[size_t(k)], s), kill));
    out.push_back(std::move(X));
  }
  return out;
}

std::vector<SuperScalar> SuperGroup::left_invariant_forms(const SignConventions& sc) const {
  std::vector<SuperVectorField> L = left_invariant_fields();
  std::vector<SuperScalar> out;
  out.reserve(size_t(dim()));
  for (int b = 0; b < dim(); ++b) {
    SuperScalar ansatz(*ctx_);
    std::vector<SymbolId> unknowns;
    for (int k = 0; k < dim(); ++k) {
      Parity pu = add(basis_parity(b), slot_parity(k));
      SymbolId u = pu == Parity::Even ? u_even_[size_t(k)] : u_odd_[size_t(k)];
      unknowns.push_back(u);
      ansatz += sym(*ctx_, u) * sym(*ctx_, ctx_->diff_of(coord(k)));
    }
    std::vector<std::pair<SuperScalar, SuperScalar>> eqs;
    for (int i = 0; i < dim(); ++i)
      eqs.push_back({contract(L[size_t(i)], ansatz, sc), num(*ctx_, i == b ? 1 : 0)});
    std::map<SymbolId, SuperScalar> sol = solve_linear(*ctx_, eqs, unknowns);
    out.push_back(substitute(ansatz, sol));
  }
  return out;
}

std::vector<std::vector<AlgElem>> SuperGroup::structure_constants() const {
  std::vector<SuperVectorField> L = left_invariant_fields();
  std::map<SymbolId, SuperScalar> at_identity;
  for (int k = 0; k < dim(); ++k) at_identity[coord(k)] = SuperScalar(*ctx_);
  std::vector<std::vector<AlgElem>> out(static_cast<size_t>(dim()));
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) {
      SuperVectorField br = field_bracket(L[size_t(i)], L[size_t(j)]);
      AlgElem cij = zero_elem();
      for (int k = 0; k < dim(); ++k)
        cij.a[size_t(basis_of_slot_[size_t(k)])] = substitute(br.get(coord(k)), at_identity);
      out[size_t(i)].push_back(std::move(cij));
    }
  }
  return out;
}

DualSpace::DualSpace(const SuperGroup& G, std::vector<std::string> even_names,
                     std::vector<std::string> odd_names, const std::vector<int>& invertible_even)
    : G_(&G) {
  SymbolContext& ctx = G.context();
  int n = G.dim();
  if (int(even_names.size()) != n || int(odd_names.size()) != n)
    throw kernel_error("dual chart: need one even and one odd name per basis direction");
  auto inv = [&](int b) {
    return std::find(invertible_even.begin(), invertible_even.end(), b) != invertible_even.end();
  };
  for (int b = 0; b < n; ++b)
    ev_.push_back(ctx.declare(even_names[size_t(b)], Parity::Even, inv(b)));
  for (int b = 0; b < n; ++b) od_.push_back(ctx.declare(odd_names[size_t(b)], Parity::Odd));
  std::vector<SymbolId> zs(ev_);
  zs.insert(zs.end(), od_.begin(), od_.end());
  chart_ = Chart(ctx, zs);
  auto fresh = [&ctx](const std::string& base, Parity p) {
    std::string name = base;
    for (int k = 1; ctx.has(name); ++k) name = base + std::to_string(k);
    return ctx.declare(name, p);
  };
  fs_even_ = fresh("_fs", Parity::Even);
  fs_odd_ = fresh("_ft", Parity::Odd);
}

DualPoint DualSpace::generic_point() const {
  const SymbolContext& ctx = G_->context();
  DualPoint mu;
  for (SymbolId z : ev_) mu.ev.push_back(sym(ctx, z));
  for (SymbolId z : od_) mu.od.push_back(sym(ctx, z));
  return mu;
}

void DualSpace::check_point(const DualPoint& mu) const {
  size_t n = size_t(G_->dim());
  if (mu.ev.size() != n || mu.od.size() != n)
    throw kernel_error("dual point: wrong component count");
  for (size_t b = 0; b < n; ++b) {
    if (!has_parity(mu.ev[b], Parity::Even))
      throw kernel_error("dual point: even component " + std::to_string(b) + " is not even");
    if (!has_parity(mu.od[b], Parity::Odd))
      throw kernel_error("dual point: odd component " + std::to_string(b) + " is not odd");
  }
}

SuperScalar DualSpace::pair(const AlgElem& v, const DualPoint& mu) const {
  G_->check_elem(v);
  check_point(mu);
  SuperScalar out(G_->context());
  for (int b = 0; b < G_->dim(); ++b) {
    if (v.a[size_t(b)].is_zero()) continue;
    SuperScalar comp = mu.ev[size_t(b)];
    if (G_->basis_parity(b) == Parity::Odd)
      comp -= mu.od[size_t(b)];
    else
      comp += mu.od[size_t(b)];
    out += v.a[size_t(b)] * comp;
  }
  return out;
}

DualPoint DualSpace::coadjoint(const GroupPoint& g, const DualPoint& mu) const {
  check_point(mu);
  std::vector<AlgElem> cols = G_->adjoint_columns(G_->inverse(g));
  DualPoint nu;
  for (int b = 0; b < G_->dim(); ++b) {
    SuperScalar p = pair(cols[size_t(b)], mu);
    nu.ev.push_back(parity_part(p, Parity::Even));
    SuperScalar po = parity_part(p, Parity::Odd);
    nu.od.push_back(G_->basis_parity(b) == Parity::Odd ? -po : po);
  }
  return nu;
}

SuperVectorField DualSpace::fundamental_field(const AlgElem& v, Parity pv,
                                              const SignConventions& sc) const {
  const SymbolContext& ctx = G_->context();
  G_->check_elem(v);
  for (int b = 0; b < G_->dim(); ++b)
    if (!v.a[size_t(b)].is_zero() && !has_parity(v.a[size_t(b)], add(pv, G_->basis_parity(b))))
      throw kernel_error("fundamental field: coefficient of " + G_->basis_name(b) +
                         " does not match the requested parity");
  SymbolId s = pv == Parity::Even ? fs_even_ : fs_odd_;
  SuperScalar ss = sym(ctx, s);
  AlgElem sv = G_->zero_elem();
  for (int b = 0; b < G_->dim(); ++b) sv.a[size_t(b)] = ss * v.a[size_t(b)];
  DualPoint nu = coadjoint(G_->exp_point(sv), generic_point());
  std::map<SymbolId, SuperScalar> kill{{s, SuperScalar(ctx)}};
  SuperVectorField X(chart_);
  for (int b = 0; b < G_->dim(); ++b) {
    SuperScalar delta = substitute(partial_left(nu.ev[size_t(b)], s), kill) +
                        substitute(partial_left(nu.od[size_t(b)], s), kill);
    if (sc.fund_negate) delta = -delta;
    X.set(even_coord(b), parity_part(delta, pv));
    X.set(odd_coord(b), parity_part(delta, flip(pv)));
  }
  return X;
}

StandardModel::StandardModel(SymbolContext& ctx)
    : group(ctx, omega33(), {"a1", "a2", "a3", "b", "al4", "al5", "al6", "be"}),
      dual(group, {"x1", "x2", "x3", "xb4", "xb5", "xb6", "y0", "yb1"},
           {"xib1", "xib2", "xib3", "xi4", "xi5", "xi6", "etb0", "eta1"}, {6, 7}) {}

}  // namespace superalg
