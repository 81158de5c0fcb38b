#include "superalg/calculus.hpp"

#include <algorithm>
#include <set>

namespace superalg {

SuperVectorField& SuperVectorField::operator+=(const SuperVectorField& o) {
  if (!chart) chart = o.chart;
  if (chart != o.chart) throw kernel_error("vector fields on different charts");
  for (auto& [z, c] : o.coeff) {
    auto it = coeff.find(z);
    if (it == coeff.end())
      coeff[z] = c;
    else {
      it->second += c;
      if (it->second.is_zero()) coeff.erase(it);
    }
  }
  return *this;
}

SuperVectorField SuperVectorField::operator-() const {
  SuperVectorField r = *this;
  for (auto& [z, c] : r.coeff) c = -c;
  return r;
}

SuperVectorField scale_field(const SuperScalar& c, const SuperVectorField& X) {
  SuperVectorField r(*X.chart);
  for (auto& [z, v] : X.coeff) r.set(z, c * v);
  return r;
}

bool operator==(const SuperVectorField& a, const SuperVectorField& b) {
  if (a.chart != b.chart) return false;
  std::set<SymbolId> zs;
  for (auto& [z, c] : a.coeff) zs.insert(z);
  for (auto& [z, c] : b.coeff) zs.insert(z);
  for (SymbolId z : zs)
    if (a.get(z) != b.get(z)) return false;
  return true;
}

SuperVectorField field_parity_part(const SuperVectorField& X, Parity p) {
  SuperVectorField r(*X.chart);
  const SymbolContext& ctx = *X.chart->ctx;
  for (auto& [z, c] : X.coeff) r.set(z, parity_part(c, add(p, ctx.parity(z))));
  return r;
}

bool field_has_parity(const SuperVectorField& X, Parity p) {
  const SymbolContext& ctx = *X.chart->ctx;
  for (auto& [z, c] : X.coeff)
    if (!has_parity(c, add(p, ctx.parity(z)))) return false;
  return true;
}

namespace {

// differential factors of one term, counted with exponents
int term_degree(const SymbolContext& ctx, const Term& t) {
  int k = 0;
  for (auto& [s, e] : t.m)
    if (ctx.is_differential(s)) k += int(e);
  for (SymbolId s : t.w)
    if (ctx.is_differential(s)) ++k;
  return k;
}

// factors whose source coordinate is odd: odd letters in the word plus the
// exponents of the (odd-coordinate) differentials in the monomial part
int odd_source_weight(const SymbolContext& ctx, const Term& t) {
  int n = 0;
  for (auto& [s, e] : t.m)
    if (ctx.is_differential(s)) n += int(e);
  for (SymbolId s : t.w)
    if (!ctx.is_differential(s)) ++n;
  return n;
}

// everything that is not a plain even coordinate, label or phase
int charged_count(const SymbolContext& ctx, const Term& t) {
  int n = int(t.w.size());
  for (auto& [s, e] : t.m)
    if (ctx.is_differential(s)) n += int(e);
  return n;
}

SuperScalar one_term(const SymbolContext& ctx, Term t) {
  SuperScalar s(ctx);
  s.terms.push_back(std::move(t));
  return s;
}

}  // namespace

int form_degree(const SuperScalar& w) {
  const SymbolContext& ctx = *w.ctx;
  int deg = -1;
  for (const Term& t : w.terms) {
    int k = term_degree(ctx, t);
    if (deg >= 0 && deg != k) throw kernel_error("form of mixed degree");
    deg = k;
  }
  return deg < 0 ? 0 : deg;
}

SuperScalar degree_part(const SuperScalar& w, int k) {
  const SymbolContext& ctx = *w.ctx;
  SuperScalar out(ctx);
  for (const Term& t : w.terms)
    if (term_degree(ctx, t) == k) out.terms.push_back(t);
  return out;
}

SuperScalar source_parity_part(const SuperScalar& w, Parity p) {
  const SymbolContext& ctx = *w.ctx;
  SuperScalar out(ctx);
  for (const Term& t : w.terms)
    if (Parity(odd_source_weight(ctx, t) % 2) == p) out.terms.push_back(t);
  return out;
}

SuperScalar wedge(const SuperScalar& a, const SuperScalar& b) {
  const SymbolContext& ctx = *a.ctx;
  SuperScalar out(ctx);
  for (const Term& ta : a.terms) {
    SuperScalar sa = one_term(ctx, ta);
    bool da = term_degree(ctx, ta) % 2;
    for (const Term& tb : b.terms) {
      SuperScalar piece = sa * one_term(ctx, tb);
      out += (da && odd_source_weight(ctx, tb) % 2) ? -piece : piece;
    }
  }
  return out;
}

SuperScalar d(const Chart& ch, const SuperScalar& w, SignConventions sc) {
  const SymbolContext& ctx = *ch.ctx;
  SuperScalar out(ctx);
  // The fresh differential is created where the coordinate factor stood and
  // then carried to the far left of the term, at one sign per factor of odd
  // source it crosses.  Splitting by that weight keeps the loop term-free.
  for (int q = 0; q < 2; ++q) {
    SuperScalar wq = source_parity_part(w, Parity(q));
    if (wq.is_zero()) continue;
    for (SymbolId z : ch.coords) {
      SuperScalar pd = partial_left(wq, z);
      if (pd.is_zero()) continue;
      SuperScalar dz = sym(ctx, ctx.diff_of(z));
      if (!sc.d_front) {
        out += pd * dz;
        continue;
      }
      int carry = (q + (ctx.parity(z) == Parity::Odd ? 1 : 0)) % 2;
      out += carry ? -(dz * pd) : dz * pd;
    }
  }
  return out;
}

// one piece c*d/dz of a field acting on w; the coefficient multiplies the
// stripped term from the left, and the removal sign depends only on what
// kind of differential is removed and on what else the term carries
static SuperScalar contract_part(const SuperScalar& c, SymbolId dz,
                                 const SuperScalar& w, SignConventions sc) {
  const SymbolContext& ctx = *w.ctx;
  SuperScalar out(ctx);
  bool dz_odd = ctx.parity(dz) == Parity::Odd;  // differential of an even coordinate
  for (const Term& t : w.terms) {
    if (dz_odd) {
      auto it = std::find(t.w.begin(), t.w.end(), dz);
      if (it == t.w.end()) continue;
      size_t idx = size_t(it - t.w.begin());
      size_t hops = sc.contract_from_right ? (t.w.size() - 1 - idx) : idx;
      Term tp{hops % 2 ? -t.c : t.c, t.m, t.p, Word(t.w.begin(), it)};
      tp.w.insert(tp.w.end(), it + 1, t.w.end());
      out += c * one_term(ctx, std::move(tp));
    } else {
      int32_t k = 0;
      Mono m2;
      for (auto& [s, e] : t.m) {
        if (s == dz) {
          k = e;
          if (e != 1) m2.push_back({s, e - 1});
        } else {
          m2.push_back({s, e});
        }
      }
      if (!k) continue;
      int sgn = 1;
      if (sc.contract_from_right && (charged_count(ctx, t) - 1) % 2) sgn = -1;
      GRat cc = t.c * GRat(int(k));
      out += c * one_term(ctx, Term{sgn < 0 ? -cc : cc, m2, t.p, t.w});
    }
  }
  return out;
}

SuperScalar contract(const SuperVectorField& X, const SuperScalar& w, SignConventions sc) {
  const SymbolContext& ctx = *X.chart->ctx;
  SuperScalar out(ctx);
  for (auto& [z, cz] : X.coeff) {
    SymbolId dz = ctx.diff_of(z);
    if (dz < 0) throw kernel_error("contract: coordinate has no differential");
    out += contract_part(cz, dz, w, sc);
  }
  return out;
}

SuperScalar contract(const std::vector<SuperVectorField>& Xs, const SuperScalar& w,
                     SignConventions sc) {
  SuperScalar r = w;
  for (const SuperVectorField& X : Xs) r = contract(X, r, sc);
  return r;
}

SuperScalar lie(const SuperVectorField& X, const SuperScalar& w, SignConventions sc) {
  const Chart& ch = *X.chart;
  SuperScalar out(*ch.ctx);
  for (int fp = 0; fp < 2; ++fp) {
    SuperVectorField Xp = field_parity_part(X, Parity(fp));
    if (Xp.is_zero()) continue;
    SuperScalar a = contract(Xp, d(ch, w, sc), sc);
    SuperScalar b = d(ch, contract(Xp, w, sc), sc);
    out += fp == 0 ? a + b : a - b;
  }
  return out;
}

SuperScalar apply(const SuperVectorField& X, const SuperScalar& f) {
  SuperScalar out(*X.chart->ctx);
  for (auto& [z, c] : X.coeff) out += c * partial_left(f, z);
  return out;
}

SuperVectorField field_bracket(const SuperVectorField& X, const SuperVectorField& Y) {
  if (X.chart != Y.chart) throw kernel_error("field_bracket: fields on different charts");
  const Chart& ch = *X.chart;
  SuperVectorField out(ch);
  for (int p = 0; p < 2; ++p) {
    SuperVectorField Xp = field_parity_part(X, Parity(p));
    if (Xp.is_zero()) continue;
    for (int q = 0; q < 2; ++q) {
      SuperVectorField Yq = field_parity_part(Y, Parity(q));
      if (Yq.is_zero()) continue;
      bool flip_sign = p == 1 && q == 1;
      for (SymbolId z : ch.coords) {
        SuperScalar zz = sym(*ch.ctx, z);
        SuperScalar xy = apply(Xp, apply(Yq, zz));
        SuperScalar yx = apply(Yq, apply(Xp, zz));
        SuperScalar val = flip_sign ? xy + yx : xy - yx;
        if (!val.is_zero()) out.set(z, out.get(z) + val);
      }
    }
  }
  return out;
}

SuperScalar pullback(const Chart& target, const std::map<SymbolId, SuperScalar>& images,
                     const SuperScalar& w, SignConventions sc) {
  const SymbolContext& ctx = *target.ctx;
  std::map<SymbolId, SuperScalar> full = images;
  for (auto& [z, img] : images) {
    SymbolId dz = ctx.diff_of(z);
    if (dz >= 0) full[dz] = d(target, img, sc);
  }
  return substitute(w, full);
}

namespace {

struct Row {
  std::map<SymbolId, SuperScalar> a;
  SuperScalar b;
};

bool is_unit(const SymbolContext& ctx, const SuperScalar& x) {
  if (x.terms.size() != 1) return false;
  const Term& t = x.terms[0];
  if (!t.w.empty()) return false;
  for (auto& [s, e] : t.m)
    if (!ctx.invertible(s)) return false;
  return true;
}

}  // namespace

std::map<SymbolId, SuperScalar> solve_linear(
    const SymbolContext& ctx, const std::vector<std::pair<SuperScalar, SuperScalar>>& eqs,
    const std::vector<SymbolId>& unknowns) {
  std::set<SymbolId> uset(unknowns.begin(), unknowns.end());

  std::vector<Row> rows;
  for (auto& [lhs, rhs] : eqs) {
    SuperScalar e = lhs - rhs;
    Row row;
    row.b = SuperScalar(ctx);
    for (const Term& t : e.terms) {
      for (auto& [mono, c] : t.p)
        for (auto& [s, ex] : mono)
          if (uset.count(s))
            throw SolveError(SolveError::Kind::Nonlinear,
                             "unknown inside a formal exponent: " + ctx.name(s));
      SymbolId found = -1;
      GRat c = t.c;
      Mono rest;
      for (auto& [s, ex] : t.m) {
        if (uset.count(s)) {
          if (found >= 0 || ex != 1)
            throw SolveError(SolveError::Kind::Nonlinear,
                             "equations are not linear in the unknowns");
          found = s;
        } else {
          rest.push_back({s, ex});
        }
      }
      Word wrest;
      for (size_t i = 0; i < t.w.size(); ++i) {
        if (uset.count(t.w[i])) {
          if (found >= 0)
            throw SolveError(SolveError::Kind::Nonlinear,
                             "equations are not linear in the unknowns");
          found = t.w[i];
          // move the odd unknown to the rightmost slot of the word
          if ((t.w.size() - 1 - i) % 2) c = -c;
        } else {
          wrest.push_back(t.w[i]);
        }
      }
      SuperScalar piece(ctx);
      piece.terms.push_back(Term{c, rest, t.p, wrest});
      if (found >= 0) {
        auto it = row.a.find(found);
        if (it == row.a.end())
          row.a[found] = piece;
        else
          it->second += piece;
      } else {
        row.b += piece;
      }
    }
    for (auto it = row.a.begin(); it != row.a.end();) {
      if (it->second.is_zero())
        it = row.a.erase(it);
      else
        ++it;
    }
    rows.push_back(std::move(row));
  }

  std::vector<bool> used(rows.size(), false);
  std::vector<std::pair<SymbolId, size_t>> pivots;
  std::vector<SymbolId> free_vars;
  for (SymbolId u : unknowns) {
    size_t pick = rows.size();
    for (size_t r = 0; r < rows.size(); ++r) {
      if (used[r]) continue;
      auto it = rows[r].a.find(u);
      if (it != rows[r].a.end() && is_unit(ctx, it->second)) {
        pick = r;
        break;
      }
    }
    if (pick == rows.size()) {
      bool seen = false;
      for (size_t r = 0; r < rows.size(); ++r)
        if (!used[r] && rows[r].a.count(u)) seen = true;
      if (seen)
        throw SolveError(SolveError::Kind::NonUnitPivot,
                         "no invertible pivot for unknown " + ctx.name(u));
      free_vars.push_back(u);
      continue;
    }
    Row& p = rows[pick];
    SuperScalar inv = inverse(p.a[u]);
    for (auto& [v, c] : p.a) c = inv * c;
    p.b = inv * p.b;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == pick) continue;
      auto it = rows[r].a.find(u);
      if (it == rows[r].a.end()) continue;
      SuperScalar f = it->second;
      for (auto& [v, c] : p.a) {
        auto jt = rows[r].a.find(v);
        if (jt == rows[r].a.end())
          rows[r].a[v] = -(f * c);
        else {
          jt->second -= f * c;
        }
      }
      rows[r].b -= f * p.b;
      for (auto jt = rows[r].a.begin(); jt != rows[r].a.end();) {
        if (jt->second.is_zero())
          jt = rows[r].a.erase(jt);
        else
          ++jt;
      }
    }
    used[pick] = true;
    pivots.push_back({u, pick});
  }

  for (size_t r = 0; r < rows.size(); ++r) {
    if (used[r]) continue;
    if (!rows[r].a.empty())
      throw SolveError(SolveError::Kind::NonUnitPivot,
                       "leftover non-pivoted coefficients");
    if (!rows[r].b.is_zero())
      throw SolveError(SolveError::Kind::Inconsistent,
                       "inconsistent equation, residue " + to_string(rows[r].b));
  }
  if (!free_vars.empty()) {
    std::string names;
    for (SymbolId u : free_vars) names += " " + ctx.name(u);
    throw SolveError(SolveError::Kind::Underdetermined, "free unknowns:" + names,
                     free_vars);
  }

  std::map<SymbolId, SuperScalar> out;
  for (auto& [u, r] : pivots) {
    // after full elimination the pivot row reads u + b = 0
    if (rows[r].a.size() != 1)
      throw SolveError(SolveError::Kind::NonUnitPivot, "pivot row not fully reduced");
    out[u] = -rows[r].b;
  }
  return out;
}

}  // namespace superalg
