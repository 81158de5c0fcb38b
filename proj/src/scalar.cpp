#include "superalg/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace superalg {

int cmp_mono(const Mono& a, const Mono& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t k = 0; k < n; ++k) {
    if (a[k].first != b[k].first) return a[k].first < b[k].first ? -1 : 1;
    if (a[k].second != b[k].second) return a[k].second < b[k].second ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

int cmp_word(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
  return 0;
}

int cmp_phase(const Phase& a, const Phase& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t k = 0; k < n; ++k) {
    int c = cmp_mono(a[k].first, b[k].first);
    if (c) return c;
    c = cmp(a[k].second, b[k].second);
    if (c) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

int cmp_term_key(const Term& a, const Term& b) {
  int c = cmp_word(a.w, b.w);
  if (c) return c;
  c = cmp_phase(a.p, b.p);
  if (c) return c;
  return cmp_mono(a.m, b.m);
}

Mono mul_mono(const Mono& a, const Mono& b) {
  Mono out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first == b[j].first) {
      int32_t e = a[i].second + b[j].second;
      if (e != 0) out.push_back({a[i].first, e});
      ++i, ++j;
    } else if (a[i].first < b[j].first) {
      out.push_back(a[i++]);
    } else {
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return out;
}

Phase add_phase(const Phase& a, const Phase& b) {
  Phase out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = cmp_mono(a[i].first, b[j].first);
    if (c == 0) {
      GRat s = a[i].second + b[j].second;
      if (!s.is_zero()) out.push_back({a[i].first, s});
      ++i, ++j;
    } else if (c < 0) {
      out.push_back(a[i++]);
    } else {
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return out;
}

// merge two ascending odd words; returns the sign, 0 when a factor repeats
static int merge_words(const Word& a, const Word& b, Word& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  int sign = 1;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      // b[j] moves past the remaining factors of a
      if ((a.size() - i) % 2) sign = -sign;
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return sign;
}

static void check_ctx(const SuperScalar& a, const SuperScalar& b) {
  if (!a.ctx || !b.ctx || a.ctx != b.ctx) throw kernel_error("mixed or missing symbol contexts");
}

SuperScalar make_scalar(const SymbolContext& ctx, std::vector<Term> ts) {
  std::sort(ts.begin(), ts.end(),
            [](const Term& a, const Term& b) { return cmp_term_key(a, b) < 0; });
  SuperScalar out(ctx);
  for (auto& t : ts) {
    if (t.c.is_zero()) continue;
    if (!out.terms.empty() && cmp_term_key(out.terms.back(), t) == 0) {
      out.terms.back().c += t.c;
      if (out.terms.back().c.is_zero()) out.terms.pop_back();
    } else {
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

SuperScalar num(const SymbolContext& ctx, const GRat& c) {
  SuperScalar out(ctx);
  if (!c.is_zero()) out.terms.push_back(Term{c, {}, {}, {}});
  return out;
}
SuperScalar num(const SymbolContext& ctx, int n) { return num(ctx, GRat(n)); }
SuperScalar frac(const SymbolContext& ctx, int p, int q) {
  return num(ctx, GRat(Rat(p) / Rat(q)));
}
SuperScalar ifrac(const SymbolContext& ctx, int p, int q) {
  return num(ctx, GRat(Rat(0), Rat(p) / Rat(q)));
}

SuperScalar sym(const SymbolContext& ctx, SymbolId s) {
  SuperScalar out(ctx);
  if (ctx.parity(s) == Parity::Even)
    out.terms.push_back(Term{GRat(1), Mono{{s, 1}}, {}, {}});
  else
    out.terms.push_back(Term{GRat(1), {}, {}, Word{s}});
  return out;
}
SuperScalar sym(const SymbolContext& ctx, const std::string& name) {
  return sym(ctx, ctx.id(name));
}

SuperScalar& SuperScalar::operator+=(const SuperScalar& o) {
  check_ctx(*this, o);
  std::vector<Term> ts = std::move(terms);
  ts.insert(ts.end(), o.terms.begin(), o.terms.end());
  *this = make_scalar(*ctx, std::move(ts));
  return *this;
}

SuperScalar& SuperScalar::operator-=(const SuperScalar& o) {
  *this += -o;
  return *this;
}

SuperScalar SuperScalar::operator-() const {
  SuperScalar r = *this;
  for (auto& t : r.terms) t.c = -t.c;
  return r;
}

SuperScalar operator*(const SuperScalar& a, const SuperScalar& b) {
  check_ctx(a, b);
  std::vector<Term> ts;
  ts.reserve(a.terms.size() * b.terms.size());
  Word w;
  for (const Term& s : a.terms)
    for (const Term& t : b.terms) {
      int sg = merge_words(s.w, t.w, w);
      if (!sg) continue;
      Term r;
      r.c = s.c * t.c;
      if (sg < 0) r.c = -r.c;
      r.m = mul_mono(s.m, t.m);
      r.p = add_phase(s.p, t.p);
      r.w = w;
      ts.push_back(std::move(r));
    }
  return make_scalar(*a.ctx, std::move(ts));
}

SuperScalar& SuperScalar::operator*=(const SuperScalar& o) {
  *this = *this * o;
  return *this;
}

bool operator==(const SuperScalar& a, const SuperScalar& b) {
  if (a.ctx != b.ctx) return false;
  if (a.terms.size() != b.terms.size()) return false;
  for (size_t k = 0; k < a.terms.size(); ++k) {
    const Term& s = a.terms[k];
    const Term& t = b.terms[k];
    if (s.c != t.c || cmp_term_key(s, t) != 0) return false;
  }
  return true;
}

SuperScalar scale(const GRat& c, const SuperScalar& x) {
  if (c.is_zero()) return SuperScalar(*x.ctx);
  SuperScalar r = x;
  for (auto& t : r.terms) t.c = t.c * c;
  return r;
}

SuperScalar pow_int(const SuperScalar& x, int k) {
  if (k < 0) return pow_int(inverse(x), -k);
  SuperScalar r = num(*x.ctx, 1);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

Parity term_parity(const Term& t) {
  return t.w.size() % 2 ? Parity::Odd : Parity::Even;
}

bool has_parity(const SuperScalar& x, Parity p) {
  for (auto& t : x.terms)
    if (term_parity(t) != p) return false;
  return true;
}

bool is_homogeneous(const SuperScalar& x) {
  return has_parity(x, Parity::Even) || has_parity(x, Parity::Odd);
}

SuperScalar parity_part(const SuperScalar& x, Parity p) {
  SuperScalar out(*x.ctx);
  for (auto& t : x.terms)
    if (term_parity(t) == p) out.terms.push_back(t);
  return out;
}

bool contains_symbol(const SuperScalar& x, SymbolId s) {
  for (auto& t : x.terms) {
    for (auto& [id, e] : t.m)
      if (id == s) return true;
    for (auto& [mono, c] : t.p)
      for (auto& [id, e] : mono)
        if (id == s) return true;
    for (SymbolId id : t.w)
      if (id == s) return true;
  }
  return false;
}

SuperScalar substitute(const SuperScalar& x, const std::map<SymbolId, SuperScalar>& images) {
  if (!x.ctx) throw kernel_error("substitute on scalar without context");
  const SymbolContext& ctx = *x.ctx;
  for (auto& [s, img] : images) {
    if (img.ctx != x.ctx) throw kernel_error("substitution image from another context");
    if (!has_parity(img, ctx.parity(s)))
      throw kernel_error("substitution changes parity of " + ctx.name(s));
  }
  auto img_pow = [&](SymbolId s, int e) {
    auto it = images.find(s);
    if (it == images.end()) {
      SuperScalar b = sym(ctx, s);
      return pow_int(b, e);
    }
    return pow_int(it->second, e);
  };
  SuperScalar out(ctx);
  for (const Term& t : x.terms) {
    SuperScalar r = num(ctx, t.c);
    for (auto& [s, e] : t.m) r *= img_pow(s, e);
    Phase keep;
    SuperScalar moved(ctx);
    for (auto& [mono, co] : t.p) {
      bool touched = false;
      for (auto& [s, e] : mono)
        if (images.count(s)) { touched = true; break; }
      if (!touched) {
        keep.push_back({mono, co});
        continue;
      }
      SuperScalar mterm = num(ctx, co);
      for (auto& [s, e] : mono) mterm *= img_pow(s, e);
      moved += mterm;
    }
    if (!keep.empty()) {
      SuperScalar ph(ctx);
      ph.terms.push_back(Term{GRat(1), {}, keep, {}});
      r *= ph;
    }
    if (!moved.is_zero()) r *= exp(moved);
    for (SymbolId s : t.w) {
      auto it = images.find(s);
      r *= it == images.end() ? sym(ctx, s) : it->second;
    }
    out += r;
  }
  return out;
}

SuperScalar partial_even(const SuperScalar& x, SymbolId z) {
  const SymbolContext& ctx = *x.ctx;
  if (ctx.parity(z) != Parity::Even) throw kernel_error("partial_even on odd symbol");
  std::vector<Term> ts;
  for (const Term& t : x.terms) {
    for (size_t k = 0; k < t.m.size(); ++k) {
      if (t.m[k].first != z) continue;
      int32_t e = t.m[k].second;
      Term r = t;
      r.c = t.c * GRat(int(e));
      if (e == 1)
        r.m.erase(r.m.begin() + k);
      else
        r.m[k].second = e - 1;
      ts.push_back(std::move(r));
    }
    for (auto& [mono, co] : t.p) {
      for (size_t k = 0; k < mono.size(); ++k) {
        if (mono[k].first != z) continue;
        int32_t e = mono[k].second;
        Mono factor = mono;
        if (e == 1)
          factor.erase(factor.begin() + k);
        else
          factor[k].second = e - 1;
        Term r = t;
        r.c = t.c * co * GRat(int(e));
        r.m = mul_mono(t.m, factor);
        ts.push_back(std::move(r));
      }
    }
  }
  return make_scalar(ctx, std::move(ts));
}

SuperScalar partial_odd_left(const SuperScalar& x, SymbolId s) {
  const SymbolContext& ctx = *x.ctx;
  if (ctx.parity(s) != Parity::Odd) throw kernel_error("partial_odd on even symbol");
  std::vector<Term> ts;
  for (const Term& t : x.terms) {
    auto it = std::find(t.w.begin(), t.w.end(), s);
    if (it == t.w.end()) continue;
    size_t idx = size_t(it - t.w.begin());
    Term r = t;
    r.w.erase(r.w.begin() + idx);
    if (idx % 2) r.c = -r.c;
    ts.push_back(std::move(r));
  }
  return make_scalar(ctx, std::move(ts));
}

SuperScalar partial_odd_right(const SuperScalar& x, SymbolId s) {
  const SymbolContext& ctx = *x.ctx;
  if (ctx.parity(s) != Parity::Odd) throw kernel_error("partial_odd on even symbol");
  std::vector<Term> ts;
  for (const Term& t : x.terms) {
    auto it = std::find(t.w.begin(), t.w.end(), s);
    if (it == t.w.end()) continue;
    size_t idx = size_t(it - t.w.begin());
    Term r = t;
    r.w.erase(r.w.begin() + idx);
    if ((t.w.size() - 1 - idx) % 2) r.c = -r.c;
    ts.push_back(std::move(r));
  }
  return make_scalar(ctx, std::move(ts));
}

SuperScalar partial_left(const SuperScalar& x, SymbolId z) {
  return x.ctx->parity(z) == Parity::Even ? partial_even(x, z) : partial_odd_left(x, z);
}

SuperScalar berezin(const SuperScalar& x, const std::vector<SymbolId>& measure) {
  SuperScalar r = x;
  for (SymbolId s : measure) r = partial_odd_right(r, s);
  return r;
}

SuperScalar exp(const SuperScalar& x) {
  const SymbolContext& ctx = *x.ctx;
  if (!has_parity(x, Parity::Even)) throw kernel_error("exp of odd or mixed scalar");
  Phase ph;
  std::vector<Term> nil;
  for (const Term& t : x.terms) {
    if (!t.w.empty()) {
      nil.push_back(t);
      continue;
    }
    if (!t.p.empty()) throw kernel_error("exp of a scalar already under exp");
    if (t.m.empty()) throw kernel_error("exp of a scalar with a constant part");
    for (auto& [s, e] : t.m)
      if (ctx.is_differential(s)) throw kernel_error("exp of a differential");
    ph.push_back({t.m, t.c});
  }
  std::sort(ph.begin(), ph.end(),
            [](const auto& a, const auto& b) { return cmp_mono(a.first, b.first) < 0; });
  SuperScalar base(ctx);
  base.terms.push_back(Term{GRat(1), {}, ph, {}});

  SuperScalar n = make_scalar(ctx, std::move(nil));
  SuperScalar acc = num(ctx, 1);
  SuperScalar p = num(ctx, 1);
  Rat fact(1);
  for (int k = 1; !n.is_zero(); ++k) {
    if (k > 64) throw kernel_error("exp series does not terminate");
    p = p * n;
    if (p.is_zero()) break;
    fact *= k;
    acc += scale(GRat(Rat(1) / fact), p);
  }
  return base * acc;
}

SuperScalar inverse(const SuperScalar& x) {
  if (!x.ctx) throw kernel_error("inverse of scalar without context");
  const SymbolContext& ctx = *x.ctx;
  const Term* unit = nullptr;
  for (const Term& t : x.terms) {
    if (!t.w.empty()) continue;
    if (unit) throw kernel_error("inverse: odd-free part is not a single term");
    unit = &t;
  }
  if (!unit) throw kernel_error("inverse: scalar has no odd-free part");
  for (auto& [s, e] : unit->m)
    if (!ctx.invertible(s))
      throw kernel_error("inverse: non-invertible symbol " + ctx.name(s));
  Term u;
  u.c = unit->c.inv();
  for (auto& [s, e] : unit->m) u.m.push_back({s, -e});
  for (auto& [mono, co] : unit->p) u.p.push_back({mono, -co});
  SuperScalar uinv(ctx);
  uinv.terms.push_back(std::move(u));

  SuperScalar n = uinv * x - num(ctx, 1);  // only odd-carrying terms remain
  SuperScalar acc = num(ctx, 1);
  SuperScalar p = num(ctx, 1);
  for (int k = 1; !n.is_zero(); ++k) {
    if (k > 64) throw kernel_error("inverse series does not terminate");
    p = p * n;
    if (p.is_zero()) break;
    acc += (k % 2) ? -p : p;
  }
  return acc * uinv;
}

SuperScalar div(const SuperScalar& a, const SuperScalar& b) { return a * inverse(b); }

static std::string mono_str(const SymbolContext& ctx, const Mono& m) {
  std::string out;
  for (auto& [s, e] : m) {
    if (!out.empty()) out += "*";
    out += ctx.name(s);
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

static std::string phase_str(const SymbolContext& ctx, const Phase& p) {
  std::string out;
  for (auto& [mono, c] : p) {
    std::string piece = to_string(c) + "*" + mono_str(ctx, mono);
    if (!out.empty() && piece[0] != '-') out += "+";
    out += piece;
  }
  return out;
}

std::string to_string(const SymbolContext& ctx, const Term& t) {
  std::vector<std::string> parts;
  if (!t.m.empty()) parts.push_back(mono_str(ctx, t.m));
  if (!t.p.empty()) parts.push_back("exp(" + phase_str(ctx, t.p) + ")");
  for (SymbolId s : t.w) parts.push_back(ctx.name(s));
  std::string tail;
  for (auto& p : parts) {
    if (!tail.empty()) tail += "*";
    tail += p;
  }
  if (tail.empty()) return to_string(t.c);
  if (t.c.is_one()) return tail;
  if ((-t.c).is_one()) return "-" + tail;
  std::string c = to_string(t.c);
  if (!c.empty() && (c.find('+') != std::string::npos ||
                     c.find('-', 1) != std::string::npos))
    c = "(" + c + ")";
  return c + "*" + tail;
}

std::string to_string(const SuperScalar& x) {
  if (!x.ctx) return "0";
  if (x.terms.empty()) return "0";
  std::string out;
  for (auto& t : x.terms) {
    std::string piece = to_string(*x.ctx, t);
    if (out.empty()) {
      out = piece;
    } else if (piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

static void validate_mono(const SymbolContext& ctx, const Mono& m, bool in_phase) {
  SymbolId prev = -1;
  for (auto& [s, e] : m) {
    if (s <= prev) throw kernel_error("monomial symbols out of order");
    prev = s;
    if (e == 0) throw kernel_error("zero exponent in monomial");
    if (ctx.parity(s) != Parity::Even) throw kernel_error("odd symbol in monomial");
    if (e < 0 && !ctx.invertible(s))
      throw kernel_error("negative exponent on non-invertible symbol " + ctx.name(s));
    if (in_phase && ctx.is_differential(s))
      throw kernel_error("differential inside a formal exponent");
  }
}

void validate(const SuperScalar& x) {
  if (!x.ctx) throw kernel_error("scalar without context");
  const SymbolContext& ctx = *x.ctx;
  const Term* prev = nullptr;
  for (const Term& t : x.terms) {
    if (t.c.is_zero()) throw kernel_error("zero coefficient kept in normal form");
    validate_mono(ctx, t.m, false);
    const Mono* pm = nullptr;
    for (auto& [mono, c] : t.p) {
      if (mono.empty()) throw kernel_error("constant part inside a formal exponent");
      if (c.is_zero()) throw kernel_error("zero coefficient inside a formal exponent");
      validate_mono(ctx, mono, true);
      if (pm && cmp_mono(*pm, mono) >= 0)
        throw kernel_error("formal exponent monomials out of order");
      pm = &mono;
    }
    SymbolId prevw = -1;
    for (SymbolId s : t.w) {
      if (s <= prevw) throw kernel_error("word symbols out of order");
      prevw = s;
      if (ctx.parity(s) != Parity::Odd) throw kernel_error("even symbol in word");
    }
    if (prev && cmp_term_key(*prev, t) >= 0) throw kernel_error("terms out of order");
    prev = &t;
  }
}

}  // namespace superalg
