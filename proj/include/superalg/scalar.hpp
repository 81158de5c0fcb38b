#pragma once

#include <map>
#include <string>
#include <vector>

#include "superalg/context.hpp"
#include "superalg/gaussian.hpp"

namespace superalg {

// exponent list over even symbols, ascending ids, nonzero exponents,
// negative exponents only on invertible symbols
using Mono = std::vector<std::pair<SymbolId, int32_t>>;

// formal exponent: sum of coeff * mono, ascending distinct monos, nonzero
// coefficients, no constant part, no differentials, even symbols only
using Phase = std::vector<std::pair<Mono, GRat>>;

// product of distinct odd symbols, strictly ascending ids
using Word = std::vector<SymbolId>;

struct Term {
  GRat c;
  Mono m;
  Phase p;
  Word w;
};

int cmp_mono(const Mono& a, const Mono& b);
int cmp_phase(const Phase& a, const Phase& b);
int cmp_word(const Word& a, const Word& b);  // shortlex
int cmp_term_key(const Term& a, const Term& b);

Mono mul_mono(const Mono& a, const Mono& b);
Phase add_phase(const Phase& a, const Phase& b);

// normal form: terms sorted by (word, phase, mono), one term per key,
// nonzero coefficients
struct SuperScalar {
  const SymbolContext* ctx = nullptr;
  std::vector<Term> terms;

  SuperScalar() = default;
  explicit SuperScalar(const SymbolContext& c) : ctx(&c) {}

  bool is_zero() const { return terms.empty(); }

  SuperScalar& operator+=(const SuperScalar& o);
  SuperScalar& operator-=(const SuperScalar& o);
  SuperScalar& operator*=(const SuperScalar& o);
  friend SuperScalar operator+(SuperScalar a, const SuperScalar& b) { a += b; return a; }
  friend SuperScalar operator-(SuperScalar a, const SuperScalar& b) { a -= b; return a; }
  friend SuperScalar operator*(const SuperScalar& a, const SuperScalar& b);
  SuperScalar operator-() const;
  friend bool operator==(const SuperScalar& a, const SuperScalar& b);
  friend bool operator!=(const SuperScalar& a, const SuperScalar& b) { return !(a == b); }
};

SuperScalar num(const SymbolContext& ctx, const GRat& c);
SuperScalar num(const SymbolContext& ctx, int n);
SuperScalar frac(const SymbolContext& ctx, int p, int q);       // p/q
SuperScalar ifrac(const SymbolContext& ctx, int p, int q);      // (p/q)*i
SuperScalar sym(const SymbolContext& ctx, SymbolId s);
SuperScalar sym(const SymbolContext& ctx, const std::string& name);

// sorts, merges duplicate keys, drops zero coefficients
SuperScalar make_scalar(const SymbolContext& ctx, std::vector<Term> ts);

SuperScalar scale(const GRat& c, const SuperScalar& x);
SuperScalar pow_int(const SuperScalar& x, int k);  // negative k via inverse

Parity term_parity(const Term& t);
bool has_parity(const SuperScalar& x, Parity p);   // vacuously true for 0
bool is_homogeneous(const SuperScalar& x);
SuperScalar parity_part(const SuperScalar& x, Parity p);

bool contains_symbol(const SuperScalar& x, SymbolId s);

// parity-preserving algebra substitution; images must share the context
SuperScalar substitute(const SuperScalar& x, const std::map<SymbolId, SuperScalar>& images);

SuperScalar partial_even(const SuperScalar& x, SymbolId z);
SuperScalar partial_odd_left(const SuperScalar& x, SymbolId s);
SuperScalar partial_odd_right(const SuperScalar& x, SymbolId s);
SuperScalar partial_left(const SuperScalar& x, SymbolId z);  // dispatch on parity

// iterated right odd derivative, in the order the measure lists the symbols
SuperScalar berezin(const SuperScalar& x, const std::vector<SymbolId>& measure);

// splits the argument into a formal exponent part (no odd factors) and a
// nilpotent part (at least one odd factor) expanded as a finite series
SuperScalar exp(const SuperScalar& x);

// defined when the odd-free component is one term over invertible symbols
SuperScalar inverse(const SuperScalar& x);
SuperScalar div(const SuperScalar& a, const SuperScalar& b);

std::string to_string(const SuperScalar& x);
std::string to_string(const SymbolContext& ctx, const Term& t);

// checks every normal form invariant, throws kernel_error on violation
void validate(const SuperScalar& x);

}  // namespace superalg
