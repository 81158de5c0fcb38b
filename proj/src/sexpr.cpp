#include "superalg/sexpr.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace superalg {

static void print_mono(std::ostringstream& os, const SymbolContext& ctx, const Mono& m) {
  os << "(";
  bool first = true;
  for (auto& [s, e] : m) {
    if (!first) os << " ";
    first = false;
    os << "(" << ctx.name(s) << " " << e << ")";
  }
  os << ")";
}

std::string print_sexpr(const SuperScalar& x) {
  if (!x.ctx) throw kernel_error("cannot print scalar without context");
  const SymbolContext& ctx = *x.ctx;
  std::ostringstream os;
  os << "(scalar";
  for (const Term& t : x.terms) {
    os << " (term " << to_string(t.c) << " ";
    print_mono(os, ctx, t.m);
    os << " (phase";
    for (auto& [mono, c] : t.p) {
      os << " (" << to_string(c) << " ";
      print_mono(os, ctx, mono);
      os << ")";
    }
    os << ") (word";
    for (SymbolId s : t.w) os << " " << ctx.name(s);
    os << "))";
  }
  os << ")";
  return os.str();
}

namespace {

struct Tokens {
  std::vector<std::string> toks;
  size_t pos = 0;

  explicit Tokens(const std::string& text) {
    std::string cur;
    for (char c : text) {
      if (c == '(' || c == ')') {
        if (!cur.empty()) { toks.push_back(cur); cur.clear(); }
        toks.push_back(std::string(1, c));
      } else if (std::isspace((unsigned char)c)) {
        if (!cur.empty()) { toks.push_back(cur); cur.clear(); }
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) toks.push_back(cur);
  }

  const std::string& peek() const {
    if (pos >= toks.size()) throw kernel_error("unexpected end of scalar text");
    return toks[pos];
  }
  std::string next() {
    const std::string& t = peek();
    ++pos;
    return t;
  }
  void expect(const std::string& t) {
    if (next() != t) throw kernel_error("malformed scalar text, expected " + t);
  }
  bool at(const std::string& t) const { return pos < toks.size() && toks[pos] == t; }
};

Mono parse_mono(Tokens& tk, const SymbolContext& ctx) {
  Mono m;
  tk.expect("(");
  while (!tk.at(")")) {
    tk.expect("(");
    SymbolId s = ctx.id(tk.next());
    std::string es = tk.next();
    size_t used = 0;
    int e = std::stoi(es, &used);
    if (used != es.size()) throw kernel_error("bad exponent: " + es);
    tk.expect(")");
    m.push_back({s, e});
  }
  tk.expect(")");
  return m;
}

}  // namespace

SuperScalar parse_sexpr(const SymbolContext& ctx, const std::string& text) {
  Tokens tk(text);
  tk.expect("(");
  tk.expect("scalar");
  std::vector<Term> ts;
  while (!tk.at(")")) {
    tk.expect("(");
    tk.expect("term");
    Term t;
    t.c = parse_grat(tk.next());
    t.m = parse_mono(tk, ctx);
    tk.expect("(");
    tk.expect("phase");
    while (!tk.at(")")) {
      tk.expect("(");
      GRat c = parse_grat(tk.next());
      Mono mono = parse_mono(tk, ctx);
      tk.expect(")");
      t.p.push_back({mono, c});
    }
    tk.expect(")");
    tk.expect("(");
    tk.expect("word");
    while (!tk.at(")")) t.w.push_back(ctx.id(tk.next()));
    tk.expect(")");
    tk.expect(")");
    ts.push_back(std::move(t));
  }
  tk.expect(")");
  if (tk.pos != tk.toks.size()) throw kernel_error("trailing text after scalar");
  SuperScalar out = make_scalar(ctx, std::move(ts));
  validate(out);
  return out;
}

}  // namespace superalg
