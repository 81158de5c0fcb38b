#include "superalg/gaussian.hpp"

#include <cctype>

namespace superalg {

int cmp(const GRat& a, const GRat& b) {
  if (a.re != b.re) return a.re < b.re ? -1 : 1;
  if (a.im != b.im) return a.im < b.im ? -1 : 1;
  return 0;
}

static std::string rat_str(const Rat& r) { return r.str(); }

std::string to_string(const GRat& c) {
  if (c.is_zero()) return "0";
  if (c.im.is_zero()) return rat_str(c.re);
  std::string im = (c.im == 1 || c.im == -1) ? "i" : rat_str(abs(c.im)) + "i";
  if (c.re.is_zero()) return (c.im < 0 ? "-" : "") + im;
  return rat_str(c.re) + (c.im < 0 ? "-" : "+") + im;
}

GRat parse_grat(const std::string& s) {
  size_t pos = 0;
  auto fail = [&]() -> void { throw kernel_error("bad coefficient atom: " + s); };
  if (s.empty()) fail();

  // one signed chunk: rational, rational followed by 'i', or bare 'i'
  auto read_part = [&](bool& is_imag) -> Rat {
    bool neg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      neg = s[pos] == '-';
      ++pos;
    }
    if (pos < s.size() && s[pos] == 'i') {
      ++pos;
      is_imag = true;
      return neg ? Rat(-1) : Rat(1);
    }
    size_t start = pos;
    while (pos < s.size() && (std::isdigit((unsigned char)s[pos]) || s[pos] == '/')) ++pos;
    if (start == pos) fail();
    Rat r;
    try {
      r = Rat(s.substr(start, pos - start));
    } catch (const std::exception&) {
      fail();
    }
    is_imag = false;
    if (pos < s.size() && s[pos] == 'i') {
      ++pos;
      is_imag = true;
    }
    return neg ? Rat(-r) : r;
  };

  GRat out;
  bool imag = false;
  Rat first = read_part(imag);
  if (imag)
    out.im = first;
  else
    out.re = first;
  if (pos != s.size()) {
    if (imag) fail();  // the imaginary chunk must come last
    if (s[pos] != '+' && s[pos] != '-') fail();
    bool imag2 = false;
    Rat second = read_part(imag2);
    if (!imag2) fail();
    out.im = second;
  }
  if (pos != s.size()) fail();
  return out;
}

}  // namespace superalg
