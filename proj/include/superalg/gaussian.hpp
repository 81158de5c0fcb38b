#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <utility>

namespace superalg {

using Rat = boost::multiprecision::cpp_rational;

struct kernel_error : std::runtime_error {
  explicit kernel_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Gaussian rational a + b*i, the coefficient field for all symbolic data.
struct GRat {
  Rat re, im;

  GRat() : re(0) {}
  GRat(int n) : re(n) {}
  GRat(long n) : re(n) {}
  explicit GRat(Rat r) : re(std::move(r)) {}
  GRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GRat I(int k = 1) { return GRat(Rat(0), Rat(k)); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_one() const { return re == 1 && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  GRat operator-() const { return GRat(-re, -im); }
  GRat& operator+=(const GRat& o) { re += o.re; im += o.im; return *this; }
  GRat& operator-=(const GRat& o) { re -= o.re; im -= o.im; return *this; }

  friend GRat operator+(GRat a, const GRat& b) { a += b; return a; }
  friend GRat operator-(GRat a, const GRat& b) { a -= b; return a; }
  friend GRat operator*(const GRat& a, const GRat& b) {
    return GRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }

  GRat inv() const {
    Rat n = re * re + im * im;
    if (n.is_zero()) throw kernel_error("division by zero coefficient");
    return GRat(re / n, -im / n);
  }
  friend GRat operator/(const GRat& a, const GRat& b) { return a * b.inv(); }

  friend bool operator==(const GRat& a, const GRat& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GRat& a, const GRat& b) { return !(a == b); }
};

// order used only to keep normal forms canonical
int cmp(const GRat& a, const GRat& b);

// atoms look like "3", "-1/2", "i", "-i", "2i", "1/2-3/4i"
std::string to_string(const GRat& c);
GRat parse_grat(const std::string& s);

}  // namespace superalg
