#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "superalg/gaussian.hpp"

namespace superalg {

enum class Parity : uint8_t { Even = 0, Odd = 1 };

inline Parity flip(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }
inline Parity add(Parity a, Parity b) { return Parity(uint8_t(a) ^ uint8_t(b)); }

using SymbolId = int32_t;

struct SymbolInfo {
  std::string name;
  Parity parity = Parity::Even;
  bool invertible = false;  // negative (Laurent) exponents allowed
  SymbolId base = -1;       // for a differential, the underlying symbol
  SymbolId diff = -1;       // differential of this symbol once created
};

// Symbol table shared by every scalar of one computation.  Declaration order
// is the canonical order of odd factors inside words, so declare symbols in
// the order their products should print.
class SymbolContext {
 public:
  SymbolId declare(const std::string& name, Parity p, bool invertible = false) {
    if (name.empty()) throw kernel_error("empty symbol name");
    if (index_.count(name)) throw kernel_error("symbol redeclared: " + name);
    SymbolId s = SymbolId(syms_.size());
    syms_.push_back(SymbolInfo{name, p, invertible, -1, -1});
    index_[name] = s;
    return s;
  }

  // the differential dz of a coordinate z: opposite parity, never invertible
  SymbolId differential(SymbolId z) {
    if (syms_.at(size_t(z)).base >= 0)
      throw kernel_error("no differential of a differential: " + syms_[size_t(z)].name);
    if (syms_[size_t(z)].diff >= 0) return syms_[size_t(z)].diff;
    std::string nm = "d" + syms_[size_t(z)].name;
    SymbolId d = declare(nm, flip(syms_[size_t(z)].parity), false);
    syms_[size_t(z)].diff = d;
    syms_[size_t(d)].base = z;
    return d;
  }

  SymbolId id(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw kernel_error("unknown symbol: " + name);
    return it->second;
  }
  bool has(const std::string& name) const { return index_.count(name) != 0; }

  const SymbolInfo& info(SymbolId s) const { return syms_.at(size_t(s)); }
  const std::string& name(SymbolId s) const { return info(s).name; }
  Parity parity(SymbolId s) const { return info(s).parity; }
  bool invertible(SymbolId s) const { return info(s).invertible; }
  bool is_differential(SymbolId s) const { return info(s).base >= 0; }
  SymbolId base_of(SymbolId d) const { return info(d).base; }
  SymbolId diff_of(SymbolId z) const { return info(z).diff; }
  size_t size() const { return syms_.size(); }

 private:
  std::vector<SymbolInfo> syms_;
  std::map<std::string, SymbolId> index_;
};

}  // namespace superalg
