#pragma once

#include <string>
#include <vector>

namespace superalg {

// Pass/fail ledger for a battery of named checks.  Failures keep a short
// witness string so callers can report what broke without recomputing it.
struct Certificate {
  struct Entry {
    std::string label;
    bool ok = true;
    std::string witness;
  };

  std::vector<Entry> entries;

  void record(const std::string& label, bool ok, const std::string& witness = "") {
    entries.push_back(Entry{label, ok, ok ? std::string() : witness});
  }

  bool ok() const {
    for (const Entry& e : entries)
      if (!e.ok) return false;
    return true;
  }

  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const Entry& e : entries)
      if (!e.ok) out.push_back(e.witness.empty() ? e.label : e.label + ": " + e.witness);
    return out;
  }
};

}  // namespace superalg
