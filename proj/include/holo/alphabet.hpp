#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace holo {

/// One component of a composite arrow label: the arrow content of a single
/// family (dashed / solid / dotted) on a tensor leg.
///
/// kind 0 is the true zero; Deg ("0^c") is the degenerate zero that still
/// remembers a color and never matches the true zero.
struct ArrowComp {
  enum Kind : std::int8_t { Zero = 0, Plus = 1, Minus = 2, Plus2 = 3, Minus2 = 4, Deg = 5 };
  Kind kind = Zero;
  std::int16_t color = 0;  // 1..s for non-Zero kinds

  ArrowComp() = default;
  ArrowComp(Kind k, int c) : kind(k), color(static_cast<std::int16_t>(c)) {}
  static ArrowComp zero() { return ArrowComp(); }
  static ArrowComp plus(int c) { return {Plus, c}; }
  static ArrowComp minus(int c) { return {Minus, c}; }
  static ArrowComp plus2(int c) { return {Plus2, c}; }
  static ArrowComp minus2(int c) { return {Minus2, c}; }
  static ArrowComp deg(int c) { return {Deg, c}; }

  friend bool operator==(const ArrowComp& a, const ArrowComp& b) {
    return a.kind == b.kind && (a.kind == Zero || a.color == b.color);
  }
  /// Net arrow count in units of one arrow; Deg counts as 0.
  int units() const {
    switch (kind) {
      case Plus: return 1;
      case Minus: return -1;
      case Plus2: return 2;
      case Minus2: return -2;
      default: return 0;
    }
  }
  std::string str() const {
    switch (kind) {
      case Zero: return "0";
      case Plus: return "+" + std::to_string(color);
      case Minus: return "-" + std::to_string(color);
      case Plus2: return "+2*" + std::to_string(color);
      case Minus2: return "-2*" + std::to_string(color);
      case Deg: return "0^" + std::to_string(color);
    }
    return "?";
  }
};

using Symbol = std::uint32_t;  // index into a LegAlphabet

/// Ordered list of composite arrow labels for one leg class.  Symbol 0 is
/// always the all-zero label.  Alphabets are shared (by pointer) between
/// every leg of the same class so paired legs compare equal cheaply.
class LegAlphabet {
 public:
  /// All labels with `families` components over colors 1..s.  Per family the
  /// component ranges over {0, +c, -c, +2c, -2c, 0^c : c in 1..s}; families
  /// that never use doubled or degenerate arrows simply never index them.
  LegAlphabet(int families, int colors, std::string name)
      : families_(families), colors_(colors), name_(std::move(name)) {
    per_family_ = 1 + 5 * colors_;
    std::uint64_t total = 1;
    for (int f = 0; f < families_; ++f) total *= per_family_;
    size_ = total;
  }

  int families() const { return families_; }
  int colors() const { return colors_; }
  std::uint64_t size() const { return size_; }
  const std::string& name() const { return name_; }

  Symbol encode(const std::vector<ArrowComp>& comps) const {
    if (static_cast<int>(comps.size()) != families_)
      throw std::invalid_argument("LegAlphabet::encode: wrong family count");
    Symbol code = 0;
    for (int f = families_ - 1; f >= 0; --f)
      code = code * per_family_ + comp_code(comps[f]);
    return code;
  }

  std::vector<ArrowComp> decode(Symbol sym) const {
    std::vector<ArrowComp> comps(families_);
    for (int f = 0; f < families_; ++f) {
      comps[f] = code_comp(sym % per_family_);
      sym /= per_family_;
    }
    return comps;
  }

  bool same_as(const LegAlphabet& o) const {
    return families_ == o.families_ && colors_ == o.colors_;
  }

  std::string symbol_str(Symbol sym) const {
    auto comps = decode(sym);
    std::string s = "(";
    for (int f = 0; f < families_; ++f) {
      if (f) s += ",";
      s += comps[f].str();
    }
    return s + ")";
  }

 private:
  std::uint32_t comp_code(const ArrowComp& c) const {
    if (c.kind == ArrowComp::Zero) return 0;
    if (c.color < 1 || c.color > colors_)
      throw std::invalid_argument("LegAlphabet: color out of range");
    return static_cast<std::uint32_t>((c.kind - 1) * colors_ + c.color);
  }
  ArrowComp code_comp(std::uint32_t code) const {
    if (code == 0) return ArrowComp::zero();
    code -= 1;
    int kind = static_cast<int>(code / colors_) + 1;
    int color = static_cast<int>(code % colors_) + 1;
    return ArrowComp(static_cast<ArrowComp::Kind>(kind), color);
  }

  int families_;
  int colors_;
  std::uint32_t per_family_ = 0;
  std::uint64_t size_ = 0;
  std::string name_;
};

using AlphabetRef = std::shared_ptr<const LegAlphabet>;

}  // namespace holo
