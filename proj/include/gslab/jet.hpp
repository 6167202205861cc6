#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace gslab {

enum class Dependent : std::uint8_t { u = 0, v = 1, ubar = 2, vbar = 3 };
enum class Direction : std::uint8_t { t, x };

std::string_view name(Dependent d);

/// A dependent variable together with the orders of its t- and x-derivatives.
/// (u, 0, 0) is u itself, (u, 1, 1) is u_tx.
struct JetCoordinate {
  Dependent dependent = Dependent::u;
  unsigned t_order = 0;
  unsigned x_order = 0;

  auto operator<=>(const JetCoordinate&) const = default;

  unsigned order() const { return t_order + x_order; }
  JetCoordinate raised(Direction dir) const;
  std::string name() const;
};

inline JetCoordinate coord(Dependent d, unsigned t_order = 0, unsigned x_order = 0) {
  return {d, t_order, x_order};
}

/// Atomic polynomial variable. Ordering follows the fixed enumeration
/// t < x < jet coordinates (by dependent, t_order, x_order) < unknowns.
/// Unknowns are the ansatz coefficients used by the classification solvers;
/// they never appear in parsed text.
class Symbol {
 public:
  enum class Kind : std::uint8_t { t = 0, x = 1, jet = 2, unknown = 3 };

  static Symbol t() { return Symbol(0u); }
  static Symbol x() { return Symbol(1u << kKindShift); }
  static Symbol independent(Direction d) { return d == Direction::t ? t() : x(); }
  static Symbol jet(JetCoordinate c);
  static Symbol unknown(std::uint32_t index);

  Kind kind() const { return static_cast<Kind>(id_ >> kKindShift); }
  bool is_jet() const { return kind() == Kind::jet; }
  bool is_unknown() const { return kind() == Kind::unknown; }
  JetCoordinate coordinate() const;
  std::uint32_t unknown_index() const { return id_ & kPayloadMask; }
  std::uint32_t id() const { return id_; }

  /// D_dir applied to this symbol, when it is again a single symbol.
  std::optional<Symbol> raised(Direction dir) const;

  std::string name() const;

  auto operator<=>(const Symbol&) const = default;

 private:
  explicit Symbol(std::uint32_t id) : id_(id) {}

  static constexpr unsigned kKindShift = 30;
  static constexpr std::uint32_t kPayloadMask = (1u << kKindShift) - 1;
  static constexpr unsigned kDependentShift = 24;
  static constexpr unsigned kTOrderShift = 12;
  static constexpr std::uint32_t kOrderMask = (1u << 12) - 1;

  std::uint32_t id_;
};

/// Parses identifiers such as "u", "vbar_x", "u_txxx". Subscripts must list
/// t's before x's.
std::optional<Symbol> parse_symbol(std::string_view identifier);

}  // namespace gslab
