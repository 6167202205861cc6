#include "gslab/jet.hpp"

#include <stdexcept>

namespace gslab {

std::string_view name(Dependent d) {
  switch (d) {
    case Dependent::u: return "u";
    case Dependent::v: return "v";
    case Dependent::ubar: return "ubar";
    case Dependent::vbar: return "vbar";
  }
  return "?";
}

JetCoordinate JetCoordinate::raised(Direction dir) const {
  JetCoordinate c = *this;
  if (dir == Direction::t)
    ++c.t_order;
  else
    ++c.x_order;
  return c;
}

std::string JetCoordinate::name() const {
  std::string s(gslab::name(dependent));
  if (t_order + x_order == 0) return s;
  s += '_';
  s.append(t_order, 't');
  s.append(x_order, 'x');
  return s;
}

Symbol Symbol::jet(JetCoordinate c) {
  if (c.t_order > kOrderMask || c.x_order > kOrderMask)
    throw std::out_of_range("jet coordinate order too large");
  return Symbol((static_cast<std::uint32_t>(Kind::jet) << kKindShift) |
                (static_cast<std::uint32_t>(c.dependent) << kDependentShift) |
                (c.t_order << kTOrderShift) | c.x_order);
}

Symbol Symbol::unknown(std::uint32_t index) {
  if (index > kPayloadMask) throw std::out_of_range("unknown index too large");
  return Symbol((static_cast<std::uint32_t>(Kind::unknown) << kKindShift) | index);
}

JetCoordinate Symbol::coordinate() const {
  if (!is_jet()) throw std::logic_error("symbol is not a jet coordinate");
  return {static_cast<Dependent>((id_ >> kDependentShift) & 0xF),
          (id_ >> kTOrderShift) & kOrderMask, id_ & kOrderMask};
}

std::optional<Symbol> Symbol::raised(Direction dir) const {
  if (is_jet()) return jet(coordinate().raised(dir));
  return std::nullopt;
}

std::string Symbol::name() const {
  switch (kind()) {
    case Kind::t: return "t";
    case Kind::x: return "x";
    case Kind::jet: return coordinate().name();
    case Kind::unknown: return "k" + std::to_string(unknown_index());
  }
  return "?";
}

std::optional<Symbol> parse_symbol(std::string_view identifier) {
  if (identifier == "t") return Symbol::t();
  if (identifier == "x") return Symbol::x();
  auto underscore = identifier.find('_');
  std::string_view base = identifier.substr(0, underscore);
  Dependent dep;
  if (base == "u")
    dep = Dependent::u;
  else if (base == "v")
    dep = Dependent::v;
  else if (base == "ubar")
    dep = Dependent::ubar;
  else if (base == "vbar")
    dep = Dependent::vbar;
  else
    return std::nullopt;
  JetCoordinate c{dep, 0, 0};
  if (underscore != std::string_view::npos) {
    std::string_view sub = identifier.substr(underscore + 1);
    if (sub.empty()) return std::nullopt;
    for (char ch : sub) {
      if (ch == 't') {
        if (c.x_order > 0) return std::nullopt;
        ++c.t_order;
      } else if (ch == 'x') {
        ++c.x_order;
      } else {
        return std::nullopt;
      }
    }
  }
  return Symbol::jet(c);
}

}  // namespace gslab
