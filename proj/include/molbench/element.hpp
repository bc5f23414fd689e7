//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_ELEMENT_HPP
#define MOLBENCH_ELEMENT_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "molbench/error.hpp"

namespace molbench {

/// The closed element set of the valency tables. Anything else is rejected
/// at parse time; there are no stability semantics for other elements.
enum class Element : std::uint8_t {
  H,
  B,
  C,
  N,
  O,
  F,
  Al,
  Si,
  P,
  S,
  Cl,
  Br,
  Se,
  I,
  Hg,
  Bi,
};

inline constexpr std::size_t kElementCount = 16;

inline constexpr std::array<Element, kElementCount> kAllElements = {
    Element::H,  Element::B,  Element::C,  Element::N,
    Element::O,  Element::F,  Element::Al, Element::Si,
    Element::P,  Element::S,  Element::Cl, Element::Br,
    Element::Se, Element::I,  Element::Hg, Element::Bi,
};

inline constexpr std::array<std::string_view, kElementCount> kElementSymbols = {
    "H", "B", "C", "N", "O", "F", "Al", "Si",
    "P", "S", "Cl", "Br", "Se", "I", "Hg", "Bi",
};

constexpr std::string_view symbol_of(Element e) {
  return kElementSymbols[static_cast<std::size_t>(e)];
}

inline std::optional<Element> try_element_from_symbol(std::string_view sym) {
  // Trim surrounding whitespace; SDF symbol fields are space padded.
  while (!sym.empty() && (sym.front() == ' ' || sym.front() == '\t'))
    sym.remove_prefix(1);
  while (!sym.empty() && (sym.back() == ' ' || sym.back() == '\t' ||
                          sym.back() == '\r'))
    sym.remove_suffix(1);
  for (std::size_t i = 0; i < kElementCount; ++i) {
    if (sym == kElementSymbols[i])
      return static_cast<Element>(i);
  }
  return std::nullopt;
}

inline Element element_from_symbol(std::string_view sym) {
  if (auto e = try_element_from_symbol(sym))
    return *e;
  throw ParseError("unknown element symbol '" + std::string(sym) + "'");
}

} // namespace molbench

#endif // MOLBENCH_ELEMENT_HPP
