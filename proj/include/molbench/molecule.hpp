//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_MOLECULE_HPP
#define MOLBENCH_MOLECULE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "molbench/element.hpp"
#include "molbench/error.hpp"
#include "molbench/vec3.hpp"

namespace molbench {

/// Bond orders as they appear in the interchange formats. The valence
/// contribution of an aromatic bond is representation dependent (1 or 1.5)
/// and is never stored; it is resolved by the stability mode or by
/// kekulization.
enum class BondOrder : std::uint8_t {
  Single = 1,
  Double = 2,
  Triple = 3,
  Aromatic = 4,
};

/// Valence arithmetic uses integer half-units throughout so that a 1.5
/// aromatic contribution stays exact: single = 2, double = 4, triple = 6,
/// aromatic-as-1.5 = 3. A total is integral iff it is even.
using HalfUnits = int;

inline constexpr HalfUnits kHalfUnitsPerBondOrderUnit = 2;

/// Half-unit contribution of a non-aromatic bond order.
inline HalfUnits half_units(BondOrder order) {
  switch (order) {
  case BondOrder::Single:
    return 2;
  case BondOrder::Double:
    return 4;
  case BondOrder::Triple:
    return 6;
  default:
    throw ValidationError("aromatic bond has no fixed valence contribution");
  }
}

inline std::string bond_order_name(BondOrder order) {
  switch (order) {
  case BondOrder::Single:
    return "single";
  case BondOrder::Double:
    return "double";
  case BondOrder::Triple:
    return "triple";
  default:
    return "aromatic";
  }
}

/// Formal charge range covered by the valency tables.
inline constexpr int kMinFormalCharge = -2;
inline constexpr int kMaxFormalCharge = 3;

struct Atom {
  Element element = Element::C;
  int formal_charge = 0;
  Vec3 position;
};

struct Bond {
  std::size_t i = 0;
  std::size_t j = 0;
  BondOrder order = BondOrder::Single;
};

/// Immutable atom/bond graph with 3D coordinates. Hydrogens are always
/// explicit atoms; there is no implicit-hydrogen bookkeeping anywhere.
/// All operations on molecules are pure and safe to run concurrently on
/// shared instances.
class Molecule {
public:
  Molecule() = default;

  Molecule(std::string name, std::vector<Atom> atoms, std::vector<Bond> bonds)
      : name_(std::move(name)), atoms_(std::move(atoms)),
        bonds_(std::move(bonds)) {
    normalize_and_validate();
  }

  const std::string &name() const { return name_; }
  const std::vector<Atom> &atoms() const { return atoms_; }
  const std::vector<Bond> &bonds() const { return bonds_; }
  std::size_t atom_count() const { return atoms_.size(); }
  std::size_t bond_count() const { return bonds_.size(); }

  const Atom &atom(std::size_t i) const { return atoms_[i]; }
  const Bond &bond(std::size_t b) const { return bonds_[b]; }

  /// Incident (neighbor atom, bond index) pairs, ascending by neighbor.
  const std::vector<std::pair<std::size_t, std::size_t>> &
  neighbors(std::size_t i) const {
    return adjacency_[i];
  }

  bool has_aromatic_bonds() const {
    return std::any_of(bonds_.begin(), bonds_.end(), [](const Bond &b) {
      return b.order == BondOrder::Aromatic;
    });
  }

  /// Same topology, new coordinates (optimizer output).
  Molecule with_positions(const std::vector<Vec3> &positions) const {
    if (positions.size() != atoms_.size())
      throw ValidationError("position count does not match atom count");
    Molecule out = *this;
    for (std::size_t i = 0; i < positions.size(); ++i)
      out.atoms_[i].position = positions[i];
    return out;
  }

  /// Same atoms, new bond list (kekulization output).
  Molecule with_bonds(std::vector<Bond> bonds) const {
    return Molecule(name_, atoms_, std::move(bonds));
  }

private:
  void normalize_and_validate() {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const Atom &a = atoms_[i];
      if (a.formal_charge < kMinFormalCharge ||
          a.formal_charge > kMaxFormalCharge)
        throw ValidationError("atom " + std::to_string(i + 1) + " of '" +
                              name_ + "': formal charge " +
                              std::to_string(a.formal_charge) +
                              " outside supported range [-2, +3]");
      if (!std::isfinite(a.position.x) || !std::isfinite(a.position.y) ||
          !std::isfinite(a.position.z))
        throw ValidationError("atom " + std::to_string(i + 1) + " of '" +
                              name_ + "': non-finite coordinate");
    }

    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (Bond &b : bonds_) {
      if (b.i == b.j)
        throw ValidationError("self-bond on atom " + std::to_string(b.i + 1) +
                              " of '" + name_ + "'");
      if (b.i >= atoms_.size() || b.j >= atoms_.size())
        throw ValidationError("bond index out of range in '" + name_ + "'");
      if (b.i > b.j)
        std::swap(b.i, b.j);
      if (!seen.insert({b.i, b.j}).second)
        throw ValidationError("duplicate bond " + std::to_string(b.i + 1) +
                              "-" + std::to_string(b.j + 1) + " in '" + name_ +
                              "'");
    }

    adjacency_.assign(atoms_.size(), {});
    for (std::size_t b = 0; b < bonds_.size(); ++b) {
      adjacency_[bonds_[b].i].push_back({bonds_[b].j, b});
      adjacency_[bonds_[b].j].push_back({bonds_[b].i, b});
    }
    for (auto &nbrs : adjacency_)
      std::sort(nbrs.begin(), nbrs.end());
  }

  std::string name_;
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
};

} // namespace molbench

#endif // MOLBENCH_MOLECULE_HPP
