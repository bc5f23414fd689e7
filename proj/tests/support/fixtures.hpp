//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_TESTS_FIXTURES_HPP
#define MOLBENCH_TESTS_FIXTURES_HPP

#include <cmath>
#include <string>
#include <vector>

#include "molbench/molecule.hpp"
#include "molbench/sdf.hpp"

namespace molbench::testing {

inline Vec3 polar(double radius, double angle_deg) {
  const double a = angle_deg * 3.14159265358979323846 / 180.0;
  return {radius * std::cos(a), radius * std::sin(a), 0.0};
}

inline Molecule methane() {
  return Molecule(
      "methane",
      {
          {Element::C, 0, {0.0, 0.0, 0.0}},
          {Element::H, 0, {0.6289, 0.6289, 0.6289}},
          {Element::H, 0, {-0.6289, -0.6289, 0.6289}},
          {Element::H, 0, {-0.6289, 0.6289, -0.6289}},
          {Element::H, 0, {0.6289, -0.6289, -0.6289}},
      },
      {
          {0, 1, BondOrder::Single},
          {0, 2, BondOrder::Single},
          {0, 3, BondOrder::Single},
          {0, 4, BondOrder::Single},
      });
}

/// 6 aromatic C + 6 H; the canonical aromatic ring.
inline Molecule benzene(const std::string &name = "benzene") {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  for (int i = 0; i < 6; ++i)
    atoms.push_back({Element::C, 0, polar(1.39, 60.0 * i)});
  for (int i = 0; i < 6; ++i)
    atoms.push_back({Element::H, 0, polar(2.47, 60.0 * i)});
  for (std::size_t i = 0; i < 6; ++i) {
    bonds.push_back({i, (i + 1) % 6, BondOrder::Aromatic});
    bonds.push_back({i, i + 6, BondOrder::Single});
  }
  return Molecule(name, std::move(atoms), std::move(bonds));
}

inline Molecule kekulized_benzene() {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  for (int i = 0; i < 6; ++i)
    atoms.push_back({Element::C, 0, polar(1.39, 60.0 * i)});
  for (int i = 0; i < 6; ++i)
    atoms.push_back({Element::H, 0, polar(2.47, 60.0 * i)});
  for (std::size_t i = 0; i < 6; ++i) {
    bonds.push_back({i, (i + 1) % 6,
                     i % 2 == 0 ? BondOrder::Double : BondOrder::Single});
    bonds.push_back({i, i + 6, BondOrder::Single});
  }
  return Molecule("kekulized-benzene", std::move(atoms), std::move(bonds));
}

/// Ring N without H: demand-1 nitrogen.
inline Molecule pyridine() {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  atoms.push_back({Element::N, 0, polar(1.39, 0.0)});
  for (int i = 1; i < 6; ++i)
    atoms.push_back({Element::C, 0, polar(1.39, 60.0 * i)});
  for (int i = 1; i < 6; ++i)
    atoms.push_back({Element::H, 0, polar(2.47, 60.0 * i)});
  for (std::size_t i = 0; i < 6; ++i)
    bonds.push_back({i, (i + 1) % 6, BondOrder::Aromatic});
  for (std::size_t i = 1; i < 6; ++i)
    bonds.push_back({i, i + 5, BondOrder::Single});
  return Molecule("pyridine", std::move(atoms), std::move(bonds));
}

/// 5-ring with one heteroatom at index 0; N gets an explicit H.
inline Molecule five_ring(Element hetero, const std::string &name) {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  atoms.push_back({hetero, 0, polar(1.2, 90.0)});
  for (int i = 1; i < 5; ++i)
    atoms.push_back({Element::C, 0, polar(1.2, 90.0 + 72.0 * i)});
  for (std::size_t i = 0; i < 5; ++i)
    bonds.push_back({i, (i + 1) % 5, BondOrder::Aromatic});
  std::size_t next = 5;
  for (std::size_t i = 1; i < 5; ++i) {
    atoms.push_back({Element::H, 0, polar(2.2, 90.0 + 72.0 * double(i))});
    bonds.push_back({i, next++, BondOrder::Single});
  }
  if (hetero == Element::N) {
    atoms.push_back({Element::H, 0, polar(2.2, 90.0)});
    bonds.push_back({0, next++, BondOrder::Single});
  }
  return Molecule(name, std::move(atoms), std::move(bonds));
}

inline Molecule pyrrole() { return five_ring(Element::N, "pyrrole"); }
inline Molecule furan() { return five_ring(Element::O, "furan"); }
inline Molecule thiophene() { return five_ring(Element::S, "thiophene"); }

/// Three benzo rings fused onto a central ring: 6 fusion carbons with three
/// aromatic bonds each, 12 CH carbons, 21 aromatic bonds.
inline Molecule triphenylene() {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  for (int i = 0; i < 6; ++i)
    atoms.push_back({Element::C, 0, polar(1.39, 60.0 * i)});
  for (std::size_t i = 0; i < 6; ++i)
    bonds.push_back({i, (i + 1) % 6, BondOrder::Aromatic});

  std::size_t next = 6;
  std::vector<std::size_t> ch_atoms;
  for (int edge = 0; edge < 3; ++edge) {
    const std::size_t a = static_cast<std::size_t>(2 * edge);
    const std::size_t b = a + 1;
    const double mid = 60.0 * (2 * edge) + 30.0;
    const std::size_t w = next++;
    const std::size_t x = next++;
    const std::size_t y = next++;
    const std::size_t z = next++;
    atoms.push_back({Element::C, 0, polar(2.5, mid - 36.0)});
    atoms.push_back({Element::C, 0, polar(3.3, mid - 15.0)});
    atoms.push_back({Element::C, 0, polar(3.3, mid + 15.0)});
    atoms.push_back({Element::C, 0, polar(2.5, mid + 36.0)});
    bonds.push_back({a, w, BondOrder::Aromatic});
    bonds.push_back({w, x, BondOrder::Aromatic});
    bonds.push_back({x, y, BondOrder::Aromatic});
    bonds.push_back({y, z, BondOrder::Aromatic});
    bonds.push_back({z, b, BondOrder::Aromatic});
    ch_atoms.insert(ch_atoms.end(), {w, x, y, z});
  }
  for (std::size_t c : ch_atoms) {
    const Vec3 p = atoms[c].position;
    atoms.push_back({Element::H, 0, {1.35 * p.x, 1.35 * p.y, 0.0}});
    bonds.push_back({c, next++, BondOrder::Single});
  }
  return Molecule("triphenylene", std::move(atoms), std::move(bonds));
}

/// Neutral carbon with three single bonds (passes the flawed legacy metric).
inline Molecule fig_carbon_three_singles() {
  return Molecule("C-with-3-singles",
                  {
                      {Element::C, 0, {0.0, 0.0, 0.0}},
                      {Element::H, 0, {1.09, 0.0, 0.0}},
                      {Element::H, 0, {-0.5, 0.94, 0.0}},
                      {Element::H, 0, {-0.5, -0.94, 0.0}},
                  },
                  {
                      {0, 1, BondOrder::Single},
                      {0, 2, BondOrder::Single},
                      {0, 3, BondOrder::Single},
                  });
}

/// Neutral nitrogen with two single bonds.
inline Molecule fig_nitrogen_two_singles() {
  return Molecule("N-with-2-singles",
                  {
                      {Element::N, 0, {0.0, 0.0, 0.0}},
                      {Element::H, 0, {1.01, 0.0, 0.0}},
                      {Element::H, 0, {-0.35, 0.95, 0.0}},
                  },
                  {
                      {0, 1, BondOrder::Single},
                      {0, 2, BondOrder::Single},
                  });
}

/// N+ carrying one triple and one aromatic bond (into a benzene ring).
inline Molecule fig_nitrogen_triple_aromatic() {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  for (int i = 0; i < 6; ++i)
    atoms.push_back({Element::C, 0, polar(1.39, 60.0 * i)});
  for (std::size_t i = 0; i < 6; ++i)
    bonds.push_back({i, (i + 1) % 6, BondOrder::Aromatic});
  atoms.push_back({Element::N, 1, {2.80, 0.0, 0.0}}); // 6
  bonds.push_back({0, 6, BondOrder::Aromatic});
  atoms.push_back({Element::C, 0, {3.95, 0.0, 0.0}}); // 7
  bonds.push_back({6, 7, BondOrder::Triple});
  atoms.push_back({Element::H, 0, {5.01, 0.0, 0.0}}); // 8
  bonds.push_back({7, 8, BondOrder::Single});
  std::size_t next = 9;
  for (std::size_t i = 1; i < 6; ++i) {
    atoms.push_back({Element::H, 0, polar(2.47, 60.0 * double(i))});
    bonds.push_back({i, next++, BondOrder::Single});
  }
  return Molecule("N-plus-triple-aromatic", std::move(atoms),
                  std::move(bonds));
}

/// Benzene plus an isolated positively charged hydrogen: two components,
/// the fractured-optimization pattern.
inline Molecule fragmented_benzene() {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  const Molecule base = benzene("fragmented-benzene");
  atoms.assign(base.atoms().begin(), base.atoms().end());
  bonds.assign(base.bonds().begin(), base.bonds().end());
  atoms.push_back({Element::H, 1, {8.0, 0.0, 0.0}});
  return Molecule("fragmented-benzene", std::move(atoms), std::move(bonds));
}

/// CH2 + isolated H+: both Fig-5-style pathologies in one record.
inline Molecule fractured_fragment(const std::string &name) {
  return Molecule(name,
                  {
                      {Element::C, 0, {0.0, 0.0, 0.0}},
                      {Element::H, 0, {1.09, 0.0, 0.0}},
                      {Element::H, 0, {-1.09, 0.0, 0.0}},
                      {Element::H, 1, {5.0, 0.0, 0.0}},
                  },
                  {
                      {0, 1, BondOrder::Single},
                      {0, 2, BondOrder::Single},
                  });
}

/// Benzene with one missing hydrogen: that carbon sits two units below its
/// allowed valence, so no single/double assignment can fix it.
inline Molecule unkekulizable_ring() {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  for (int i = 0; i < 6; ++i)
    atoms.push_back({Element::C, 0, polar(1.39, 60.0 * i)});
  for (std::size_t i = 0; i < 6; ++i)
    bonds.push_back({i, (i + 1) % 6, BondOrder::Aromatic});
  std::size_t next = 6;
  for (std::size_t i = 1; i < 6; ++i) {
    atoms.push_back({Element::H, 0, polar(2.47, 60.0 * double(i))});
    bonds.push_back({i, next++, BondOrder::Single});
  }
  return Molecule("unkekulizable-ring", std::move(atoms), std::move(bonds));
}

/// Six-ring with one NH (demand 0) and five CH (demand 1): five atoms need
/// a double bond, an odd set, so no perfect matching exists.
inline Molecule no_kekule_ring() {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  atoms.push_back({Element::N, 0, polar(1.39, 0.0)});
  for (int i = 1; i < 6; ++i)
    atoms.push_back({Element::C, 0, polar(1.39, 60.0 * i)});
  for (std::size_t i = 0; i < 6; ++i)
    bonds.push_back({i, (i + 1) % 6, BondOrder::Aromatic});
  std::size_t next = 6;
  for (std::size_t i = 0; i < 6; ++i) {
    atoms.push_back({Element::H, 0, polar(2.47, 60.0 * double(i))});
    bonds.push_back({i, next++, BondOrder::Single});
  }
  return Molecule("no-kekule-ring", std::move(atoms), std::move(bonds));
}

inline Molecule butane_skeleton() {
  return Molecule("butane-skeleton",
                  {
                      {Element::C, 0, {0.0, 0.0, 0.0}},
                      {Element::C, 0, {1.54, 0.0, 0.0}},
                      {Element::C, 0, {2.31, 1.33, 0.0}},
                      {Element::C, 0, {3.85, 1.33, 0.4}},
                  },
                  {
                      {0, 1, BondOrder::Single},
                      {1, 2, BondOrder::Single},
                      {2, 3, BondOrder::Single},
                  });
}

inline Molecule water_like() {
  return Molecule("water",
                  {
                      {Element::O, 0, {0.0, 0.0, 0.0}},
                      {Element::H, 0, {0.96, 0.0, 0.0}},
                      {Element::H, 0, {-0.24, 0.93, 0.0}},
                  },
                  {
                      {0, 1, BondOrder::Single},
                      {0, 2, BondOrder::Single},
                  });
}

inline SdfRecord record_of(Molecule mol) {
  SdfRecord rec;
  rec.molecule = std::move(mol);
  return rec;
}

} // namespace molbench::testing

#endif // MOLBENCH_TESTS_FIXTURES_HPP
