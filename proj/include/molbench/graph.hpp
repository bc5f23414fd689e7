//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_GRAPH_HPP
#define MOLBENCH_GRAPH_HPP

#include <cstddef>
#include <vector>

#include "molbench/molecule.hpp"

namespace molbench {

/// Partition of atom indices into bond-connected components. Components are
/// ordered by their smallest atom index; members ascend within a component.
inline std::vector<std::vector<std::size_t>>
connected_components(const Molecule &mol) {
  const std::size_t n = mol.atom_count();
  std::vector<std::vector<std::size_t>> components;
  std::vector<bool> visited(n, false);
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (visited[start])
      continue;
    std::vector<std::size_t> comp;
    stack.push_back(start);
    visited[start] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (const auto &[nbr, bond] : mol.neighbors(v)) {
        (void)bond;
        if (!visited[nbr]) {
          visited[nbr] = true;
          stack.push_back(nbr);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

inline std::size_t component_count(const Molecule &mol) {
  return connected_components(mol).size();
}

/// Bond angle site: bonds (i,j) and (j,k) exist, i != k, canonical i < k.
struct AngleTriple {
  std::size_t i, j, k;

  friend bool operator==(const AngleTriple &a, const AngleTriple &b) {
    return a.i == b.i && a.j == b.j && a.k == b.k;
  }
};

/// Every geometric bond angle exactly once (a triple and its reversal are
/// the same angle).
inline std::vector<AngleTriple> enumerate_angles(const Molecule &mol) {
  std::vector<AngleTriple> out;
  for (std::size_t j = 0; j < mol.atom_count(); ++j) {
    const auto &nbrs = mol.neighbors(j);
    for (std::size_t a = 0; a + 1 < nbrs.size(); ++a) {
      for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
        // neighbors are sorted, so nbrs[a].first < nbrs[b].first
        out.push_back({nbrs[a].first, j, nbrs[b].first});
      }
    }
  }
  return out;
}

/// Torsion site: simple bond path i-j-k-l over four distinct atoms,
/// canonical j < k (the reversal l-k-j-i is the same torsion).
struct TorsionQuad {
  std::size_t i, j, k, l;

  friend bool operator==(const TorsionQuad &a, const TorsionQuad &b) {
    return a.i == b.i && a.j == b.j && a.k == b.k && a.l == b.l;
  }
};

inline std::vector<TorsionQuad> enumerate_torsions(const Molecule &mol) {
  std::vector<TorsionQuad> out;
  // Walking bonds (j < k after normalization) yields each torsion once.
  for (const Bond &central : mol.bonds()) {
    const std::size_t j = central.i;
    const std::size_t k = central.j;
    for (const auto &[i, bi] : mol.neighbors(j)) {
      (void)bi;
      if (i == k)
        continue;
      for (const auto &[l, bl] : mol.neighbors(k)) {
        (void)bl;
        if (l == j || l == i)
          continue;
        out.push_back({i, j, k, l});
      }
    }
  }
  return out;
}

} // namespace molbench

#endif // MOLBENCH_GRAPH_HPP
