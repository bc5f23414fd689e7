//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_KEKULIZE_HPP
#define MOLBENCH_KEKULIZE_HPP

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "molbench/builtin_tables.hpp"
#include "molbench/error.hpp"
#include "molbench/molecule.hpp"
#include "molbench/parallel.hpp"
#include "molbench/sdf.hpp"
#include "molbench/valency.hpp"

namespace molbench {

namespace detail {

/// Demand of an aromatic atom: 0 if treating all its aromatic bonds as
/// single already gives an allowed valence, 1 if that leaves it exactly one
/// unit below the smallest allowed valence >= the all-single total, nullopt
/// when neither holds (the atom cannot be kekulized). With several allowed
/// valencies (e.g. neutral S: 2, 3, 6) the smallest reachable one decides,
/// which keeps thiophene-type sulfur at demand 0.
inline std::optional<int> demand_of(const AtomEnvironment &env,
                                    const ValencyTable &table) {
  const HalfUnits all_single = env.v_other + 2 * env.n_arom;
  const auto target = table.smallest_allowed_at_least(
      env.element, env.formal_charge, 0, all_single);
  if (!target)
    return std::nullopt;
  if (*target == all_single)
    return 0;
  if (*target == all_single + kHalfUnitsPerBondOrderUnit)
    return 1;
  return std::nullopt;
}

} // namespace detail

/// Whether the atom needs one of its aromatic bonds to become a double bond
/// for its valency to land on an allowed value. Requires the atom to have
/// at least one aromatic bond; throws when the atom cannot be kekulized at
/// all.
inline int double_bond_demand(const Molecule &mol, std::size_t index,
                              const ValencyTable &table =
                                  builtin_corrected_table()) {
  const AtomEnvironment env = atom_environment(mol, index);
  if (env.n_arom == 0)
    throw ValidationError("double_bond_demand: atom " +
                          std::to_string(index + 1) +
                          " has no aromatic bonds");
  const auto demand = detail::demand_of(env, table);
  if (!demand)
    throw KekulizeError(
        KekulizeError::Kind::UnkekulizableAtom,
        "atom " + std::to_string(index + 1) + " (" +
            std::string(symbol_of(env.element)) + ") of '" + mol.name() +
            "' cannot reach an allowed valence");
  return *demand;
}

/// Replaces every aromatic bond with single or double such that all atoms
/// end on allowed valences. Molecules without aromatic bonds pass through
/// unchanged. The assignment is deterministic: backtracking over demand-1
/// atoms ordered by ascending aromatic degree then index, trying partners
/// in ascending index order, returning the first perfect matching found.
inline Molecule kekulize(const Molecule &mol,
                         const ValencyTable &table =
                             builtin_corrected_table()) {
  if (!mol.has_aromatic_bonds())
    return mol;

  const std::size_t n = mol.atom_count();
  std::vector<int> demand(n, -1); // -1: not an aromatic atom
  std::vector<int> n_arom(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const AtomEnvironment env = atom_environment(mol, i);
    if (env.n_arom == 0)
      continue;
    n_arom[i] = env.n_arom;
    const auto d = detail::demand_of(env, table);
    if (!d)
      throw KekulizeError(
          KekulizeError::Kind::UnkekulizableAtom,
          "atom " + std::to_string(i + 1) + " (" +
              std::string(symbol_of(env.element)) + ") of '" + mol.name() +
              "' cannot reach an allowed valence");
    demand[i] = *d;
  }

  // Aromatic bonds joining two demand-1 atoms are the matching candidates;
  // every other aromatic bond must become single.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> candidates(n);
  for (std::size_t b = 0; b < mol.bond_count(); ++b) {
    const Bond &bond = mol.bond(b);
    if (bond.order != BondOrder::Aromatic)
      continue;
    if (demand[bond.i] == 1 && demand[bond.j] == 1) {
      candidates[bond.i].push_back({bond.j, b});
      candidates[bond.j].push_back({bond.i, b});
    }
  }
  for (auto &c : candidates)
    std::sort(c.begin(), c.end());

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (demand[i] == 1)
      order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(n_arom[a], a) < std::tie(n_arom[b], b);
  });

  std::vector<bool> matched(n, false);
  std::vector<std::size_t> doubled; // bond indices assigned double

  // Branching on the first unmatched atom is complete: any perfect matching
  // pairs it with one of its candidates.
  auto solve = [&](auto &&self, std::size_t order_pos) -> bool {
    while (order_pos < order.size() && matched[order[order_pos]])
      ++order_pos;
    if (order_pos == order.size())
      return true;
    const std::size_t u = order[order_pos];
    for (const auto &[v, bond_idx] : candidates[u]) {
      if (matched[v])
        continue;
      matched[u] = matched[v] = true;
      doubled.push_back(bond_idx);
      if (self(self, order_pos + 1))
        return true;
      doubled.pop_back();
      matched[u] = matched[v] = false;
    }
    return false;
  };

  if (!solve(solve, 0))
    throw KekulizeError(KekulizeError::Kind::NoKekuleStructure,
                        "no valid single/double assignment of the aromatic "
                        "bonds of '" + mol.name() + "'");

  std::vector<Bond> bonds(mol.bonds().begin(), mol.bonds().end());
  for (Bond &b : bonds)
    if (b.order == BondOrder::Aromatic)
      b.order = BondOrder::Single;
  for (std::size_t b : doubled)
    bonds[b].order = BondOrder::Double;

  Molecule out = mol.with_bonds(std::move(bonds));

  // Matching success must leave every atom on an allowed valence; anything
  // else is a defect in the demand computation.
  for (std::size_t i = 0; i < n; ++i) {
    if (demand[i] < 0)
      continue;
    const AtomEnvironment env = atom_environment(out, i);
    if (!table.allows(env.element, env.formal_charge, 0, env.v_other))
      throw std::logic_error("kekulize produced a disallowed valence on atom " +
                             std::to_string(i + 1) + " of '" + mol.name() +
                             "'");
  }
  return out;
}

struct KekulizeFailure {
  std::size_t index = 0; // position in the input batch
  std::string name;
  std::string kind; // NoKekuleStructure | UnkekulizableAtom
  std::string detail;
};

struct KekulizeDatasetResult {
  std::vector<SdfRecord> records; // successes, input order, properties intact
  std::vector<KekulizeFailure> failures;
};

/// Order-preserving parallel map of kekulize over a batch; failures are
/// data, not faults.
inline KekulizeDatasetResult
kekulize_dataset(const std::vector<SdfRecord> &records, unsigned workers = 1,
                 const ValencyTable &table = builtin_corrected_table()) {
  struct Slot {
    std::optional<SdfRecord> ok;
    std::optional<KekulizeFailure> failed;
  };
  std::vector<Slot> slots(records.size());
  parallel_for_index(records.size(), workers, [&](std::size_t i) {
    try {
      SdfRecord out = records[i];
      out.molecule = kekulize(records[i].molecule, table);
      slots[i].ok = std::move(out);
    } catch (const KekulizeError &e) {
      slots[i].failed =
          KekulizeFailure{i, records[i].molecule.name(), e.kind_name(),
                          e.what()};
    }
  });

  KekulizeDatasetResult result;
  for (Slot &slot : slots) {
    if (slot.ok)
      result.records.push_back(std::move(*slot.ok));
    else
      result.failures.push_back(std::move(*slot.failed));
  }
  return result;
}

/// Failure log lines: `<name>\t<error-kind>`.
inline std::string
render_failure_log(const std::vector<KekulizeFailure> &failures) {
  std::ostringstream out;
  for (const KekulizeFailure &f : failures)
    out << f.name << '\t' << f.kind << '\n';
  return out.str();
}

} // namespace molbench

#endif // MOLBENCH_KEKULIZE_HPP
