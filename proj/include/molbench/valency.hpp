//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_VALENCY_HPP
#define MOLBENCH_VALENCY_HPP

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "molbench/element.hpp"
#include "molbench/error.hpp"
#include "molbench/graph.hpp"
#include "molbench/molecule.hpp"
#include "molbench/parallel.hpp"
#include "molbench/sdf.hpp"

namespace molbench {

/// Bonding environment of one atom: the count of aromatic bonds and the
/// total non-aromatic bond order. v_other is kept in half-units and is
/// always even (non-aromatic orders are integral).
struct AtomEnvironment {
  Element element;
  int formal_charge = 0;
  int n_arom = 0;
  HalfUnits v_other = 0;
};

inline AtomEnvironment atom_environment(const Molecule &mol,
                                        std::size_t index) {
  const Atom &atom = mol.atom(index);
  AtomEnvironment env{atom.element, atom.formal_charge, 0, 0};
  for (const auto &[nbr, bond_idx] : mol.neighbors(index)) {
    (void)nbr;
    const Bond &b = mol.bond(bond_idx);
    if (b.order == BondOrder::Aromatic)
      ++env.n_arom;
    else
      env.v_other += half_units(b.order);
  }
  return env;
}

/// Per-aromatic-bond valence contribution under the historical conventions.
enum class AromaticWeight {
  One,        // the rounding bug: aromatic counts as a single bond
  OneAndHalf, // the intended convention
};

inline HalfUnits aromatic_half_units(AromaticWeight w) {
  return w == AromaticWeight::One ? 2 : 3;
}

/// Total valence in half-units; exact for 1.5 contributions. The result is
/// integral iff it is even.
inline HalfUnits total_valence(const AtomEnvironment &env, AromaticWeight w) {
  return env.v_other + env.n_arom * aromatic_half_units(w);
}

/// Shape of a valency lookup table. Total-valence tables key on
/// (element, charge) with entries at n_arom = 0 holding total valences;
/// tuple tables key on (element, charge, n_arom) holding allowed
/// non-aromatic totals.
enum class TableKind { TotalValence, Tuple };

inline std::string table_kind_name(TableKind k) {
  return k == TableKind::TotalValence ? "total" : "tuple";
}

/// Allowed-valency lookup table with observation counts. Stability checks
/// use presence only; counts exist for auditability of derived tables.
/// Immutable once built and shared freely across threads.
class ValencyTable {
public:
  struct Entry {
    Element element;
    int charge;
    int n_arom;
    HalfUnits v_other; // half-units, always even
    std::uint64_t count;
  };

  ValencyTable(TableKind kind, std::string name)
      : kind_(kind), name_(std::move(name)) {}

  TableKind kind() const { return kind_; }
  const std::string &name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  void add(Element element, int charge, int n_arom, HalfUnits v_other,
           std::uint64_t count = 0) {
    if (v_other < 0 || v_other % 2 != 0)
      throw ValidationError("table entries must hold integral valences");
    if (kind_ == TableKind::TotalValence && n_arom != 0)
      throw ValidationError("total-valence tables have entries only at "
                            "n_arom = 0");
    entries_[key(element, charge, n_arom)][v_other] += count;
  }

  /// Exact half-unit membership; a missing key or a fractional total is
  /// simply "not allowed", never an error.
  bool allows(Element element, int charge, int n_arom,
              HalfUnits v_other) const {
    const auto it = entries_.find(key(element, charge, n_arom));
    if (it == entries_.end())
      return false;
    return it->second.count(v_other) != 0;
  }

  /// Smallest allowed value >= v, if any (kekulization demand rule).
  std::optional<HalfUnits> smallest_allowed_at_least(Element element,
                                                     int charge, int n_arom,
                                                     HalfUnits v) const {
    const auto it = entries_.find(key(element, charge, n_arom));
    if (it == entries_.end())
      return std::nullopt;
    const auto lo = it->second.lower_bound(v);
    if (lo == it->second.end())
      return std::nullopt;
    return lo->first;
  }

  bool empty() const { return entries_.empty(); }

  std::size_t entry_count() const {
    std::size_t n = 0;
    for (const auto &[k, values] : entries_)
      n += values.size();
    return n;
  }

  /// Entries sorted by (symbol, charge, n_arom, v_other).
  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    for (const auto &[k, values] : entries_) {
      const auto &[sym, charge, n_arom] = k;
      for (const auto &[v, count] : values)
        out.push_back({element_from_symbol(sym), charge, n_arom, v, count});
    }
    return out;
  }

  void merge(const ValencyTable &other) {
    if (other.kind_ != kind_)
      throw ValidationError("cannot merge tables of different kinds");
    for (const auto &[k, values] : other.entries_)
      for (const auto &[v, count] : values)
        entries_[k][v] += count;
  }

  /// Line-based text form: `element charge n_arom v_other count` separated
  /// by tabs, valences in whole units, sorted by (symbol, charge, n_arom,
  /// v_other).
  std::string serialize() const {
    std::ostringstream out;
    out << "# kind: " << table_kind_name(kind_) << '\n';
    for (const Entry &e : entries()) {
      out << symbol_of(e.element) << '\t' << e.charge << '\t' << e.n_arom
          << '\t' << e.v_other / 2 << '\t' << e.count << '\n';
    }
    return out.str();
  }

  static ValencyTable parse(std::istream &in, const std::string &name) {
    std::string line;
    std::optional<TableKind> kind;
    std::vector<Entry> pending;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
        line.pop_back();
      if (line.empty())
        continue;
      if (line[0] == '#') {
        if (line.find("kind: total") != std::string::npos)
          kind = TableKind::TotalValence;
        else if (line.find("kind: tuple") != std::string::npos)
          kind = TableKind::Tuple;
        continue;
      }
      std::istringstream ss(line);
      std::string sym;
      int charge, n_arom;
      long v_units;
      std::uint64_t count;
      if (!(ss >> sym >> charge >> n_arom >> v_units >> count))
        throw ParseError("valency table '" + name + "' line " +
                         std::to_string(lineno) + ": malformed entry '" +
                         line + "'");
      auto elem = try_element_from_symbol(sym);
      if (!elem)
        throw ParseError("valency table '" + name + "' line " +
                         std::to_string(lineno) + ": unknown element '" +
                         sym + "'");
      pending.push_back({*elem, charge, n_arom,
                         static_cast<HalfUnits>(2 * v_units), count});
    }
    if (!kind)
      throw ParseError("valency table '" + name +
                       "': missing '# kind: total|tuple' header");
    ValencyTable table(*kind, name);
    for (const Entry &e : pending)
      table.add(e.element, e.charge, e.n_arom, e.v_other, e.count);
    return table;
  }

  static ValencyTable parse_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
      throw ParseError("cannot open valency table '" + path + "'");
    return parse(in, path);
  }

  void save(const std::string &path) const {
    std::ofstream out(path);
    if (!out)
      throw FormatError("cannot open '" + path + "' for writing");
    out << serialize();
  }

private:
  // Keyed by symbol text so iteration (and thus serialization) is
  // alphabetical regardless of enum order.
  using Key = std::tuple<std::string, int, int>;

  static Key key(Element element, int charge, int n_arom) {
    return {std::string(symbol_of(element)), charge, n_arom};
  }

  TableKind kind_;
  std::string name_;
  std::map<Key, std::map<HalfUnits, std::uint64_t>> entries_;
};

/// Entries present on one side only; the basis of informational diffs
/// against the built-in tables.
struct TableDiff {
  std::vector<ValencyTable::Entry> added;   // in table, not in base
  std::vector<ValencyTable::Entry> missing; // in base, not in table
};

inline TableDiff diff_tables(const ValencyTable &table,
                             const ValencyTable &base) {
  TableDiff diff;
  for (const auto &e : table.entries())
    if (!base.allows(e.element, e.charge, e.n_arom, e.v_other))
      diff.added.push_back(e);
  for (const auto &e : base.entries())
    if (!table.allows(e.element, e.charge, e.n_arom, e.v_other))
      diff.missing.push_back(e);
  return diff;
}

inline std::string render_table_diff(const TableDiff &diff) {
  std::ostringstream out;
  for (const auto &e : diff.added)
    out << "+ " << symbol_of(e.element) << '\t' << e.charge << '\t'
        << e.n_arom << '\t' << e.v_other / 2 << '\n';
  for (const auto &e : diff.missing)
    out << "- " << symbol_of(e.element) << '\t' << e.charge << '\t'
        << e.n_arom << '\t' << e.v_other / 2 << '\n';
  return out.str();
}

/// The four evaluation regimes. The first two reproduce historical
/// behavior (aromatic bonds worth 1 or 1.5 against a total-valence table);
/// the tuple mode keys on the aromatic bond count; kekulized mode demands
/// aromatic-free input checked against the corrected table.
enum class StabilityMode {
  LegacyArom1,
  Arom15,
  AromTuple,
  Kekulized,
};

inline std::string stability_mode_name(StabilityMode m) {
  switch (m) {
  case StabilityMode::LegacyArom1:
    return "legacy-arom1";
  case StabilityMode::Arom15:
    return "arom15";
  case StabilityMode::AromTuple:
    return "arom-tuple";
  default:
    return "kekulized";
  }
}

inline std::optional<StabilityMode>
stability_mode_from_name(const std::string &name) {
  if (name == "legacy-arom1")
    return StabilityMode::LegacyArom1;
  if (name == "arom15" || name == "arom-1.5")
    return StabilityMode::Arom15;
  if (name == "arom-tuple")
    return StabilityMode::AromTuple;
  if (name == "kekulized")
    return StabilityMode::Kekulized;
  return std::nullopt;
}

namespace detail {

inline void require_table_kind(StabilityMode mode, const ValencyTable &table) {
  const TableKind want = mode == StabilityMode::AromTuple
                             ? TableKind::Tuple
                             : TableKind::TotalValence;
  if (table.kind() != want)
    throw IncompatibleTableError(
        "mode '" + stability_mode_name(mode) + "' requires a " +
        table_kind_name(want) + " table, got '" + table.name() + "' (" +
        table_kind_name(table.kind()) + ")");
}

} // namespace detail

/// Whether the atom's valency is one observed in the training data, under
/// the chosen regime. A missing table key means unstable, never an error.
inline bool is_atom_stable(const Molecule &mol, std::size_t index,
                           StabilityMode mode, const ValencyTable &table) {
  detail::require_table_kind(mode, table);
  const AtomEnvironment env = atom_environment(mol, index);
  switch (mode) {
  case StabilityMode::LegacyArom1:
    return table.allows(env.element, env.formal_charge, 0,
                        total_valence(env, AromaticWeight::One));
  case StabilityMode::Arom15:
    return table.allows(env.element, env.formal_charge, 0,
                        total_valence(env, AromaticWeight::OneAndHalf));
  case StabilityMode::AromTuple:
    return table.allows(env.element, env.formal_charge, env.n_arom,
                        env.v_other);
  case StabilityMode::Kekulized:
  default:
    if (env.n_arom > 0)
      throw ValidationError("kekulized mode rejects aromatic bonds (atom " +
                            std::to_string(index + 1) + " of '" + mol.name() +
                            "')");
    return table.allows(env.element, env.formal_charge, 0, env.v_other);
  }
}

struct MoleculeStability {
  double stable_fraction = 1.0;
  bool all_stable = true;
};

inline MoleculeStability molecule_stability(const Molecule &mol,
                                            StabilityMode mode,
                                            const ValencyTable &table) {
  if (mode == StabilityMode::Kekulized && mol.has_aromatic_bonds())
    throw ValidationError("kekulized mode rejects molecules with aromatic "
                          "bonds ('" + mol.name() + "')");
  if (mol.atom_count() == 0)
    return {1.0, true}; // vacuously stable
  std::size_t stable = 0;
  for (std::size_t i = 0; i < mol.atom_count(); ++i)
    if (is_atom_stable(mol, i, mode, table))
      ++stable;
  return {static_cast<double>(stable) / static_cast<double>(mol.atom_count()),
          stable == mol.atom_count()};
}

/// Valid-and-connected: all atoms stable and a single component. The rule
/// set follows the table shape: total-valence tables imply kekulized-mode
/// checking (aromatic-free input required), tuple tables the tuple rules.
inline bool valid_and_connected(const Molecule &mol,
                                const ValencyTable &table) {
  const StabilityMode mode = table.kind() == TableKind::Tuple
                                 ? StabilityMode::AromTuple
                                 : StabilityMode::Kekulized;
  if (!molecule_stability(mol, mode, table).all_stable)
    return false;
  return connected_components(mol).size() == 1;
}

namespace detail {

inline void accumulate_environments(ValencyTable &table, const Molecule &mol,
                                    TableKind key_mode) {
  if (key_mode == TableKind::TotalValence && mol.has_aromatic_bonds())
    throw ValidationError(
        "total-valence table derivation requires aromatic-free input ('" +
        mol.name() + "' has aromatic bonds)");
  for (std::size_t i = 0; i < mol.atom_count(); ++i) {
    const AtomEnvironment env = atom_environment(mol, i);
    table.add(env.element, env.formal_charge,
              key_mode == TableKind::TotalValence ? 0 : env.n_arom,
              env.v_other, 1);
  }
}

} // namespace detail

/// Derives a lookup table from a corpus: exactly the set of observed
/// environments, each with its observation count, no thresholding. With
/// several workers the corpus is split into contiguous chunks accumulated
/// independently and merged in chunk order, so the result never depends on
/// the worker count.
inline ValencyTable build_valency_table(const std::vector<SdfRecord> &records,
                                        TableKind key_mode,
                                        unsigned workers = 1) {
  const std::string name = "derived:" + table_kind_name(key_mode);
  if (workers <= 1 || records.size() < 2) {
    ValencyTable table(key_mode, name);
    for (const SdfRecord &rec : records)
      detail::accumulate_environments(table, rec.molecule, key_mode);
    return table;
  }

  const std::size_t chunks =
      std::min<std::size_t>(workers, records.size());
  const std::size_t chunk_size = (records.size() + chunks - 1) / chunks;
  std::vector<ValencyTable> parts(chunks, ValencyTable(key_mode, name));
  parallel_for_index(chunks, static_cast<unsigned>(chunks),
                     [&](std::size_t c) {
                       const std::size_t begin = c * chunk_size;
                       const std::size_t end =
                           std::min(records.size(), begin + chunk_size);
                       for (std::size_t i = begin; i < end; ++i)
                         detail::accumulate_environments(
                             parts[c], records[i].molecule, key_mode);
                     });
  ValencyTable table(key_mode, name);
  for (const ValencyTable &part : parts)
    table.merge(part);
  return table;
}

} // namespace molbench

#endif // MOLBENCH_VALENCY_HPP
