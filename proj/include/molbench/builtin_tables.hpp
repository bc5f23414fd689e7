//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_BUILTIN_TABLES_HPP
#define MOLBENCH_BUILTIN_TABLES_HPP

#include <initializer_list>
#include <string>

#include "molbench/valency.hpp"

namespace molbench {

namespace detail {

struct TableRow {
  const char *symbol;
  int charge;
  int n_arom;
  std::initializer_list<int> valences; // whole units
};

inline ValencyTable make_table(TableKind kind, const std::string &name,
                               std::initializer_list<TableRow> rows) {
  ValencyTable table(kind, name);
  for (const TableRow &row : rows)
    for (int v : row.valences)
      table.add(element_from_symbol(row.symbol), row.charge, row.n_arom,
                2 * v, 0);
  return table;
}

} // namespace detail

/// Chemically accurate allowed valencies by (element, formal charge),
/// derived from curated GEOM-Drugs structures. Total-valence shaped.
inline const ValencyTable &builtin_corrected_table() {
  using detail::TableRow;
  static const ValencyTable table = detail::make_table(
      TableKind::TotalValence, "corrected",
      {
          TableRow{"H", 0, 0, {1}},
          TableRow{"B", -1, 0, {4}},
          TableRow{"B", 0, 0, {3}},
          TableRow{"C", -1, 0, {3}},
          TableRow{"C", 0, 0, {4}},
          TableRow{"C", 1, 0, {3}},
          TableRow{"N", -2, 0, {1}},
          TableRow{"N", -1, 0, {2}},
          TableRow{"N", 0, 0, {3}},
          TableRow{"N", 1, 0, {4}},
          TableRow{"O", -1, 0, {1}},
          TableRow{"O", 0, 0, {2}},
          TableRow{"O", 1, 0, {3}},
          TableRow{"F", 0, 0, {1}},
          TableRow{"Si", 0, 0, {4}},
          TableRow{"Si", 1, 0, {5}},
          TableRow{"P", 0, 0, {3, 5}},
          TableRow{"P", 1, 0, {4}},
          TableRow{"S", -1, 0, {1}},
          TableRow{"S", 0, 0, {2, 3, 6}},
          TableRow{"S", 1, 0, {3}},
          TableRow{"S", 2, 0, {4}},
          TableRow{"S", 3, 0, {2, 5}},
          TableRow{"Cl", 0, 0, {1}},
          TableRow{"Cl", 1, 0, {2}},
          TableRow{"Br", 0, 0, {1}},
          TableRow{"Br", 1, 0, {2}},
          TableRow{"I", 0, 0, {1}},
          TableRow{"I", 1, 0, {2}},
          TableRow{"I", 2, 0, {3}},
          TableRow{"Bi", 0, 0, {3}},
          TableRow{"Bi", 2, 0, {5}},
      });
  return table;
}

/// The historically used table, reproduced exactly as published, including
/// its chemically wrong entries (e.g. neutral carbon valence 3) and the
/// entries that were missing from historical code but observed in data.
/// Exists solely to reproduce legacy metric behavior.
inline const ValencyTable &builtin_legacy_table() {
  using detail::TableRow;
  static const ValencyTable table = detail::make_table(
      TableKind::TotalValence, "legacy",
      {
          TableRow{"H", -1, 0, {0}},
          TableRow{"H", 0, 0, {1}},
          TableRow{"H", 1, 0, {0}},
          TableRow{"B", -1, 0, {4}},
          TableRow{"B", 0, 0, {3}},
          TableRow{"C", -1, 0, {3}},
          TableRow{"C", 0, 0, {3, 4}},
          TableRow{"C", 1, 0, {3}},
          TableRow{"N", -2, 0, {1}},
          TableRow{"N", -1, 0, {2}},
          TableRow{"N", 0, 0, {2, 3}},
          TableRow{"N", 1, 0, {2, 3, 4}},
          TableRow{"O", -1, 0, {1}},
          TableRow{"O", 0, 0, {2}},
          TableRow{"O", 1, 0, {3}},
          TableRow{"F", -1, 0, {0}},
          TableRow{"F", 0, 0, {1}},
          TableRow{"Al", 0, 0, {3}},
          TableRow{"Si", 0, 0, {4}},
          TableRow{"Si", 1, 0, {5}},
          TableRow{"P", 0, 0, {3, 5}},
          TableRow{"P", 1, 0, {4}},
          TableRow{"S", -1, 0, {1, 3}},
          TableRow{"S", 0, 0, {2, 6}},
          TableRow{"S", 1, 0, {2, 3}},
          TableRow{"S", 2, 0, {4}},
          TableRow{"S", 3, 0, {5}},
          TableRow{"Cl", 0, 0, {1}},
          TableRow{"Cl", 1, 0, {2}},
          TableRow{"Br", 0, 0, {1}},
          TableRow{"Br", 1, 0, {2}},
          TableRow{"Se", 0, 0, {2, 4, 6}},
          TableRow{"I", 0, 0, {1}},
          TableRow{"I", 1, 0, {2}},
          TableRow{"I", 2, 0, {3}},
          TableRow{"Hg", 0, 0, {1, 2}},
          TableRow{"Bi", 0, 0, {3}},
          TableRow{"Bi", 2, 0, {5}},
      });
  return table;
}

/// Aromaticity-aware table keyed by (element, charge, number of aromatic
/// bonds), holding allowed non-aromatic bond order totals.
inline const ValencyTable &builtin_tuple_table() {
  using detail::TableRow;
  static const ValencyTable table = detail::make_table(
      TableKind::Tuple, "tuple",
      {
          TableRow{"H", 0, 0, {1}},
          TableRow{"B", -1, 0, {4}},
          TableRow{"B", 0, 0, {3}},
          TableRow{"C", -1, 0, {3}},
          TableRow{"C", 0, 0, {4}},
          TableRow{"C", 1, 0, {3}},
          TableRow{"C", -1, 2, {1}},
          TableRow{"C", 0, 2, {1, 2}},
          TableRow{"C", 1, 2, {1}},
          TableRow{"C", -1, 3, {0}},
          TableRow{"C", 0, 3, {0}},
          TableRow{"C", 1, 3, {0}},
          TableRow{"N", -2, 0, {1}},
          TableRow{"N", -1, 0, {2}},
          TableRow{"N", 0, 0, {3}},
          TableRow{"N", 1, 0, {4}},
          TableRow{"N", -1, 2, {0}},
          TableRow{"N", 0, 2, {0, 1}},
          TableRow{"N", 1, 2, {0, 1, 2}},
          TableRow{"N", 0, 3, {0}},
          TableRow{"N", 1, 3, {0}},
          TableRow{"O", 0, 0, {2}},
          TableRow{"O", 1, 0, {3}},
          TableRow{"O", 0, 2, {0}},
          TableRow{"F", 0, 0, {1}},
          TableRow{"Si", 0, 0, {4}},
          TableRow{"Si", 1, 0, {5}},
          TableRow{"P", 0, 0, {3, 5}},
          TableRow{"P", 1, 0, {4}},
          TableRow{"S", -1, 0, {1}},
          TableRow{"S", 0, 0, {2, 3, 6}},
          TableRow{"S", 1, 0, {3}},
          TableRow{"S", 2, 0, {4}},
          TableRow{"S", 3, 0, {2, 5}},
          TableRow{"S", 0, 2, {0}},
          TableRow{"S", 1, 2, {0, 1}},
          TableRow{"S", 1, 3, {0}},
          TableRow{"Cl", 0, 0, {1}},
          TableRow{"Cl", 1, 0, {2}},
          TableRow{"Br", 0, 0, {1}},
          TableRow{"Br", 1, 0, {2}},
          TableRow{"I", 0, 0, {1}},
          TableRow{"I", 1, 0, {2}},
          TableRow{"I", 2, 0, {3}},
          TableRow{"Bi", 0, 0, {3}},
          TableRow{"Bi", 2, 0, {5}},
      });
  return table;
}

/// Resolves "corrected", "legacy", or "tuple".
inline const ValencyTable *try_builtin_table(const std::string &name) {
  if (name == "corrected")
    return &builtin_corrected_table();
  if (name == "legacy")
    return &builtin_legacy_table();
  if (name == "tuple")
    return &builtin_tuple_table();
  return nullptr;
}

} // namespace molbench

#endif // MOLBENCH_BUILTIN_TABLES_HPP
