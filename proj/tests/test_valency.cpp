//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "molbench/builtin_tables.hpp"
#include "molbench/kekulize.hpp"
#include "molbench/valency.hpp"
#include "support/fixtures.hpp"
#include "support/random_mol.hpp"

using namespace molbench;
using namespace molbench::testing;

TEST_CASE("atom environments", "[valency]") {
  const Molecule bz = benzene();
  const AtomEnvironment c = atom_environment(bz, 0);
  CHECK(c.element == Element::C);
  CHECK(c.formal_charge == 0);
  CHECK(c.n_arom == 2);
  CHECK(c.v_other == 2); // one single bond, half-units

  const Molecule tp = triphenylene();
  const AtomEnvironment fusion = atom_environment(tp, 0);
  CHECK(fusion.n_arom == 3);
  CHECK(fusion.v_other == 0);

  const AtomEnvironment methane_c = atom_environment(methane(), 0);
  CHECK(methane_c.n_arom == 0);
  CHECK(methane_c.v_other == 8);
}

TEST_CASE("total valence in half-units", "[valency]") {
  const AtomEnvironment benzene_c{Element::C, 0, 2, 2};
  CHECK(total_valence(benzene_c, AromaticWeight::One) == 6);        // 3
  CHECK(total_valence(benzene_c, AromaticWeight::OneAndHalf) == 8); // 4
  const AtomEnvironment fusion_c{Element::C, 0, 3, 0};
  CHECK(total_valence(fusion_c, AromaticWeight::OneAndHalf) == 9); // 4.5
  CHECK(total_valence(fusion_c, AromaticWeight::OneAndHalf) % 2 == 1);
}

TEST_CASE("built-in table sanity", "[valency]") {
  const ValencyTable &corrected = builtin_corrected_table();
  const ValencyTable &legacy = builtin_legacy_table();
  const ValencyTable &tuple = builtin_tuple_table();

  CHECK(corrected.kind() == TableKind::TotalValence);
  CHECK(legacy.kind() == TableKind::TotalValence);
  CHECK(tuple.kind() == TableKind::Tuple);

  // spot checks against the published rows (whole units doubled)
  CHECK(corrected.allows(Element::C, 0, 0, 8));
  CHECK_FALSE(corrected.allows(Element::C, 0, 0, 6));
  CHECK(legacy.allows(Element::C, 0, 0, 6)); // the red entry
  CHECK(legacy.allows(Element::N, 0, 0, 4)); // the red entry
  CHECK(legacy.allows(Element::H, -1, 0, 0));
  CHECK(corrected.allows(Element::S, 3, 0, 4));
  CHECK(corrected.allows(Element::S, 3, 0, 10));
  CHECK_FALSE(legacy.allows(Element::S, 3, 0, 4)); // legacy S+3 lists only 5
  CHECK(legacy.allows(Element::Se, 0, 0, 8));
  CHECK(legacy.allows(Element::Hg, 0, 0, 2));
  CHECK(tuple.allows(Element::C, 0, 2, 2));
  CHECK(tuple.allows(Element::C, 0, 2, 4));
  CHECK(tuple.allows(Element::N, 1, 2, 4));
  CHECK_FALSE(tuple.allows(Element::N, 1, 1, 6)); // no n_arom = 1 row
  CHECK_FALSE(tuple.allows(Element::O, -1, 0, 2)); // absent from tuple table

  CHECK(corrected.entry_count() == 36);
  CHECK(legacy.entry_count() == 49);
  CHECK(tuple.entry_count() == 55);
}

TEST_CASE("is_atom_stable across regimes", "[valency]") {
  const ValencyTable &corrected = builtin_corrected_table();
  const ValencyTable &legacy = builtin_legacy_table();
  const ValencyTable &tuple = builtin_tuple_table();

  SECTION("neutral carbon with three single bonds") {
    const Molecule m = fig_carbon_three_singles();
    CHECK(is_atom_stable(m, 0, StabilityMode::LegacyArom1, legacy));
    CHECK_FALSE(is_atom_stable(m, 0, StabilityMode::Kekulized, corrected));
    CHECK_FALSE(is_atom_stable(m, 0, StabilityMode::AromTuple, tuple));
  }
  SECTION("N+ with one triple and one aromatic bond") {
    const Molecule m = fig_nitrogen_triple_aromatic();
    // atom 6 is the charged nitrogen
    CHECK(is_atom_stable(m, 6, StabilityMode::LegacyArom1, legacy));
    CHECK_FALSE(is_atom_stable(m, 6, StabilityMode::AromTuple, tuple));
  }
  SECTION("mode/table shape mismatch is an error") {
    const Molecule m = methane();
    CHECK_THROWS_AS(is_atom_stable(m, 0, StabilityMode::AromTuple, legacy),
                    IncompatibleTableError);
    CHECK_THROWS_AS(is_atom_stable(m, 0, StabilityMode::Kekulized, tuple),
                    IncompatibleTableError);
  }
  SECTION("kekulized mode rejects aromatic atoms") {
    const Molecule m = benzene();
    CHECK_THROWS_AS(is_atom_stable(m, 0, StabilityMode::Kekulized, corrected),
                    ValidationError);
    CHECK_THROWS_AS(
        molecule_stability(m, StabilityMode::Kekulized, corrected),
        ValidationError);
  }
}

TEST_CASE("molecule stability", "[valency]") {
  const ValencyTable &legacy = builtin_legacy_table();
  const ValencyTable &tuple = builtin_tuple_table();

  SECTION("benzene is fully stable under the tuple table") {
    const auto r = molecule_stability(benzene(), StabilityMode::AromTuple,
                                      tuple);
    CHECK(r.stable_fraction == 1.0);
    CHECK(r.all_stable);
  }
  SECTION("triphenylene under the 1.5 convention: 12 of 18 carbons") {
    const Molecule tp = triphenylene();
    std::size_t stable_carbons = 0, carbons = 0;
    for (std::size_t i = 0; i < tp.atom_count(); ++i) {
      if (tp.atom(i).element != Element::C)
        continue;
      ++carbons;
      if (is_atom_stable(tp, i, StabilityMode::Arom15, legacy))
        ++stable_carbons;
    }
    CHECK(carbons == 18);
    CHECK(stable_carbons == 12);
    const auto r = molecule_stability(tp, StabilityMode::Arom15, legacy);
    CHECK_FALSE(r.all_stable);
    // but the rounding bug masks it completely
    const auto buggy =
        molecule_stability(tp, StabilityMode::LegacyArom1, legacy);
    CHECK(buggy.all_stable);
  }
  SECTION("methane is stable in every regime") {
    for (StabilityMode mode :
         {StabilityMode::LegacyArom1, StabilityMode::Arom15,
          StabilityMode::Kekulized}) {
      const auto r =
          molecule_stability(methane(), mode, builtin_corrected_table());
      CHECK(r.all_stable);
    }
    CHECK(molecule_stability(methane(), StabilityMode::AromTuple, tuple)
              .all_stable);
  }
}

TEST_CASE("valid_and_connected", "[valency]") {
  const ValencyTable &corrected = builtin_corrected_table();
  const ValencyTable &tuple = builtin_tuple_table();
  CHECK(valid_and_connected(benzene(), tuple));
  CHECK_FALSE(valid_and_connected(fragmented_benzene(), tuple));
  CHECK_FALSE(valid_and_connected(fig_nitrogen_two_singles(), corrected));
  CHECK(valid_and_connected(methane(), corrected));
}

TEST_CASE("build_valency_table", "[valency]") {
  SECTION("tuple mode on benzene + methane") {
    const auto table = build_valency_table(
        {record_of(benzene()), record_of(methane())}, TableKind::Tuple);
    CHECK(table.allows(Element::C, 0, 2, 2));
    CHECK(table.allows(Element::C, 0, 0, 8));
    CHECK(table.allows(Element::H, 0, 0, 2));
    CHECK(table.entry_count() == 3);
    // counts: 6 aromatic C, 1 methane C, 10 H
    for (const auto &e : table.entries()) {
      if (e.element == Element::C && e.n_arom == 2)
        CHECK(e.count == 6);
      if (e.element == Element::C && e.n_arom == 0)
        CHECK(e.count == 1);
      if (e.element == Element::H)
        CHECK(e.count == 10);
    }
  }
  SECTION("total mode requires aromatic-free input") {
    CHECK_THROWS_AS(
        build_valency_table({record_of(benzene())}, TableKind::TotalValence),
        ValidationError);
    const auto table = build_valency_table({record_of(kekulized_benzene())},
                                           TableKind::TotalValence);
    CHECK(table.allows(Element::C, 0, 0, 8));
    CHECK(table.allows(Element::H, 0, 0, 2));
    CHECK(table.entry_count() == 2);
  }
  SECTION("empty corpus gives an empty table") {
    CHECK(build_valency_table({}, TableKind::Tuple).empty());
  }
  SECTION("derivation closure: the corpus is fully stable under its table") {
    const std::vector<SdfRecord> corpus = {
        record_of(benzene()), record_of(pyridine()), record_of(furan()),
        record_of(thiophene()), record_of(methane()),
        record_of(fig_nitrogen_triple_aromatic())};
    const auto table = build_valency_table(corpus, TableKind::Tuple);
    for (const auto &rec : corpus) {
      const auto r =
          molecule_stability(rec.molecule, StabilityMode::AromTuple, table);
      CHECK(r.stable_fraction == 1.0);
    }
  }
  SECTION("worker count never changes the derived table") {
    Rng rng(55);
    std::vector<SdfRecord> corpus;
    for (int i = 0; i < 60; ++i)
      corpus.push_back(record_of(random_molecule(rng)));
    const auto serial = build_valency_table(corpus, TableKind::Tuple, 1);
    const auto parallel = build_valency_table(corpus, TableKind::Tuple, 5);
    CHECK(serial.serialize() == parallel.serialize());
  }
  SECTION("monotonicity: growing the corpus never removes entries") {
    Rng rng(77);
    std::vector<SdfRecord> corpus;
    ValencyTable prev(TableKind::Tuple, "prev");
    for (int step = 0; step < 10; ++step) {
      corpus.push_back(record_of(random_molecule(rng)));
      const auto table = build_valency_table(corpus, TableKind::Tuple);
      for (const auto &e : prev.entries())
        CHECK(table.allows(e.element, e.charge, e.n_arom, e.v_other));
      prev = table;
    }
  }
}

TEST_CASE("table serialization", "[valency]") {
  SECTION("round trip preserves entries and counts") {
    const auto table = build_valency_table(
        {record_of(benzene()), record_of(methane())}, TableKind::Tuple);
    std::istringstream in(table.serialize());
    const auto back = ValencyTable::parse(in, "roundtrip");
    CHECK(back.kind() == TableKind::Tuple);
    CHECK(back.serialize() == table.serialize());
  }
  SECTION("serialization is sorted and tab separated") {
    const std::string text = builtin_corrected_table().serialize();
    CHECK(text.rfind("# kind: total", 0) == 0);
    CHECK(text.find("C\t0\t0\t4\t0\n") != std::string::npos);
    // B sorts before Bi and Br, which sort before C
    const auto b = text.find("\nB\t");
    const auto bi = text.find("\nBi\t");
    const auto br = text.find("\nBr\t");
    const auto c = text.find("\nC\t");
    REQUIRE(b != std::string::npos);
    CHECK(b < bi);
    CHECK(bi < br);
    CHECK(br < c);
  }
  SECTION("missing kind header is an error") {
    std::istringstream in("C\t0\t0\t4\t0\n");
    CHECK_THROWS_AS(ValencyTable::parse(in, "bad"), ParseError);
  }
}

TEST_CASE("table diff", "[valency]") {
  ValencyTable derived(TableKind::TotalValence, "derived");
  derived.add(Element::C, 0, 0, 8, 5);
  derived.add(Element::C, 0, 0, 4, 1); // pathological: valence 2
  const TableDiff diff = diff_tables(derived, builtin_corrected_table());
  REQUIRE(diff.added.size() == 1);
  CHECK(diff.added[0].element == Element::C);
  CHECK(diff.added[0].v_other == 4);
  CHECK(diff.missing.size() == builtin_corrected_table().entry_count() - 1);
  const std::string text = render_table_diff(diff);
  CHECK(text.find("+ C\t0\t0\t2\n") != std::string::npos);
}

TEST_CASE("mode-bug reproduction invariant", "[valency]") {
  // Molecules whose aromatic atoms satisfy the 1.5 rule exactly: per-atom
  // agreement between Arom15 + corrected-total and AromTuple + tuple.
  const ValencyTable &corrected = builtin_corrected_table();
  const ValencyTable &tuple = builtin_tuple_table();
  for (const Molecule &m : {benzene(), pyridine()}) {
    for (std::size_t i = 0; i < m.atom_count(); ++i) {
      CHECK(is_atom_stable(m, i, StabilityMode::Arom15, corrected) ==
            is_atom_stable(m, i, StabilityMode::AromTuple, tuple));
    }
  }
}

TEST_CASE("kekulization consistency invariant", "[valency]") {
  // Wherever kekulize succeeds and the tuple metric is fully satisfied,
  // the kekulized molecule is fully stable under the corrected table.
  Rng rng(123);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const Molecule m =
        random_aromatic_system(rng, "inv-" + std::to_string(trial));
    Molecule kek;
    try {
      kek = kekulize(m);
    } catch (const KekulizeError &) {
      continue;
    }
    if (!molecule_stability(m, StabilityMode::AromTuple,
                            builtin_tuple_table())
             .all_stable)
      continue;
    ++checked;
    CHECK(molecule_stability(kek, StabilityMode::Kekulized,
                             builtin_corrected_table())
              .all_stable);
  }
  CHECK(checked > 5); // the generator must exercise the implication
}
