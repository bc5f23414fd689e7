//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include <catch2/catch_amalgamated.hpp>

#include "molbench/kekulize.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random_mol.hpp"

using namespace molbench;
using namespace molbench::testing;

namespace {

std::vector<std::size_t> aromatic_bond_indices(const Molecule &m) {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < m.bond_count(); ++b)
    if (m.bond(b).order == BondOrder::Aromatic)
      out.push_back(b);
  return out;
}

HalfUnits atom_total(const Molecule &m, std::size_t i) {
  const AtomEnvironment env = atom_environment(m, i);
  REQUIRE(env.n_arom == 0);
  return env.v_other;
}

} // namespace

TEST_CASE("double bond demand", "[kekulize]") {
  CHECK(double_bond_demand(benzene(), 0) == 1);
  CHECK(double_bond_demand(pyrrole(), 0) == 0);  // N-H already at 3
  CHECK(double_bond_demand(pyridine(), 0) == 1); // bare N one below 3
  CHECK(double_bond_demand(thiophene(), 0) == 0); // S at 2, smallest match
  SECTION("non-aromatic atoms are a precondition violation") {
    CHECK_THROWS_AS(double_bond_demand(methane(), 0), ValidationError);
  }
  SECTION("hopeless atoms fold into the kekulize failure") {
    CHECK_THROWS_AS(double_bond_demand(unkekulizable_ring(), 0),
                    KekulizeError);
  }
}

TEST_CASE("kekulize benzene", "[kekulize]") {
  const Molecule input = benzene();
  const Molecule kek = kekulize(input);
  CHECK_FALSE(kek.has_aromatic_bonds());
  std::size_t doubles = 0, singles = 0;
  for (std::size_t b = 0; b < input.bond_count(); ++b) {
    if (input.bond(b).order != BondOrder::Aromatic)
      continue;
    if (kek.bond(b).order == BondOrder::Double)
      ++doubles;
    else if (kek.bond(b).order == BondOrder::Single)
      ++singles;
  }
  CHECK(doubles == 3);
  CHECK(singles == 3);
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(atom_total(kek, i) == 8); // every carbon reaches 4
}

TEST_CASE("kekulize triphenylene", "[kekulize]") {
  const Molecule kek = kekulize(triphenylene());
  CHECK_FALSE(kek.has_aromatic_bonds());
  for (std::size_t i = 0; i < kek.atom_count(); ++i) {
    if (kek.atom(i).element == Element::C)
      CHECK(atom_total(kek, i) == 8);
  }
}

TEST_CASE("kekulize failure kinds", "[kekulize]") {
  SECTION("odd demand set: no perfect matching") {
    const Molecule m = no_kekule_ring();
    // brute force over all 2^6 assignments confirms infeasibility
    CHECK_FALSE(oracle_kekulize_feasible(m));
    try {
      kekulize(m);
      FAIL("expected NoKekuleStructure");
    } catch (const KekulizeError &e) {
      CHECK(e.kind() == KekulizeError::Kind::NoKekuleStructure);
    }
  }
  SECTION("atom two units short: unkekulizable") {
    try {
      kekulize(unkekulizable_ring());
      FAIL("expected UnkekulizableAtom");
    } catch (const KekulizeError &e) {
      CHECK(e.kind() == KekulizeError::Kind::UnkekulizableAtom);
    }
  }
}

TEST_CASE("kekulize properties", "[kekulize]") {
  SECTION("aromatic-free molecules pass through unchanged") {
    const Molecule m = methane();
    const Molecule kek = kekulize(m);
    CHECK(kek.bond_count() == m.bond_count());
    for (std::size_t b = 0; b < m.bond_count(); ++b)
      CHECK(kek.bond(b).order == m.bond(b).order);
  }
  SECTION("idempotence") {
    const Molecule once = kekulize(benzene());
    const Molecule twice = kekulize(once);
    for (std::size_t b = 0; b < once.bond_count(); ++b)
      CHECK(once.bond(b).order == twice.bond(b).order);
  }
  SECTION("determinism") {
    const Molecule a = kekulize(triphenylene());
    const Molecule b = kekulize(triphenylene());
    for (std::size_t i = 0; i < a.bond_count(); ++i)
      CHECK(a.bond(i).order == b.bond(i).order);
  }
  SECTION("valence conservation: handshake over assigned orders") {
    for (const Molecule &m :
         {kekulize(benzene()), kekulize(pyridine()), kekulize(pyrrole()),
          kekulize(triphenylene())}) {
      HalfUnits atom_sum = 0;
      for (std::size_t i = 0; i < m.atom_count(); ++i)
        atom_sum += atom_total(m, i);
      HalfUnits bond_sum = 0;
      for (const Bond &b : m.bonds())
        bond_sum += half_units(b.order);
      CHECK(atom_sum == 2 * bond_sum);
    }
  }
  SECTION("exocyclic bonds are never modified") {
    const Molecule m = fig_nitrogen_triple_aromatic();
    const Molecule kek = kekulize(m);
    for (std::size_t b = 0; b < m.bond_count(); ++b) {
      if (m.bond(b).order != BondOrder::Aromatic)
        CHECK(kek.bond(b).order == m.bond(b).order);
    }
  }
}

TEST_CASE("kekulize agrees with exhaustive enumeration", "[kekulize]") {
  Rng rng(424242);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const Molecule m =
        random_aromatic_system(rng, "oracle-" + std::to_string(trial));
    const auto arom = aromatic_bond_indices(m);
    if (arom.size() > 18)
      continue; // keep the unit suite fast; acceptance runs the full sweep
    const bool oracle = oracle_kekulize_feasible(m);
    bool impl = true;
    Molecule kek;
    try {
      kek = kekulize(m);
    } catch (const KekulizeError &) {
      impl = false;
    }
    INFO("molecule " << m.name());
    CHECK(impl == oracle);
    if (impl) {
      ++feasible;
      const auto mask = assignment_mask_of(m, kek, arom);
      CHECK(oracle_assignment_valid(m, arom, mask,
                                    builtin_corrected_table()));
    } else {
      ++infeasible;
    }
  }
  // the generator must produce both outcomes for this test to mean much
  CHECK(feasible >= 10);
  CHECK(infeasible >= 10);
}

TEST_CASE("kekulize_dataset", "[kekulize]") {
  SECTION("successes and failures are split, order preserved") {
    std::vector<SdfRecord> records;
    records.push_back(record_of(benzene()));
    records.push_back(record_of(unkekulizable_ring()));
    records.push_back(record_of(methane()));
    records[0].properties = {{"id", "a"}};
    const auto result = kekulize_dataset(records);
    REQUIRE(result.records.size() == 2);
    REQUIRE(result.failures.size() == 1);
    CHECK(result.records[0].molecule.name() == "benzene");
    CHECK(result.records[0].properties ==
          std::vector<std::pair<std::string, std::string>>{{"id", "a"}});
    CHECK(result.records[1].molecule.name() == "methane");
    CHECK(result.failures[0].name == "unkekulizable-ring");
    CHECK(result.failures[0].kind == "UnkekulizableAtom");
    CHECK(render_failure_log(result.failures) ==
          "unkekulizable-ring\tUnkekulizableAtom\n");
  }
  SECTION("empty input") {
    const auto result = kekulize_dataset({});
    CHECK(result.records.empty());
    CHECK(result.failures.empty());
  }
  SECTION("worker count does not change the outcome") {
    Rng rng(9);
    std::vector<SdfRecord> records;
    for (int i = 0; i < 40; ++i)
      records.push_back(record_of(
          random_aromatic_system(rng, "w-" + std::to_string(i))));
    const auto serial = kekulize_dataset(records, 1);
    const auto parallel = kekulize_dataset(records, 4);
    REQUIRE(serial.records.size() == parallel.records.size());
    REQUIRE(serial.failures.size() == parallel.failures.size());
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
      CHECK(serial.records[i].molecule.name() ==
            parallel.records[i].molecule.name());
      for (std::size_t b = 0; b < serial.records[i].molecule.bond_count();
           ++b)
        CHECK(serial.records[i].molecule.bond(b).order ==
              parallel.records[i].molecule.bond(b).order);
    }
  }
}
