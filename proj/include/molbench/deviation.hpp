//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_DEVIATION_HPP
#define MOLBENCH_DEVIATION_HPP

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "molbench/error.hpp"
#include "molbench/graph.hpp"
#include "molbench/molecule.hpp"
#include "molbench/vec3.hpp"

namespace molbench {

/// Angle deviation with the 180-degree wrap: min(|d|, 180 - |d|).
/// Raw bond angles lie in [0, 180], so the result lies in [0, 90].
inline double angle_difference_deg(double a, double b) {
  const double d = std::fabs(a - b);
  return std::min(d, 180.0 - d);
}

/// Torsion deviation respecting dihedral periodicity: min(|d|, 360 - |d|),
/// in [0, 180].
inline double torsion_difference_deg(double a, double b) {
  const double d = std::fabs(a - b);
  return std::min(d, 360.0 - d);
}

/// A topology-identical (initial, optimized) geometry pair. Relaxation
/// preserves atoms and bonds; only positions differ.
class ConformerPair {
public:
  ConformerPair(Molecule initial, Molecule optimized)
      : initial_(std::move(initial)), optimized_(std::move(optimized)) {
    validate();
  }

  const Molecule &initial() const { return initial_; }
  const Molecule &optimized() const { return optimized_; }

private:
  void validate() const {
    const std::string where =
        "conformer pair '" + initial_.name() + "': ";
    if (initial_.atom_count() != optimized_.atom_count())
      throw ValidationError(where + "atom counts differ");
    for (std::size_t i = 0; i < initial_.atom_count(); ++i) {
      if (initial_.atom(i).element != optimized_.atom(i).element)
        throw ValidationError(where + "element sequences differ at atom " +
                              std::to_string(i + 1));
      if (initial_.atom(i).formal_charge != optimized_.atom(i).formal_charge)
        throw ValidationError(where + "charge sequences differ at atom " +
                              std::to_string(i + 1));
    }
    if (initial_.bond_count() != optimized_.bond_count())
      throw ValidationError(where + "bond counts differ");
    for (std::size_t b = 0; b < initial_.bond_count(); ++b) {
      const Bond &x = initial_.bond(b);
      const Bond &y = optimized_.bond(b);
      if (x.i != y.i || x.j != y.j || x.order != y.order)
        throw ValidationError(where + "bond lists differ at bond " +
                              std::to_string(b + 1));
    }
  }

  Molecule initial_;
  Molecule optimized_;
};

inline double bond_length_delta(const ConformerPair &pair, const Bond &bond) {
  const double r_init = distance(pair.initial().atom(bond.i).position,
                                 pair.initial().atom(bond.j).position);
  const double r_opt = distance(pair.optimized().atom(bond.i).position,
                                pair.optimized().atom(bond.j).position);
  return std::fabs(r_init - r_opt);
}

inline double bond_angle_delta(const ConformerPair &pair,
                               const AngleTriple &t) {
  const auto a_init = try_bond_angle_deg(pair.initial().atom(t.i).position,
                                         pair.initial().atom(t.j).position,
                                         pair.initial().atom(t.k).position);
  const auto a_opt = try_bond_angle_deg(pair.optimized().atom(t.i).position,
                                        pair.optimized().atom(t.j).position,
                                        pair.optimized().atom(t.k).position);
  if (!a_init || !a_opt)
    throw DegenerateGeometryError(DegenerateGeometryError::Kind::Angle,
                                  "zero-length bond vector in angle");
  return angle_difference_deg(*a_init, *a_opt);
}

inline double torsion_delta(const ConformerPair &pair, const TorsionQuad &q) {
  const auto p_init = try_dihedral_deg(pair.initial().atom(q.i).position,
                                       pair.initial().atom(q.j).position,
                                       pair.initial().atom(q.k).position,
                                       pair.initial().atom(q.l).position);
  const auto p_opt = try_dihedral_deg(pair.optimized().atom(q.i).position,
                                      pair.optimized().atom(q.j).position,
                                      pair.optimized().atom(q.k).position,
                                      pair.optimized().atom(q.l).position);
  if (!p_init || !p_opt)
    throw DegenerateGeometryError(DegenerateGeometryError::Kind::Torsion,
                                  "collinear atoms in torsion");
  return torsion_difference_deg(*p_init, *p_opt);
}

/// Per-pair deviation sums. Degenerate primitives (in either conformer)
/// are skipped and counted, never zero-filled.
struct MoleculeDeviations {
  std::string name;
  std::size_t bond_count = 0;
  std::size_t angle_count = 0;
  std::size_t torsion_count = 0;
  std::size_t degenerate_angles = 0;
  std::size_t degenerate_torsions = 0;
  double sum_dr = 0.0;
  double sum_dtheta = 0.0;
  double sum_dtheta_abs = 0.0; // diagnostic: plain |dtheta|, no 180 wrap
  double sum_dphi = 0.0;

  std::size_t degenerate_count() const {
    return degenerate_angles + degenerate_torsions;
  }
  std::optional<double> mean_dr() const {
    return bond_count ? std::optional(sum_dr / double(bond_count))
                      : std::nullopt;
  }
  std::optional<double> mean_dtheta() const {
    return angle_count ? std::optional(sum_dtheta / double(angle_count))
                       : std::nullopt;
  }
  std::optional<double> mean_dtheta_abs() const {
    return angle_count ? std::optional(sum_dtheta_abs / double(angle_count))
                       : std::nullopt;
  }
  std::optional<double> mean_dphi() const {
    return torsion_count ? std::optional(sum_dphi / double(torsion_count))
                         : std::nullopt;
  }
};

inline MoleculeDeviations molecule_deviations(const ConformerPair &pair) {
  MoleculeDeviations dev;
  dev.name = pair.initial().name();
  for (const Bond &bond : pair.initial().bonds()) {
    dev.sum_dr += bond_length_delta(pair, bond);
    ++dev.bond_count;
  }
  for (const AngleTriple &t : enumerate_angles(pair.initial())) {
    const auto a_init = try_bond_angle_deg(pair.initial().atom(t.i).position,
                                           pair.initial().atom(t.j).position,
                                           pair.initial().atom(t.k).position);
    const auto a_opt =
        try_bond_angle_deg(pair.optimized().atom(t.i).position,
                           pair.optimized().atom(t.j).position,
                           pair.optimized().atom(t.k).position);
    if (!a_init || !a_opt) {
      ++dev.degenerate_angles;
      continue;
    }
    dev.sum_dtheta += angle_difference_deg(*a_init, *a_opt);
    dev.sum_dtheta_abs += std::fabs(*a_init - *a_opt);
    ++dev.angle_count;
  }
  for (const TorsionQuad &q : enumerate_torsions(pair.initial())) {
    const auto p_init = try_dihedral_deg(pair.initial().atom(q.i).position,
                                         pair.initial().atom(q.j).position,
                                         pair.initial().atom(q.k).position,
                                         pair.initial().atom(q.l).position);
    const auto p_opt = try_dihedral_deg(pair.optimized().atom(q.i).position,
                                        pair.optimized().atom(q.j).position,
                                        pair.optimized().atom(q.k).position,
                                        pair.optimized().atom(q.l).position);
    if (!p_init || !p_opt) {
      ++dev.degenerate_torsions;
      continue;
    }
    dev.sum_dphi += torsion_difference_deg(*p_init, *p_opt);
    ++dev.torsion_count;
  }
  return dev;
}

/// Pooled averages each primitive over all instances across the dataset
/// (the default); per-molecule averages within each molecule first, then
/// across molecules that have the primitive.
enum class Pooling { Pooled, PerMolecule };

inline std::string pooling_name(Pooling p) {
  return p == Pooling::Pooled ? "pooled" : "per-molecule";
}

struct DeviationSummary {
  Pooling pooling = Pooling::Pooled;
  std::size_t molecule_count = 0;
  std::size_t bond_count = 0;
  std::size_t angle_count = 0;
  std::size_t torsion_count = 0;
  std::size_t degenerate_angles = 0;
  std::size_t degenerate_torsions = 0;
  std::optional<double> mean_bond_length_delta;   // Angstrom
  std::optional<double> mean_bond_angle_delta;    // degrees, wrapped
  std::optional<double> mean_bond_angle_abs_delta; // degrees, diagnostic
  std::optional<double> mean_torsion_delta;       // degrees
};

inline DeviationSummary
summarize_deviations(const std::vector<MoleculeDeviations> &rows,
                     Pooling pooling = Pooling::Pooled) {
  DeviationSummary s;
  s.pooling = pooling;
  s.molecule_count = rows.size();
  double dr_acc = 0, dth_acc = 0, dth_abs_acc = 0, dphi_acc = 0;
  std::size_t dr_n = 0, dth_n = 0, dphi_n = 0;
  for (const MoleculeDeviations &m : rows) {
    s.bond_count += m.bond_count;
    s.angle_count += m.angle_count;
    s.torsion_count += m.torsion_count;
    s.degenerate_angles += m.degenerate_angles;
    s.degenerate_torsions += m.degenerate_torsions;
    if (pooling == Pooling::Pooled) {
      dr_acc += m.sum_dr;
      dth_acc += m.sum_dtheta;
      dth_abs_acc += m.sum_dtheta_abs;
      dphi_acc += m.sum_dphi;
    } else {
      if (auto v = m.mean_dr()) {
        dr_acc += *v;
        ++dr_n;
      }
      if (auto v = m.mean_dtheta()) {
        dth_acc += *v;
        dth_abs_acc += *m.mean_dtheta_abs();
        ++dth_n;
      }
      if (auto v = m.mean_dphi()) {
        dphi_acc += *v;
        ++dphi_n;
      }
    }
  }
  if (pooling == Pooling::Pooled) {
    dr_n = s.bond_count;
    dth_n = s.angle_count;
    dphi_n = s.torsion_count;
  }
  if (dr_n)
    s.mean_bond_length_delta = dr_acc / double(dr_n);
  if (dth_n) {
    s.mean_bond_angle_delta = dth_acc / double(dth_n);
    s.mean_bond_angle_abs_delta = dth_abs_acc / double(dth_n);
  }
  if (dphi_n)
    s.mean_torsion_delta = dphi_acc / double(dphi_n);
  return s;
}

inline DeviationSummary
summarize_deviations(const std::vector<ConformerPair> &pairs,
                     Pooling pooling = Pooling::Pooled) {
  std::vector<MoleculeDeviations> rows;
  rows.reserve(pairs.size());
  for (const ConformerPair &p : pairs)
    rows.push_back(molecule_deviations(p));
  return summarize_deviations(rows, pooling);
}

namespace detail {

inline std::string csv_quote(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string csv_number(std::optional<double> v) {
  if (!v)
    return "";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9f", *v);
  return buf;
}

} // namespace detail

inline constexpr const char *kDeviationCsvHeader =
    "name,bond_count,mean_dr,angle_count,mean_dtheta,torsion_count,"
    "mean_dphi,degenerate_count";

inline std::string
deviations_csv(const std::vector<MoleculeDeviations> &rows) {
  std::ostringstream out;
  out << kDeviationCsvHeader << '\n';
  for (const MoleculeDeviations &m : rows) {
    out << detail::csv_quote(m.name) << ',' << m.bond_count << ','
        << detail::csv_number(m.mean_dr()) << ',' << m.angle_count << ','
        << detail::csv_number(m.mean_dtheta()) << ',' << m.torsion_count
        << ',' << detail::csv_number(m.mean_dphi()) << ','
        << m.degenerate_count() << '\n';
  }
  return out.str();
}

} // namespace molbench

#endif // MOLBENCH_DEVIATION_HPP
