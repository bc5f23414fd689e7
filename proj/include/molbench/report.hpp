//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_REPORT_HPP
#define MOLBENCH_REPORT_HPP

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "molbench/deviation.hpp"
#include "molbench/optimizer.hpp"
#include "molbench/stats.hpp"
#include "molbench/valency.hpp"

namespace molbench {

using json = nlohmann::ordered_json;

/// Fold configuration shared by all sections of a report.
struct FoldConfig {
  std::size_t k = 1;
  bool allow_short_final = false;
  std::optional<std::uint64_t> shuffle_seed; // echoed; shuffling is caller-side
};

inline json folded_metric_json(const FoldedMetric &m) {
  json j;
  j["name"] = m.name;
  j["unit"] = m.unit;
  j["reducer"] = m.reducer;
  j["value_count"] = m.value_count;
  j["fold_count"] = m.per_fold.size();
  j["fold_size"] = m.fold_size;
  j["per_fold"] = m.per_fold;
  j["mean"] = m.mean;
  j["std"] = m.stddev;
  return j;
}

/// Per-molecule stability outcomes, the raw material of Table-1-style
/// aggregates.
struct StabilityRow {
  std::string name;
  std::size_t atom_count = 0;
  double stable_fraction = 0.0;
  bool all_stable = false;
  std::size_t components = 0;
  bool valid_and_connected = false;
};

inline constexpr const char *kStabilityCsvHeader =
    "name,atom_count,stable_fraction,all_stable,components,"
    "valid_and_connected";

inline std::string stability_csv(const std::vector<StabilityRow> &rows) {
  std::ostringstream out;
  out << kStabilityCsvHeader << '\n';
  char buf[32];
  for (const StabilityRow &r : rows) {
    std::snprintf(buf, sizeof(buf), "%.9f", r.stable_fraction);
    out << detail::csv_quote(r.name) << ',' << r.atom_count << ',' << buf
        << ',' << (r.all_stable ? 1 : 0) << ',' << r.components << ','
        << (r.valid_and_connected ? 1 : 0) << '\n';
  }
  return out.str();
}

/// Atom stability is the fold-mean of per-molecule stable fractions; MS
/// and V&C are fold-means of the respective 0/1 flags.
inline json stability_section_json(const std::vector<StabilityRow> &rows,
                                   const FoldConfig &folds) {
  json j;
  j["molecule_count"] = rows.size();
  if (rows.empty()) {
    j["atom_stability"] = nullptr;
    j["molecule_stability"] = nullptr;
    j["valid_and_connected"] = nullptr;
    return j;
  }
  std::vector<double> fractions, flags, vc;
  fractions.reserve(rows.size());
  for (const StabilityRow &r : rows) {
    fractions.push_back(r.stable_fraction);
    flags.push_back(r.all_stable ? 1.0 : 0.0);
    vc.push_back(r.valid_and_connected ? 1.0 : 0.0);
  }
  j["atom_stability"] = folded_metric_json(
      fold_metric("atom_stability", "fraction", fractions, folds.k,
                  FoldReducer::Mean, folds.allow_short_final));
  j["molecule_stability"] = folded_metric_json(
      fold_metric("molecule_stability", "fraction", flags, folds.k,
                  FoldReducer::Mean, folds.allow_short_final));
  j["valid_and_connected"] = folded_metric_json(
      fold_metric("valid_and_connected", "fraction", vc, folds.k,
                  FoldReducer::Mean, folds.allow_short_final));
  return j;
}

namespace detail {

inline json try_fold(const std::string &name, const std::string &unit,
                     const std::vector<double> &values, const FoldConfig &f,
                     FoldReducer reducer) {
  if (values.empty())
    return nullptr;
  return folded_metric_json(
      fold_metric(name, unit, values, std::min(f.k, values.size()), reducer,
                  f.allow_short_final));
}

inline json try_pooled_fold(const std::string &name, const std::string &unit,
                            const std::vector<double> &sums,
                            const std::vector<double> &counts,
                            const FoldConfig &f) {
  double total = 0;
  for (double c : counts)
    total += c;
  if (sums.empty() || total <= 0)
    return nullptr;
  return folded_metric_json(pooled_fold_metric(
      name, unit, sums, counts, std::min(f.k, sums.size()),
      f.allow_short_final));
}

} // namespace detail

/// Geometry deviations with folds. Pooled mode weights every primitive
/// equally inside a fold; per-molecule mode folds the per-molecule means
/// of molecules that have the primitive.
inline json geometry_section_json(const std::vector<MoleculeDeviations> &rows,
                                  Pooling pooling, const FoldConfig &folds) {
  const DeviationSummary summary = summarize_deviations(rows, pooling);
  json j;
  j["pooling"] = pooling_name(pooling);
  j["molecule_count"] = summary.molecule_count;
  j["bond_count"] = summary.bond_count;
  j["angle_count"] = summary.angle_count;
  j["torsion_count"] = summary.torsion_count;
  j["degenerate_angles"] = summary.degenerate_angles;
  j["degenerate_torsions"] = summary.degenerate_torsions;

  auto opt = [](std::optional<double> v) {
    return v ? json(*v) : json(nullptr);
  };
  j["mean_bond_length_delta"] = opt(summary.mean_bond_length_delta);
  j["mean_bond_angle_delta"] = opt(summary.mean_bond_angle_delta);
  j["mean_bond_angle_abs_delta"] = opt(summary.mean_bond_angle_abs_delta);
  j["mean_torsion_delta"] = opt(summary.mean_torsion_delta);

  if (pooling == Pooling::Pooled) {
    std::vector<double> dr_s, dr_c, dth_s, dth_c, dth_abs_s, dphi_s, dphi_c;
    for (const MoleculeDeviations &m : rows) {
      dr_s.push_back(m.sum_dr);
      dr_c.push_back(double(m.bond_count));
      dth_s.push_back(m.sum_dtheta);
      dth_abs_s.push_back(m.sum_dtheta_abs);
      dth_c.push_back(double(m.angle_count));
      dphi_s.push_back(m.sum_dphi);
      dphi_c.push_back(double(m.torsion_count));
    }
    j["bond_length"] =
        detail::try_pooled_fold("bond_length_delta", "A", dr_s, dr_c, folds);
    j["bond_angle"] = detail::try_pooled_fold("bond_angle_delta", "deg",
                                              dth_s, dth_c, folds);
    j["bond_angle_abs"] = detail::try_pooled_fold(
        "bond_angle_abs_delta", "deg", dth_abs_s, dth_c, folds);
    j["torsion"] = detail::try_pooled_fold("torsion_delta", "deg", dphi_s,
                                           dphi_c, folds);
  } else {
    std::vector<double> dr, dth, dth_abs, dphi;
    for (const MoleculeDeviations &m : rows) {
      if (auto v = m.mean_dr())
        dr.push_back(*v);
      if (auto v = m.mean_dtheta()) {
        dth.push_back(*v);
        dth_abs.push_back(*m.mean_dtheta_abs());
      }
      if (auto v = m.mean_dphi())
        dphi.push_back(*v);
    }
    j["bond_length"] = detail::try_fold("bond_length_delta", "A", dr, folds,
                                        FoldReducer::Mean);
    j["bond_angle"] = detail::try_fold("bond_angle_delta", "deg", dth, folds,
                                       FoldReducer::Mean);
    j["bond_angle_abs"] = detail::try_fold("bond_angle_abs_delta", "deg",
                                           dth_abs, folds, FoldReducer::Mean);
    j["torsion"] = detail::try_fold("torsion_delta", "deg", dphi, folds,
                                    FoldReducer::Mean);
  }
  return j;
}

/// dE_relax aggregates. The median is computed per fold and averaged, like
/// every other metric; anomalous rows (energy went up) are excluded from
/// aggregates but remain in the per-molecule CSV.
inline json energy_section_json(const std::vector<EnergyRow> &rows,
                                std::size_t failure_count,
                                const FoldConfig &folds) {
  json j;
  std::vector<double> deltas;
  std::size_t anomalous = 0;
  for (const EnergyRow &r : rows) {
    if (r.anomalous) {
      ++anomalous;
      continue;
    }
    deltas.push_back(r.delta_e_kcal);
  }
  j["evaluated"] = rows.size();
  j["failures"] = failure_count;
  j["anomalous"] = anomalous;
  j["median_delta_e_relax"] = detail::try_fold(
      "median_delta_e_relax", "kcal/mol", deltas, folds, FoldReducer::Median);
  j["mean_delta_e_relax"] = detail::try_fold(
      "mean_delta_e_relax", "kcal/mol", deltas, folds, FoldReducer::Mean);
  return j;
}

/// An EvalReport document. Sections may be null; metadata always present.
/// The optional energy_ff section holds force-field relaxation numbers
/// (e.g. an MMFF run through the generic external-command optimizer);
/// it is never the reference method.
inline json assemble_report(json metadata, json stability, json geometry,
                            json energy, json energy_ff = nullptr) {
  json report;
  report["schema"] = "molbench-report/1";
  report["metadata"] = std::move(metadata);
  report["stability"] = std::move(stability);
  report["geometry"] = std::move(geometry);
  report["energy"] = std::move(energy);
  report["energy_ff"] = std::move(energy_ff);
  return report;
}

namespace detail {

inline std::string fmt_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

// Table-style formatting: stability 3 decimals; lengths shown in 1e-2 A at
// 2 decimals; angles 2 decimals; energies 1-2 decimals.
inline std::string fmt_stability(double v) { return fmt_fixed(v, 3); }
inline std::string fmt_length(double v) { return fmt_fixed(v * 100.0, 2); }
inline std::string fmt_angle(double v) { return fmt_fixed(v, 2); }
inline std::string fmt_energy(double v) {
  return fmt_fixed(v, std::fabs(v) >= 10.0 ? 1 : 2);
}

inline void render_metric_line(std::ostringstream &out,
                               const std::string &label, const json &metric,
                               std::string (*fmt)(double),
                               const std::string &unit) {
  out << "  " << label;
  for (std::size_t pad = label.size(); pad < 28; ++pad)
    out << ' ';
  if (metric.is_null()) {
    out << "n/a\n";
    return;
  }
  out << fmt(metric["mean"].get<double>()) << " +- "
      << fmt(metric["std"].get<double>());
  if (!unit.empty())
    out << ' ' << unit;
  out << "  (" << metric["fold_count"].get<std::size_t>() << " folds x "
      << metric["fold_size"].get<std::size_t>() << ")\n";
}

} // namespace detail

/// Human-readable counterpart of the JSON report.
inline std::string render_report_text(const json &report) {
  std::ostringstream out;
  const json &meta = report["metadata"];
  out << "molbench report\n";
  for (const auto &[key, value] : meta.items()) {
    if (value.is_null() || value.is_object() || value.is_array())
      continue;
    out << "  " << key << ": "
        << (value.is_string() ? value.get<std::string>() : value.dump())
        << '\n';
  }

  const json &stab = report["stability"];
  if (!stab.is_null()) {
    out << "stability\n";
    detail::render_metric_line(out, "atom stability",
                               stab["atom_stability"],
                               detail::fmt_stability, "");
    detail::render_metric_line(out, "molecule stability (MS)",
                               stab["molecule_stability"],
                               detail::fmt_stability, "");
    detail::render_metric_line(out, "valid & connected (V&C)",
                               stab["valid_and_connected"],
                               detail::fmt_stability, "");
  }

  const json &geom = report["geometry"];
  if (!geom.is_null()) {
    out << "geometry (" << geom["pooling"].get<std::string>() << ")\n";
    detail::render_metric_line(out, "bond length delta", geom["bond_length"],
                               detail::fmt_length, "x1e-2 A");
    detail::render_metric_line(out, "bond angle delta", geom["bond_angle"],
                               detail::fmt_angle, "deg");
    detail::render_metric_line(out, "bond angle |delta| (diag)",
                               geom["bond_angle_abs"], detail::fmt_angle,
                               "deg");
    detail::render_metric_line(out, "torsion delta", geom["torsion"],
                               detail::fmt_angle, "deg");
    out << "  degenerate angles/torsions  "
        << geom["degenerate_angles"].get<std::size_t>() << "/"
        << geom["degenerate_torsions"].get<std::size_t>() << "\n";
  }

  auto render_energy = [&](const json &energy, const std::string &title) {
    if (energy.is_null())
      return;
    out << title << "\n";
    detail::render_metric_line(out, "median dE_relax",
                               energy["median_delta_e_relax"],
                               detail::fmt_energy, "kcal/mol");
    detail::render_metric_line(out, "mean dE_relax",
                               energy["mean_delta_e_relax"],
                               detail::fmt_energy, "kcal/mol");
    out << "  evaluated/failed/anomalous  "
        << energy["evaluated"].get<std::size_t>() << "/"
        << energy["failures"].get<std::size_t>() << "/"
        << energy["anomalous"].get<std::size_t>() << "\n";
  };
  render_energy(report["energy"], "energy");
  if (report.contains("energy_ff"))
    render_energy(report["energy_ff"], "energy (force field)");
  return out.str();
}

/// Histogram of raw values, fixed bin width starting at 0 (negative values
/// bucket below 0 are clamped into the first bin; angles and lengths are
/// nonnegative anyway).
inline std::string histogram_csv(const std::vector<double> &initial,
                                 const std::vector<double> &optimized,
                                 double bin_width) {
  if (bin_width <= 0)
    throw ValidationError("histogram bin width must be positive");
  double max_v = 0;
  for (double v : initial)
    max_v = std::max(max_v, v);
  for (double v : optimized)
    max_v = std::max(max_v, v);
  const std::size_t bins =
      initial.empty() && optimized.empty()
          ? 0
          : static_cast<std::size_t>(max_v / bin_width) + 1;
  std::vector<std::size_t> count_init(bins, 0), count_opt(bins, 0);
  for (double v : initial)
    ++count_init[std::min(bins - 1, static_cast<std::size_t>(
                                        std::max(0.0, v) / bin_width))];
  for (double v : optimized)
    ++count_opt[std::min(bins - 1, static_cast<std::size_t>(
                                       std::max(0.0, v) / bin_width))];
  std::ostringstream out;
  out << "bin_start,bin_end,count_initial,count_optimized\n";
  char buf[64];
  for (std::size_t b = 0; b < bins; ++b) {
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f,", b * bin_width,
                  (b + 1) * bin_width);
    out << buf << count_init[b] << ',' << count_opt[b] << '\n';
  }
  return out.str();
}

} // namespace molbench

#endif // MOLBENCH_REPORT_HPP
