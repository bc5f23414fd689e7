//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_OPTIMIZER_HPP
#define MOLBENCH_OPTIMIZER_HPP

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "molbench/deviation.hpp"
#include "molbench/error.hpp"
#include "molbench/molecule.hpp"
#include "molbench/parallel.hpp"
#include "molbench/sdf.hpp"
#include "molbench/subprocess.hpp"
#include "molbench/vec3.hpp"
#include "molbench/xyz.hpp"

namespace molbench {

/// CODATA-derived conversion; all energies outside this module are
/// kcal/mol, Hartree never leaks.
inline constexpr double kKcalPerHartree = 627.509474;

/// Relaxation energies below this are flagged anomalous (the optimizer
/// raised the energy) and excluded from aggregates.
inline constexpr double kAnomalousDeltaE = -1e-3; // kcal/mol

enum class OptimizerKind { ExternalXtb, ExternalCommand, Mock };

/// How to relax a geometry: an xtb-compatible binary, a generic external
/// command, or the deterministic mock used for reproducible tests.
///
/// The mock optimizer is fully specified: every atom moves toward the
/// centroid c by fraction f (p' = p + f*(c - p)); the energy of the input
/// geometry is sum_i |p_i - p'_i|^2 = f^2 * sum_i |p_i - c|^2 kcal/mol and
/// the optimized energy is 0, so dE_relax has that closed form exactly.
struct OptimizerSpec {
  OptimizerKind kind = OptimizerKind::Mock;
  std::string xtb_binary = "xtb";   // ExternalXtb
  std::string command_template;     // ExternalCommand: {input}, {charge}
  double mock_fraction = 0.1;       // Mock
  double timeout_seconds = 120.0;
  bool keep_scratch = false;
  std::string scratch_root; // empty: system temp dir

  /// Accepts "mock", "mock:identity", "mock:<fraction>", "xtb", or
  /// "cmd:<template with {input} and {charge}>". The xtb binary comes from
  /// `binary_override`, else $MOLBENCH_XTB, else PATH lookup of "xtb".
  static OptimizerSpec from_string(const std::string &text,
                                   const std::string &binary_override = "") {
    OptimizerSpec spec;
    if (text == "mock" || text.rfind("mock:", 0) == 0) {
      spec.kind = OptimizerKind::Mock;
      if (text == "mock") {
        spec.mock_fraction = 0.1;
      } else {
        const std::string arg = text.substr(5);
        if (arg == "identity") {
          spec.mock_fraction = 0.0;
        } else {
          char *end = nullptr;
          spec.mock_fraction = std::strtod(arg.c_str(), &end);
          if (end == arg.c_str() || *end != '\0' || spec.mock_fraction < 0 ||
              spec.mock_fraction > 1)
            throw ValidationError("mock optimizer fraction '" + arg +
                                  "' must be a number in [0, 1]");
        }
      }
      return spec;
    }
    if (text == "xtb") {
      spec.kind = OptimizerKind::ExternalXtb;
      if (!binary_override.empty()) {
        spec.xtb_binary = binary_override;
      } else if (const char *env = std::getenv("MOLBENCH_XTB");
                 env && *env != '\0') {
        spec.xtb_binary = env;
      }
      return spec;
    }
    if (text.rfind("cmd:", 0) == 0) {
      spec.kind = OptimizerKind::ExternalCommand;
      spec.command_template = text.substr(4);
      if (spec.command_template.find("{input}") == std::string::npos ||
          spec.command_template.find("{charge}") == std::string::npos)
        throw ValidationError(
            "external command template must contain {input} and {charge}");
      return spec;
    }
    throw ValidationError("unknown optimizer spec '" + text +
                          "' (expected mock[:f|:identity], xtb, or "
                          "cmd:<template>)");
  }

  std::string describe() const {
    switch (kind) {
    case OptimizerKind::Mock: {
      if (mock_fraction == 0.0)
        return "mock:identity";
      char buf[32];
      std::snprintf(buf, sizeof(buf), "mock:%g", mock_fraction);
      return buf;
    }
    case OptimizerKind::ExternalXtb:
      return "xtb";
    default:
      return "cmd:" + command_template;
    }
  }
};

struct OptimizationResult {
  std::vector<Vec3> positions; // optimized geometry, input atom order
  double e_initial_kcal = 0.0;
  double e_final_kcal = 0.0;
  bool converged = false;
  std::string method_tag;
  std::vector<std::string> command_lines; // recorded for auditability
};

/// Energy lowered by relaxation. Negative values mean the optimizer raised
/// the energy; beyond kAnomalousDeltaE the caller flags them anomalous.
inline double delta_e_relax(const OptimizationResult &res) {
  if (!res.converged)
    throw OptimizeError(OptimizeError::Kind::NotConverged,
                        "optimization did not converge");
  return res.e_initial_kcal - res.e_final_kcal;
}

namespace detail {

inline int net_charge(const Molecule &mol) {
  int q = 0;
  for (const Atom &a : mol.atoms())
    q += a.formal_charge;
  return q;
}

inline OptimizationResult mock_optimize(const Molecule &mol, double fraction) {
  OptimizationResult res;
  res.method_tag = "mock";
  res.converged = true;
  Vec3 centroid{};
  for (const Atom &a : mol.atoms())
    centroid = centroid + a.position;
  centroid = (1.0 / double(mol.atom_count())) * centroid;

  double displacement_sq = 0.0;
  res.positions.reserve(mol.atom_count());
  for (const Atom &a : mol.atoms()) {
    const Vec3 moved = a.position + fraction * (centroid - a.position);
    const Vec3 d = a.position - moved;
    displacement_sq += dot(d, d);
    res.positions.push_back(moved);
  }
  res.e_initial_kcal = displacement_sq; // f^2 * sum |p - c|^2
  res.e_final_kcal = 0.0;
  return res;
}

/// Value on the last line of `output` containing `marker`.
inline std::optional<double> parse_energy_line(const std::string &output,
                                               const std::string &marker) {
  std::istringstream ss(output);
  std::string line;
  std::optional<double> value;
  while (std::getline(ss, line)) {
    const std::size_t at = line.find(marker);
    if (at == std::string::npos)
      continue;
    std::istringstream rest(line.substr(at + marker.size()));
    std::string token;
    while (rest >> token) {
      char *end = nullptr;
      const double v = std::strtod(token.c_str(), &end);
      if (end != token.c_str() && *end == '\0') {
        value = v;
        break;
      }
    }
  }
  return value;
}

inline std::vector<Vec3> read_optimized_xyz(const std::string &path,
                                            const Molecule &mol,
                                            const std::string &tool) {
  std::vector<XyzFrame> frames;
  try {
    frames = parse_xyz_file(path);
  } catch (const ParseError &e) {
    throw OptimizeError(OptimizeError::Kind::ParseFailure,
                        tool + ": " + e.what());
  }
  if (frames.empty())
    throw OptimizeError(OptimizeError::Kind::ParseFailure,
                        tool + ": '" + path + "' contains no frames");
  const XyzFrame &frame = frames.back();
  if (frame.atom_count() != mol.atom_count())
    throw OptimizeError(OptimizeError::Kind::ParseFailure,
                        tool + ": optimized geometry has " +
                            std::to_string(frame.atom_count()) +
                            " atoms, expected " +
                            std::to_string(mol.atom_count()));
  std::vector<Vec3> positions;
  positions.reserve(frame.atom_count());
  for (std::size_t i = 0; i < frame.atoms.size(); ++i) {
    if (frame.atoms[i].element != mol.atom(i).element)
      throw OptimizeError(OptimizeError::Kind::ParseFailure,
                          tool + ": element sequence of optimized geometry "
                                 "does not match the input (atom " +
                              std::to_string(i + 1) + ")");
    positions.push_back(frame.atoms[i].position);
  }
  return positions;
}

inline RunResult run_checked(const std::vector<std::string> &argv,
                             const std::string &workdir, double timeout,
                             const std::string &tool) {
  const RunResult run = run_command(argv, workdir, timeout);
  if (run.timed_out)
    throw OptimizeError(OptimizeError::Kind::ProcessFailure,
                        tool + " timed out after " +
                            std::to_string(timeout) + " s");
  if (run.exit_code != 0)
    throw OptimizeError(OptimizeError::Kind::ProcessFailure,
                        tool + " exited with code " +
                            std::to_string(run.exit_code));
  return run;
}

inline OptimizationResult xtb_optimize(const Molecule &mol,
                                       const OptimizerSpec &spec,
                                       const std::string &scratch) {
  OptimizationResult res;
  res.method_tag = "gfn2-xtb";
  const std::string input = "input.xyz";
  write_xyz_file({frame_from_molecule(mol)}, scratch + "/" + input);
  const std::string chrg = std::to_string(net_charge(mol));

  // Single point first so that both energies come from the same method.
  const std::vector<std::string> sp_argv = {spec.xtb_binary, input, "--gfn",
                                            "2", "--chrg", chrg};
  res.command_lines.push_back(join_command(sp_argv));
  const RunResult sp =
      run_checked(sp_argv, scratch, spec.timeout_seconds, "xtb single point");
  const auto e_init = parse_energy_line(sp.output, "TOTAL ENERGY");
  if (!e_init)
    throw OptimizeError(OptimizeError::Kind::ParseFailure,
                        "xtb single point printed no TOTAL ENERGY line");

  const std::vector<std::string> opt_argv = {
      spec.xtb_binary, input, "--opt", "--gfn", "2", "--chrg", chrg};
  res.command_lines.push_back(join_command(opt_argv));
  const RunResult opt =
      run_checked(opt_argv, scratch, spec.timeout_seconds, "xtb --opt");
  if (opt.output.find("FAILED TO CONVERGE") != std::string::npos)
    throw OptimizeError(OptimizeError::Kind::NotConverged,
                        "xtb reported non-convergence");
  const auto e_final = parse_energy_line(opt.output, "TOTAL ENERGY");
  if (!e_final)
    throw OptimizeError(OptimizeError::Kind::ParseFailure,
                        "xtb --opt printed no TOTAL ENERGY line");

  res.positions = read_optimized_xyz(scratch + "/xtbopt.xyz", mol, "xtb");
  res.e_initial_kcal = *e_init * kKcalPerHartree;
  res.e_final_kcal = *e_final * kKcalPerHartree;
  res.converged = true;
  return res;
}

inline OptimizationResult command_optimize(const Molecule &mol,
                                           const OptimizerSpec &spec,
                                           const std::string &scratch) {
  OptimizationResult res;
  res.method_tag = "external";
  const std::string input = "input.xyz";
  write_xyz_file({frame_from_molecule(mol)}, scratch + "/" + input);
  const std::vector<std::string> argv = split_command_template(
      spec.command_template,
      {{"{input}", input}, {"{charge}", std::to_string(net_charge(mol))}});
  res.command_lines.push_back(join_command(argv));
  const RunResult run =
      run_checked(argv, scratch, spec.timeout_seconds, "external optimizer");
  const auto e_init = parse_energy_line(run.output, "E_INITIAL_HARTREE");
  const auto e_final = parse_energy_line(run.output, "E_FINAL_HARTREE");
  if (!e_init || !e_final)
    throw OptimizeError(OptimizeError::Kind::ParseFailure,
                        "external optimizer did not print E_INITIAL_HARTREE "
                        "and E_FINAL_HARTREE");
  res.positions =
      read_optimized_xyz(scratch + "/optimized.xyz", mol, "external");
  res.e_initial_kcal = *e_init * kKcalPerHartree;
  res.e_final_kcal = *e_final * kKcalPerHartree;
  res.converged = true;
  return res;
}

} // namespace detail

/// Relaxes one molecule. External kinds run in `scratch` (created by the
/// caller); the mock never touches the filesystem.
inline OptimizationResult optimize(const Molecule &mol,
                                   const OptimizerSpec &spec,
                                   const std::string &scratch = "") {
  if (mol.atom_count() == 0)
    throw ValidationError("optimize: molecule '" + mol.name() +
                          "' has no atoms");
  if (spec.kind != OptimizerKind::Mock && scratch.empty())
    throw ValidationError("optimize: external optimizers need a scratch "
                          "directory");
  switch (spec.kind) {
  case OptimizerKind::Mock:
    return detail::mock_optimize(mol, spec.mock_fraction);
  case OptimizerKind::ExternalXtb:
    return detail::xtb_optimize(mol, spec, scratch);
  default:
    return detail::command_optimize(mol, spec, scratch);
  }
}

struct EnergyRow {
  std::size_t index = 0; // position in the input batch
  std::string name;
  OptimizationResult result;
  double delta_e_kcal = 0.0;
  bool anomalous = false; // optimizer raised the energy beyond tolerance
};

struct EnergyFailure {
  std::size_t index = 0;
  std::string name;
  std::string kind; // ProcessFailure | ParseFailure | NotConverged
  std::string detail;
};

struct EnergyBatchResult {
  std::vector<EnergyRow> rows;          // successes, input order
  std::vector<ConformerPair> pairs;     // parallel to rows
  std::vector<EnergyFailure> failures;  // input order
};

/// Runs the optimizer over a batch with a bounded worker pool. Each
/// molecule gets a private scratch directory; output order is the input
/// order regardless of worker count.
inline EnergyBatchResult
evaluate_energy_geometry(const std::vector<SdfRecord> &records,
                         const OptimizerSpec &spec, unsigned workers = 1) {
  namespace fs = std::filesystem;
  struct Slot {
    std::optional<EnergyRow> row;
    std::optional<ConformerPair> pair;
    std::optional<EnergyFailure> failure;
  };
  std::vector<Slot> slots(records.size());

  fs::path root;
  const bool needs_scratch = spec.kind != OptimizerKind::Mock;
  if (needs_scratch && !records.empty()) {
    root = spec.scratch_root.empty() ? fs::temp_directory_path()
                                     : fs::path(spec.scratch_root);
    root /= "molbench-" + std::to_string(::getpid());
    fs::create_directories(root);
  }

  parallel_for_index(records.size(), workers, [&](std::size_t i) {
    const Molecule &mol = records[i].molecule;
    std::string scratch;
    if (needs_scratch) {
      char dirname[32];
      std::snprintf(dirname, sizeof(dirname), "mol-%06zu", i);
      const fs::path dir = root / dirname;
      fs::create_directories(dir);
      scratch = dir.string();
    }
    try {
      OptimizationResult result = optimize(mol, spec, scratch);
      EnergyRow row;
      row.index = i;
      row.name = mol.name();
      row.delta_e_kcal = delta_e_relax(result);
      row.anomalous = row.delta_e_kcal < kAnomalousDeltaE;
      slots[i].pair.emplace(mol, mol.with_positions(result.positions));
      row.result = std::move(result);
      slots[i].row = std::move(row);
    } catch (const OptimizeError &e) {
      slots[i].failure = EnergyFailure{i, mol.name(), e.kind_name(), e.what()};
    }
    if (needs_scratch && !spec.keep_scratch) {
      std::error_code ec;
      fs::remove_all(scratch, ec); // best effort
    }
  });

  if (needs_scratch && !spec.keep_scratch && !records.empty()) {
    std::error_code ec;
    fs::remove(root, ec);
  }

  EnergyBatchResult out;
  for (Slot &slot : slots) {
    if (slot.row) {
      out.rows.push_back(std::move(*slot.row));
      out.pairs.push_back(std::move(*slot.pair));
    } else if (slot.failure) {
      out.failures.push_back(std::move(*slot.failure));
    }
  }
  return out;
}

inline constexpr const char *kEnergyCsvHeader =
    "name,e_initial_kcal,e_final_kcal,delta_e_relax_kcal,converged,anomalous";

inline std::string energy_csv(const std::vector<EnergyRow> &rows) {
  std::ostringstream out;
  out << kEnergyCsvHeader << '\n';
  char buf[48];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.9f", v);
    return std::string(buf);
  };
  for (const EnergyRow &r : rows) {
    out << detail::csv_quote(r.name) << ',' << num(r.result.e_initial_kcal)
        << ',' << num(r.result.e_final_kcal) << ',' << num(r.delta_e_kcal)
        << ',' << (r.result.converged ? 1 : 0) << ',' << (r.anomalous ? 1 : 0)
        << '\n';
  }
  return out.str();
}

} // namespace molbench

#endif // MOLBENCH_OPTIMIZER_HPP
