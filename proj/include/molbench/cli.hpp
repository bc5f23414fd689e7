//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_CLI_HPP
#define MOLBENCH_CLI_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "molbench/molbench.hpp"

namespace molbench::cli {

namespace detail {

inline void write_text_file(const std::string &path,
                            const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw FormatError("cannot open '" + path + "' for writing");
  out << content;
}

inline std::vector<SdfRecord>
load_inputs(const std::vector<std::string> &paths) {
  std::vector<SdfRecord> records;
  for (const std::string &p : paths) {
    auto part = parse_sdf_file(p);
    records.insert(records.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
  }
  return records;
}

/// "builtin:corrected|legacy|tuple" or a table file path.
inline ValencyTable load_table(const std::string &spec) {
  if (spec.rfind("builtin:", 0) == 0) {
    const std::string name = spec.substr(8);
    if (const ValencyTable *t = try_builtin_table(name))
      return *t;
    throw ValidationError("unknown builtin table '" + name +
                          "' (expected corrected, legacy, or tuple)");
  }
  return ValencyTable::parse_file(spec);
}

inline std::string default_table_for(StabilityMode mode) {
  switch (mode) {
  case StabilityMode::AromTuple:
    return "builtin:tuple";
  case StabilityMode::Kekulized:
    return "builtin:corrected";
  default:
    return "builtin:legacy";
  }
}

template <typename T>
void shuffle_rows(std::vector<T> &rows, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::shuffle(rows.begin(), rows.end(), rng);
}

struct FoldFlags {
  std::size_t folds = 1;
  bool allow_short = false;
  std::optional<std::uint64_t> shuffle_seed;

  FoldConfig config() const { return {folds, allow_short, shuffle_seed}; }

  void attach(CLI::App *cmd) {
    cmd->add_option("--folds", folds,
                    "Contiguous equal-sized folds for the +- aggregates")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_flag("--allow-short-fold", allow_short,
                  "Permit a short final fold when sizes do not divide");
    cmd->add_option("--shuffle-seed", shuffle_seed,
                    "Shuffle molecule order with this seed before folding");
  }
};

inline json fold_metadata(const FoldFlags &f) {
  json j;
  j["folds"] = f.folds;
  j["allow_short_fold"] = f.allow_short;
  j["shuffle_seed"] = f.shuffle_seed ? json(*f.shuffle_seed) : json(nullptr);
  j["std"] = "population";
  return j;
}

inline void emit_report(const json &report, const std::string &json_path,
                        const std::string &text_path) {
  if (!json_path.empty())
    write_text_file(json_path, report.dump(2) + "\n");
  const std::string text = render_report_text(report);
  if (!text_path.empty())
    write_text_file(text_path, text);
  std::cout << text;
}

// ---------------------------------------------------------------- curate

struct CurateArgs {
  std::vector<std::string> inputs;
  std::string output;
  std::string report_path;
  std::string failures_path;
  std::string tables_prefix;
  std::string split_spec;
  unsigned workers = 0;
};

inline void run_curate(const CurateArgs &args) {
  const unsigned workers =
      args.workers ? args.workers : default_worker_count();
  const std::vector<SdfRecord> records = load_inputs(args.inputs);
  const CurationResult result = curate(records, workers);

  write_sdf_file(result.records, args.output);

  const std::string failures_path =
      args.failures_path.empty() ? args.output + ".failures.tsv"
                                 : args.failures_path;
  write_text_file(failures_path, render_failure_log(result.failures));

  json report;
  report["input"] = result.report.input;
  report["removed_fragmented"] = result.report.removed_fragmented;
  report["kekulize_failures"] = result.report.kekulize_failures;
  report["output"] = result.report.output;
  const std::string report_text = report.dump(2) + "\n";
  if (!args.report_path.empty())
    write_text_file(args.report_path, report_text);
  std::cout << report_text;

  if (!args.tables_prefix.empty()) {
    const RegeneratedTables tables =
        regenerate_tables(result.records, result.post_filter);
    tables.total.save(args.tables_prefix + ".total.tsv");
    tables.tuple.save(args.tables_prefix + ".tuple.tsv");
    write_text_file(
        args.tables_prefix + ".total-vs-corrected.diff",
        render_table_diff(diff_tables(tables.total,
                                      builtin_corrected_table())));
    write_text_file(
        args.tables_prefix + ".tuple-vs-tuple.diff",
        render_table_diff(diff_tables(tables.tuple, builtin_tuple_table())));
  }

  if (!args.split_spec.empty()) {
    std::vector<SplitPart> parts;
    std::istringstream ss(args.split_spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::size_t colon = item.find(':');
      if (colon == std::string::npos)
        throw ValidationError("split spec must be name:fraction[,...]");
      parts.push_back(
          {item.substr(0, colon), std::stod(item.substr(colon + 1)), {}});
    }
    const std::filesystem::path base(args.output);
    const std::filesystem::path stem = base.parent_path() / base.stem();
    for (const SplitPart &part : split_by_name_hash(result.records, parts)) {
      write_sdf_file(part.records,
                     stem.string() + "." + part.name + ".sdf");
      std::cerr << "split " << part.name << ": " << part.records.size()
                << " records\n";
    }
  }

  std::cerr << "curate: " << result.report.input << " in, "
            << result.report.removed_fragmented << " fragmented removed, "
            << result.report.kekulize_failures << " kekulization failures, "
            << result.report.output << " out\n";
}

// ----------------------------------------------------------------- table

struct TableBuildArgs {
  std::vector<std::string> inputs;
  std::string output;
  std::string key_mode = "tuple";
};

inline void run_table_build(const TableBuildArgs &args) {
  const TableKind kind = args.key_mode == "total" ? TableKind::TotalValence
                                                  : TableKind::Tuple;
  ValencyTable table = build_valency_table(load_inputs(args.inputs), kind);
  table.save(args.output);
  std::cerr << "table build: " << table.entry_count() << " entries\n";
}

struct TableExportArgs {
  std::string builtin = "corrected";
  std::string output;
};

inline void run_table_export(const TableExportArgs &args) {
  const ValencyTable *table = try_builtin_table(args.builtin);
  if (!table)
    throw ValidationError("unknown builtin table '" + args.builtin + "'");
  table->save(args.output);
}

struct TableDiffArgs {
  std::string table;
  std::string base;
  std::string output;
};

inline void run_table_diff(const TableDiffArgs &args) {
  const ValencyTable table = load_table(args.table);
  const ValencyTable base = load_table(args.base);
  const std::string text = render_table_diff(diff_tables(table, base));
  if (args.output.empty())
    std::cout << text;
  else
    write_text_file(args.output, text);
}

// ------------------------------------------------------------- stability

struct StabilityArgs {
  std::string input;
  std::string mode = "arom-tuple";
  std::string table; // empty: default for the mode
  std::string json_path;
  std::string csv_path;
  std::string text_path;
  FoldFlags folds;
  unsigned workers = 0;
};

inline void run_stability(const StabilityArgs &args) {
  const auto mode = stability_mode_from_name(args.mode);
  if (!mode)
    throw ValidationError("unknown stability mode '" + args.mode + "'");
  const std::string table_spec =
      args.table.empty() ? detail::default_table_for(*mode) : args.table;
  const ValencyTable table = load_table(table_spec);
  const std::vector<SdfRecord> records = load_inputs({args.input});

  std::vector<StabilityRow> rows(records.size());
  const unsigned workers =
      args.workers ? args.workers : default_worker_count();
  parallel_for_index(records.size(), workers, [&](std::size_t i) {
    const Molecule &mol = records[i].molecule;
    const MoleculeStability st = molecule_stability(mol, *mode, table);
    StabilityRow row;
    row.name = mol.name();
    row.atom_count = mol.atom_count();
    row.stable_fraction = st.stable_fraction;
    row.all_stable = st.all_stable;
    row.components = connected_components(mol).size();
    row.valid_and_connected = st.all_stable && row.components == 1;
    rows[i] = std::move(row);
  });

  if (!args.csv_path.empty())
    write_text_file(args.csv_path, stability_csv(rows));

  if (args.folds.shuffle_seed)
    shuffle_rows(rows, *args.folds.shuffle_seed);

  json metadata;
  metadata["subcommand"] = "stability";
  metadata["mode"] = stability_mode_name(*mode);
  metadata["table"] = table_spec;
  metadata["table_kind"] = table_kind_name(table.kind());
  metadata.update(fold_metadata(args.folds));
  const json report =
      assemble_report(std::move(metadata),
                      stability_section_json(rows, args.folds.config()),
                      nullptr, nullptr);
  emit_report(report, args.json_path, args.text_path);
}

// -------------------------------------------------------------- geometry

struct GeometryArgs {
  std::string initial;
  std::string optimized;
  std::string energy_dir;
  std::string json_path;
  std::string csv_path;
  std::string text_path;
  std::string hist_prefix;
  double hist_bin_length = 0.01; // Angstrom
  double hist_bin_angle = 1.0;   // degrees
  std::string pooling = "pooled";
  FoldFlags folds;
  unsigned workers = 0;
};

inline std::vector<ConformerPair>
load_pairs(const std::string &initial_path, const std::string &optimized_path) {
  const auto initial = parse_sdf_file(initial_path);
  const auto optimized = parse_sdf_file(optimized_path);
  if (initial.size() != optimized.size())
    throw ValidationError(
        "initial and optimized files hold different record counts (" +
        std::to_string(initial.size()) + " vs " +
        std::to_string(optimized.size()) + ")");
  std::vector<ConformerPair> pairs;
  pairs.reserve(initial.size());
  for (std::size_t i = 0; i < initial.size(); ++i) {
    try {
      pairs.emplace_back(initial[i].molecule, optimized[i].molecule);
    } catch (const ValidationError &e) {
      throw ValidationError("record " + std::to_string(i + 1) + ": " +
                            e.what());
    }
  }
  return pairs;
}

inline void run_geometry(const GeometryArgs &args) {
  std::string initial_path = args.initial;
  std::string optimized_path = args.optimized;
  if (!args.energy_dir.empty()) {
    initial_path = args.energy_dir + "/initial.sdf";
    optimized_path = args.energy_dir + "/optimized.sdf";
  }
  const std::vector<ConformerPair> pairs =
      load_pairs(initial_path, optimized_path);

  std::vector<MoleculeDeviations> rows(pairs.size());
  const unsigned workers =
      args.workers ? args.workers : default_worker_count();
  parallel_for_index(pairs.size(), workers, [&](std::size_t i) {
    rows[i] = molecule_deviations(pairs[i]);
  });

  if (!args.csv_path.empty())
    write_text_file(args.csv_path, deviations_csv(rows));

  if (!args.hist_prefix.empty()) {
    std::vector<double> len_init, len_opt, ang_init, ang_opt;
    for (const ConformerPair &pair : pairs) {
      for (const Bond &b : pair.initial().bonds()) {
        len_init.push_back(distance(pair.initial().atom(b.i).position,
                                    pair.initial().atom(b.j).position));
        len_opt.push_back(distance(pair.optimized().atom(b.i).position,
                                   pair.optimized().atom(b.j).position));
      }
      for (const AngleTriple &t : enumerate_angles(pair.initial())) {
        const auto a = try_bond_angle_deg(pair.initial().atom(t.i).position,
                                          pair.initial().atom(t.j).position,
                                          pair.initial().atom(t.k).position);
        const auto b =
            try_bond_angle_deg(pair.optimized().atom(t.i).position,
                               pair.optimized().atom(t.j).position,
                               pair.optimized().atom(t.k).position);
        if (a)
          ang_init.push_back(*a);
        if (b)
          ang_opt.push_back(*b);
      }
    }
    write_text_file(args.hist_prefix + ".bond_lengths.csv",
                    histogram_csv(len_init, len_opt, args.hist_bin_length));
    write_text_file(args.hist_prefix + ".bond_angles.csv",
                    histogram_csv(ang_init, ang_opt, args.hist_bin_angle));
  }

  if (args.folds.shuffle_seed)
    shuffle_rows(rows, *args.folds.shuffle_seed);

  const Pooling pooling = args.pooling == "per-molecule"
                              ? Pooling::PerMolecule
                              : Pooling::Pooled;
  json metadata;
  metadata["subcommand"] = "geometry";
  metadata["pooling"] = pooling_name(pooling);
  metadata.update(fold_metadata(args.folds));
  const json report = assemble_report(
      std::move(metadata), nullptr,
      geometry_section_json(rows, pooling, args.folds.config()), nullptr);
  emit_report(report, args.json_path, args.text_path);
}

// ---------------------------------------------------------------- energy

struct EnergyArgs {
  std::string input;
  std::string outdir;
  std::string optimizer = "mock";
  std::string xtb_binary;
  double timeout_seconds = 120.0;
  bool keep_scratch = false;
  std::string pooling = "pooled";
  std::string text_path;
  FoldFlags folds;
  unsigned workers = 0;
};

inline void run_energy(const EnergyArgs &args) {
  namespace fs = std::filesystem;
  OptimizerSpec spec =
      OptimizerSpec::from_string(args.optimizer, args.xtb_binary);
  spec.timeout_seconds = args.timeout_seconds;
  spec.keep_scratch = args.keep_scratch;
  if (args.keep_scratch) {
    spec.scratch_root = (fs::path(args.outdir) / "scratch").string();
    fs::create_directories(spec.scratch_root);
  }

  const std::vector<SdfRecord> records = load_inputs({args.input});
  fs::create_directories(args.outdir);

  const unsigned workers =
      args.workers ? args.workers : default_worker_count();
  const EnergyBatchResult batch =
      evaluate_energy_geometry(records, spec, workers);

  // initial/optimized SDFs keep the source properties of the successes
  std::vector<SdfRecord> initial_records, optimized_records;
  for (std::size_t r = 0; r < batch.rows.size(); ++r) {
    SdfRecord init = records[batch.rows[r].index];
    SdfRecord opt = init;
    opt.molecule = batch.pairs[r].optimized();
    initial_records.push_back(std::move(init));
    optimized_records.push_back(std::move(opt));
  }
  write_sdf_file(initial_records, args.outdir + "/initial.sdf");
  write_sdf_file(optimized_records, args.outdir + "/optimized.sdf");

  write_text_file(args.outdir + "/energy.csv", energy_csv(batch.rows));

  std::vector<MoleculeDeviations> geom_rows(batch.pairs.size());
  parallel_for_index(batch.pairs.size(), workers, [&](std::size_t i) {
    geom_rows[i] = molecule_deviations(batch.pairs[i]);
  });
  write_text_file(args.outdir + "/geometry.csv", deviations_csv(geom_rows));

  {
    std::ostringstream failures;
    for (const EnergyFailure &f : batch.failures)
      failures << f.name << '\t' << f.kind << '\n';
    write_text_file(args.outdir + "/failures.tsv", failures.str());
  }

  if (spec.kind != OptimizerKind::Mock) {
    std::ostringstream commands;
    for (const EnergyRow &row : batch.rows) {
      commands << row.name;
      for (const std::string &cmd : row.result.command_lines)
        commands << '\t' << cmd;
      commands << '\n';
    }
    write_text_file(args.outdir + "/commands.log", commands.str());
  }

  std::vector<EnergyRow> energy_rows = batch.rows;
  if (args.folds.shuffle_seed) {
    std::mt19937_64 rng(*args.folds.shuffle_seed);
    std::vector<std::size_t> perm(energy_rows.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<EnergyRow> er;
    std::vector<MoleculeDeviations> gr;
    for (std::size_t p : perm) {
      er.push_back(energy_rows[p]);
      gr.push_back(geom_rows[p]);
    }
    energy_rows = std::move(er);
    geom_rows = std::move(gr);
  }

  const Pooling pooling = args.pooling == "per-molecule"
                              ? Pooling::PerMolecule
                              : Pooling::Pooled;
  json metadata;
  metadata["subcommand"] = "energy";
  metadata["optimizer"] = spec.describe();
  metadata["pooling"] = pooling_name(pooling);
  metadata["evaluated"] = batch.rows.size();
  metadata["failed"] = batch.failures.size();
  metadata.update(fold_metadata(args.folds));
  const json report = assemble_report(
      std::move(metadata), nullptr,
      geometry_section_json(geom_rows, pooling, args.folds.config()),
      energy_section_json(energy_rows, batch.failures.size(),
                          args.folds.config()));
  write_text_file(args.outdir + "/energy.json", report.dump(2) + "\n");
  const std::string text = render_report_text(report);
  if (!args.text_path.empty())
    write_text_file(args.text_path, text);
  std::cout << text;
  std::cerr << "energy: " << batch.rows.size() << " ok, "
            << batch.failures.size() << " failed\n";
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  std::string stability_path;
  std::string geometry_path;
  std::string energy_path;
  std::string ff_energy_path;
  std::string json_path;
  std::string text_path;
};

inline json load_report(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open report '" + path + "'");
  json j = json::parse(in, nullptr, true);
  if (!j.contains("schema") || j["schema"] != "molbench-report/1")
    throw ParseError("'" + path + "' is not a molbench report");
  return j;
}

inline void run_report(const ReportArgs &args) {
  json stability = nullptr, geometry = nullptr, energy = nullptr,
       energy_ff = nullptr;
  json sources = json::object();
  if (!args.stability_path.empty()) {
    json j = load_report(args.stability_path);
    stability = j["stability"];
    sources["stability"] = j["metadata"];
  }
  if (!args.geometry_path.empty()) {
    json j = load_report(args.geometry_path);
    geometry = j["geometry"];
    sources["geometry"] = j["metadata"];
  }
  if (!args.energy_path.empty()) {
    json j = load_report(args.energy_path);
    if (geometry.is_null())
      geometry = j["geometry"];
    energy = j["energy"];
    sources["energy"] = j["metadata"];
  }
  if (!args.ff_energy_path.empty()) {
    json j = load_report(args.ff_energy_path);
    energy_ff = j["energy"];
    sources["energy_ff"] = j["metadata"];
  }
  json metadata;
  metadata["subcommand"] = "report";
  metadata["sections"] = std::move(sources);
  const json report =
      assemble_report(std::move(metadata), std::move(stability),
                      std::move(geometry), std::move(energy),
                      std::move(energy_ff));
  emit_report(report, args.json_path, args.text_path);
}

} // namespace detail

/// Entry point behind the `molbench` executable. Exit codes: 0 success,
/// 1 fatal error, 2 flag errors.
inline int run(int argc, const char *const *argv) {
  CLI::App app{"Chemically rigorous evaluation toolkit for 3D molecular "
               "generative models"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML-style file");
  app.set_version_flag("--version", "molbench 1.0.0");

  detail::CurateArgs curate_args;
  CLI::App *curate = app.add_subcommand(
      "curate", "Filter fragmented records, kekulize, and report");
  curate->add_option("-i,--input", curate_args.inputs, "Input SDF path(s)")
      ->required();
  curate->add_option("-o,--output", curate_args.output, "Curated SDF path")
      ->required();
  curate->add_option("--report", curate_args.report_path,
                     "Write the JSON curation report here too");
  curate->add_option("--failures", curate_args.failures_path,
                     "Kekulization failure log (default <output>.failures.tsv)");
  curate->add_option("--tables-prefix", curate_args.tables_prefix,
                     "Regenerate valency tables with this path prefix");
  curate->add_option("--split", curate_args.split_spec,
                     "Deterministic name-hash split, e.g. train:0.8,val:0.2");
  curate->add_option("--workers", curate_args.workers,
                     "Worker threads (default: hardware)");
  curate->callback([&] { detail::run_curate(curate_args); });

  CLI::App *table =
      app.add_subcommand("table", "Build, export, and diff valency tables");
  table->require_subcommand(1);

  detail::TableBuildArgs tbuild_args;
  CLI::App *tbuild =
      table->add_subcommand("build", "Derive a table from a corpus");
  tbuild->add_option("-i,--input", tbuild_args.inputs, "Input SDF path(s)")
      ->required();
  tbuild->add_option("-o,--output", tbuild_args.output, "Table output path")
      ->required();
  tbuild
      ->add_option("--key-mode", tbuild_args.key_mode,
                   "total (aromatic-free input) or tuple")
      ->check(CLI::IsMember({"total", "tuple"}))
      ->capture_default_str();
  tbuild->callback([&] { detail::run_table_build(tbuild_args); });

  detail::TableExportArgs texport_args;
  CLI::App *texport =
      table->add_subcommand("export", "Write a built-in table to a file");
  texport
      ->add_option("--builtin", texport_args.builtin,
                   "corrected, legacy, or tuple")
      ->check(CLI::IsMember({"corrected", "legacy", "tuple"}))
      ->capture_default_str();
  texport->add_option("-o,--output", texport_args.output, "Output path")
      ->required();
  texport->callback([&] { detail::run_table_export(texport_args); });

  detail::TableDiffArgs tdiff_args;
  CLI::App *tdiff = table->add_subcommand(
      "diff", "Entries added/missing between two tables");
  tdiff
      ->add_option("--table", tdiff_args.table,
                   "Table under inspection (path or builtin:<name>)")
      ->required();
  tdiff->add_option("--base", tdiff_args.base, "Baseline table")->required();
  tdiff->add_option("-o,--output", tdiff_args.output,
                    "Output path (default stdout)");
  tdiff->callback([&] { detail::run_table_diff(tdiff_args); });

  detail::StabilityArgs stability_args;
  CLI::App *stability = app.add_subcommand(
      "stability", "Atom/molecule stability and V&C under a chosen mode");
  stability
      ->add_option("-i,--input", stability_args.input, "Generated SDF file")
      ->required();
  stability
      ->add_option("--mode", stability_args.mode,
                   "legacy-arom1, arom15, arom-tuple, or kekulized")
      ->check(CLI::IsMember(
          {"legacy-arom1", "arom15", "arom-tuple", "kekulized"}))
      ->capture_default_str();
  stability->add_option(
      "--table", stability_args.table,
      "builtin:<corrected|legacy|tuple> or a table file (default fits mode)");
  stability->add_option("-o,--output", stability_args.json_path,
                        "Report JSON path");
  stability->add_option("--csv", stability_args.csv_path,
                        "Per-molecule CSV path");
  stability->add_option("--text", stability_args.text_path,
                        "Human-readable report path");
  stability->add_option("--workers", stability_args.workers,
                        "Worker threads (default: hardware)");
  stability_args.folds.attach(stability);
  stability->callback([&] { detail::run_stability(stability_args); });

  detail::GeometryArgs geometry_args;
  CLI::App *geometry = app.add_subcommand(
      "geometry", "Bond/angle/torsion deviations between conformer pairs");
  auto *gi = geometry->add_option("--initial", geometry_args.initial,
                                  "Initial (generated) SDF");
  auto *go = geometry->add_option("--optimized", geometry_args.optimized,
                                  "Optimized (relaxed) SDF, matched by order");
  auto *gd = geometry->add_option("--energy-dir", geometry_args.energy_dir,
                                  "Directory produced by `molbench energy`");
  gi->needs(go);
  go->needs(gi);
  gd->excludes(gi)->excludes(go);
  geometry->add_option("-o,--output", geometry_args.json_path,
                       "Report JSON path");
  geometry->add_option("--csv", geometry_args.csv_path,
                       "Per-molecule CSV path");
  geometry->add_option("--text", geometry_args.text_path,
                       "Human-readable report path");
  geometry
      ->add_option("--pooling", geometry_args.pooling,
                   "pooled or per-molecule averaging")
      ->check(CLI::IsMember({"pooled", "per-molecule"}))
      ->capture_default_str();
  geometry->add_option("--hist-prefix", geometry_args.hist_prefix,
                       "Write bond-length/angle histogram CSVs");
  geometry->add_option("--hist-bin-length", geometry_args.hist_bin_length,
                       "Histogram bin width, Angstrom")
      ->capture_default_str();
  geometry->add_option("--hist-bin-angle", geometry_args.hist_bin_angle,
                       "Histogram bin width, degrees")
      ->capture_default_str();
  geometry->add_option("--workers", geometry_args.workers,
                       "Worker threads (default: hardware)");
  geometry_args.folds.attach(geometry);
  geometry->callback([&] {
    if (geometry_args.energy_dir.empty() && geometry_args.initial.empty())
      throw CLI::ValidationError(
          "geometry", "give --initial/--optimized or --energy-dir");
    detail::run_geometry(geometry_args);
  });

  detail::EnergyArgs energy_args;
  CLI::App *energy = app.add_subcommand(
      "energy", "Relax every molecule and compute dE_relax + deviations");
  energy->add_option("-i,--input", energy_args.input, "Generated SDF file")
      ->required();
  energy->add_option("-o,--outdir", energy_args.outdir, "Output directory")
      ->required();
  energy
      ->add_option("--optimizer", energy_args.optimizer,
                   "mock[:f|:identity], xtb, or cmd:<template>")
      ->capture_default_str();
  energy->add_option("--xtb-binary", energy_args.xtb_binary,
                     "xtb binary path (overrides $MOLBENCH_XTB)");
  energy
      ->add_option("--timeout", energy_args.timeout_seconds,
                   "Per-invocation timeout, seconds")
      ->capture_default_str();
  energy->add_flag("--keep-scratch", energy_args.keep_scratch,
                   "Keep per-molecule scratch directories under the outdir");
  energy
      ->add_option("--pooling", energy_args.pooling,
                   "pooled or per-molecule averaging")
      ->check(CLI::IsMember({"pooled", "per-molecule"}))
      ->capture_default_str();
  energy->add_option("--text", energy_args.text_path,
                     "Human-readable report path");
  energy->add_option("--workers", energy_args.workers,
                     "Worker threads (default: hardware)");
  energy_args.folds.attach(energy);
  energy->callback([&] { detail::run_energy(energy_args); });

  detail::ReportArgs report_args;
  CLI::App *report =
      app.add_subcommand("report", "Merge section reports into one");
  report->add_option("--stability", report_args.stability_path,
                     "Stability report JSON");
  report->add_option("--geometry", report_args.geometry_path,
                     "Geometry report JSON");
  report->add_option("--energy", report_args.energy_path,
                     "Energy report JSON");
  report->add_option("--ff-energy", report_args.ff_energy_path,
                     "Force-field energy report JSON (kept separate from "
                     "the reference method)");
  report->add_option("-o,--output", report_args.json_path,
                     "Merged report JSON path");
  report->add_option("--text", report_args.text_path,
                     "Human-readable report path");
  report->callback([&] { detail::run_report(report_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0)
      return app.exit(e); // --help / --version
    std::cerr << "molbench: " << e.what() << '\n';
    return 2;
  } catch (const Error &e) {
    std::cerr << "molbench: error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "molbench: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

inline int run(int argc, char **argv) {
  return run(argc, const_cast<const char *const *>(argv));
}

/// Convenience for tests: run with argv built from strings.
inline int run(const std::vector<std::string> &args) {
  std::vector<const char *> argv;
  argv.push_back("molbench");
  for (const std::string &a : args)
    argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

} // namespace molbench::cli

#endif // MOLBENCH_CLI_HPP
