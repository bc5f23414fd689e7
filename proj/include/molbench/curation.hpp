//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_CURATION_HPP
#define MOLBENCH_CURATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "molbench/graph.hpp"
#include "molbench/kekulize.hpp"
#include "molbench/sdf.hpp"
#include "molbench/valency.hpp"

namespace molbench {

struct CurationReport {
  std::size_t input = 0;
  std::size_t removed_fragmented = 0;
  double removed_fraction = 0.0; // removed / input
  std::size_t kekulize_failures = 0;
  std::size_t output = 0;
};

struct FragmentFilterResult {
  std::vector<SdfRecord> kept;    // input order, properties untouched
  std::vector<SdfRecord> removed; // records with > 1 component
};

/// Drops records whose bond graph has more than one connected component.
/// Fragmentation is defined purely by connectivity of the record, never by
/// geometric distance.
inline FragmentFilterResult
filter_fragmented(const std::vector<SdfRecord> &records) {
  FragmentFilterResult result;
  for (const SdfRecord &rec : records) {
    if (connected_components(rec.molecule).size() > 1)
      result.removed.push_back(rec);
    else
      result.kept.push_back(rec);
  }
  return result;
}

struct CurationResult {
  std::vector<SdfRecord> records; // filtered and kekulized, input order
  std::vector<SdfRecord> post_filter; // after the fragment filter, still aromatic
  std::vector<SdfRecord> removed_fragmented;
  std::vector<KekulizeFailure> failures;
  CurationReport report;
};

/// The reprocessing pipeline: fragment filter, then kekulization. Failures
/// are logged and excluded, never fatal.
inline CurationResult curate(const std::vector<SdfRecord> &records,
                             unsigned workers = 1) {
  CurationResult result;
  result.report.input = records.size();

  FragmentFilterResult filtered = filter_fragmented(records);
  result.removed_fragmented = std::move(filtered.removed);
  result.post_filter = std::move(filtered.kept);
  result.report.removed_fragmented = result.removed_fragmented.size();
  result.report.removed_fraction =
      records.empty() ? 0.0
                      : double(result.report.removed_fragmented) /
                            double(records.size());

  KekulizeDatasetResult kek = kekulize_dataset(result.post_filter, workers);
  result.records = std::move(kek.records);
  result.failures = std::move(kek.failures);
  result.report.kekulize_failures = result.failures.size();
  result.report.output = result.records.size();
  return result;
}

struct RegeneratedTables {
  ValencyTable total; // from the curated (kekulized) records
  ValencyTable tuple; // from the post-filter, pre-kekulization records
};

/// Rebuilds both lookup-table shapes from a curated corpus. The total
/// table reads the kekulized output; the tuple table reads the stream
/// after fragment filtering but before kekulization, where aromatic flags
/// still exist.
inline RegeneratedTables
regenerate_tables(const std::vector<SdfRecord> &curated,
                  const std::vector<SdfRecord> &post_filter_pre_kekulize) {
  return {build_valency_table(curated, TableKind::TotalValence),
          build_valency_table(post_filter_pre_kekulize, TableKind::Tuple)};
}

/// Deterministic corpus splitter: buckets records by an FNV-1a hash of the
/// molecule name against cumulative fraction thresholds. Unrelated to any
/// released split; provided as reproducible utility only.
struct SplitPart {
  std::string name;
  double fraction;
  std::vector<SdfRecord> records;
};

inline std::uint64_t fnv1a64(const std::string &s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::vector<SplitPart>
split_by_name_hash(const std::vector<SdfRecord> &records,
                   std::vector<SplitPart> parts) {
  double total = 0;
  for (const SplitPart &p : parts)
    total += p.fraction;
  if (parts.empty() || total <= 0)
    throw ValidationError("split: no parts given");
  for (const SdfRecord &rec : records) {
    // map hash to [0, 1)
    const double u = double(fnv1a64(rec.molecule.name()) >> 11) /
                     double(1ull << 53);
    double acc = 0;
    std::size_t chosen = parts.size() - 1;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      acc += parts[p].fraction / total;
      if (u < acc) {
        chosen = p;
        break;
      }
    }
    parts[chosen].records.push_back(rec);
  }
  return parts;
}

} // namespace molbench

#endif // MOLBENCH_CURATION_HPP
