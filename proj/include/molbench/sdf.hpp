//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_SDF_HPP
#define MOLBENCH_SDF_HPP

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "molbench/error.hpp"
#include "molbench/molecule.hpp"

namespace molbench {

/// One SDF entry: the molecule plus its `> <tag>` data blocks, preserved
/// verbatim and in order so that metadata survives curation pipelines.
struct SdfRecord {
  Molecule molecule;
  std::vector<std::pair<std::string, std::string>> properties;
};

namespace detail {

// 1-based fixed-column slice; short lines read as blanks.
inline std::string_view sdf_field(const std::string &line, std::size_t col,
                                  std::size_t len) {
  if (line.size() < col)
    return {};
  return std::string_view(line).substr(col - 1,
                                       std::min(len, line.size() - col + 1));
}

inline bool parse_int_field(std::string_view f, long &out) {
  std::string s(f);
  char *end = nullptr;
  out = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str())
    return false;
  while (*end == ' ' || *end == '\t' || *end == '\r')
    ++end;
  return *end == '\0';
}

inline bool parse_double_field(std::string_view f, double &out) {
  std::string s(f);
  char *end = nullptr;
  out = std::strtod(s.c_str(), &end);
  if (end == s.c_str())
    return false;
  while (*end == ' ' || *end == '\t' || *end == '\r')
    ++end;
  return *end == '\0';
}

// V2000 atom-block charge codes. Code 4 is a doublet radical, which has no
// stability semantics here and is rejected rather than silently zeroed.
inline int decode_charge_code(long code, const std::string &context) {
  switch (code) {
  case 0:
    return 0;
  case 1:
    return 3;
  case 2:
    return 2;
  case 3:
    return 1;
  case 5:
    return -1;
  case 6:
    return -2;
  case 7:
    return -3;
  case 4:
    throw ParseError(context + ": charge code 4 (radical) is unsupported");
  default:
    throw ParseError(context + ": invalid charge code " +
                     std::to_string(code));
  }
}

inline std::string rstrip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n'))
    s.pop_back();
  return s;
}

class LineReader {
public:
  explicit LineReader(std::istream &in) : in_(in) {}

  bool next(std::string &line) {
    if (!std::getline(in_, line))
      return false;
    line = rstrip(std::move(line));
    ++lineno_;
    return true;
  }

  std::size_t lineno() const { return lineno_; }

private:
  std::istream &in_;
  std::size_t lineno_ = 0;
};

} // namespace detail

/// Parses a V2000 SD stream. The atom block is read strictly by column
/// position (coordinates in columns 1-30, element in 32-34, charge code in
/// 37-39); records are separated by `$$$$`. Any `M  CHG` block supersedes
/// the atom-block charge codes of the whole record, per the V2000
/// convention; bare atom-block codes apply only when no such block exists.
inline std::vector<SdfRecord> parse_sdf(std::istream &in) {
  using namespace detail;
  std::vector<SdfRecord> records;
  LineReader reader(in);
  std::string line;

  const auto blank = [](const std::string &s) {
    return s.find_first_not_of(" \t") == std::string::npos;
  };

  while (true) {
    std::string name;
    if (!reader.next(name))
      return records; // clean EOF

    const std::size_t record_no = records.size() + 1;
    auto ctx = [&](const std::string &what) {
      return "SDF record " + std::to_string(record_no) + " ('" + name +
             "') line " + std::to_string(reader.lineno()) + ": " + what;
    };

    std::string program, comment, counts;
    const bool have_program = reader.next(program);
    const bool have_comment = have_program && reader.next(comment);
    const bool have_counts = have_comment && reader.next(counts);
    if (!have_counts) {
      // Blank padding after the last $$$$ is tolerated; a partial header
      // with content is a truncated record.
      if (blank(name) && (!have_program || blank(program)) &&
          (!have_comment || blank(comment)))
        return records;
      throw ParseError(ctx("truncated header block"));
    }

    long natoms = 0, nbonds = 0;
    if (!parse_int_field(sdf_field(counts, 1, 3), natoms) ||
        !parse_int_field(sdf_field(counts, 4, 3), nbonds) || natoms < 0 ||
        nbonds < 0)
      throw ParseError(ctx("malformed counts line '" + counts + "'"));
    const std::string_view version = sdf_field(counts, 34, 6);
    if (version.find("V3000") != std::string_view::npos)
      throw ParseError(ctx("V3000 connection tables are not supported"));

    std::vector<Atom> atoms;
    std::vector<int> block_codes;
    atoms.reserve(static_cast<std::size_t>(natoms));
    for (long a = 0; a < natoms; ++a) {
      if (!reader.next(line))
        throw ParseError(ctx("truncated atom block"));
      Atom atom;
      if (!parse_double_field(sdf_field(line, 1, 10), atom.position.x) ||
          !parse_double_field(sdf_field(line, 11, 10), atom.position.y) ||
          !parse_double_field(sdf_field(line, 21, 10), atom.position.z))
        throw ParseError(ctx("unparseable coordinates in atom line '" + line +
                             "'"));
      const std::string_view sym = sdf_field(line, 32, 3);
      auto elem = try_element_from_symbol(sym);
      if (!elem)
        throw ParseError(ctx("unknown element symbol '" + std::string(sym) +
                             "'"));
      atom.element = *elem;
      long code = 0;
      const std::string_view charge_field = sdf_field(line, 37, 3);
      if (!charge_field.empty() &&
          charge_field.find_first_not_of(' ') != std::string_view::npos) {
        if (!parse_int_field(charge_field, code))
          throw ParseError(ctx("unparseable charge field"));
      }
      block_codes.push_back(decode_charge_code(code, ctx("atom block")));
      atoms.push_back(atom);
    }

    std::vector<Bond> bonds;
    bonds.reserve(static_cast<std::size_t>(nbonds));
    for (long b = 0; b < nbonds; ++b) {
      if (!reader.next(line))
        throw ParseError(ctx("truncated bond block"));
      long i = 0, j = 0, code = 0;
      if (!parse_int_field(sdf_field(line, 1, 3), i) ||
          !parse_int_field(sdf_field(line, 4, 3), j) ||
          !parse_int_field(sdf_field(line, 7, 3), code))
        throw ParseError(ctx("malformed bond line '" + line + "'"));
      if (i < 1 || i > natoms || j < 1 || j > natoms)
        throw ParseError(ctx("bond atom index out of range"));
      if (code < 1 || code > 4)
        throw ParseError(ctx("bond order code " + std::to_string(code) +
                             " outside {1,2,3,4}"));
      bonds.push_back({static_cast<std::size_t>(i - 1),
                       static_cast<std::size_t>(j - 1),
                       static_cast<BondOrder>(code)});
    }

    // Property lines up to M END. Unknown M/A/V lines pass through silently
    // except M RAD, which would introduce radicals.
    bool saw_chg = false;
    std::vector<std::pair<std::size_t, int>> chg_pairs;
    bool saw_end_of_ctab = false;
    while (reader.next(line)) {
      if (line.rfind("M  END", 0) == 0) {
        saw_end_of_ctab = true;
        break;
      }
      if (line.rfind("M  RAD", 0) == 0)
        throw ParseError(ctx("M  RAD (radical) records are unsupported"));
      if (line.rfind("M  CHG", 0) == 0) {
        saw_chg = true;
        std::istringstream ss(line.substr(6));
        long count = 0;
        if (!(ss >> count) || count < 1)
          throw ParseError(ctx("malformed M  CHG line"));
        for (long p = 0; p < count; ++p) {
          long idx = 0, val = 0;
          if (!(ss >> idx >> val))
            throw ParseError(ctx("malformed M  CHG line"));
          if (idx < 1 || idx > natoms)
            throw ParseError(ctx("M  CHG atom index out of range"));
          chg_pairs.push_back({static_cast<std::size_t>(idx - 1),
                               static_cast<int>(val)});
        }
      }
    }
    if (!saw_end_of_ctab)
      throw ParseError(ctx("missing M  END"));

    if (saw_chg) {
      for (Atom &a : atoms)
        a.formal_charge = 0;
      for (const auto &[idx, val] : chg_pairs)
        atoms[idx].formal_charge = val;
    } else {
      for (std::size_t a = 0; a < atoms.size(); ++a)
        atoms[a].formal_charge = block_codes[a];
    }

    // Data fields: `> <tag>` then value lines, terminated by a blank line.
    SdfRecord record;
    bool saw_terminator = false;
    while (reader.next(line)) {
      if (line.rfind("$$$$", 0) == 0) {
        saw_terminator = true;
        break;
      }
      if (line.empty())
        continue;
      if (line[0] != '>')
        throw ParseError(ctx("unexpected line in data block: '" + line + "'"));
      const std::size_t open = line.find('<');
      const std::size_t close = line.find('>', open == std::string::npos
                                                    ? 1
                                                    : open + 1);
      if (open == std::string::npos || close == std::string::npos ||
          close < open)
        throw ParseError(ctx("malformed data header '" + line + "'"));
      const std::string tag = line.substr(open + 1, close - open - 1);
      std::string value;
      bool first = true;
      while (reader.next(line)) {
        if (line.empty() || line.rfind("$$$$", 0) == 0)
          break;
        if (!first)
          value += '\n';
        value += line;
        first = false;
      }
      record.properties.push_back({tag, std::move(value)});
      if (line.rfind("$$$$", 0) == 0) {
        saw_terminator = true;
        break;
      }
    }

    try {
      record.molecule = Molecule(name, std::move(atoms), std::move(bonds));
    } catch (const ValidationError &e) {
      throw ParseError("SDF record " + std::to_string(record_no) + ": " +
                       e.what());
    }
    records.push_back(std::move(record));
    if (!saw_terminator)
      return records; // last record may omit $$$$
  }
}

inline std::vector<SdfRecord> parse_sdf(const std::string &text) {
  std::istringstream ss(text);
  return parse_sdf(ss);
}

inline std::vector<SdfRecord> parse_sdf_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open SDF file '" + path + "'");
  return parse_sdf(in);
}

namespace detail {

inline void format_coordinate(std::string &out, double v,
                              const std::string &context) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof(buf), "%10.4f", v);
  if (n != 10)
    throw FormatError(context + ": coordinate " + std::to_string(v) +
                      " does not fit the 10.4 field");
  out += buf;
}

} // namespace detail

/// Emits V2000. Nonzero formal charges always go through `M  CHG`; the
/// atom-block charge field is written as 0. Molecules beyond the 999-atom
/// or 999-bond field width cannot be represented.
inline void write_sdf(const std::vector<SdfRecord> &records,
                      std::ostream &out) {
  using namespace detail;
  char buf[128];
  for (const SdfRecord &rec : records) {
    const Molecule &mol = rec.molecule;
    if (mol.atom_count() > 999)
      throw FormatError("molecule '" + mol.name() +
                        "' exceeds 999 atoms (V2000 field width)");
    if (mol.bond_count() > 999)
      throw FormatError("molecule '" + mol.name() +
                        "' exceeds 999 bonds (V2000 field width)");

    out << mol.name() << '\n';
    out << "  molbench          3D\n";
    out << '\n';
    std::snprintf(buf, sizeof(buf),
                  "%3zu%3zu  0  0  0  0  0  0  0  0999 V2000\n",
                  mol.atom_count(), mol.bond_count());
    out << buf;

    for (const Atom &a : mol.atoms()) {
      std::string line;
      format_coordinate(line, a.position.x, mol.name());
      format_coordinate(line, a.position.y, mol.name());
      format_coordinate(line, a.position.z, mol.name());
      std::snprintf(buf, sizeof(buf),
                    " %-3s 0  0  0  0  0  0  0  0  0  0  0  0",
                    std::string(symbol_of(a.element)).c_str());
      line += buf;
      out << line << '\n';
    }

    for (const Bond &b : mol.bonds()) {
      std::snprintf(buf, sizeof(buf), "%3zu%3zu%3d  0\n", b.i + 1, b.j + 1,
                    static_cast<int>(b.order));
      out << buf;
    }

    std::vector<std::pair<std::size_t, int>> charged;
    for (std::size_t a = 0; a < mol.atom_count(); ++a)
      if (mol.atom(a).formal_charge != 0)
        charged.push_back({a, mol.atom(a).formal_charge});
    for (std::size_t at = 0; at < charged.size(); at += 8) {
      const std::size_t n = std::min<std::size_t>(8, charged.size() - at);
      std::snprintf(buf, sizeof(buf), "M  CHG%3zu", n);
      out << buf;
      for (std::size_t p = 0; p < n; ++p) {
        std::snprintf(buf, sizeof(buf), "%4zu%4d", charged[at + p].first + 1,
                      charged[at + p].second);
        out << buf;
      }
      out << '\n';
    }
    out << "M  END\n";

    for (const auto &[tag, value] : rec.properties) {
      out << "> <" << tag << ">\n";
      out << value << '\n';
      out << '\n';
    }
    out << "$$$$\n";
  }
}

inline std::string write_sdf(const std::vector<SdfRecord> &records) {
  std::ostringstream ss;
  write_sdf(records, ss);
  return ss.str();
}

inline void write_sdf_file(const std::vector<SdfRecord> &records,
                           const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw FormatError("cannot open '" + path + "' for writing");
  write_sdf(records, out);
}

} // namespace molbench

#endif // MOLBENCH_SDF_HPP
