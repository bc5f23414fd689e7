//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_XYZ_HPP
#define MOLBENCH_XYZ_HPP

#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "molbench/element.hpp"
#include "molbench/error.hpp"
#include "molbench/molecule.hpp"
#include "molbench/vec3.hpp"

namespace molbench {

struct XyzAtom {
  Element element;
  Vec3 position;
};

/// One frame of a (possibly multi-frame) XYZ file.
struct XyzFrame {
  std::string comment;
  std::vector<XyzAtom> atoms;

  std::size_t atom_count() const { return atoms.size(); }
};

inline std::vector<XyzFrame> parse_xyz(std::istream &in) {
  std::vector<XyzFrame> frames;
  std::string line;
  std::size_t lineno = 0;
  auto next = [&](std::string &out) {
    if (!std::getline(in, out))
      return false;
    while (!out.empty() && (out.back() == '\r' || out.back() == '\n'))
      out.pop_back();
    ++lineno;
    return true;
  };

  while (true) {
    // blank separators between frames are tolerated
    bool have = false;
    while (next(line)) {
      if (line.find_first_not_of(" \t") != std::string::npos) {
        have = true;
        break;
      }
    }
    if (!have)
      return frames;

    long count = 0;
    {
      std::istringstream ss(line);
      std::string tail;
      if (!(ss >> count) || count < 0 || (ss >> tail))
        throw ParseError("XYZ line " + std::to_string(lineno) +
                         ": malformed atom count '" + line + "'");
    }

    XyzFrame frame;
    if (!next(frame.comment))
      throw ParseError("XYZ: missing comment line after count at line " +
                       std::to_string(lineno));

    frame.atoms.reserve(static_cast<std::size_t>(count));
    for (long a = 0; a < count; ++a) {
      if (!next(line))
        throw ParseError("XYZ: frame declares " + std::to_string(count) +
                         " atoms but input ended after " + std::to_string(a));
      std::istringstream ss(line);
      std::string sym;
      double x, y, z;
      if (!(ss >> sym >> x >> y >> z))
        throw ParseError("XYZ line " + std::to_string(lineno) +
                         ": unparseable atom line '" + line + "'");
      auto elem = try_element_from_symbol(sym);
      if (!elem)
        throw ParseError("XYZ line " + std::to_string(lineno) +
                         ": unknown element symbol '" + sym + "'");
      frame.atoms.push_back({*elem, {x, y, z}});
    }
    frames.push_back(std::move(frame));
  }
}

inline std::vector<XyzFrame> parse_xyz(const std::string &text) {
  std::istringstream ss(text);
  return parse_xyz(ss);
}

inline std::vector<XyzFrame> parse_xyz_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open XYZ file '" + path + "'");
  return parse_xyz(in);
}

/// Coordinates are written at 6 decimals (round trip to 1e-6 A).
inline void write_xyz(const std::vector<XyzFrame> &frames, std::ostream &out) {
  char buf[96];
  for (const XyzFrame &frame : frames) {
    out << frame.atom_count() << '\n';
    out << frame.comment << '\n';
    for (const XyzAtom &a : frame.atoms) {
      std::snprintf(buf, sizeof(buf), "%-2s %15.6f %15.6f %15.6f\n",
                    std::string(symbol_of(a.element)).c_str(), a.position.x,
                    a.position.y, a.position.z);
      out << buf;
    }
  }
}

inline std::string write_xyz(const std::vector<XyzFrame> &frames) {
  std::ostringstream ss;
  write_xyz(frames, ss);
  return ss.str();
}

inline void write_xyz_file(const std::vector<XyzFrame> &frames,
                           const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw FormatError("cannot open '" + path + "' for writing");
  write_xyz(frames, out);
}

inline XyzFrame frame_from_molecule(const Molecule &mol) {
  XyzFrame frame;
  frame.comment = mol.name();
  frame.atoms.reserve(mol.atom_count());
  for (const Atom &a : mol.atoms())
    frame.atoms.push_back({a.element, a.position});
  return frame;
}

} // namespace molbench

#endif // MOLBENCH_XYZ_HPP
