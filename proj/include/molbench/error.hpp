//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_ERROR_HPP
#define MOLBENCH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace molbench {

/// Base class of all molbench errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A domain-type invariant was violated (bad charge, bond index, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Malformed input file (SDF, XYZ, valency table, config).
class ParseError : public Error {
public:
  using Error::Error;
};

/// Data cannot be represented in the requested output format.
class FormatError : public Error {
public:
  using Error::Error;
};

/// Stability mode and valency table shapes do not match.
class IncompatibleTableError : public Error {
public:
  using Error::Error;
};

/// A molecule cannot be kekulized.
class KekulizeError : public Error {
public:
  enum class Kind {
    // No perfect matching over the atoms that need a double bond.
    NoKekuleStructure,
    // Some aromatic atom cannot reach an allowed valence at all.
    UnkekulizableAtom,
  };

  KekulizeError(Kind kind, const std::string &what)
      : Error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

  std::string kind_name() const {
    return kind_ == Kind::NoKekuleStructure ? "NoKekuleStructure"
                                            : "UnkekulizableAtom";
  }

private:
  Kind kind_;
};

/// Angle or torsion undefined because atoms coincide or are collinear.
class DegenerateGeometryError : public Error {
public:
  enum class Kind { Angle, Torsion };

  DegenerateGeometryError(Kind kind, const std::string &what)
      : Error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

/// External optimizer failure; non-fatal at the batch level.
class OptimizeError : public Error {
public:
  enum class Kind {
    ProcessFailure,  // nonzero exit, timeout, spawn failure
    ParseFailure,    // expected energy line or geometry absent
    NotConverged,    // tool reported non-convergence
  };

  OptimizeError(Kind kind, const std::string &what)
      : Error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

  std::string kind_name() const {
    switch (kind_) {
    case Kind::ProcessFailure:
      return "ProcessFailure";
    case Kind::ParseFailure:
      return "ParseFailure";
    default:
      return "NotConverged";
    }
  }

private:
  Kind kind_;
};

} // namespace molbench

#endif // MOLBENCH_ERROR_HPP
