#pragma once

#include "roth/certificates.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Textual form of an equation system. Entries are kept as component numeral
// strings so a document converts losslessly into either backend.
namespace roth {

/// One scalar as its 1, 2 or 4 component numerals (order 1, i, j, k).
using DocScalar = std::vector<std::string>;

struct DocMatrix {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<DocScalar> entries;  // row-major
  friend bool operator==(const DocMatrix &, const DocMatrix &) = default;
};

/// pre · unknown^sigma · post, with either factor optional (identity).
struct DocTerm {
  std::optional<std::string> pre;
  std::string unknown;
  SigmaOp sigma = SigmaOp::Identity;
  std::optional<std::string> post;
  friend bool operator==(const DocTerm &, const DocTerm &) = default;
};

/// first − second = rhs. `line` is diagnostic only and ignored by ==.
struct DocEquation {
  DocTerm first;
  DocTerm second;
  std::string rhs;
  std::size_t line = 0;
  friend bool operator==(const DocEquation &a, const DocEquation &b) {
    return a.first == b.first && a.second == b.second && a.rhs == b.rhs;
  }
};

struct SystemDocument {
  ScalarKind kind = ScalarKind::Real;
  std::vector<UnknownSpec> unknowns;
  std::vector<DocMatrix> constants;
  std::vector<DocEquation> equations;
  std::optional<double> tol;
  friend bool operator==(const SystemDocument &, const SystemDocument &) = default;
};

/// Throws ParseError with a 1-based line and column.
SystemDocument parse_dsl(std::string_view text);
std::string print_dsl(const SystemDocument &doc);

/// Throws ParseError on malformed JSON and Error on schema violations.
SystemDocument parse_json_document(std::string_view text);
std::string print_json_document(const SystemDocument &doc);

/// Dispatches on the first non-blank character: `{` means JSON.
SystemDocument parse_document(std::string_view text);

/// Resolves names and numerals, then validates. Throws ValidationError.
template <class T> EquationSystem<T> to_system(const SystemDocument &doc, bool strict_corollary = true);

/// Names every coefficient matrix after its role and equation (A1, B1, ...).
template <class T> SystemDocument from_system(const EquationSystem<T> &sys);

// Certificates and solutions as JSON.

template <class T> struct AnyCertificate {
  int theorem = 1;
  ScalarKind kind = ScalarKind::Real;
  Thm1Certificate<T> thm1;  // theorem 1
  Thm2Certificate<T> thm2;  // theorem 2
};

template <class T> std::string print_certificate(ScalarKind kind, const Thm1Certificate<T> &cert);
template <class T> std::string print_certificate(ScalarKind kind, const Thm2Certificate<T> &cert);
template <class T> AnyCertificate<T> parse_certificate(std::string_view text);

template <class T>
std::string print_solve_report(const EquationSystem<T> &sys, const SolveReport<T> &rep);

template <class T>
std::string print_solution(const EquationSystem<T> &sys, const std::vector<Matrix<T>> &sol, double residual);

} // namespace roth
