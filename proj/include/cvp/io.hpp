#pragma once

// JSON instance and solution files.
//
// Output is canonical: fixed key order, two-space indentation, arrays of
// scalars on one line. Rationals are written as integers when integral and as
// "p/q" strings otherwise; C = inf is the string "inf".

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cvp/core.hpp"
#include "cvp/segmentation.hpp"

namespace cvp {

using AnyInstance = std::variant<CvpInstance, MatrixInstance>;

/// Throws kParseError for malformed JSON, wrong shapes or unknown keys, and
/// kInvalidInstance with the first violation for ill-formed instances.
AnyInstance parse_instance(std::string_view text);
std::string write_instance(const AnyInstance& instance);

struct SolutionFile {
  std::optional<std::vector<std::int64_t>> u;   // vector instances
  std::optional<std::vector<PlanTerm>> terms;   // matrix instances
  std::int64_t tc = 0;
  std::int64_t linf = 0;
  std::int64_t bot = 0;
  Rational objective{0};
  std::string status;
  std::string method;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const SolutionFile&, const SolutionFile&) = default;
};

SolutionFile to_solution_file(const SolveReport& report);
SolutionFile to_solution_file(const MatrixPlan& plan, SolveStatus status, std::string method,
                              std::optional<std::uint64_t> seed);

SolutionFile parse_solution(std::string_view text);
std::string write_solution(const SolutionFile& solution);

/// Re-evaluates the stated plan against the instance. Each mismatch is one
/// line ("tc mismatch", "MSC violation row i", ...); empty means verified.
/// The cap is enforced for solutions whose status is "optimal".
std::vector<std::string> verify_solution(const AnyInstance& instance, const SolutionFile& solution);

}  // namespace cvp
