#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rih/hamiltonian.hpp"
#include "rih/json_io.hpp"

namespace rih {

/// FNV-1a hash of the assembled zero-plug term with default coefficients.
inline constexpr const char* kGoldenTermHash = "f3da53d5dc0f36f9";

struct VerifyOptions {
  /// Adds the slow checks: unpruned single-copy enumeration and the n = 6 open-boundary turn search.
  bool full = false;
  /// Coefficients of the assembled term used by the oracle and audit checks.
  TermCoefficients coeffs;
  /// Criterion ids to run; empty runs all of them.
  std::vector<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  std::string summary;
  Json detail;
};

inline constexpr int kNumCriteria = 12;

CriterionResult run_criterion(int id, const VerifyOptions& opt = {});
std::vector<CriterionResult> verify_claims(const VerifyOptions& opt = {});
Json to_json(const CriterionResult& r);

/// Deterministic Miller-Rabin for 64-bit values (fixed bases 2..37), kept apart from the Boost route.
bool is_prime_u64(std::uint64_t v);

}  // namespace rih
