#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "heegner/identities.hpp"

namespace heegner::cli {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  long pi_digits = 100000;
  // Record id whose closed form is perturbed before verification.
  std::optional<std::string> inject_fault;
};

// Catalog copy with the optional fault applied.
std::vector<IdentityRecord> working_catalog(const AcceptanceOptions& opt);

CriterionResult criterion_pi(const AcceptanceOptions& opt);
CriterionResult criterion_series(const AcceptanceOptions& opt);
CriterionResult criterion_one(const AcceptanceOptions& opt);
CriterionResult criterion_zero(const AcceptanceOptions& opt);
CriterionResult criterion_tables(const AcceptanceOptions& opt);
CriterionResult criterion_periods(const AcceptanceOptions& opt);
CriterionResult criterion_odes(const AcceptanceOptions& opt);
CriterionResult criterion_cm(const AcceptanceOptions& opt);
CriterionResult criterion_exact(const AcceptanceOptions& opt);
CriterionResult criterion_chowla_selberg(const AcceptanceOptions& opt);
CriterionResult criterion_hypergeom(const AcceptanceOptions& opt);

// Criteria 1-11 in order. `on_result` is called as each one finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

// Every catalog record plus the invariant suites at 100 digits.
std::vector<CriterionResult> run_quick(const AcceptanceOptions& opt,
                                       const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_line(const CriterionResult& r);

// Sample points used by the ODE criterion, as (x, y) decimal strings.
std::vector<std::pair<std::string, std::string>> ode_samples(RegionId r);

}  // namespace heegner::cli
