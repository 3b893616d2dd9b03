#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "uip/derivation.hpp"
#include "uip/kripke.hpp"
#include "uip/sequent.hpp"

// OpenMP kernels. Each has a serial reference with the same contract; the
// parallel versions return identical results regardless of thread count.

namespace uip {

/// Verdict per sequent (1 = derivable).
std::vector<char> decide_batch(Logic logic, const std::vector<Sequent>& sequents);
std::vector<char> decide_batch_serial(Logic logic, const std::vector<Sequent>& sequents);

std::vector<std::optional<KripkeModel>> countermodel_batch(Logic logic, const std::vector<Sequent>& sequents);
std::vector<std::optional<KripkeModel>> countermodel_batch_serial(Logic logic,
                                                                  const std::vector<Sequent>& sequents);

struct ExtremalityScan {
  /// Candidates C with subject => C (post) or C => subject (pre) derivable.
  std::size_t partners = 0;
  /// Lowest candidate index whose check against the interpolant failed.
  std::optional<std::size_t> first_failure;
};

/// post: for each candidate C, if A => C then I => C. pre: if C => B then C => I.
ExtremalityScan extremality_scan(Logic logic, const Formula& subject, const Formula& interpolant, bool post,
                                 const std::vector<Formula>& candidates);
ExtremalityScan extremality_scan_serial(Logic logic, const Formula& subject, const Formula& interpolant,
                                        bool post, const std::vector<Formula>& candidates);

/// Number of threads OpenMP would use (1 without OpenMP).
int parallel_threads();

}  // namespace uip
