#include "uip/parallel.hpp"

#include <algorithm>
#include <limits>

#include "uip/prover.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace uip {

namespace {

Sequent implication(const Formula& lhs, const Formula& rhs) { return Sequent{{lhs}, {rhs}}; }

// Returns 0 = not a partner, 1 = partner and passes, 2 = partner and fails.
int check_candidate(Logic logic, const Formula& subject, const Formula& interpolant, bool post,
                    const Formula& c) {
  const bool partner = post ? derivable(logic, implication(subject, c)) : derivable(logic, implication(c, subject));
  if (!partner) return 0;
  const bool ok = post ? derivable(logic, implication(interpolant, c)) : derivable(logic, implication(c, interpolant));
  return ok ? 1 : 2;
}

}  // namespace

std::vector<char> decide_batch_serial(Logic logic, const std::vector<Sequent>& sequents) {
  std::vector<char> out(sequents.size());
  for (std::size_t k = 0; k < sequents.size(); ++k) out[k] = derivable(logic, sequents[k]) ? 1 : 0;
  return out;
}

std::vector<char> decide_batch(Logic logic, const std::vector<Sequent>& sequents) {
  std::vector<char> out(sequents.size());
  const auto n = static_cast<long long>(sequents.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long long k = 0; k < n; ++k) out[k] = derivable(logic, sequents[k]) ? 1 : 0;
  return out;
}

std::vector<std::optional<KripkeModel>> countermodel_batch_serial(Logic logic,
                                                                  const std::vector<Sequent>& sequents) {
  std::vector<std::optional<KripkeModel>> out(sequents.size());
  for (std::size_t k = 0; k < sequents.size(); ++k) out[k] = countermodel(logic, sequents[k]);
  return out;
}

std::vector<std::optional<KripkeModel>> countermodel_batch(Logic logic, const std::vector<Sequent>& sequents) {
  std::vector<std::optional<KripkeModel>> out(sequents.size());
  const auto n = static_cast<long long>(sequents.size());
#pragma omp parallel for schedule(dynamic, 2)
  for (long long k = 0; k < n; ++k) out[k] = countermodel(logic, sequents[k]);
  return out;
}

ExtremalityScan extremality_scan_serial(Logic logic, const Formula& subject, const Formula& interpolant,
                                        bool post, const std::vector<Formula>& candidates) {
  ExtremalityScan scan;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const int r = check_candidate(logic, subject, interpolant, post, candidates[k]);
    if (r > 0) ++scan.partners;
    if (r == 2 && !scan.first_failure) scan.first_failure = k;
  }
  return scan;
}

ExtremalityScan extremality_scan(Logic logic, const Formula& subject, const Formula& interpolant, bool post,
                                 const std::vector<Formula>& candidates) {
  const auto n = static_cast<long long>(candidates.size());
  std::size_t partners = 0;
  long long first = std::numeric_limits<long long>::max();
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : partners) reduction(min : first)
  for (long long k = 0; k < n; ++k) {
    const int r = check_candidate(logic, subject, interpolant, post, candidates[k]);
    if (r > 0) ++partners;
    if (r == 2) first = std::min(first, k);
  }
  ExtremalityScan scan;
  scan.partners = partners;
  if (first != std::numeric_limits<long long>::max()) scan.first_failure = static_cast<std::size_t>(first);
  return scan;
}

int parallel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace uip
