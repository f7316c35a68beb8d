#pragma once

// Formula-versus-oracle comparisons for every closed-form expectation in
// netmodel, producing a machine-readable deviation report.

#include <iosfwd>
#include <string>
#include <vector>

#include "ghzline/mcoracle.hpp"
#include "ghzline/netmodel.hpp"

namespace ghzline::check {

enum class Verdict { Agree, Deviate, Inconclusive };
const char* to_string(Verdict v);

struct Comparison {
  std::string segment;
  std::string quantity;  // expected_max_attempts, yield_memoryless, dephasing_factor_near, ...
  double closed_form;
  mc::McResult oracle;
  double z_score;             // (closed_form - estimate) / standard_error
  double relative_deviation;  // (closed_form - estimate) / estimate
  Verdict verdict;            // Agree when |z| <= 3
};

/// Compares `closed_form` with `oracle` at three standard errors. A
/// zero-variance oracle agrees only on an exact (1e-12 relative) match.
Comparison compare(std::string segment, std::string quantity, double closed_form, const mc::McResult& oracle);

/// All comparisons for each configuration. Memory-dependent quantities are
/// skipped for segments without a memory.
std::vector<Comparison> run_mc_check(const std::vector<netmodel::TrioConfig>& configs, std::uint64_t samples,
                                     std::uint64_t seed, ExecOptions exec = {});

void write_report_json(const std::vector<Comparison>& rows, std::ostream& out);
void write_report_csv(const std::vector<Comparison>& rows, std::ostream& out);

}  // namespace ghzline::check
