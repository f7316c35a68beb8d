#include "ghzline/mccheck.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "ghzline/emit.hpp"
#include "json.hpp"

namespace ghzline::check {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Agree: return "agree";
    case Verdict::Deviate: return "deviate";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

Comparison compare(std::string segment, std::string quantity, double closed_form, const mc::McResult& oracle) {
  Comparison c{std::move(segment), std::move(quantity), closed_form, oracle, 0.0, 0.0, Verdict::Agree};
  const double diff = closed_form - oracle.estimate;
  c.relative_deviation = oracle.estimate != 0.0 ? diff / oracle.estimate : std::numeric_limits<double>::quiet_NaN();
  if (oracle.standard_error > 0.0) {
    c.z_score = diff / oracle.standard_error;
    c.verdict = std::abs(c.z_score) <= 3.0 ? Verdict::Agree : Verdict::Deviate;
  } else if (std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(closed_form))) {
    c.z_score = 0.0;
  } else if (oracle.estimate == 0.0) {
    // No events observed: the sample is too small to say anything.
    c.z_score = std::numeric_limits<double>::quiet_NaN();
    c.verdict = Verdict::Inconclusive;
  } else {
    c.z_score = std::copysign(std::numeric_limits<double>::infinity(), diff);
    c.verdict = Verdict::Deviate;
  }
  return c;
}

std::vector<Comparison> run_mc_check(const std::vector<netmodel::TrioConfig>& configs, std::uint64_t samples,
                                     std::uint64_t seed, ExecOptions exec) {
  using netmodel::Node;
  std::vector<Comparison> out;
  std::uint64_t stream = 0;
  const auto next_seed = [&] { return mc::splitmix64(seed + stream++); };
  for (const auto& cfg : configs) {
    const double pa = netmodel::click_probability(cfg, Node::A, false);
    const double pc = netmodel::click_probability(cfg, Node::C, false);
    out.push_back(compare(cfg.segment, "expected_max_attempts", netmodel::expected_max_geometric(pa, pc),
                          mc::mc_expected_max(pa, pc, samples, next_seed(), exec)));
    out.push_back(compare(cfg.segment, "yield_memoryless", netmodel::yield_memoryless(cfg),
                          mc::mc_yield_memoryless(cfg, samples, next_seed(), exec)));
    if (cfg.memory) {
      const auto oracle = mc::mc_dephasing_factor(cfg, samples, next_seed(), exec);
      out.push_back(compare(cfg.segment, "dephasing_factor_near", netmodel::expected_dephasing_factor_near(cfg), oracle));
      out.push_back(compare(cfg.segment, "dephasing_factor_near_simplified",
                            netmodel::expected_dephasing_factor_near_simplified(cfg), oracle));
    }
  }
  return out;
}

void write_report_json(const std::vector<Comparison>& rows, std::ostream& out) {
  const auto num = [](double v) { return std::isfinite(v) ? emit::format_double(v) : std::string("null"); };
  out << '[';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << (i == 0 ? "\n" : ",\n") << "  {\"segment\": " << nlohmann::json(r.segment).dump()
        << ", \"quantity\": \"" << r.quantity << "\", \"closed_form\": " << num(r.closed_form)
        << ", \"mc_estimate\": " << num(r.oracle.estimate) << ", \"mc_stderr\": " << num(r.oracle.standard_error)
        << ", \"samples\": " << r.oracle.num_samples << ", \"seed\": " << r.oracle.seed
        << ", \"z_score\": " << num(r.z_score) << ", \"relative_deviation\": " << num(r.relative_deviation)
        << ", \"verdict\": \"" << to_string(r.verdict) << "\"}";
  }
  out << (rows.empty() ? "]\n" : "\n]\n");
}

void write_report_csv(const std::vector<Comparison>& rows, std::ostream& out) {
  out << "segment,quantity,closed_form,mc_estimate,mc_stderr,samples,seed,z_score,relative_deviation,verdict\n";
  for (const auto& r : rows) {
    out << nlohmann::json(r.segment).dump() << ',' << r.quantity << ',' << emit::format_double(r.closed_form) << ','
        << emit::format_double(r.oracle.estimate) << ',' << emit::format_double(r.oracle.standard_error) << ','
        << r.oracle.num_samples << ',' << r.oracle.seed << ',' << emit::format_double(r.z_score) << ','
        << emit::format_double(r.relative_deviation) << ',' << to_string(r.verdict) << '\n';
  }
}

}  // namespace ghzline::check
