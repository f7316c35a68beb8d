#include "ghzline/netmodel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ghzline::netmodel {

namespace {

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

void require_unit(double x, const char* what) {
  if (!in_unit(x)) {
    std::ostringstream msg;
    msg << what << " = " << x << " outside [0, 1]";
    throw std::invalid_argument(msg.str());
  }
}

std::string join(const std::vector<std::string>& problems) {
  std::string out = "invalid configuration:";
  for (const auto& p : problems) out += "\n  " + p;
  return out;
}

const NodeParams& node_params(const TrioConfig& cfg, Node n) {
  switch (n) {
    case Node::A: return cfg.node_a;
    case Node::B: return cfg.node_b;
    case Node::C: return cfg.node_c;
  }
  return cfg.node_b;
}

const MemoryParams& require_memory(const TrioConfig& cfg) {
  if (!cfg.memory) throw std::invalid_argument("segment '" + cfg.segment + "' has no quantum memory configured");
  return *cfg.memory;
}

double link_length(const TrioConfig& cfg, Node outer) {
  return outer == Node::A ? cfg.link_ab.length_km : cfg.link_bc.length_km;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

const char* to_string(Node n) {
  switch (n) {
    case Node::A: return "A";
    case Node::B: return "B";
    case Node::C: return "C";
  }
  return "?";
}

LinkParams LinkParams::from_loss_db(double length_km, double loss_db) {
  return {length_km, transmission_from_loss_db(loss_db), loss_db};
}

std::vector<std::string> TrioConfig::violations() const {
  std::vector<std::string> out;
  const auto check = [&out](bool ok, const std::string& field, double value, const char* rule) {
    if (!ok) {
      std::ostringstream msg;
      msg << field << " = " << value << " violates " << rule;
      out.push_back(msg.str());
    }
  };
  const std::pair<const char*, const NodeParams*> nodes[] = {{"A", &node_a}, {"B", &node_b}, {"C", &node_c}};
  for (const auto& [label, n] : nodes) {
    const std::string base = std::string("nodes.") + label;
    check(in_unit(n->detector_efficiency), base + ".detector_efficiency", n->detector_efficiency, "0 <= eta <= 1");
    check(n->dark_count_prob >= 0.0 && n->dark_count_prob < 1.0, base + ".dark_count_prob", n->dark_count_prob,
          "0 <= p_d < 1");
  }
  const std::pair<const char*, const LinkParams*> links[] = {{"AB", &link_ab}, {"BC", &link_bc}};
  for (const auto& [label, l] : links) {
    const std::string base = std::string("links.") + label;
    check(l->length_km > 0.0, base + ".length_km", l->length_km, "L > 0");
    check(l->transmission > 0.0 && l->transmission <= 1.0, base + ".transmission", l->transmission,
          "0 < p_LINK <= 1");
  }
  check(source.frequency_hz > 0.0, "source.frequency_hz", source.frequency_hz, "f > 0");
  check(speed_of_light_km_s > 0.0, "speed_of_light_km_s", speed_of_light_km_s, "c > 0");
  if (memory) {
    check(in_unit(memory->efficiency), "memory.efficiency", memory->efficiency, "0 <= eta_QM <= 1");
    check(memory->t2_s > 0.0, "memory.t2_s", memory->t2_s, "T2 > 0");
  }
  return out;
}

void TrioConfig::validate() const {
  auto problems = violations();
  if (!problems.empty()) {
    for (auto& p : problems) p = "segment '" + segment + "': " + p;
    throw ConfigError(std::move(problems));
  }
}

double transmission_from_loss_db(double loss_db) { return std::pow(10.0, -loss_db / 10.0); }

double loss_db_from_transmission(double transmission) { return -10.0 * std::log10(transmission); }

double xi(const TrioConfig& cfg, Node node, bool with_memory) {
  switch (node) {
    case Node::A: return cfg.node_a.detector_efficiency * cfg.link_ab.transmission;
    case Node::C: return cfg.node_c.detector_efficiency * cfg.link_bc.transmission;
    case Node::B:
      if (!with_memory) return cfg.node_b.detector_efficiency;
      return cfg.node_b.detector_efficiency * require_memory(cfg).efficiency;
  }
  return 0.0;
}

double xi_prime(double xi, double p_dark) {
  require_unit(xi, "xi");
  require_unit(p_dark, "dark count probability");
  // Written as xi plus the dark-click share so that p_dark = 0 returns xi exactly.
  return xi + (1.0 - xi) * p_dark * (2.0 - p_dark);
}

double dark_count_alpha(double xi, double xi_prime, double p_dark) {
  require_unit(xi, "xi");
  require_unit(p_dark, "dark count probability");
  if (!(xi_prime > 0.0)) throw std::domain_error("detector never clicks (xi' = 0); dark-count alpha undefined");
  return std::clamp(1.0 - xi * (1.0 - p_dark) / xi_prime, 0.0, 1.0);
}

double click_probability(const TrioConfig& cfg, Node node, bool with_memory) {
  return xi_prime(xi(cfg, node, with_memory), node_params(cfg, node).dark_count_prob);
}

double node_dark_count_alpha(const TrioConfig& cfg, Node node, bool with_memory) {
  const double x = xi(cfg, node, with_memory);
  const double pd = node_params(cfg, node).dark_count_prob;
  return dark_count_alpha(x, xi_prime(x, pd), pd);
}

double yield_memoryless(const TrioConfig& cfg) {
  const double b = click_probability(cfg, Node::B, false);
  return click_probability(cfg, Node::A, false) * b * b * click_probability(cfg, Node::C, false);
}

double expected_max_geometric(double p_a, double p_c) {
  if (!(p_a > 0.0 && p_a <= 1.0 && p_c > 0.0 && p_c <= 1.0)) {
    throw std::domain_error("attempt success probabilities must lie in (0, 1]");
  }
  return 1.0 / p_a + 1.0 / p_c - 1.0 / (p_a + p_c - p_a * p_c);
}

double yield_qm(const TrioConfig& cfg) {
  require_memory(cfg);
  const double b = click_probability(cfg, Node::B, true);
  const double attempts =
      expected_max_geometric(click_probability(cfg, Node::A, false), click_probability(cfg, Node::C, false));
  return b * b / attempts;
}

StorageTimes storage_times(const TrioConfig& cfg) {
  const double c = cfg.speed_of_light_km_s;
  const double tp = cfg.source.preparation_time_s();
  StorageTimes t{};
  t.tau_a_s = tp + 2.0 * cfg.link_ab.length_km / c;
  t.tau_c_s = tp + 2.0 * cfg.link_bc.length_km / c;
  t.far_node = cfg.link_ab.length_km > cfg.link_bc.length_km ? Node::A : Node::C;
  t.near_node = t.far_node == Node::A ? Node::C : Node::A;
  t.t_far_s = 2.0 * link_length(cfg, t.far_node) / c;
  return t;
}

namespace {

struct NearFarTerms {
  double p_near, p_far;  // click probabilities of the outer nodes
  double x;              // exp(-tau_far / T2)
  double latency;        // exp(-2 L_near / (c T2))
  double bracket;        // 1/(1 - x(1-p_near)) + 1/(1 - x(1-p_far)) - 1
  double either;         // p_near + p_far - p_near p_far
};

NearFarTerms near_far_terms(const TrioConfig& cfg) {
  const double t2 = require_memory(cfg).t2_s;
  const StorageTimes st = storage_times(cfg);
  NearFarTerms k{};
  k.p_near = click_probability(cfg, st.near_node, false);
  k.p_far = click_probability(cfg, st.far_node, false);
  if (!(k.p_near > 0.0 && k.p_far > 0.0)) throw std::domain_error("outer detector never clicks");
  const double tau_far = st.far_node == Node::A ? st.tau_a_s : st.tau_c_s;
  k.x = std::exp(-tau_far / t2);
  k.latency = std::exp(-2.0 * link_length(cfg, st.near_node) / (cfg.speed_of_light_km_s * t2));
  k.bracket = 1.0 / (1.0 - k.x * (1.0 - k.p_near)) + 1.0 / (1.0 - k.x * (1.0 - k.p_far)) - 1.0;
  k.either = k.p_near + k.p_far - k.p_near * k.p_far;
  return k;
}

}  // namespace

double expected_dephasing_factor_near(const TrioConfig& cfg) {
  const NearFarTerms k = near_far_terms(cfg);
  // P(N_near - N_far = d) = p_n p_f (1 - p_n)^d / either for d >= 0, and
  // symmetrically for d < 0; summing x^|d| against it gives the bracket.
  return std::min(1.0, k.p_near * k.p_far / k.either * k.latency * k.bracket);
}

double expected_dephasing_factor_near_simplified(const TrioConfig& cfg) {
  const NearFarTerms k = near_far_terms(cfg);
  return k.p_far / k.either * k.latency * k.bracket;
}

double far_dephasing_factor(const TrioConfig& cfg) {
  return std::exp(-storage_times(cfg).t_far_s / require_memory(cfg).t2_s);
}

double lambda_dp(double t_s, double t2_s) {
  if (!(t_s >= 0.0)) throw std::invalid_argument("storage time must be non-negative");
  if (!(t2_s > 0.0)) throw std::invalid_argument("T2 must be positive");
  return 0.5 * (1.0 - std::exp(-t_s / t2_s));
}

double lambda_from_factor(double factor) { return std::clamp(0.5 * (1.0 - factor), 0.0, 0.5); }

}  // namespace ghzline::netmodel
