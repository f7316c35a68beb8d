#include "ghzline/sweep.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ghzline::sweep {

namespace {

struct GridPoint {
  const netmodel::TrioConfig* config;
  bool memory;
  std::optional<double> t2_s;
  double f_d;
  double f_g;
};

std::vector<std::optional<double>> t2_axis(const netmodel::TrioConfig& cfg, const SweepSpec& spec) {
  if (!spec.t2_values.empty()) return {spec.t2_values.begin(), spec.t2_values.end()};
  if (cfg.memory) return {cfg.memory->t2_s};
  return {std::nullopt};  // evaluated as an error row
}

std::vector<GridPoint> enumerate(const std::vector<netmodel::TrioConfig>& configs, const SweepSpec& spec) {
  const auto fds = spec.fd_range.values();
  const auto fgs = spec.fg_range.values();
  const bool off = std::find(spec.memory_modes.begin(), spec.memory_modes.end(), MemoryMode::Off) !=
                   spec.memory_modes.end();
  const bool on = std::find(spec.memory_modes.begin(), spec.memory_modes.end(), MemoryMode::On) !=
                  spec.memory_modes.end();
  std::vector<GridPoint> points;
  for (const auto& cfg : configs) {
    const auto add_plane = [&](bool memory, std::optional<double> t2) {
      for (double fd : fds)
        for (double fg : fgs) points.push_back({&cfg, memory, t2, fd, fg});
    };
    if (off) add_plane(false, std::nullopt);
    if (on)
      for (auto t2 : t2_axis(cfg, spec)) add_plane(true, t2);
  }
  return points;
}

SweepRow evaluate(const GridPoint& p, const SweepSpec& spec) {
  SweepRow row;
  row.segment = p.config->segment;
  row.f_d = p.f_d;
  row.f_g = p.f_g;
  row.memory = p.memory;
  row.t2_s = p.t2_s;
  try {
    netmodel::TrioConfig cfg = *p.config;
    if (p.memory) {
      if (!cfg.memory) throw std::invalid_argument("segment '" + cfg.segment + "' has no quantum memory configured");
      cfg.memory->t2_s = p.t2_s.value();
    }
    const protocol::NoiseParams noise{p.f_d, p.f_g};
    if (spec.outputs.fidelity || spec.outputs.key_rate) {
      const auto report = rates::full_report(cfg, noise, p.memory, spec.protocol);
      if (spec.outputs.yield) row.yield = report.yield;
      if (spec.outputs.fidelity) row.fidelity = report.fidelity;
      if (spec.outputs.key_rate) {
        row.q_x = report.q_x;
        row.q_ab = report.q_ab;
        row.r_per_attempt = report.r_per_attempt;
        row.r_per_second = report.r_per_second;
      }
    } else {
      cfg.validate();
      row.yield = p.memory ? netmodel::yield_qm(cfg) : netmodel::yield_memoryless(cfg);
    }
  } catch (const std::exception& e) {
    SweepRow failed;
    failed.segment = row.segment;
    failed.f_d = row.f_d;
    failed.f_g = row.f_g;
    failed.memory = row.memory;
    failed.t2_s = row.t2_s;
    failed.error = e.what();
    return failed;
  }
  return row;
}

}  // namespace

std::vector<double> Range::values() const {
  std::vector<double> out;
  if (steps <= 1) return {min};
  out.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    if (k == steps - 1) {
      out.push_back(max);
    } else {
      out.push_back(min + (max - min) * static_cast<double>(k) / static_cast<double>(steps - 1));
    }
  }
  return out;
}

void SweepSpec::validate() const {
  const auto check_range = [](const Range& r, const char* name) {
    if (!(r.min <= r.max)) throw std::invalid_argument(std::string(name) + ": min must not exceed max");
    if (r.steps < 1) throw std::invalid_argument(std::string(name) + ": steps must be at least 1");
    if (!(r.min >= 0.0 && r.max <= 1.0)) throw std::invalid_argument(std::string(name) + ": values must lie in [0, 1]");
  };
  check_range(fd_range, "fd_range");
  check_range(fg_range, "fg_range");
  if (memory_modes.empty()) throw std::invalid_argument("at least one memory mode is required");
  if (!(outputs.yield || outputs.fidelity || outputs.key_rate)) {
    throw std::invalid_argument("at least one output is required");
  }
  for (double t2 : t2_values)
    if (!(t2 > 0.0)) throw std::invalid_argument("T2 values must be positive");
}

std::size_t row_count(const std::vector<netmodel::TrioConfig>& configs, const SweepSpec& spec) {
  return enumerate(configs, spec).size();
}

std::vector<SweepRow> run_sweep(const std::vector<netmodel::TrioConfig>& configs, const SweepSpec& spec,
                                ExecOptions exec) {
  spec.validate();
  const auto points = enumerate(configs, spec);
  std::vector<SweepRow> rows(points.size());
  if (exec.mode == ExecMode::Serial) {
    for (std::size_t i = 0; i < points.size(); ++i) rows[i] = evaluate(points[i], spec);
  } else {
    const auto count = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(effective_threads(exec))
    for (std::int64_t i = 0; i < count; ++i) {
      rows[static_cast<std::size_t>(i)] = evaluate(points[static_cast<std::size_t>(i)], spec);
    }
  }
  return rows;
}

}  // namespace ghzline::sweep
