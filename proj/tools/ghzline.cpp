// ghzline: command-line front end.
//
//   ghzline simulate --config FILE --segment NAME --fd X --fg X [--memory] [--t2 S]
//   ghzline sweep    --config FILE [--fd-range a,b,n] [--fg-range a,b,n] [--t2 S]... --out FILE
//   ghzline yields   --config FILE [--eta-qm X]
//   ghzline mc-check --config FILE [--samples N] [--seed S]
//
// Exit status: 0 on success, 1 on invalid input, 2 on runtime failure
// (including sweeps in which some grid points failed).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ghzline/config.hpp"
#include "ghzline/emit.hpp"
#include "ghzline/mccheck.hpp"
#include "ghzline/netmodel.hpp"
#include "ghzline/rates.hpp"
#include "ghzline/sweep.hpp"

namespace {

using namespace ghzline;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

sweep::Range parse_range(const std::string& text, const char* flag) {
  sweep::Range r;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf,%d%c", &r.min, &r.max, &r.steps, &extra) != 3) {
    throw InputError(std::string(flag) + " expects MIN,MAX,STEPS (got '" + text + "')");
  }
  return r;
}

int threads_from_env() {
  if (const char* t = std::getenv("THREADS")) {
    const int n = std::atoi(t);
    if (n > 0) return n;
  }
  return 0;
}

std::vector<netmodel::TrioConfig> select(const std::vector<netmodel::TrioConfig>& all, const std::string& segment) {
  if (segment.empty()) return all;
  return {config::find_segment(all, segment)};
}

// Writes to --out when given, stdout otherwise.
template <class Writer>
void with_output(const std::string& path, Writer&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(out);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string sig2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2g", v);
  return buf;
}

// Left-aligns a UTF-8 string in a field of `width` code points.
std::string pad_right(const std::string& s, std::size_t width) {
  std::size_t points = 0;
  for (unsigned char c : s) points += (c & 0xC0) != 0x80;
  return points >= width ? s : s + std::string(width - points, ' ');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-party GHZ distribution over a linear fiber segment: yields, fidelities, key rates."};
  app.require_subcommand(1);

  std::string config_path;
  std::string segment;
  std::string format;
  std::string out_path;
  int threads = 0;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Segment configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--segment", segment, "Segment name or unique prefix");
    sub->add_option("--out", out_path, "Output file (default: stdout)");
    sub->add_option("--threads", threads, "Worker threads (default: $THREADS or OpenMP default)");
  };

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Evaluate one operating point and print its rate report");
  common(simulate);
  double fd = 0.0, fg = 0.0;
  bool sim_memory = false;
  double sim_t2 = 0.0;
  std::string key_protocol = "CKA";
  simulate->add_option("--fd", fd, "Channel depolarization f_D")->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--fg", fg, "CZ failure probability f_G")->check(CLI::Range(0.0, 1.0));
  simulate->add_flag("--memory,!--no-memory", sim_memory, "Use quantum memories at the central node");
  simulate->add_option("--t2", sim_t2, "Override memory T2 in seconds");
  simulate->add_option("--protocol", key_protocol, "Report label: CKA, ACKA or QSS");
  simulate->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate an (f_D, f_G) grid and write CSV or JSON");
  common(sweep_cmd);
  std::string fd_range = "0,0.3,11", fg_range = "0,0.3,11";
  bool only_memory = false, only_no_memory = false;
  std::vector<double> t2_values;
  std::vector<std::string> outputs;
  std::uint64_t sweep_seed = 0;
  sweep_cmd->add_option("--fd-range", fd_range, "f_D axis MIN,MAX,STEPS")->capture_default_str();
  sweep_cmd->add_option("--fg-range", fg_range, "f_G axis MIN,MAX,STEPS")->capture_default_str();
  auto* mem_flag = sweep_cmd->add_flag("--memory", only_memory, "Only the memory-assisted mode");
  sweep_cmd->add_flag("--no-memory", only_no_memory, "Only the memoryless mode")->excludes(mem_flag);
  sweep_cmd->add_option("--t2", t2_values, "Memory T2 values in seconds (repeatable)");
  sweep_cmd->add_option("--outputs", outputs, "Subset of yield,fidelity,key_rate")->delimiter(',');
  sweep_cmd->add_option("--seed", sweep_seed, "Accepted for uniformity; the sweep has no random component");
  sweep_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // yields
  auto* yields = app.add_subcommand("yields", "Print Y, Y_QM and their ratio per segment");
  common(yields);
  double eta_qm = -1.0;
  yields->add_option("--eta-qm", eta_qm, "Override memory efficiency")->check(CLI::Range(0.0, 1.0));
  yields->add_option("--format", format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));

  // mc-check
  auto* mccheck = app.add_subcommand("mc-check", "Compare closed-form expectations with Monte Carlo");
  common(mccheck);
  std::uint64_t samples = 1000000, seed = 1;
  mccheck->add_option("--samples", samples, "Monte Carlo samples per comparison")->capture_default_str();
  mccheck->add_option("--seed", seed, "Master seed")->capture_default_str();
  mccheck->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  CLI11_PARSE(app, argc, argv);

  if (threads <= 0) threads = threads_from_env();
  const ExecOptions exec{ExecMode::Parallel, threads};

  try {
    const auto all = config::load_config(config_path);
    const auto configs = select(all, segment);

    if (*simulate) {
      auto cfg = configs.front();
      if (configs.size() > 1 && segment.empty()) {
        std::cerr << "note: no --segment given, using '" << cfg.segment << "'\n";
      }
      if (sim_t2 > 0.0) {
        if (!cfg.memory) throw InputError("--t2 given but the segment has no memory configured");
        cfg.memory->t2_s = sim_t2;
      }
      const auto report = rates::full_report(cfg, {fd, fg}, sim_memory, rates::parse_key_protocol(key_protocol));
      with_output(out_path, [&](std::ostream& os) {
        const auto f = emit::format_double;
        if (format == "json") {
          os << "{\"segment\": " << nlohmann::json(cfg.segment).dump() << ", \"protocol\": \""
             << rates::to_string(report.protocol) << "\", \"memory\": " << (report.memory ? "true" : "false")
             << ", \"f_D\": " << f(fd) << ", \"f_G\": " << f(fg) << ", \"yield\": " << f(report.yield)
             << ", \"fidelity\": " << f(report.fidelity) << ", \"projection_prob\": " << f(report.projection_prob)
             << ", \"Q_X\": " << f(report.q_x) << ", \"Q_AB\": " << f(report.q_ab)
             << ", \"r_per_attempt\": " << f(report.r_per_attempt) << ", \"r_per_second\": " << f(report.r_per_second)
             << "}\n";
        } else {
          os << "segment          " << cfg.segment << '\n'
             << "protocol         " << rates::to_string(report.protocol) << '\n'
             << "memory           " << (report.memory ? "on" : "off") << '\n'
             << "f_D, f_G         " << f(fd) << ", " << f(fg) << '\n'
             << "yield            " << f(report.yield) << '\n'
             << "fidelity         " << f(report.fidelity) << '\n'
             << "projection_prob  " << f(report.projection_prob) << '\n'
             << "Q_X              " << f(report.q_x) << '\n'
             << "Q_AB             " << f(report.q_ab) << '\n'
             << "r_per_attempt    " << f(report.r_per_attempt) << '\n'
             << "r_per_second     " << f(report.r_per_second) << '\n';
        }
      });
      return 0;
    }

    if (*sweep_cmd) {
      sweep::SweepSpec spec;
      spec.fd_range = parse_range(fd_range, "--fd-range");
      spec.fg_range = parse_range(fg_range, "--fg-range");
      if (only_memory) spec.memory_modes = {sweep::MemoryMode::On};
      if (only_no_memory) spec.memory_modes = {sweep::MemoryMode::Off};
      spec.t2_values = t2_values;
      if (!outputs.empty()) {
        spec.outputs = {false, false, false};
        for (const auto& o : outputs) {
          if (o == "yield") spec.outputs.yield = true;
          else if (o == "fidelity") spec.outputs.fidelity = true;
          else if (o == "key_rate") spec.outputs.key_rate = true;
          else throw InputError("unknown output '" + o + "'");
        }
      }
      try {
        spec.validate();
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      const auto rows = sweep::run_sweep(configs, spec, exec);
      const auto fmt = emit::parse_format(format.empty() ? "csv" : format);
      with_output(out_path, [&](std::ostream& os) { emit::write(rows, fmt, os); });
      int failed = 0;
      for (const auto& r : rows) {
        if (r.error) {
          if (++failed <= 5) std::cerr << "row error [" << r.segment << ", f_D=" << r.f_d << ", f_G=" << r.f_g
                                       << "]: " << *r.error << '\n';
        }
      }
      if (failed > 0) {
        std::cerr << failed << " of " << rows.size() << " grid points failed\n";
        return 2;
      }
      return 0;
    }

    if (*yields) {
      with_output(out_path, [&](std::ostream& os) {
        if (format == "csv") os << "segment,Y,Y_QM,ratio\n";
        if (format == "json") os << "[";
        bool first = true;
        for (auto cfg : configs) {
          if (eta_qm >= 0.0) {
            if (!cfg.memory) cfg.memory = netmodel::MemoryParams{};
            cfg.memory->efficiency = eta_qm;
          }
          const double y = netmodel::yield_memoryless(cfg);
          const double yqm = netmodel::yield_qm(cfg);
          const double ratio = yqm / y;
          if (format == "csv") {
            os << nlohmann::json(cfg.segment).dump() << ',' << emit::format_double(y) << ','
               << emit::format_double(yqm) << ',' << emit::format_double(ratio) << '\n';
          } else if (format == "json") {
            os << (first ? "\n" : ",\n") << "  {\"segment\": " << nlohmann::json(cfg.segment).dump()
               << ", \"Y\": " << emit::format_double(y) << ", \"Y_QM\": " << emit::format_double(yqm)
               << ", \"ratio\": " << emit::format_double(ratio) << "}";
          } else {
            if (first) {
              char head[160];
              std::snprintf(head, sizeof head, "%-40s %10s %10s %8s\n", "segment", "Y", "Y_QM", "Y_QM/Y");
              os << head;
            }
            char line[80];
            std::snprintf(line, sizeof line, " %10s %10s %8.3g\n", sig2(y).c_str(), sig2(yqm).c_str(), ratio);
            os << pad_right(cfg.segment, 40) << line;
          }
          first = false;
        }
        if (format == "json") os << "\n]\n";
      });
      return 0;
    }

    if (*mccheck) {
      const auto report = check::run_mc_check(configs, samples, seed, exec);
      with_output(out_path, [&](std::ostream& os) {
        if (format == "csv") {
          check::write_report_csv(report, os);
        } else {
          check::write_report_json(report, os);
        }
      });
      for (const auto& r : report) {
        if (r.verdict != check::Verdict::Agree) {
          std::cerr << "deviation: " << r.segment << " / " << r.quantity << ": closed form "
                    << emit::format_double(r.closed_form) << " vs Monte Carlo " << emit::format_double(r.oracle.estimate)
                    << " +- " << emit::format_double(r.oracle.standard_error) << " (" << check::to_string(r.verdict)
                    << ")\n";
        }
      }
      return 0;
    }
  } catch (const netmodel::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
