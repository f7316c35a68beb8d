#include "ghzline/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ghzline::config {

using json = nlohmann::json;
using netmodel::ConfigError;
using netmodel::TrioConfig;

namespace {

bool is_annotation(const std::string& key) {
  static const std::set<std::string> kAnnotations = {"$schema", "note", "notes", "description", "provenance"};
  return key.starts_with('_') || kAnnotations.contains(key);
}

class Reader {
 public:
  explicit Reader(std::vector<std::string>& problems) : problems_(problems) {}

  void fail(const std::string& path, const std::string& what) { problems_.push_back(path + ": " + what); }

  bool object(const json& j, const std::string& path) {
    if (j.is_object()) return true;
    fail(path, "expected an object");
    return false;
  }

  void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
      if (is_annotation(key)) continue;
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
        fail(path + "." + key, "unknown field");
      }
    }
  }

  std::optional<double> number(const json& obj, const char* key, const std::string& path, bool required) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(path + "." + key, "missing required number");
      return std::nullopt;
    }
    if (!it->is_number()) {
      fail(path + "." + key, "expected a number");
      return std::nullopt;
    }
    return it->get<double>();
  }

  std::optional<std::string> string(const json& obj, const char* key, const std::string& path, bool required) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(path + "." + key, "missing required string");
      return std::nullopt;
    }
    if (!it->is_string()) {
      fail(path + "." + key, "expected a string");
      return std::nullopt;
    }
    return it->get<std::string>();
  }

 private:
  std::vector<std::string>& problems_;
};

void read_node(Reader& r, const json& j, const std::string& path, const std::string& fallback_name,
               netmodel::NodeParams& out) {
  if (!r.object(j, path)) return;
  r.only_keys(j, path, {"name", "detector_efficiency", "dark_count_prob"});
  out.name = r.string(j, "name", path, false).value_or(fallback_name);
  if (auto v = r.number(j, "detector_efficiency", path, true)) out.detector_efficiency = *v;
  if (auto v = r.number(j, "dark_count_prob", path, true)) out.dark_count_prob = *v;
}

void read_link(Reader& r, const json& j, const std::string& path, netmodel::LinkParams& out) {
  if (!r.object(j, path)) return;
  r.only_keys(j, path, {"length_km", "transmission", "loss_db"});
  if (auto v = r.number(j, "length_km", path, true)) out.length_km = *v;
  const auto transmission = r.number(j, "transmission", path, false);
  const auto loss = r.number(j, "loss_db", path, false);
  if (loss) {
    out.loss_db = *loss;
    out.transmission = netmodel::transmission_from_loss_db(*loss);
    if (transmission && std::abs(*transmission - out.transmission) > 1e-9) {
      std::ostringstream msg;
      msg << "transmission " << *transmission << " disagrees with loss_db " << *loss << " (implies "
          << out.transmission << ")";
      r.fail(path, msg.str());
    }
  } else if (transmission) {
    out.transmission = *transmission;
  } else {
    r.fail(path, "needs transmission or loss_db");
  }
}

void read_source(Reader& r, const json& j, const std::string& path, netmodel::SourceParams& out) {
  if (!r.object(j, path)) return;
  r.only_keys(j, path, {"frequency_hz"});
  if (auto v = r.number(j, "frequency_hz", path, true)) out.frequency_hz = *v;
}

void read_memory(Reader& r, const json& j, const std::string& path, std::optional<netmodel::MemoryParams>& out) {
  if (j.is_null()) {
    out.reset();
    return;
  }
  if (!r.object(j, path)) return;
  r.only_keys(j, path, {"efficiency", "t2_s"});
  netmodel::MemoryParams m = out.value_or(netmodel::MemoryParams{});
  if (auto v = r.number(j, "efficiency", path, !out)) m.efficiency = *v;
  if (auto v = r.number(j, "t2_s", path, !out)) m.t2_s = *v;
  out = m;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::vector<TrioConfig> parse_config(std::string_view text, std::string_view source_name) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is one past the offending character.
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream msg;
    msg << source_name << ":" << line << ":" << col << ": syntax error: " << e.what();
    throw ConfigError({msg.str()});
  }

  std::vector<std::string> problems;
  Reader r(problems);
  if (!r.object(root, "$")) throw ConfigError(std::move(problems));
  r.only_keys(root, "$", {"defaults", "segments"});

  TrioConfig base;
  base.memory.reset();
  if (const auto it = root.find("defaults"); it != root.end() && r.object(*it, "defaults")) {
    r.only_keys(*it, "defaults", {"source", "memory", "speed_of_light_km_s"});
    if (auto s = it->find("source"); s != it->end()) read_source(r, *s, "defaults.source", base.source);
    if (auto m = it->find("memory"); m != it->end()) read_memory(r, *m, "defaults.memory", base.memory);
    if (auto c = r.number(*it, "speed_of_light_km_s", "defaults", false)) base.speed_of_light_km_s = *c;
  }

  const auto segs = root.find("segments");
  if (segs == root.end() || !segs->is_array() || segs->empty()) {
    r.fail("segments", "expected a non-empty array");
    throw ConfigError(std::move(problems));
  }

  std::vector<TrioConfig> out;
  std::set<std::string> names;
  for (std::size_t i = 0; i < segs->size(); ++i) {
    const json& s = (*segs)[i];
    const std::string path = "segments[" + std::to_string(i) + "]";
    if (!r.object(s, path)) continue;
    r.only_keys(s, path, {"name", "nodes", "links", "source", "memory", "speed_of_light_km_s"});
    TrioConfig cfg = base;
    cfg.segment = r.string(s, "name", path, true).value_or(path);
    if (!names.insert(cfg.segment).second) r.fail(path + ".name", "duplicate segment name '" + cfg.segment + "'");

    if (const auto nodes = s.find("nodes"); nodes == s.end()) {
      r.fail(path + ".nodes", "missing");
    } else if (r.object(*nodes, path + ".nodes")) {
      r.only_keys(*nodes, path + ".nodes", {"A", "B", "C"});
      const std::pair<const char*, netmodel::NodeParams*> slots[] = {
          {"A", &cfg.node_a}, {"B", &cfg.node_b}, {"C", &cfg.node_c}};
      for (const auto& [key, node] : slots) {
        const std::string np = path + ".nodes." + key;
        if (const auto n = nodes->find(key); n == nodes->end()) {
          r.fail(np, "missing");
        } else {
          read_node(r, *n, np, key, *node);
        }
      }
    }

    if (const auto links = s.find("links"); links == s.end()) {
      r.fail(path + ".links", "missing");
    } else if (r.object(*links, path + ".links")) {
      r.only_keys(*links, path + ".links", {"AB", "BC"});
      const std::pair<const char*, netmodel::LinkParams*> slots[] = {{"AB", &cfg.link_ab}, {"BC", &cfg.link_bc}};
      for (const auto& [key, link] : slots) {
        const std::string lp = path + ".links." + key;
        if (const auto l = links->find(key); l == links->end()) {
          r.fail(lp, "missing");
        } else {
          read_link(r, *l, lp, *link);
        }
      }
    }

    if (const auto src = s.find("source"); src != s.end()) read_source(r, *src, path + ".source", cfg.source);
    if (const auto mem = s.find("memory"); mem != s.end()) read_memory(r, *mem, path + ".memory", cfg.memory);
    if (auto c = r.number(s, "speed_of_light_km_s", path, false)) cfg.speed_of_light_km_s = *c;

    for (const auto& v : cfg.violations()) problems.push_back(path + "." + v);
    out.push_back(std::move(cfg));
  }

  if (!problems.empty()) {
    for (auto& p : problems) p = std::string(source_name) + ": " + p;
    throw ConfigError(std::move(problems));
  }
  return out;
}

std::vector<TrioConfig> load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

const TrioConfig& find_segment(const std::vector<TrioConfig>& configs, std::string_view name) {
  for (const auto& c : configs)
    if (c.segment == name) return c;
  const TrioConfig* match = nullptr;
  const std::string key = lower(name);
  for (const auto& c : configs) {
    if (lower(c.segment).starts_with(key)) {
      if (match) throw std::invalid_argument("segment name '" + std::string(name) + "' is ambiguous");
      match = &c;
    }
  }
  if (!match) throw std::invalid_argument("no segment named '" + std::string(name) + "'");
  return *match;
}

}  // namespace ghzline::config
