#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "pqqa/error.hpp"
#include "pqqa/generators.hpp"
#include "pqqa/graph.hpp"

// Inline generator specs ("er:n=700,p=0.15", "queen:n=5") and graph files.

namespace pqqa {

struct Instance {
  Graph graph;
  InstanceMeta meta;
};

namespace detail {

inline std::map<std::string, std::string> parse_spec_params(std::string_view body) {
  std::map<std::string, std::string> out;
  while (!body.empty()) {
    auto comma = body.find(',');
    auto item = body.substr(0, comma);
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
      throw ConfigError("generator parameter '" + std::string(item) + "' is not key=value");
    }
    auto [it, inserted] = out.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    if (!inserted) throw ConfigError("generator parameter '" + it->first + "' given twice");
  }
  return out;
}

class SpecParams {
 public:
  SpecParams(std::string family, std::map<std::string, std::string> kv)
      : family_(std::move(family)), kv_(std::move(kv)) {}

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  std::size_t count(const std::string& key) {
    const std::string& s = get(key);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw bad(key, s);
    return v;
  }

  double real(const std::string& key) {
    const std::string& s = get(key);
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) throw bad(key, s);
      return v;
    } catch (const std::logic_error&) {
      throw bad(key, s);
    }
  }

  std::string text(const std::string& key) { return get(key); }

  /// Rejects keys the generator never asked for.
  void finish() const {
    for (const auto& [k, v] : kv_) {
      if (!used_.count(k)) throw ConfigError(family_ + ": unknown parameter '" + k + "'");
    }
  }

 private:
  const std::string& get(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError(family_ + ": missing parameter '" + key + "'");
    used_.insert(key);
    return it->second;
  }

  ConfigError bad(const std::string& key, const std::string& value) const {
    return ConfigError(family_ + ": bad value '" + value + "' for '" + key + "'");
  }

  std::string family_;
  std::map<std::string, std::string> kv_;
  std::set<std::string> used_;
};

}  // namespace detail

/// Builds a synthetic instance from "family:key=value,...". Families:
///   er:n=N,p=P  er:n=N,m=M  (optional w=pm1 for weights in {-1,0,1})
///   ba:n=N,m=M  rrg:n=N,d=D  queen:n=N | queen:rows=R,cols=C  mycielski:k=K
/// A "seed=" key overrides `seed`.
inline Instance generate_instance(std::string_view spec, std::uint64_t seed) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw ConfigError("generator spec '" + std::string(spec) + "' has no ':'");
  std::string family(spec.substr(0, colon));
  auto kv = detail::parse_spec_params(spec.substr(colon + 1));
  Instance inst{Graph(0, {}), {}};
  inst.meta.name = std::string(spec);
  inst.meta.params = kv;
  detail::SpecParams prm(family, std::move(kv));
  if (prm.has("seed")) seed = prm.count("seed");
  inst.meta.seed = seed;

  if (family == "er") {
    inst.meta.family = GraphFamily::ER;
    const std::size_t n = prm.count("n");
    if (prm.has("p") == prm.has("m")) throw ConfigError("er: give exactly one of p or m");
    inst.graph = prm.has("p") ? gen_er(n, prm.real("p"), seed) : gen_gnm(n, prm.count("m"), seed);
    if (prm.has("w")) {
      const std::string w = prm.text("w");
      if (w == "pm1") {
        inst.graph = with_pm1_weights(inst.graph, seed);
      } else if (w != "unit") {
        throw ConfigError("er: weights must be 'unit' or 'pm1'");
      }
    }
  } else if (family == "ba") {
    inst.meta.family = GraphFamily::BA;
    inst.graph = gen_ba(prm.count("n"), prm.count("m"), seed);
  } else if (family == "rrg") {
    inst.meta.family = GraphFamily::RRG;
    inst.graph = gen_rrg(prm.count("n"), prm.count("d"), seed);
  } else if (family == "queen") {
    inst.meta.family = GraphFamily::Queen;
    if (prm.has("n")) {
      inst.graph = gen_queen(prm.count("n"));
    } else {
      const std::size_t r = prm.count("rows");
      inst.graph = gen_queen(r, prm.count("cols"));
    }
  } else if (family == "mycielski" || family == "myciel") {
    inst.meta.family = GraphFamily::Mycielski;
    inst.graph = gen_mycielski(prm.count("k"));
  } else {
    throw ConfigError("unknown generator family '" + family + "'");
  }
  prm.finish();
  return inst;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed for '" + path + "'");
  return ss.str();
}

/// Loads DIMACS ("p edge" / "p col" header) or a weighted edge list,
/// chosen by content.
inline Instance load_instance(const std::string& path) {
  const std::string text = read_file(path);
  bool dimacs = false;
  detail::for_each_line(text, [&](std::string_view line, std::size_t) {
    auto tok = detail::split_ws(line);
    if (!tok.empty() && (tok[0] == "p" || tok[0] == "e")) dimacs = true;
  });
  Instance inst{dimacs ? parse_dimacs(text) : parse_weighted_edgelist(text), {}};
  inst.meta.name = path;
  inst.meta.family = GraphFamily::File;
  return inst;
}

}  // namespace pqqa
