#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "shellres/error.hpp"
#include "shellres/model.hpp"
#include "shellres/poles.hpp"

namespace shellres {

/// Named tolerances used by the verification suite.
inline const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> table = {
      {"free_exactness", 1e-12}, {"unitarity", 1e-10},      {"conjugation", 1e-10},   {"ls_residual", 1e-6},
      {"pole_residual", 1e-10},  {"pole_match", 1e-8},      {"pairing", 1e-8},        {"residue", 1e-8},
      {"eigen_residual", 1e-10}, {"tail_purity", 1e-11},    {"phase_fit", 1e-9},      {"completeness", 1e-4},
      {"mode_agreement", 1e-10}, {"expansion", 1e-3},       {"deformation", 1e-8},    {"bookkeeping", 1e-8},
      {"naive_gap", 1e2},
  };
  return table;
}

struct ContourSettings {
  double depth = 1.0;
  double k_max = 40.0;
  double density = 64.0;
  std::size_t real_axis_nodes = 4000;
  std::size_t poles = 4;
};

struct BumpSettings {
  double center = 0.5;
  double width = 0.13;
  double support = 1.6;
};

struct RunConfig {
  PotentialSpec potential = make_potential(10.0, 1.0, 2.0, 1.0);
  std::map<std::string, double> tolerances = default_tolerances();
  SearchRegion search{};
  double newton_tol = 1e-12;
  ContourSettings contour{};
  BumpSettings bump{};
  std::string output_dir = ".";

  double tolerance(const std::string& name) const {
    const auto it = tolerances.find(name);
    if (it == tolerances.end()) throw Error(ErrorCode::ConfigError, "unknown tolerance '" + name + "'");
    return it->second;
  }
};

namespace detail {

inline double parse_number(const std::string& where, const std::string& key, const std::string& text) {
  std::istringstream in(text);
  double value = 0.0;
  in >> value;
  if (in.fail() || !(in >> std::ws).eof() || !std::isfinite(value))
    throw Error(ErrorCode::ConfigError, where + "key '" + key + "': expected a finite number, got '" + text + "'");
  return value;
}

inline std::size_t parse_count(const std::string& where, const std::string& key, const std::string& text,
                               double least) {
  const double v = parse_number(where, key, text);
  if (v < least || v != std::floor(v) || v > 1e9)
    throw Error(ErrorCode::ConfigError,
                where + "key '" + key + "': expected an integer >= " + std::to_string(static_cast<int>(least)));
  return static_cast<std::size_t>(v);
}

// 1-based line of `key` inside [section] of the raw text (section "" is the
// preamble), or of the section header itself when key is empty; 0 if absent.
inline std::size_t line_of(const std::string& text, const std::string& section, const std::string& key) {
  std::istringstream in(text);
  std::string line, current;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == ';' || line[first] == '#') continue;
    if (line[first] == '[') {
      const auto close = line.find(']', first);
      current = line.substr(first + 1, close - first - 1);
      if (key.empty() && current == section) return n;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string name = line.substr(first, eq - first);
    name.erase(name.find_last_not_of(" \t") + 1);
    if (current == section && name == key) return n;
  }
  return 0;
}

}  // namespace detail

/// Parses `key = value` text with [section] headers. Every section and key
/// must be known; missing keys keep their defaults. Errors name the line.
inline RunConfig parse_config(std::istream& in, const std::string& origin = "<config>") {
  namespace pt = boost::property_tree;
  const std::string raw{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  pt::ptree tree;
  try {
    std::istringstream text(raw);
    pt::read_ini(text, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::ConfigError, origin + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  const auto at = [&](const std::string& section, const std::string& key) {
    return origin + ":" + std::to_string(detail::line_of(raw, section, key)) + ": ";
  };
  static const std::map<std::string, std::vector<std::string>> known = {
      {"potential", {"v0", "a", "b"}},
      {"units", {"scale"}},
      {"search", {"re_min", "re_max", "im_min", "im_max", "tol"}},
      {"contour", {"depth", "kmax", "density", "nodes", "poles"}},
      {"test_function", {"center", "width", "support"}},
      {"output", {"dir"}},
      {"tolerances", {}},
  };

  {
    std::istringstream lines(raw);
    std::string line;
    for (std::size_t n = 1; std::getline(lines, line); ++n) {
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] != '[') continue;
      const std::string section = line.substr(first + 1, line.find(']', first) - first - 1);
      if (!known.count(section))
        throw Error(ErrorCode::ConfigError, origin + ":" + std::to_string(n) + ": unknown section [" + section + "]");
    }
  }

  RunConfig cfg;
  double v0 = cfg.potential.v0, a = cfg.potential.a, b = cfg.potential.b, scale = cfg.potential.scale;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw Error(ErrorCode::ConfigError, at("", section) + "key '" + section + "' outside any section");
    const auto spec = known.find(section);
    for (const auto& [key, node] : body) {
      const std::string name = section + "." + key, where = at(section, key);
      const bool listed = std::find(spec->second.begin(), spec->second.end(), key) != spec->second.end();
      if (!(listed || (section == "tolerances" && cfg.tolerances.count(key))))
        throw Error(ErrorCode::ConfigError, where + "unknown key '" + name + "'");
      const std::string& text = node.data();
      if (section == "output") {
        cfg.output_dir = text;
        continue;
      }
      if (key == "nodes" || key == "poles") {
        const std::size_t n = detail::parse_count(where, name, text, key == "poles" ? 0.0 : 1.0);
        (key == "nodes" ? cfg.contour.real_axis_nodes : cfg.contour.poles) = n;
        continue;
      }
      const double v = detail::parse_number(where, name, text);
      if (section == "tolerances") cfg.tolerances[key] = v;
      else if (name == "potential.v0") v0 = v;
      else if (name == "potential.a") a = v;
      else if (name == "potential.b") b = v;
      else if (name == "units.scale") scale = v;
      else if (name == "search.re_min") cfg.search.re_min = v;
      else if (name == "search.re_max") cfg.search.re_max = v;
      else if (name == "search.im_min") cfg.search.im_min = v;
      else if (name == "search.im_max") cfg.search.im_max = v;
      else if (name == "search.tol") cfg.newton_tol = v;
      else if (name == "contour.depth") cfg.contour.depth = v;
      else if (name == "contour.kmax") cfg.contour.k_max = v;
      else if (name == "contour.density") cfg.contour.density = v;
      else if (name == "test_function.center") cfg.bump.center = v;
      else if (name == "test_function.width") cfg.bump.width = v;
      else if (name == "test_function.support") cfg.bump.support = v;
    }
  }
  try {
    cfg.potential = make_potential(v0, a, b, scale);
    validate_region(cfg.search);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, origin + ": " + e.what());
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open config file '" + path + "'");
  return parse_config(in, path);
}

}  // namespace shellres
