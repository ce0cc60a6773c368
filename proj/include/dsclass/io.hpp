// Copyright 2026 The dsclass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dsclass/classify.hpp"
#include "dsclass/errors.hpp"
#include "dsclass/half_int.hpp"
#include "dsclass/segment.hpp"
#include "dsclass/structural.hpp"
#include "dsclass/triple.hpp"

// Text formats: the session config (JSON), segment specs ("rho:[a,b]"), the
// canonical one-line triple record, and renderings of sums, chains and the
// dominance graph.

namespace dsclass {

using json = nlohmann::json;

struct Fixture {
  GBase base;
  MixedSum mu_star;
};

// Everything a CLI invocation knows: declared symbols, the cuspidal support,
// optional mu* fixtures and the enumeration bounds.
struct SessionConfig {
  std::map<std::string, CuspidalSymbol> symbols;
  CuspPtr cusp;
  std::vector<Fixture> fixtures;
  EnumerationBounds bounds;

  const CuspidalSymbol& symbol(const std::string& id) const {
    auto it = symbols.find(id);
    if (it == symbols.end()) throw ParseError("unknown symbol '" + id + "'");
    return it->second;
  }

  GBase cusp_base() const { return GBase{cusp->id, cusp->degree}; }

  // Base G-objects by id: the cuspidal support and every fixture.
  GBase base(const std::string& id) const {
    if (id == cusp->id) return cusp_base();
    for (const auto& f : fixtures) {
      if (f.base.id == id) return f.base;
    }
    throw ParseError("unknown G-object '" + id + "'");
  }

  void populate(MuStarTable& table) const {
    table.add_cuspidal(cusp_base());
    for (const auto& f : fixtures) table.add_fixture(f.base, f.mu_star);
  }

  // Normalized form: independent of whitespace, key order and defaults.
  std::string canonical() const {
    json j;
    for (const auto& [id, s] : symbols) {
      j["symbols"].push_back({{"id", id}, {"rank", s.rank}, {"parity", to_string(s.parity)}});
    }
    j["cusp"] = {{"id", cusp->id}, {"degree", cusp->degree}, {"jord", json::object()}};
    for (const auto& [id, block] : cusp->jord) {
      if (!block.empty()) j["cusp"]["jord"][id] = block;
    }
    for (const auto& f : fixtures) {
      json terms = json::array();
      for (const auto& [t, c] : f.mu_star) terms.push_back({c, to_string(t)});
      j["fixtures"].push_back({{"id", f.base.id}, {"degree", f.base.degree}, {"mu_star", terms}});
    }
    json b = {{"max_a", bounds.max_a}, {"symbols", json::array()}};
    for (const auto& s : bounds.symbols) b["symbols"].push_back(s.id);
    if (bounds.max_jord) b["max_jord"] = *bounds.max_jord;
    if (!bounds.sizes.empty()) b["sizes"] = bounds.sizes;
    j["bounds"] = b;
    return j.dump();
  }
};

// 64-bit FNV-1a, as 16 hex digits.
inline std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

template <typename T>
T get_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where + ": missing '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(where + ": '" + key + "' has the wrong type");
  }
}

inline Parity parse_parity(const std::string& s) {
  if (s == "even") return Parity::kEven;
  if (s == "odd") return Parity::kOdd;
  throw ParseError("parity must be 'even' or 'odd', got '" + s + "'");
}

}  // namespace detail

// "rho:[a,b]" with a, b integers or n/2.
inline Segment parse_segment(std::string_view spec,
                             const std::map<std::string, CuspidalSymbol>& symbols) {
  auto fail = [&](const std::string& why) {
    return ParseError("segment '" + std::string(spec) + "': " + why);
  };
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw fail("expected rho:[a,b]");
  std::string id(detail::trim(spec.substr(0, colon)));
  std::string_view body = detail::trim(spec.substr(colon + 1));
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') throw fail("expected [a,b]");
  body = body.substr(1, body.size() - 2);
  auto comma = body.find(',');
  if (comma == std::string_view::npos) throw fail("expected [a,b]");
  HalfInt a = HalfInt::parse(body.substr(0, comma));
  HalfInt b = HalfInt::parse(body.substr(comma + 1));
  auto it = symbols.find(id);
  if (it == symbols.end()) throw ParseError("unknown symbol '" + id + "'");
  if (!(b - a).is_integer() || b - a < HalfInt(-1)) throw fail("b - a must be an integer >= -1");
  return Segment(it->second, a, b);
}

inline SessionConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object");

  SessionConfig cfg;
  for (const auto& s : j.value("symbols", json::array())) {
    CuspidalSymbol sym;
    sym.id = detail::get_field<std::string>(s, "id", "symbol");
    sym.rank = s.contains("rank") ? detail::get_field<int>(s, "rank", sym.id) : 1;
    sym.parity = detail::parse_parity(detail::get_field<std::string>(s, "parity", sym.id));
    if (sym.id.empty() || sym.id.find_first_of(":[]{} ,") != std::string::npos) {
      throw ParseError("symbol id '" + sym.id + "' is empty or contains reserved characters");
    }
    if (sym.rank < 1) throw ParseError("symbol '" + sym.id + "' needs a positive rank");
    if (!cfg.symbols.emplace(sym.id, sym).second) {
      throw ParseError("symbol '" + sym.id + "' declared twice");
    }
  }

  if (!j.contains("cusp")) throw ParseError("config: missing 'cusp'");
  const json& c = j.at("cusp");
  auto cusp = std::make_shared<CuspidalSupport>();
  cusp->id = detail::get_field<std::string>(c, "id", "cusp");
  cusp->degree = c.contains("degree") ? detail::get_field<std::int64_t>(c, "degree", "cusp") : 0;
  if (cusp->degree < 0) throw ParseError("cusp degree must be nonnegative");
  if (c.contains("jord")) {
    if (!c.at("jord").is_object()) throw ParseError("cusp: 'jord' must map symbol ids to lists");
    for (const auto& [id, values] : c.at("jord").items()) {
      const auto& sym = cfg.symbol(id);
      std::set<int> block;
      try {
        block = values.get<std::set<int>>();
      } catch (const json::exception&) {
        throw ParseError("cusp: jord of '" + id + "' must be a list of integers");
      }
      for (int a : block) {
        if (a <= 0 || !parity_matches(sym.parity, a)) {
          throw ParseError("cusp: " + std::to_string(a) + " does not match the parity of " + id);
        }
      }
      if (!block.empty()) cusp->jord[id] = std::move(block);
    }
  }
  cfg.cusp = cusp;

  // Fixture bases first, so that terms may refer to any of them.
  const json fixtures = j.value("fixtures", json::array());
  std::set<std::string> base_ids{cusp->id};
  for (const auto& f : fixtures) {
    GBase base{detail::get_field<std::string>(f, "id", "fixture"),
               detail::get_field<std::int64_t>(f, "degree", "fixture")};
    if (!base_ids.insert(base.id).second) throw ParseError("G-object '" + base.id + "' declared twice");
    cfg.fixtures.push_back({base, {}});
  }
  for (std::size_t k = 0; k < fixtures.size(); ++k) {
    auto& fx = cfg.fixtures[k];
    for (const auto& term : fixtures[k].value("mu_star", json::array())) {
      Coefficient coef = term.contains("coef")
                             ? detail::get_field<Coefficient>(term, "coef", fx.base.id)
                             : 1;
      std::vector<Segment> gl;
      for (const auto& s : term.value("gl", json::array())) {
        gl.push_back(parse_segment(s.get<std::string>(), cfg.symbols));
      }
      if (!term.contains("g")) throw ParseError(fx.base.id + ": mu* term without 'g'");
      const json& g = term.at("g");
      GBase gbase = cfg.base(detail::get_field<std::string>(g, "base", fx.base.id));
      std::vector<GLTerm> induced;
      for (const auto& factor : g.value("induced", json::array())) {
        std::vector<Segment> segs;
        for (const auto& s : factor) segs.push_back(parse_segment(s.get<std::string>(), cfg.symbols));
        induced.emplace_back(std::move(segs));
      }
      fx.mu_star.add({GLTerm(std::move(gl)), GSpinTerm(gbase, std::move(induced))}, coef);
    }
    if (fx.mu_star.empty()) fx.mu_star.add({GLTerm::unit(), GSpinTerm(fx.base)});
  }

  const json b = j.value("bounds", json::object());
  cfg.bounds.max_a = b.contains("max_a") ? detail::get_field<int>(b, "max_a", "bounds") : 0;
  if (cfg.bounds.max_a < 0) throw ParseError("bounds: max_a must be nonnegative");
  if (b.contains("symbols")) {
    for (const auto& id : detail::get_field<std::vector<std::string>>(b, "symbols", "bounds")) {
      cfg.bounds.symbols.push_back(cfg.symbol(id));
    }
    std::sort(cfg.bounds.symbols.begin(), cfg.bounds.symbols.end());
    auto dup = std::adjacent_find(cfg.bounds.symbols.begin(), cfg.bounds.symbols.end());
    if (dup != cfg.bounds.symbols.end()) throw ParseError("bounds: symbol listed twice");
  } else {
    for (const auto& [id, s] : cfg.symbols) cfg.bounds.symbols.push_back(s);
  }
  if (b.contains("max_jord")) cfg.bounds.max_jord = detail::get_field<std::size_t>(b, "max_jord", "bounds");
  if (b.contains("sizes")) cfg.bounds.sizes = detail::get_field<std::set<std::size_t>>(b, "sizes", "bounds");
  return cfg;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline SessionConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path));
}

// One-line canonical record: blocks ascending by symbol id, each with its
// elements, the adjacent-pair signs and, where defined, the single signs.
inline std::string serialize_triple(const JordanTriple& t) {
  json blocks = json::array();
  for (const auto& rho : t.symbols()) {
    auto values = t.block(rho.id);
    json block = {{"rho", rho.id}, {"a", values}, {"pairs", json::array()}};
    for (std::size_t i = 1; i < values.size(); ++i) {
      auto p = t.pair(rho, values[i - 1], values[i]);
      block["pairs"].push_back(p ? to_int(*p) : 0);
    }
    if (t.single(rho, values.front())) {
      block["singles"] = json::array();
      for (int a : values) {
        auto s = t.single(rho, a);
        block["singles"].push_back(s ? to_int(*s) : 0);
      }
    }
    blocks.push_back(block);
  }
  return json{{"cusp", t.cusp_id()}, {"blocks", blocks}}.dump();
}

// Inverse of serialize_triple. Pairs may be omitted when singles are given;
// they are then the products of neighbouring singles. The result is not
// validated.
inline JordanTriple parse_triple(std::string_view text, const SessionConfig& cfg) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("triple is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("triple must be a JSON object");
  std::string cusp_id = j.contains("cusp") ? detail::get_field<std::string>(j, "cusp", "triple")
                                           : cfg.cusp->id;
  if (cusp_id != cfg.cusp->id) throw ParseError("triple refers to unknown cusp '" + cusp_id + "'");

  JordanTriple t(cfg.cusp);
  for (const auto& block : j.value("blocks", json::array())) {
    const auto& rho = cfg.symbol(detail::get_field<std::string>(block, "rho", "block"));
    auto values = detail::get_field<std::vector<int>>(block, "a", rho.id);
    if (!std::is_sorted(values.begin(), values.end()) ||
        std::adjacent_find(values.begin(), values.end()) != values.end()) {
      throw ParseError(rho.id + ": elements must be strictly increasing");
    }
    if (!t.block(rho.id).empty()) throw ParseError(rho.id + ": block given twice");
    auto signs = [&](const char* key, std::size_t n) {
      std::vector<Sign> out;
      auto raw = detail::get_field<std::vector<int>>(block, key, rho.id);
      if (raw.size() != n) throw ParseError(rho.id + ": '" + key + "' has the wrong length");
      for (int v : raw) {
        if (v != 1 && v != -1) throw ParseError(rho.id + ": signs must be 1 or -1");
        out.push_back(sign_from_int(v));
      }
      return out;
    };
    const std::size_t npairs = values.empty() ? 0 : values.size() - 1;
    for (int a : values) t.jord.insert({rho, a});
    if (block.contains("singles")) {
      auto s = signs("singles", values.size());
      for (std::size_t i = 0; i < values.size(); ++i) t.eps_single[{rho, values[i]}] = s[i];
      if (!block.contains("pairs")) {
        for (std::size_t i = 1; i < values.size(); ++i) {
          t.eps_pair[{{rho, values[i - 1]}, {rho, values[i]}}] = s[i - 1] * s[i];
        }
      }
    }
    if (block.contains("pairs")) {
      auto p = signs("pairs", npairs);
      for (std::size_t i = 1; i < values.size(); ++i) {
        t.eps_pair[{{rho, values[i - 1]}, {rho, values[i]}}] = p[i - 1];
      }
    }
  }
  return t;
}

// One term per line, "<coef> <GL> (x) <G>", in canonical term order.
inline std::string render(const MixedSum& sum) {
  std::string out;
  for (const auto& [t, c] : sum) out += std::to_string(c) + " " + to_string(t) + "\n";
  return out;
}

inline std::string render(const TensorSum& sum) {
  std::string out;
  for (const auto& [t, c] : sum) out += std::to_string(c) + " " + to_string(t) + "\n";
  return out;
}

inline std::string render(const ReductionChain& chain) {
  std::string out = "base " + label(chain.base) + "\n";
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const auto& s = chain.steps[i];
    out += "step " + std::to_string(i + 1) + " " + s.rho.id + " (" + std::to_string(s.lower) +
           "," + std::to_string(s.upper) + ") " + sign_char(s.sign) + "\n";
  }
  return out;
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

// Graphviz DOT description of the subordination relation on the given
// triples: an edge t -> t' for every single subordination step. Targets that
// are not among the given triples are drawn dashed.
inline std::string render_dominance_dag(const std::vector<JordanTriple>& triples) {
  std::map<JordanTriple, std::size_t> index;
  std::vector<JordanTriple> nodes = triples;
  for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);

  std::string edges;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    for (const auto& r : subordinate_reductions(triples[i])) {
      auto [it, fresh] = index.emplace(r.reduced, nodes.size());
      if (fresh) nodes.push_back(r.reduced);
      edges += "  n" + std::to_string(i) + " -> n" + std::to_string(it->second) + " [label=\"" +
               detail::dot_escape(r.rho.id) + "(" + std::to_string(r.lower) + "," +
               std::to_string(r.upper) + ")\"];\n";
    }
  }
  std::string out = "digraph dominance {\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out += "  n" + std::to_string(i) + " [label=\"" + detail::dot_escape(label(nodes[i])) + "\"";
    if (i >= triples.size()) out += ", style=dashed";
    out += "];\n";
  }
  out += edges;
  out += "}\n";
  return out;
}

}  // namespace dsclass
