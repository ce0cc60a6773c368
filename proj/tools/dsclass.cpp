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

// Command-line front end. Every subcommand reads a session config (--config)
// and writes a deterministic report on stdout.
//
// Exit codes: 0 ok, 1 domain error, 2 usage or parse error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "dsclass/dsclass.hpp"

namespace fs = std::filesystem;
using namespace dsclass;

namespace {

constexpr int kDomainExit = 1;
constexpr int kUsageExit = 2;

fs::path cache_dir() {
  if (const char* env = std::getenv("DSCLASS_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "dsclass";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "dsclass";
  return fs::temp_directory_path() / "dsclass";
}

// Triple argument: inline JSON, or @path to read it from a file.
JordanTriple triple_arg(const std::string& arg, const SessionConfig& cfg) {
  if (!arg.empty() && arg.front() == '@') return parse_triple(read_file(arg.substr(1)), cfg);
  return parse_triple(arg, cfg);
}

std::string enumerate_text(const SessionConfig& cfg) {
  std::string out;
  for (const auto& t : enumerate_admissible(cfg.cusp, cfg.bounds)) out += serialize_triple(t) + "\n";
  return out;
}

// The cache file holds exactly what enumerate prints. A hit is never
// rewritten; a miss is written through a temporary and renamed into place.
std::string enumerate_cached(const SessionConfig& cfg, bool use_cache) {
  if (!use_cache) return enumerate_text(cfg);
  const fs::path dir = cache_dir();
  const fs::path file = dir / ("enum-" + fnv1a_hex(cfg.canonical()) + ".txt");
  std::error_code ec;
  if (fs::is_regular_file(file, ec)) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream ss;
    if (in && (ss << in.rdbuf())) {
      std::string text = ss.str();
      // Cheap integrity check; a damaged entry is recomputed.
      bool ok = text.empty() || text.back() == '\n';
      for (std::size_t pos = 0; ok && pos < text.size();) {
        auto nl = text.find('\n', pos);
        try {
          require_valid(parse_triple(std::string_view(text).substr(pos, nl - pos), cfg));
        } catch (const std::exception&) {
          ok = false;
        }
        pos = nl + 1;
      }
      if (ok) return text;
    }
  }

  std::string text = enumerate_text(cfg);
  fs::create_directories(dir, ec);
  const fs::path tmp = file.string() + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary);
    if (out) out << text;
    if (!out) {
      std::cerr << "warning: cannot write cache in " << dir.string() << "\n";
      fs::remove(tmp, ec);
      return text;
    }
  }
  fs::rename(tmp, file, ec);
  if (ec) {
    std::cerr << "warning: cannot write cache in " << dir.string() << "\n";
    fs::remove(tmp, ec);
  }
  return text;
}

std::set<int> parse_int_list(const std::string& s) {
  std::set<int> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" {}");
    auto e = item.find_last_not_of(" {}");
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ParseError("'" + item + "' is not an integer");
    out.insert(v);
  }
  return out;
}

std::string set_string(const std::set<int>& s) {
  std::string out = "{";
  for (int v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v);
  return out + "}";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete series classification calculus"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("-c,--config", config_path, "session config (JSON)")->required();

  auto* mu = app.add_subcommand("mu-star", "expand mu* of segments induced from a base object");
  std::vector<std::string> seg_specs;
  std::string sigma;
  mu->add_option("--seg", seg_specs, "segment rho:[a,b]; repeat for a product, outermost first")
      ->required();
  mu->add_option("--sigma", sigma, "base G-object id (default: the cusp)");

  auto* enumerate = app.add_subcommand("enumerate", "list admissible triples within the bounds");
  bool no_cache = false;
  enumerate->add_flag("--no-cache", no_cache, "skip the enumeration cache");

  std::string triple_text;
  auto* check = app.add_subcommand("check", "validate a triple and test admissibility");
  check->add_option("triple", triple_text, "triple record (JSON, or @file)")->required();
  auto* reduce = app.add_subcommand("reduce", "list the subordinate reductions of a triple");
  reduce->add_option("triple", triple_text, "triple record (JSON, or @file)")->required();
  auto* chain = app.add_subcommand("chain", "print the canonical reduction chain");
  chain->add_option("triple", triple_text, "triple record (JSON, or @file)")->required();

  auto* jord = app.add_subcommand("jord-update", "Jordan block of rho after adding (x, ..., y)");
  std::string rho_id, x_text, y_text, base_text;
  std::string route = "closed";
  jord->add_option("--rho", rho_id)->required();
  jord->add_option("--x", x_text)->required();
  jord->add_option("--y", y_text)->required();
  jord->add_option("--base", base_text, "comma-separated base Jordan block");
  jord->add_option("--route", route, "closed (default) or plancherel")
      ->check(CLI::IsMember({"closed", "plancherel"}));

  auto* dag = app.add_subcommand("dag", "dominance graph of the enumerated triples (DOT)");
  dag->add_flag("--no-cache", no_cache, "skip the enumeration cache");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageExit;
  }

  try {
    const SessionConfig cfg = load_config(config_path);

    if (*mu) {
      GBase base = sigma.empty() ? cfg.cusp_base() : cfg.base(sigma);
      std::vector<GLTerm> induced;
      for (const auto& s : seg_specs) induced.emplace_back(std::vector<Segment>{parse_segment(s, cfg.symbols)});
      MuStarTable table;
      cfg.populate(table);
      std::cout << render(table.mu_star(GSpinTerm(base, std::move(induced))));
    } else if (*enumerate) {
      std::cout << enumerate_cached(cfg, !no_cache);
    } else if (*check) {
      JordanTriple t = triple_arg(triple_text, cfg);
      auto violations = validate_triple(t);
      if (!violations.empty()) {
        for (const auto& v : violations) std::cout << "violation " << v.clause << ": " << v.detail << "\n";
        return kDomainExit;
      }
      if (is_admissible(t)) {
        auto canonical = canonical_chain(t);
        std::cout << "admissible, " << canonical.steps.size() << " steps\n" << render(canonical);
      } else {
        std::cout << "not admissible\n";
      }
    } else if (*reduce) {
      JordanTriple t = triple_arg(triple_text, cfg);
      require_valid(t);
      for (const auto& r : subordinate_reductions(t)) {
        std::cout << r.rho.id << " (" << r.lower << "," << r.upper << ") "
                  << serialize_triple(r.reduced) << "\n";
      }
    } else if (*chain) {
      JordanTriple t = triple_arg(triple_text, cfg);
      require_valid(t);
      std::cout << render(canonical_chain(t));
    } else if (*jord) {
      EmbeddingDatum d{cfg.symbol(rho_id), HalfInt::parse(x_text), HalfInt::parse(y_text),
                       parse_int_list(base_text)};
      auto out = route == "closed" ? jord_update(d) : jord_from_plancherel(d, plancherel_search_bound(d));
      std::cout << set_string(out) << "\n";
    } else if (*dag) {
      const std::string text = enumerate_cached(cfg, !no_cache);
      std::vector<JordanTriple> triples;
      std::istringstream lines(text);
      for (std::string line; std::getline(lines, line);) triples.push_back(parse_triple(line, cfg));
      std::cout << render_dominance_dag(triples);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageExit;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainExit;
  }
  return 0;
}
