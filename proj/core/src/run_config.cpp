#include "lpflow/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "lpflow/models.hpp"
#include "lpflow/text_io.hpp"

namespace lpflow {
namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

struct RawEntry {
  std::string value;
  int line = 0;
  bool used = false;
};

/// key = value lines with line tracking; every key must be consumed.
class KeyTable {
 public:
  explicit KeyTable(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const std::string stripped = trim(line);
      if (stripped.empty()) continue;
      const auto eq = stripped.find('=');
      if (eq == std::string::npos)
        throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
      const std::string key = trim(stripped.substr(0, eq));
      const std::string value = trim(stripped.substr(eq + 1));
      if (key.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": empty key");
      const auto [it, inserted] = entries_.emplace(key, RawEntry{value, lineno});
      if (!inserted)
        throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key +
                          "' (first seen on line " + std::to_string(it->second.line) + ")");
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  const RawEntry& take(const std::string& key) {
    auto& e = entries_.at(key);
    e.used = true;
    return e;
  }

  void reject_unused() const {
    const RawEntry* first = nullptr;
    std::string first_key;
    for (const auto& [key, e] : entries_)
      if (!e.used && (!first || e.line < first->line)) {
        first = &e;
        first_key = key;
      }
    if (first)
      throw ConfigError("line " + std::to_string(first->line) + ": unknown key '" + first_key +
                        "'");
  }

 private:
  std::map<std::string, RawEntry> entries_;
};

[[noreturn]] void key_error(const std::string& key, int line, const std::string& why) {
  throw ConfigError("key '" + key + "' (line " + std::to_string(line) + "): " + why);
}

class Reader {
 public:
  explicit Reader(KeyTable& table) : table_(table) {}

  bool present(const std::string& key) const { return table_.has(key); }

  void require(const std::string& key, const std::string& model) const {
    if (!table_.has(key))
      throw ConfigError("key '" + key + "' is required for model " + model);
  }

  void forbid(const std::string& key, const std::string& model) {
    if (table_.has(key)) {
      const auto& e = table_.take(key);
      key_error(key, e.line, "not accepted for model " + model);
    }
  }

  template <typename F>
  auto get(const std::string& key, F&& convert) {
    const auto& e = table_.take(key);
    try {
      return convert(e.value);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& ex) {
      key_error(key, e.line, ex.what());
    }
  }

  double get_double(const std::string& key) {
    return get(key, [](const std::string& v) { return parse_double(v); });
  }
  int get_pos_int(const std::string& key) {
    return get(key, [](const std::string& v) {
      const auto x = parse_int(v);
      if (x < 1) throw std::invalid_argument("must be a positive integer");
      return static_cast<int>(x);
    });
  }
  bool get_bool(const std::string& key) {
    return get(key, [](const std::string& v) {
      if (v == "true") return true;
      if (v == "false") return false;
      throw std::invalid_argument("expected 'true' or 'false'");
    });
  }
  Vec3 get_vec3(const std::string& key) {
    return get(key, [](const std::string& v) {
      const auto tok = split_ws(v);
      if (tok.size() != 3) throw std::invalid_argument("expected 3 numbers");
      return Vec3(parse_double(tok[0]), parse_double(tok[1]), parse_double(tok[2]));
    });
  }
  Mat3 get_sym3(const std::string& key) {
    return get(key, [](const std::string& v) {
      const auto tok = split_ws(v);
      if (tok.size() != 6)
        throw std::invalid_argument("expected 6 numbers (upper triangle, row-major)");
      Mat3 m;
      m(0, 0) = parse_double(tok[0]);
      m(0, 1) = m(1, 0) = parse_double(tok[1]);
      m(0, 2) = m(2, 0) = parse_double(tok[2]);
      m(1, 1) = parse_double(tok[3]);
      m(1, 2) = m(2, 1) = parse_double(tok[4]);
      m(2, 2) = parse_double(tok[5]);
      return m;
    });
  }

 private:
  KeyTable& table_;
};

KirchhoffPreset preset_from_name(const std::string& name) {
  if (name == "kirchhoff") return KirchhoffPreset::kirchhoff;
  if (name == "clebsch") return KirchhoffPreset::clebsch;
  if (name == "lsk") return KirchhoffPreset::lsk;
  if (name == "custom") return KirchhoffPreset::custom;
  throw std::invalid_argument("expected kirchhoff, clebsch, lsk or custom");
}

}  // namespace

bool RunConfig::operator==(const RunConfig& other) const {
  return model == other.model && n == other.n && h == other.h && t_final == other.t_final &&
         alpha == other.alpha && seed == other.seed && l_cut == other.l_cut &&
         gamma == other.gamma && amplitude == other.amplitude &&
         output_every == other.output_every && n_lat == other.n_lat && n_lon == other.n_lon &&
         write_grids == other.write_grids && fp_tol == other.fp_tol &&
         fp_max_iters == other.fp_max_iters && baseline == other.baseline &&
         kirchhoff_preset == other.kirchhoff_preset && kirchhoff_a == other.kirchhoff_a &&
         kirchhoff_b == other.kirchhoff_b && kirchhoff_c == other.kirchhoff_c;
}

RunConfig parse_config(const std::string& text) {
  KeyTable table(text);
  Reader r(table);
  RunConfig cfg;

  if (!r.present("model")) throw ConfigError("key 'model' is required");
  cfg.model = r.get("model", [](const std::string& v) {
    if (v != "euler" && v != "mhd" && v != "hazeltine" && v != "kirchhoff")
      throw std::invalid_argument("expected euler, mhd, hazeltine or kirchhoff");
    return v;
  });

  if (!r.present("h")) throw ConfigError("key 'h' is required");
  cfg.h = r.get("h", [](const std::string& v) {
    const double h = parse_double(v);
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("must be positive");
    return h;
  });

  if (!r.present("t_final")) throw ConfigError("key 't_final' is required");
  cfg.t_final = r.get("t_final", [](const std::string& v) {
    const double t = parse_double(v);
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("must be positive");
    return t;
  });

  if (r.present("seed"))
    cfg.seed = r.get("seed", [](const std::string& v) { return parse_uint(v); });
  if (r.present("amplitude")) cfg.amplitude = r.get_double("amplitude");
  if (r.present("output_every")) cfg.output_every = r.get_pos_int("output_every");
  if (r.present("fp_tol"))
    cfg.fp_tol = r.get("fp_tol", [](const std::string& v) {
      const double t = parse_double(v);
      if (!(t > 0.0)) throw std::invalid_argument("must be positive");
      return t;
    });
  if (r.present("fp_max_iters")) cfg.fp_max_iters = r.get_pos_int("fp_max_iters");
  if (r.present("baseline")) cfg.baseline = r.get_bool("baseline");

  if (cfg.quantized()) {
    r.require("n", cfg.model);
    cfg.n = r.get("n", [](const std::string& v) {
      const auto n = parse_int(v);
      if (n < 2) throw std::invalid_argument("must be an integer >= 2");
      return static_cast<int>(n);
    });
    cfg.l_cut = std::min(cfg.n - 1, 10);
    if (r.present("l_cut"))
      cfg.l_cut = r.get("l_cut", [&](const std::string& v) {
        const auto l = parse_int(v);
        if (l < 1 || l > cfg.n - 1)
          throw std::invalid_argument("must lie in [1, n-1]");
        return static_cast<int>(l);
      });
    if (r.present("gamma")) cfg.gamma = r.get_double("gamma");
    if (r.present("n_lat")) cfg.n_lat = r.get_pos_int("n_lat");
    if (r.present("n_lon")) cfg.n_lon = r.get_pos_int("n_lon");
    if (r.present("write_grids")) cfg.write_grids = r.get_bool("write_grids");
    for (const char* key : {"kirchhoff_preset", "kirchhoff_a", "kirchhoff_b", "kirchhoff_c"})
      r.forbid(key, cfg.model);
  } else {
    cfg.n = 3;
    cfg.write_grids = false;  // not a field on the sphere
    for (const char* key :
         {"n", "l_cut", "gamma", "n_lat", "n_lon", "write_grids"})
      r.forbid(key, cfg.model);
    if (r.present("kirchhoff_preset"))
      cfg.kirchhoff_preset = r.get("kirchhoff_preset", [](const std::string& v) {
        preset_from_name(v);  // validation only
        return v;
      });
    const KirchhoffPreset which = preset_from_name(cfg.kirchhoff_preset);
    if (which == KirchhoffPreset::custom) {
      for (const char* key : {"kirchhoff_a", "kirchhoff_b", "kirchhoff_c"})
        r.require(key, "kirchhoff (custom preset)");
      cfg.kirchhoff_a = r.get_vec3("kirchhoff_a");
      cfg.kirchhoff_b = r.get_sym3("kirchhoff_b");
      cfg.kirchhoff_c = r.get_sym3("kirchhoff_c");
      KirchhoffParams params{cfg.kirchhoff_a, cfg.kirchhoff_b, cfg.kirchhoff_c};
      try {
        params.validate(KirchhoffPreset::custom);
      } catch (const std::domain_error& e) {
        throw ConfigError(std::string("kirchhoff parameters: ") + e.what());
      }
    } else {
      for (const char* key : {"kirchhoff_a", "kirchhoff_b", "kirchhoff_c"})
        r.forbid(key, "kirchhoff (named preset)");
      const KirchhoffParams params = KirchhoffParams::preset(which);
      cfg.kirchhoff_a = params.a;
      cfg.kirchhoff_b = params.b;
      cfg.kirchhoff_c = params.c;
    }
  }

  if (cfg.model == "hazeltine") {
    r.require("alpha", cfg.model);
    cfg.alpha = r.get_double("alpha");
  } else {
    r.forbid("alpha", cfg.model);
  }

  table.reject_unused();

  // At least one step must fit.
  if (cfg.t_final < 0.5 * cfg.h)
    throw ConfigError("key 't_final': shorter than half a step; nothing to integrate");
  return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text);
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  auto kv = [&out](const std::string& key, const std::string& value) {
    out << key << " = " << value << "\n";
  };
  kv("model", cfg.model);
  if (cfg.quantized()) kv("n", std::to_string(cfg.n));
  kv("h", format_double(cfg.h));
  kv("t_final", format_double(cfg.t_final));
  if (cfg.model == "hazeltine") kv("alpha", format_double(cfg.alpha));
  kv("seed", std::to_string(cfg.seed));
  if (cfg.quantized()) {
    kv("l_cut", std::to_string(cfg.l_cut));
    kv("gamma", format_double(cfg.gamma));
  }
  kv("amplitude", format_double(cfg.amplitude));
  kv("output_every", std::to_string(cfg.output_every));
  if (cfg.quantized()) {
    kv("n_lat", std::to_string(cfg.n_lat));
    kv("n_lon", std::to_string(cfg.n_lon));
    kv("write_grids", cfg.write_grids ? "true" : "false");
  }
  kv("fp_tol", format_double(cfg.fp_tol));
  kv("fp_max_iters", std::to_string(cfg.fp_max_iters));
  kv("baseline", cfg.baseline ? "true" : "false");
  if (!cfg.quantized()) {
    kv("kirchhoff_preset", cfg.kirchhoff_preset);
    if (cfg.kirchhoff_preset == "custom") {
      const Vec3& a = cfg.kirchhoff_a;
      kv("kirchhoff_a",
         format_double(a.x()) + " " + format_double(a.y()) + " " + format_double(a.z()));
      auto sym = [](const Mat3& m) {
        return format_double(m(0, 0)) + " " + format_double(m(0, 1)) + " " +
               format_double(m(0, 2)) + " " + format_double(m(1, 1)) + " " +
               format_double(m(1, 2)) + " " + format_double(m(2, 2));
      };
      kv("kirchhoff_b", sym(cfg.kirchhoff_b));
      kv("kirchhoff_c", sym(cfg.kirchhoff_c));
    }
  }
  return out.str();
}

}  // namespace lpflow
