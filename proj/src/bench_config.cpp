#include "sticky/bench_config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "sticky/adaptation.hpp"
#include "sticky/errors.hpp"
#include "sticky/proposal.hpp"
#include "sticky/runner.hpp"
#include "sticky/samplers.hpp"
#include "sticky/targets.hpp"

namespace sticky {

namespace {

// Raw right-hand side of one `key = value` line.  The accepted grammar is a
// flat TOML subset: quoted strings, numbers, booleans, one-level numeric
// arrays, and # comments.  Tables are rejected, not silently ignored.
struct RawValue {
  enum class Kind { Str, Num, Bool, List };
  Kind kind = Kind::Num;
  std::string s;
  double num = 0;
  bool b = false;
  bool is_int = false;
  long long inum = 0;
  std::vector<double> list;
  int line = 0;
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Strip a trailing comment, honouring quotes.
std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (in_str) {
      if (c == '\\')
        ++i;
      else if (c == '"')
        in_str = false;
    } else if (c == '"') {
      in_str = true;
    } else if (c == '#') {
      return s.substr(0, i);
    }
  }
  return s;
}

std::string parse_string_value(const std::string& v, int line) {
  if (v.size() < 2 || v.back() != '"') throw ParseError(line, "unterminated string");
  std::string out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    char c = v[i];
    if (c == '\\') {
      if (i + 2 >= v.size()) throw ParseError(line, "dangling escape in string");
      char e = v[++i];
      switch (e) {
        case '\\': out += '\\'; break;
        case '"': out += '"'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: throw ParseError(line, std::string("unsupported escape \\") + e);
      }
    } else if (c == '"') {
      throw ParseError(line, "unexpected quote inside string");
    } else {
      out += c;
    }
  }
  return out;
}

bool looks_integer(const std::string& v) {
  std::size_t i = (v[0] == '+' || v[0] == '-') ? 1 : 0;
  if (i == v.size()) return false;
  for (; i < v.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(v[i]))) return false;
  return true;
}

double parse_number(const std::string& v, int line) {
  const char* c = v.c_str();
  char* end = nullptr;
  double x = std::strtod(c, &end);
  if (end != c + v.size() || v.empty()) throw ParseError(line, "bad value '" + v + "'");
  return x;
}

RawValue parse_value(const std::string& raw, int line) {
  RawValue rv;
  rv.line = line;
  const std::string v = trim(raw);
  if (v.empty()) throw ParseError(line, "missing value");
  if (v[0] == '"') {
    rv.kind = RawValue::Kind::Str;
    rv.s = parse_string_value(v, line);
    return rv;
  }
  if (v[0] == '[') {
    if (v.back() != ']') throw ParseError(line, "unterminated array");
    rv.kind = RawValue::Kind::List;
    std::string body = v.substr(1, v.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) throw ParseError(line, "empty array element");
      rv.list.push_back(parse_number(item, line));
    }
    return rv;
  }
  if (v == "true" || v == "false") {
    rv.kind = RawValue::Kind::Bool;
    rv.b = (v == "true");
    return rv;
  }
  rv.kind = RawValue::Kind::Num;
  rv.num = parse_number(v, line);
  if (looks_integer(v)) {
    rv.is_int = true;
    rv.inum = std::strtoll(v.c_str(), nullptr, 10);
  }
  return rv;
}

using RawMap = std::map<std::string, RawValue>;

RawMap tokenize(const std::string& text) {
  RawMap out;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    if (s[0] == '[')
      throw ParseError(lineno, "tables are not supported; use flat key = value lines");
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key = value");
    std::string key = trim(s.substr(0, eq));
    if (key.empty()) throw ParseError(lineno, "missing key");
    for (char c : key)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
        throw ParseError(lineno, "bad key '" + key + "'");
    if (out.count(key)) throw ParseError(lineno, "duplicate key '" + key + "'");
    out.emplace(key, parse_value(s.substr(eq + 1), lineno));
  }
  return out;
}

const RawValue* take(RawMap& m, const std::string& key) {
  auto it = m.find(key);
  return it == m.end() ? nullptr : &it->second;
}

std::string want_string(const RawValue& rv, const std::string& key) {
  if (rv.kind != RawValue::Kind::Str)
    throw ParseError(rv.line, "key '" + key + "': expected a quoted string");
  return rv.s;
}

double want_number(const RawValue& rv, const std::string& key) {
  if (rv.kind != RawValue::Kind::Num)
    throw ParseError(rv.line, "key '" + key + "': expected a number");
  return rv.num;
}

long long want_integer(const RawValue& rv, const std::string& key) {
  if (rv.kind != RawValue::Kind::Num || !rv.is_int)
    throw ParseError(rv.line, "key '" + key + "': expected an integer");
  return rv.inum;
}

std::vector<double> want_list(const RawValue& rv, const std::string& key) {
  if (rv.kind != RawValue::Kind::List)
    throw ParseError(rv.line, "key '" + key + "': expected an array of numbers");
  return rv.list;
}

bool want_bool(const RawValue& rv, const std::string& key) {
  if (rv.kind != RawValue::Kind::Bool)
    throw ParseError(rv.line, "key '" + key + "': expected true or false");
  return rv.b;
}

void fmt_double(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
  // make the value unambiguously a float unless it already is one
  if (out.find_first_of(".eE", out.size() - std::strlen(buf)) == std::string::npos)
    out += ".0";
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '\\' || c == '"') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  RawMap raw = tokenize(text);
  ExperimentConfig cfg;

  if (const RawValue* rv = take(raw, "name")) cfg.name = want_string(*rv, "name");
  if (const RawValue* rv = take(raw, "target")) cfg.target = want_string(*rv, "target");
  if (const RawValue* rv = take(raw, "kernel")) cfg.kernel = want_string(*rv, "kernel");
  if (const RawValue* rv = take(raw, "construction"))
    cfg.construction = want_string(*rv, "construction");
  if (const RawValue* rv = take(raw, "rule")) cfg.rule = want_string(*rv, "rule");
  if (const RawValue* rv = take(raw, "eps")) cfg.eps = want_number(*rv, "eps");
  if (const RawValue* rv = take(raw, "beta")) cfg.beta = want_number(*rv, "beta");
  if (const RawValue* rv = take(raw, "s0")) {
    if (rv->kind == RawValue::Kind::Str)
      cfg.s0_spec = rv->s;
    else
      cfg.s0 = want_list(*rv, "s0");
  }
  if (const RawValue* rv = take(raw, "x0")) cfg.x0 = want_number(*rv, "x0");
  if (const RawValue* rv = take(raw, "T")) cfg.T = want_integer(*rv, "T");
  if (const RawValue* rv = take(raw, "runs")) cfg.runs = static_cast<int>(want_integer(*rv, "runs"));
  if (const RawValue* rv = take(raw, "seed")) {
    long long s = want_integer(*rv, "seed");
    if (s < 0) throw ValidationError("seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (const RawValue* rv = take(raw, "out")) cfg.out = want_string(*rv, "out");
  if (const RawValue* rv = take(raw, "eps_sweep")) cfg.eps_sweep = want_list(*rv, "eps_sweep");
  if (const RawValue* rv = take(raw, "workers"))
    cfg.workers = static_cast<int>(want_integer(*rv, "workers"));
  if (const RawValue* rv = take(raw, "traces")) cfg.traces = want_bool(*rv, "traces");

  static const char* known[] = {"name", "target",    "kernel", "construction", "rule",
                                "eps",  "beta",      "s0",     "x0",           "T",
                                "runs", "seed",      "out",    "eps_sweep",    "workers",
                                "traces"};
  for (const auto& [key, rv] : raw) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ParseError(rv.line, "unknown key '" + key + "'");
  }

  // semantic validation
  if (cfg.target.empty()) throw ValidationError("target", "required");
  target_registry(cfg.target);             // throws on unknown targets
  KernelSpec::parse(cfg.kernel);           // throws on bad kernels
  parse_construction(cfg.construction);    // throws on bad constructions
  UpdateRule::parse(cfg.rule, cfg.eps, cfg.beta);
  if (cfg.T < 1) throw ValidationError("T", "must be >= 1");
  if (cfg.runs < 1) throw ValidationError("runs", "must be >= 1");
  if (!(cfg.eps > 0)) throw ValidationError("eps", "must be > 0");
  if (!(cfg.beta > 0)) throw ValidationError("beta", "must be > 0");
  if (cfg.workers < 0) throw ValidationError("workers", "must be >= 0");
  if (!cfg.s0.empty() && !cfg.s0_spec.empty())
    throw ValidationError("s0", "give either a point list or a random spec, not both");
  if (!cfg.s0.empty() && cfg.s0.size() < 3)
    throw ValidationError("s0", "need at least 3 support points");
  if (!cfg.s0_spec.empty()) S0Spec::parse(cfg.s0_spec);  // validates the format
  for (double e : cfg.eps_sweep)
    if (!(e > 0)) throw ValidationError("eps_sweep", "all values must be > 0");
  return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::string out;
  auto kv_str = [&](const char* k, const std::string& v) {
    out += k;
    out += " = " + quote(v) + "\n";
  };
  auto kv_num = [&](const char* k, double v) {
    out += k;
    out += " = ";
    fmt_double(out, v);
    out += "\n";
  };
  auto kv_int = [&](const char* k, long long v) {
    out += k;
    out += " = " + std::to_string(v) + "\n";
  };
  auto kv_list = [&](const char* k, const std::vector<double>& v) {
    out += k;
    out += " = [";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ", ";
      fmt_double(out, v[i]);
    }
    out += "]\n";
  };

  if (!cfg.name.empty()) kv_str("name", cfg.name);
  kv_str("target", cfg.target);
  kv_str("kernel", cfg.kernel);
  kv_str("construction", cfg.construction);
  kv_str("rule", cfg.rule);
  kv_num("eps", cfg.eps);
  kv_num("beta", cfg.beta);
  if (!cfg.s0.empty()) kv_list("s0", cfg.s0);
  if (!cfg.s0_spec.empty()) kv_str("s0", cfg.s0_spec);
  if (cfg.x0) kv_num("x0", *cfg.x0);
  kv_int("T", cfg.T);
  kv_int("runs", cfg.runs);
  kv_int("seed", static_cast<long long>(cfg.seed));
  kv_str("out", cfg.out);
  if (!cfg.eps_sweep.empty()) kv_list("eps_sweep", cfg.eps_sweep);
  kv_int("workers", cfg.workers);
  out += std::string("traces = ") + (cfg.traces ? "true" : "false") + "\n";
  return out;
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  const std::string s = serialize_config(cfg);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace sticky
