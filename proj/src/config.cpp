#include "singlap/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace singlap {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("config line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& raw, std::size_t line) {
  std::string s = trim(raw);
  std::size_t slash = s.find('/');
  if (slash != std::string::npos && slash > 0) {
    std::string num = trim(s.substr(0, slash)), den = trim(s.substr(slash + 1));
    std::size_t used = 0;
    double a = 0, b = 0;
    try {
      a = std::stod(num, &used);
      if (used != num.size()) fail(line, "bad fraction numerator '" + num + "'");
      b = std::stod(den, &used);
      if (used != den.size()) fail(line, "bad fraction denominator '" + den + "'");
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      fail(line, "bad fraction '" + s + "'");
    }
    if (b == 0.0) fail(line, "fraction with zero denominator");
    return a / b;
  }
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) fail(line, "trailing characters in number '" + s + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    fail(line, "expected a number, got '" + s + "'");
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct Entry {
  std::string value;
  std::size_t line;
};

using Section = std::map<std::string, Entry>;

void apply_weight(WeightSpec& w, const Section& sec, const std::string& name) {
  auto it = sec.find("family");
  if (it == sec.end()) throw ParseError("config section [" + name + "]: missing key 'family'");
  const std::string& fam = it->second.value;
  if (fam == "gaussian")
    w.family = WeightFamily::gaussian;
  else if (fam == "bump")
    w.family = WeightFamily::bump;
  else if (fam == "powerdecay")
    w.family = WeightFamily::powerdecay;
  else
    fail(it->second.line, "unknown weight family '" + fam + "'");
  for (const auto& [key, entry] : sec) {
    if (key == "family") continue;
    double v = parse_number(entry.value, entry.line);
    if (key == "amplitude")
      w.amplitude = v;
    else if (key == "lambda")
      w.lambda = v;
    else if (key == "rho0")
      w.rho0 = v;
    else if (key == "k")
      w.k = v;
    else if (key == "sigma")
      w.sigma = v;
    else
      fail(entry.line, "unknown key '" + key + "' in section [" + name + "]");
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  std::map<std::string, Section> sections;
  std::set<std::string> known = {"exponents", "grid",   "weight.a1", "weight.a2",
                                 "solver",    "bounds", "output"};
  std::string current;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    std::size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "unterminated section header");
      current = trim(line.substr(1, line.size() - 2));
      if (!known.count(current)) fail(lineno, "unknown section [" + current + "]");
      sections[current];  // may appear more than once; entries merge
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected key = value");
    if (current.empty()) fail(lineno, "key before any section header");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) fail(lineno, "empty key");
    if (value.empty()) fail(lineno, "empty value for key '" + key + "'");
    auto [it, fresh] = sections[current].emplace(key, Entry{value, lineno});
    if (!fresh) fail(lineno, "duplicate key '" + key + "' in section [" + current + "]");
  }

  for (const char* req : {"exponents", "grid", "weight.a1", "weight.a2"})
    if (!sections.count(req))
      throw ParseError(std::string("config: missing required section [") + req + "]");

  RunConfig rc;
  bool grid_N_seen = false;

  // every exponent must be spelled out; silent defaults would mask typos
  for (const char* req : {"N", "p1", "p2", "alpha1", "alpha2", "beta1", "beta2", "m1", "M1", "m2",
                          "M2", "zeta1", "zeta2"})
    if (!sections["exponents"].count(req))
      throw ParseError(std::string("config: [exponents] missing key '") + req + "'");

  for (const auto& [key, entry] : sections["exponents"]) {
    double v = parse_number(entry.value, entry.line);
    ExponentConfig& e = rc.exponents;
    if (key == "N")
      e.N = static_cast<int>(v);
    else if (key == "p1")
      e.p1 = v;
    else if (key == "p2")
      e.p2 = v;
    else if (key == "alpha1")
      e.alpha1 = v;
    else if (key == "alpha2")
      e.alpha2 = v;
    else if (key == "beta1")
      e.beta1 = v;
    else if (key == "beta2")
      e.beta2 = v;
    else if (key == "m1")
      e.m1 = v;
    else if (key == "M1")
      e.M1 = v;
    else if (key == "m2")
      e.m2 = v;
    else if (key == "M2")
      e.M2 = v;
    else if (key == "zeta1")
      e.zeta1 = v;
    else if (key == "zeta2")
      e.zeta2 = v;
    else
      fail(entry.line, "unknown key '" + key + "' in section [exponents]");
  }

  for (const auto& [key, entry] : sections["grid"]) {
    if (key == "grading") {
      if (entry.value == "uniform")
        rc.grading = Grading::uniform;
      else if (entry.value == "geometric")
        rc.grading = Grading::geometric;
      else
        fail(entry.line, "unknown grading '" + entry.value + "'");
      continue;
    }
    double v = parse_number(entry.value, entry.line);
    if (key == "r_max")
      rc.r_max = v;
    else if (key == "nodes")
      rc.nodes = static_cast<std::size_t>(v);
    else if (key == "ratio")
      rc.ratio = v;
    else if (key == "N") {
      rc.grid_N = static_cast<int>(v);
      grid_N_seen = true;
    } else
      fail(entry.line, "unknown key '" + key + "' in section [grid]");
  }
  if (!grid_N_seen) rc.grid_N = rc.exponents.N;
  if (rc.r_max <= 0.0) throw ParseError("config: [grid] r_max missing or not positive");
  if (rc.nodes == 0) throw ParseError("config: [grid] nodes missing");

  apply_weight(rc.a1, sections["weight.a1"], "weight.a1");
  apply_weight(rc.a2, sections["weight.a2"], "weight.a2");

  if (sections.count("solver")) {
    for (const auto& [key, entry] : sections["solver"]) {
      if (key == "eps") {
        for (const std::string& tok : split_list(entry.value))
          rc.solver.eps_schedule.push_back(parse_number(tok, entry.line));
        if (rc.solver.eps_schedule.empty()) fail(entry.line, "empty eps schedule");
        continue;
      }
      double v = parse_number(entry.value, entry.line);
      if (key == "theta")
        rc.solver.theta = v;
      else if (key == "tol")
        rc.solver.tol = v;
      else if (key == "max_iter")
        rc.solver.max_iter = static_cast<std::size_t>(v);
      else if (key == "residual_tol")
        rc.solver.residual_tol = v;
      else
        fail(entry.line, "unknown key '" + key + "' in section [solver]");
    }
  }

  if (sections.count("bounds")) {
    for (const auto& [key, entry] : sections["bounds"]) {
      double v = parse_number(entry.value, entry.line);
      if (key == "xi1")
        rc.bounds.xi1 = v;
      else if (key == "xi2")
        rc.bounds.xi2 = v;
      else if (key == "kappa0")
        rc.bounds.kappa0 = v;
      else if (key == "tail_tol")
        rc.bounds.tail_tol = v;
      else
        fail(entry.line, "unknown key '" + key + "' in section [bounds]");
    }
  }

  if (sections.count("output")) {
    for (const auto& [key, entry] : sections["output"]) {
      if (key == "dir") {
        rc.output.dir = entry.value;
      } else if (key == "formats") {
        rc.output.formats = split_list(entry.value);
        for (const std::string& f : rc.output.formats)
          if (f != "json" && f != "csv" && f != "svg")
            fail(entry.line, "unknown output format '" + f + "'");
      } else {
        fail(entry.line, "unknown key '" + key + "' in section [output]");
      }
    }
  }

  rc.config_hash = fnv1a_hex(text);
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ParseError("config: read failure on '" + path + "'");
  return parse_config(buf.str());
}

}  // namespace singlap
