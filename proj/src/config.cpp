#include "dgm/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "dgm/error.hpp"

namespace dgm {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
    return s.substr(1, s.size() - 2);
  return s;
}

// Strips a trailing '#' comment that is not inside quotes.
std::string strip_comment(const std::string& line) {
  char quote = 0;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return line.substr(0, k);
    }
  }
  return line;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad(int line, const std::string& msg) {
  throw Error(ErrorKind::InvalidParameter, "config line " + std::to_string(line) + ": " + msg);
}

double parse_number(std::string_view s) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw Error(ErrorKind::InvalidParameter, "not a number: '" + t + "'");
  return v;
}

double parse_real(std::string_view s) { return parse_step_size(s).value(); }

int parse_int(std::string_view s) {
  const std::string t = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw Error(ErrorKind::InvalidParameter, "not an integer: '" + t + "'");
  return v;
}

bool parse_bool(std::string_view s) {
  const std::string t = trim(s);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw Error(ErrorKind::InvalidParameter, "not a boolean: '" + t + "'");
}

Vector parse_reals(std::string_view s) {
  Vector v;
  for (const auto& item : split(s, ',')) v.push_back(parse_real(item));
  return v;
}

std::vector<StepSize> parse_steps(std::string_view s) {
  std::vector<StepSize> v;
  for (const auto& item : split(s, ',')) v.push_back(parse_step_size(item));
  return v;
}

// Collected [method] block; turned into a MethodSpec once complete so that
// key order inside the block does not matter.
struct MethodBlock {
  int line = 0;
  std::map<std::string, std::string> keys;
};

MethodSpec build_method(const MethodBlock& blk) {
  const auto get = [&](const std::string& k) -> const std::string* {
    const auto it = blk.keys.find(k);
    return it == blk.keys.end() ? nullptr : &it->second;
  };
  const std::string* method = get("method");
  if (!method) bad(blk.line, "[method] block needs a 'method' key");
  MethodSpec m = default_method(parse_method(*method));
  Stepper& st = m.stepper;
  if (const auto* v = get("label")) m.label = *v;

  if (const auto* v = get("rk_A")) {
    std::vector<Vector> rows;
    for (const auto& r : split(*v, ';')) rows.push_back(parse_reals(r));
    const std::string* b = get("rk_b");
    if (!b) bad(blk.line, "rk_A needs rk_b");
    DenseMatrix a(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != a.cols()) bad(blk.line, "rk_A rows have different lengths");
      for (std::size_t j = 0; j < rows[i].size(); ++j) a(i, j) = rows[i][j];
    }
    const int order = get("rk_order") ? parse_int(*get("rk_order")) : 1;
    ButcherTableau t("custom", a, parse_reals(*b), order);
    st.dg.tableau = t;
    st.projection.tableau = t;
  } else if (get("rk_b")) {
    bad(blk.line, "rk_b needs rk_A");
  } else if (const auto* v = get("tableau")) {
    const ButcherTableau t = tableau_by_name(*v);
    st.dg.tableau = t;
    st.projection.tableau = t;
  }

  SkewConfig& sk = st.dg.skew;
  if (const auto* v = get("discrete_gradient")) sk.dg_kind.type = parse_discrete_gradient(*v);
  if (const auto* v = get("mv_nodes")) sk.dg_kind.quadrature_nodes = parse_int(*v);
  if (const auto* v = get("i_tilde")) sk.i_tilde = parse_gradient_approx(*v);
  if (const auto* v = get("i_hat")) sk.i_hat = parse_gradient_approx(*v);
  if (const auto* v = get("i_breve")) sk.i_breve = parse_gradient_approx(*v);
  if (const auto* v = get("denom_floor")) sk.denom_floor = parse_real(*v);
  if (const auto* v = get("fp_tol")) st.dg.fp_tol = parse_real(*v);
  if (const auto* v = get("fp_max_iter")) st.dg.fp_max_iter = parse_int(*v);
  if (const auto* v = get("warm_start")) st.dg.warm_start = parse_bool(*v);
  if (const auto* v = get("newton_tol")) st.projection.newton_tol = parse_real(*v);
  if (const auto* v = get("newton_max_iter")) st.projection.newton_max_iter = parse_int(*v);
  if (const auto* v = get("stage_tol")) {
    st.dg.stages.tol = parse_real(*v);
    st.projection.stages.tol = st.dg.stages.tol;
  }
  if (const auto* v = get("epsilon_crit")) {
    st.dg.critical.epsilon_crit = parse_real(*v);
    st.projection.critical.epsilon_crit = st.dg.critical.epsilon_crit;
  }
  st.dg.validate();
  return m;
}

// Parses enumerated and numeric method values eagerly so errors point at
// the offending line rather than the start of the block.
void check_method_value(const std::string& key, const std::string& v) {
  if (key == "method") parse_method(v);
  else if (key == "tableau") tableau_by_name(v);
  else if (key == "discrete_gradient") parse_discrete_gradient(v);
  else if (key == "i_tilde" || key == "i_hat" || key == "i_breve") parse_gradient_approx(v);
  else if (key == "mv_nodes" || key == "fp_max_iter" || key == "newton_max_iter" || key == "rk_order") parse_int(v);
  else if (key == "denom_floor" || key == "fp_tol" || key == "newton_tol" || key == "stage_tol" ||
           key == "epsilon_crit")
    parse_real(v);
  else if (key == "warm_start") parse_bool(v);
}

const std::map<std::string, std::vector<std::string>>& section_keys() {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"problem", {"problem", "I1", "I2", "I3", "alpha", "x0"}},
      {"method",
       {"method", "label", "tableau", "rk_A", "rk_b", "rk_order", "discrete_gradient", "mv_nodes", "i_tilde",
        "i_hat", "i_breve", "denom_floor", "fp_tol", "fp_max_iter", "warm_start", "newton_tol",
        "newton_max_iter", "stage_tol", "epsilon_crit"}},
      {"grid",
       {"h", "h_grid", "t_end", "t_sample", "radii", "crit_h_min", "crit_h_max", "crit_points_per_decade",
        "phase_h", "ref_divisor", "ref_tol", "ref_refinements"}},
      {"output", {"dir", "execution"}},
  };
  return keys;
}

void apply(ExperimentConfig& cfg, const std::string& section, const std::string& key, const std::string& v) {
  if (section == "problem") {
    if (key == "problem") cfg.problem = v;
    else if (key == "I1") cfg.i1 = parse_real(v);
    else if (key == "I2") cfg.i2 = parse_real(v);
    else if (key == "I3") cfg.i3 = parse_real(v);
    else if (key == "alpha") cfg.alpha = parse_real(v);
    else if (key == "x0") cfg.x0 = parse_reals(v);
  } else if (section == "grid") {
    if (key == "h") cfg.h = parse_step_size(v);
    else if (key == "h_grid") cfg.h_grid = parse_steps(v);
    else if (key == "t_end") cfg.t_end = parse_real(v);
    else if (key == "t_sample") cfg.t_sample = parse_real(v);
    else if (key == "radii") cfg.radii = parse_reals(v);
    else if (key == "crit_h_min") cfg.crit_h_min = parse_real(v);
    else if (key == "crit_h_max") cfg.crit_h_max = parse_real(v);
    else if (key == "crit_points_per_decade") cfg.crit_points_per_decade = parse_int(v);
    else if (key == "phase_h") cfg.phase_h = parse_steps(v);
    else if (key == "ref_divisor") cfg.ref_divisor = parse_real(v);
    else if (key == "ref_tol") cfg.ref_tol = parse_real(v);
    else if (key == "ref_refinements") cfg.ref_refinements = parse_int(v);
  } else if (section == "output") {
    if (key == "dir") cfg.out_dir = v;
    else if (key == "execution") {
      if (v == "serial") cfg.execution = Execution::Serial;
      else if (v == "parallel") cfg.execution = Execution::Parallel;
      else throw Error(ErrorKind::InvalidParameter, "execution must be serial or parallel");
    }
  }
}

}  // namespace

StepSize parse_step_size(std::string_view text) {
  const std::string t = trim(text);
  const auto slash = t.find('/');
  if (slash == std::string::npos) return {parse_number(t), 1.0};
  const double den = parse_number(t.substr(slash + 1));
  if (den == 0.0) throw Error(ErrorKind::InvalidParameter, "zero denominator in '" + t + "'");
  return {parse_number(t.substr(0, slash)), den};
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  std::vector<MethodBlock> blocks;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(strip_comment(raw));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') bad(line, "unterminated section header");
      section = trim(std::string_view(s).substr(1, s.size() - 2));
      if (!section_keys().count(section)) bad(line, "unknown section [" + section + "]");
      if (section == "method") blocks.push_back({line, {}});
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) bad(line, "expected key = value");
    if (section.empty()) bad(line, "key outside of a section");
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string value = unquote(trim(std::string_view(s).substr(eq + 1)));
    const auto& allowed = section_keys().at(section);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      bad(line, "unknown key '" + key + "' in [" + section + "]");
    try {
      if (section == "method") {
        check_method_value(key, value);
        if (!blocks.back().keys.emplace(key, value).second) bad(line, "duplicate key '" + key + "'");
      } else {
        apply(cfg, section, key, value);
      }
    } catch (const Error& e) {
      if (std::string(e.what()).rfind("config line", 0) == 0) throw;
      bad(line, e.what());
    }
  }
  for (const auto& blk : blocks) {
    try {
      cfg.methods.push_back(build_method(blk));
    } catch (const Error& e) {
      if (std::string(e.what()).rfind("config line", 0) == 0) throw;
      bad(blk.line, e.what());
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidParameter, "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace dgm
