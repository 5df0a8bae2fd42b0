#include "nsalpha/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "nsalpha/csv.hpp"
#include "nsalpha/errors.hpp"
#include "nsalpha/random_field.hpp"
#include "nsalpha/snapshot.hpp"
#include "nsalpha/spectral_ops.hpp"

namespace nsalpha {

namespace pt = boost::property_tree;

namespace {

const std::vector<std::pair<std::string, std::vector<std::string>>>& schema() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> s = {
      {"grid", {"length", "n", "dealias_fraction"}},
      {"physics", {"nu", "alpha", "beta", "indicator", "indicator_scale", "mollifier", "kappa", "kappa0"}},
      {"forcing", {"kind", "amplitude", "shell_min", "shell_max", "seed"}},
      {"initial", {"kind", "seed", "slope", "rms", "shear_mode", "file"}},
      {"time", {"t_end", "dt", "scheme", "picard_tol", "picard_max_iter", "max_halvings", "filter_tol",
                "filter_max_iter"}},
      {"output", {"ledger", "snapshot", "snapshot_interval"}},
      {"study", {"kind", "values", "horizons", "output"}},
  };
  return s;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::string suggestion(const std::string& word, const std::vector<std::string>& candidates) {
  std::string best;
  std::size_t best_d = 3;  // suggest only close matches
  for (const auto& c : candidates) {
    const std::size_t d = edit_distance(word, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best.empty() ? "" : " (did you mean '" + best + "'?)";
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Reads typed values out of the tree, recording problems instead of
// stopping at the first one.
class Reader {
 public:
  Reader(const pt::ptree& tree, std::vector<std::string>& problems) : tree_(tree), problems_(problems) {}

  bool has(const std::string& key) const { return tree_.get_optional<std::string>(path(key)).has_value(); }

  std::string raw(const std::string& key) const { return trim(tree_.get<std::string>(path(key))); }

  void get(const std::string& key, double& out) const {
    if (!has(key)) return;
    const std::string v = raw(key);
    try {
      std::size_t used = 0;
      const double d = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      out = d;
    } catch (const std::exception&) {
      problems_.push_back(key + ": expected a number, got '" + v + "'");
    }
  }

  void get(const std::string& key, int& out) const {
    if (!has(key)) return;
    const std::string v = raw(key);
    try {
      std::size_t used = 0;
      const long d = std::stol(v, &used);
      if (used != v.size() || d < INT32_MIN || d > INT32_MAX) throw std::invalid_argument(v);
      out = int(d);
    } catch (const std::exception&) {
      problems_.push_back(key + ": expected an integer, got '" + v + "'");
    }
  }

  void get(const std::string& key, std::uint64_t& out) const {
    if (!has(key)) return;
    const std::string v = raw(key);
    try {
      std::size_t used = 0;
      if (!v.empty() && v[0] == '-') throw std::invalid_argument(v);
      const unsigned long long d = std::stoull(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      out = d;
    } catch (const std::exception&) {
      problems_.push_back(key + ": expected a nonnegative integer, got '" + v + "'");
    }
  }

  void get(const std::string& key, std::string& out) const {
    if (has(key)) out = raw(key);
  }

  void get(const std::string& key, std::vector<double>& out) const {
    if (!has(key)) return;
    out.clear();
    std::stringstream ss(raw(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      try {
        std::size_t used = 0;
        const double d = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        out.push_back(d);
      } catch (const std::exception&) {
        problems_.push_back(key + ": expected a comma-separated list of numbers, got '" + item + "'");
      }
    }
  }

 private:
  static pt::ptree::path_type path(const std::string& key) { return pt::ptree::path_type(key, '.'); }

  const pt::ptree& tree_;
  std::vector<std::string>& problems_;
};

void check_known_keys(const pt::ptree& tree, std::vector<std::string>& problems) {
  std::vector<std::string> sections;
  for (const auto& [name, keys] : schema()) sections.push_back(name);
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      problems.push_back("key '" + section + "' outside any section");
      continue;
    }
    const auto it = std::find_if(schema().begin(), schema().end(),
                                 [&](const auto& s) { return s.first == section; });
    if (it == schema().end()) {
      problems.push_back("unknown section [" + section + "]" + suggestion(section, sections));
      continue;
    }
    for (const auto& [key, value] : body) {
      (void)value;
      if (std::find(it->second.begin(), it->second.end(), key) == it->second.end())
        problems.push_back("unknown key '" + section + "." + key + "'" + suggestion(key, it->second));
    }
  }
}

bool one_of(const std::string& v, std::initializer_list<const char*> options) {
  for (const char* o : options)
    if (v == o) return true;
  return false;
}

std::string list_text(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_double(v[i]);
  return out;
}

void validate(RunConfig& c, bool kappa_auto, std::vector<std::string>& problems) {
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) problems.push_back(msg);
  };
  auto finite_pos = [](double v) { return std::isfinite(v) && v > 0.0; };

  need(finite_pos(c.grid.length), "grid.length: must be > 0");
  need(c.grid.n >= 4 && c.grid.n % 2 == 0, "grid.n: must be even and >= 4");
  need(c.grid.dealias_fraction > 0.0 && c.grid.dealias_fraction <= 1.0,
       "grid.dealias_fraction: must lie in (0, 1]");

  auto& p = c.physics;
  need(finite_pos(p.nu), "physics.nu: must be > 0");
  need(finite_pos(p.alpha), "physics.alpha: must be > 0");
  need(p.beta > 0.0 && p.beta < 1.0, "physics.beta: must lie in the open interval (0, 1), got " + format_double(p.beta));
  need(one_of(p.indicator, {"constant_one", "smooth_local", "global_energy"}),
       "physics.indicator: expected constant_one, smooth_local or global_energy, got '" + p.indicator + "'");
  need(p.indicator_scale > 0.0, "physics.indicator_scale: must be > 0");
  need(one_of(p.mollifier, {"cutoff", "none"}),
       "physics.mollifier: expected cutoff or none, got '" + p.mollifier + "'");
  need(finite_pos(p.kappa0), "physics.kappa0: must be > 0");
  if (!kappa_auto) need(p.kappa >= 0.0 && !std::isnan(p.kappa), "physics.kappa: must be >= 0 or 'auto'");
  need(!(p.indicator == "smooth_local" && p.mollifier == "none"),
       "physics: smooth_local indicator requires a cutoff mollifier");

  auto& f = c.forcing;
  need(one_of(f.kind, {"none", "random_shell"}), "forcing.kind: expected none or random_shell, got '" + f.kind + "'");
  need(f.amplitude >= 0.0 && std::isfinite(f.amplitude), "forcing.amplitude: must be >= 0");
  need(f.shell_min >= 0.0 && f.shell_max >= f.shell_min, "forcing: need 0 <= shell_min <= shell_max");

  auto& i = c.initial;
  need(one_of(i.kind, {"random", "shear", "zero", "snapshot"}),
       "initial.kind: expected random, shear, zero or snapshot, got '" + i.kind + "'");
  need(i.rms >= 0.0 && std::isfinite(i.rms), "initial.rms: must be >= 0");
  need(i.shear_mode >= 1, "initial.shear_mode: must be >= 1");
  if (i.kind == "snapshot") {
    need(!i.file.empty(), "initial.file: required for snapshot initial data");
    if (!i.file.empty()) need(std::filesystem::exists(i.file), "initial.file: '" + i.file + "' does not exist");
  }

  auto& t = c.time;
  need(finite_pos(t.t_end), "time.t_end: must be > 0");
  need(finite_pos(t.dt), "time.dt: must be > 0");
  need(one_of(t.scheme, {"duhamel_picard", "imex_cn"}),
       "time.scheme: expected duhamel_picard or imex_cn, got '" + t.scheme + "'");
  need(t.picard_tol > 0.0, "time.picard_tol: must be > 0");
  need(t.picard_max_iter >= 1, "time.picard_max_iter: must be >= 1");
  need(t.max_halvings >= 0, "time.max_halvings: must be >= 0");
  need(t.filter_tol > 0.0, "time.filter_tol: must be > 0");
  need(t.filter_max_iter >= 0, "time.filter_max_iter: must be >= 0");
  need(c.output.snapshot_interval >= 0, "output.snapshot_interval: must be >= 0");

  if (c.study) {
    need(parse_study_kind(c.study->kind).has_value(), "study.kind: unknown study '" + c.study->kind + "'");
  }

  // Gr-derived cutoff, resolved now so that the canonical text is numeric.
  if (kappa_auto && problems.empty()) {
    if (p.mollifier != "cutoff") {
      problems.push_back("physics.kappa: 'auto' requires mollifier = cutoff");
    } else {
      const TorusGrid grid = make_grid(c);
      const ForcingSpec forcing = make_forcing(c, grid);
      p.kappa = turbulence_frequencies(forcing.l2_norm(), c.grid.length, p.nu, p.kappa0).kappa_D;
    }
  }
}

}  // namespace

// -- parsing ------------------------------------------------------------------

std::pair<std::string, std::string> parse_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  const std::string key = trim(assignment.substr(0, eq));
  if (eq == std::string::npos || key.find('.') == std::string::npos || key.front() == '.' ||
      key.back() == '.')
    throw ConfigError({"malformed override '" + assignment + "': expected section.key=value"});
  return {key, trim(assignment.substr(eq + 1))};
}

std::string default_study_config_text(StudyKind kind) {
  switch (kind) {
    case StudyKind::alpha_to_zero:
      return "[physics]\n"
             "nu = 0.1\n"
             "alpha = 0.5\n"
             "beta = 0.5\n"
             "indicator = smooth_local\n"
             "mollifier = cutoff\n"
             "kappa = 4\n"
             "\n"
             "[time]\n"
             "t_end = 0.5\n"
             "dt = 0.01\n"
             "\n"
             "[study]\n"
             "kind = alpha_to_zero\n"
             "values = 0.4, 0.2, 0.1, 0.05\n";
    case StudyKind::beta_to_one:
      return "[physics]\n"
             "nu = 0.1\n"
             "alpha = 0.5\n"
             "indicator = smooth_local\n"
             "mollifier = cutoff\n"
             "kappa = 4\n"
             "\n"
             "[time]\n"
             "t_end = 0.5\n"
             "dt = 0.01\n"
             "\n"
             "[study]\n"
             "kind = beta_to_one\n"
             "values = 0.5, 0.75, 0.875, 0.9375\n";
    case StudyKind::continuous_dependence:
      return "[physics]\n"
             "nu = 0.1\n"
             "alpha = 0.5\n"
             "beta = 0.5\n"
             "\n"
             "[time]\n"
             "t_end = 1\n"
             "dt = 0.01\n"
             "\n"
             "[study]\n"
             "kind = continuous_dependence\n"
             "values = 1e-2, 1e-3, 1e-4\n"
             "horizons = 0.25, 0.5, 1\n";
    case StudyKind::absorbing_set:
      return "[physics]\n"
             "nu = 0.25\n"
             "alpha = 0.5\n"
             "beta = 0.5\n"
             "\n"
             "[forcing]\n"
             "amplitude = 0.5\n"
             "\n"
             "[initial]\n"
             "seed = 11\n"
             "slope = -1\n"
             "\n"
             "[time]\n"
             "t_end = 10\n"
             "dt = 0.05\n"
             "\n"
             "[study]\n"
             "kind = absorbing_set\n"
             "values = 0, 2, 4\n";
    case StudyKind::appendix_epsilon:
      return "[physics]\n"
             "nu = 0.1\n"
             "alpha = 0.5\n"
             "beta = 0.5\n"
             "indicator = global_energy\n"
             "indicator_scale = 15.749609945722419\n"
             "mollifier = none\n"
             "\n"
             "[initial]\n"
             "slope = -1\n"
             "\n"
             "[time]\n"
             "t_end = 0.5\n"
             "dt = 0.01\n"
             "\n"
             "[study]\n"
             "kind = appendix_epsilon\n"
             "values = 0.5, 0.25, 0.125\n";
  }
  throw std::invalid_argument("default_study_config_text: unknown kind");
}

RunConfig parse_config(const std::string& text, const ConfigOverrides& overrides) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError({std::string("syntax: ") + e.what()});
  }
  for (const auto& [key, value] : overrides) tree.put(pt::ptree::path_type(key, '.'), value);

  std::vector<std::string> problems;
  check_known_keys(tree, problems);
  Reader r(tree, problems);
  RunConfig c;

  r.get("grid.length", c.grid.length);
  r.get("grid.n", c.grid.n);
  r.get("grid.dealias_fraction", c.grid.dealias_fraction);

  r.get("physics.nu", c.physics.nu);
  r.get("physics.alpha", c.physics.alpha);
  r.get("physics.beta", c.physics.beta);
  r.get("physics.indicator", c.physics.indicator);
  r.get("physics.indicator_scale", c.physics.indicator_scale);
  r.get("physics.mollifier", c.physics.mollifier);
  const bool kappa_auto = r.has("physics.kappa") && r.raw("physics.kappa") == "auto";
  if (!kappa_auto) r.get("physics.kappa", c.physics.kappa);
  r.get("physics.kappa0", c.physics.kappa0);

  r.get("forcing.kind", c.forcing.kind);
  r.get("forcing.amplitude", c.forcing.amplitude);
  r.get("forcing.shell_min", c.forcing.shell_min);
  r.get("forcing.shell_max", c.forcing.shell_max);
  r.get("forcing.seed", c.forcing.seed);

  r.get("initial.kind", c.initial.kind);
  r.get("initial.seed", c.initial.seed);
  r.get("initial.slope", c.initial.slope);
  r.get("initial.rms", c.initial.rms);
  r.get("initial.shear_mode", c.initial.shear_mode);
  r.get("initial.file", c.initial.file);

  r.get("time.t_end", c.time.t_end);
  r.get("time.dt", c.time.dt);
  r.get("time.scheme", c.time.scheme);
  r.get("time.picard_tol", c.time.picard_tol);
  r.get("time.picard_max_iter", c.time.picard_max_iter);
  r.get("time.max_halvings", c.time.max_halvings);
  r.get("time.filter_tol", c.time.filter_tol);
  r.get("time.filter_max_iter", c.time.filter_max_iter);

  r.get("output.ledger", c.output.ledger);
  r.get("output.snapshot", c.output.snapshot);
  r.get("output.snapshot_interval", c.output.snapshot_interval);

  if (tree.get_child_optional("study")) {
    StudyConfig s;
    r.get("study.kind", s.kind);
    r.get("study.values", s.values);
    r.get("study.horizons", s.horizons);
    r.get("study.output", s.output);
    c.study = s;
  }

  validate(c, kappa_auto, problems);
  if (!problems.empty()) throw ConfigError(problems);
  return c;
}

RunConfig load_config(const std::string& path, const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read config file '" + path + "'"});
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), overrides);
}

std::string to_text(const RunConfig& c) {
  std::ostringstream o;
  auto num = [](double v) { return format_double(v); };
  o << "[grid]\n"
    << "length = " << num(c.grid.length) << '\n'
    << "n = " << c.grid.n << '\n'
    << "dealias_fraction = " << num(c.grid.dealias_fraction) << "\n\n";
  o << "[physics]\n"
    << "nu = " << num(c.physics.nu) << '\n'
    << "alpha = " << num(c.physics.alpha) << '\n'
    << "beta = " << num(c.physics.beta) << '\n'
    << "indicator = " << c.physics.indicator << '\n'
    << "indicator_scale = " << num(c.physics.indicator_scale) << '\n'
    << "mollifier = " << c.physics.mollifier << '\n'
    << "kappa = " << num(c.physics.kappa) << '\n'
    << "kappa0 = " << num(c.physics.kappa0) << "\n\n";
  o << "[forcing]\n"
    << "kind = " << c.forcing.kind << '\n'
    << "amplitude = " << num(c.forcing.amplitude) << '\n'
    << "shell_min = " << num(c.forcing.shell_min) << '\n'
    << "shell_max = " << num(c.forcing.shell_max) << '\n'
    << "seed = " << c.forcing.seed << "\n\n";
  o << "[initial]\n"
    << "kind = " << c.initial.kind << '\n'
    << "seed = " << c.initial.seed << '\n'
    << "slope = " << num(c.initial.slope) << '\n'
    << "rms = " << num(c.initial.rms) << '\n'
    << "shear_mode = " << c.initial.shear_mode << '\n'
    << "file = " << c.initial.file << "\n\n";
  o << "[time]\n"
    << "t_end = " << num(c.time.t_end) << '\n'
    << "dt = " << num(c.time.dt) << '\n'
    << "scheme = " << c.time.scheme << '\n'
    << "picard_tol = " << num(c.time.picard_tol) << '\n'
    << "picard_max_iter = " << c.time.picard_max_iter << '\n'
    << "max_halvings = " << c.time.max_halvings << '\n'
    << "filter_tol = " << num(c.time.filter_tol) << '\n'
    << "filter_max_iter = " << c.time.filter_max_iter << "\n\n";
  o << "[output]\n"
    << "ledger = " << c.output.ledger << '\n'
    << "snapshot = " << c.output.snapshot << '\n'
    << "snapshot_interval = " << c.output.snapshot_interval << '\n';
  if (c.study) {
    o << "\n[study]\n"
      << "kind = " << c.study->kind << '\n'
      << "values = " << list_text(c.study->values) << '\n'
      << "horizons = " << list_text(c.study->horizons) << '\n'
      << "output = " << c.study->output << '\n';
  }
  return o.str();
}

// -- builders -----------------------------------------------------------------

TorusGrid make_grid(const RunConfig& c) {
  return TorusGrid(c.grid.length, c.grid.n, c.grid.dealias_fraction);
}

FilterProblem make_filter_problem(const RunConfig& c, const TorusGrid& grid) {
  const auto& p = c.physics;
  IndicatorSpec ind;
  if (p.indicator == "constant_one") ind = IndicatorSpec::constant_one(p.beta);
  else if (p.indicator == "smooth_local") ind = IndicatorSpec::smooth_local(p.beta, p.indicator_scale);
  else ind = IndicatorSpec::global_energy(p.beta, p.indicator_scale);
  const MollifierSpec moll = p.mollifier == "cutoff" ? MollifierSpec::cutoff(p.kappa) : MollifierSpec::none();
  FilterProblem problem{p.alpha, ind, moll, grid};
  problem.validate();
  return problem;
}

AdvectionModel make_model(const RunConfig& c, const TorusGrid& grid) {
  return AdvectionModel::alpha_model(make_filter_problem(c, grid));
}

ForcingSpec make_forcing(const RunConfig& c, const TorusGrid& grid) {
  if (c.forcing.kind == "none" || c.forcing.amplitude == 0.0) return ForcingSpec::none(grid);
  return random_shell_forcing(grid, c.forcing.seed, c.forcing.shell_min, c.forcing.shell_max,
                              c.forcing.amplitude);
}

std::pair<SolenoidalField, double> make_initial(const RunConfig& c, const TorusGrid& grid) {
  const auto& i = c.initial;
  const double target = i.rms * std::sqrt(grid.volume());
  auto rescale = [target](SpectralField f) {
    dealias(f);
    const double n = l2_norm(f);
    if (n > 0.0) f *= target / n;
    return SolenoidalField::checked(std::move(f));
  };
  if (i.kind == "zero") return {SolenoidalField(grid), 0.0};
  if (i.kind == "shear") return {rescale(shear_mode(grid, i.shear_mode, 1.0).field()), 0.0};
  if (i.kind == "snapshot") {
    Snapshot s = read_snapshot(i.file, grid);
    return {SolenoidalField::checked(std::move(s.field)), s.header.t};
  }
  return {rescale(random_solenoidal(grid, i.seed, i.slope).field()), 0.0};
}

StepConfig make_step_config(const RunConfig& c) {
  StepConfig s;
  s.dt = c.time.dt;
  s.nu = c.physics.nu;
  s.picard_tol = c.time.picard_tol;
  s.picard_max_iter = c.time.picard_max_iter;
  s.max_halvings = c.time.max_halvings;
  s.scheme = c.time.scheme == "imex_cn" ? Scheme::imex_cn : Scheme::duhamel_picard;
  s.filter.tolerance = c.time.filter_tol;
  s.filter.max_iterations = c.time.filter_max_iter;
  return s;
}

Scenario make_scenario(const RunConfig& c) {
  const TorusGrid grid = make_grid(c);
  const FilterProblem p = make_filter_problem(c, grid);
  auto [u0, t0] = make_initial(c, grid);
  (void)t0;
  return Scenario{grid,     p.alpha,  p.indicator, p.mollifier, make_forcing(c, grid),
                  u0,       c.time.t_end, make_step_config(c), 1};
}

StudySpec make_study_spec(const RunConfig& c) {
  if (!c.study) throw ConfigError({"no [study] block in the configuration"});
  const auto kind = parse_study_kind(c.study->kind);
  if (!kind) throw ConfigError({"study.kind: unknown study '" + c.study->kind + "'"});
  StudySpec spec = default_study(*kind);
  spec.scenario = make_scenario(c);
  if (!c.study->values.empty()) spec.values = c.study->values;
  if (!c.study->horizons.empty()) spec.horizons = c.study->horizons;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError({e.what()});
  }
  return spec;
}

ModelParams make_model_params(const RunConfig& c) {
  const TorusGrid grid = make_grid(c);
  const FilterProblem problem = make_filter_problem(c, grid);
  const ForcingSpec forcing = make_forcing(c, grid);
  ModelParams m;
  m.alpha = c.physics.alpha;
  m.beta = c.physics.beta;
  m.nu = c.physics.nu;
  m.L = c.grid.length;
  m.phi_l2 = problem.mollifier.l2_norm(m.L);
  m.phi_h1 = problem.mollifier.h1_norm(m.L);
  m.c_a = problem.indicator.lipschitz();
  m.c_a_prime = problem.indicator.gradient_lipschitz();
  m.f_hminus1 = forcing.hminus1_norm();
  m.f_l2 = forcing.l2_norm();
  m.kappa0 = c.physics.kappa0;
  m.u0_l2 = l2_norm(make_initial(c, grid).first);
  m.T = c.time.t_end;
  return m;
}

}  // namespace nsalpha
