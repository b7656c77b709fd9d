#include "irp/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "irp/errors.hpp"
#include "irp/format.hpp"

namespace irp {

namespace {

using boost::property_tree::ptree;

class Section {
 public:
  Section(std::string name, const ptree& node) : name_(std::move(name)), node_(node) {}

  bool has(const std::string& key) const { return node_.find(key) != node_.not_found(); }

  std::string raw(const std::string& key) {
    auto it = node_.find(key);
    if (it == node_.not_found()) throw ConfigError(name_ + "." + key, "missing required key");
    used_.insert(key);
    return it->second.data();
  }

  double real(const std::string& key) {
    const std::string text = trim(raw(key));
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
      throw ConfigError(name_ + "." + key, "expected a finite real number, got '" + text + "'");
    }
    return value;
  }

  double real(const std::string& key, double fallback) { return has(key) ? real(key) : fallback; }

  long integer(const std::string& key) {
    const std::string text = trim(raw(key));
    long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ConfigError(name_ + "." + key, "expected an integer, got '" + text + "'");
    }
    return value;
  }

  long integer(const std::string& key, long fallback) { return has(key) ? integer(key) : fallback; }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const std::string text = trim(raw(key));
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError(name_ + "." + key, "expected true or false, got '" + text + "'");
  }

  std::string word(const std::string& key) { return trim(raw(key)); }
  std::string word(const std::string& key, const std::string& fallback) {
    return has(key) ? word(key) : fallback;
  }

  std::vector<double> reals(const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(raw(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
      if (ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(value)) {
        throw ConfigError(name_ + "." + key, "expected a comma-separated list of reals");
      }
      out.push_back(value);
    }
    return out;
  }

  ConfigError invalid(const std::string& key, const std::string& what) const {
    return ConfigError(name_ + "." + key, what);
  }

  /// Rejects keys that were never read.
  void finish() const {
    for (const auto& [key, child] : node_) {
      if (!used_.contains(key)) throw ConfigError(name_ + "." + key, "unknown key");
    }
  }

 private:
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  std::string name_;
  const ptree& node_;
  std::set<std::string> used_;
};

EosConfig parse_eos(Section& sec) {
  EosConfig c;
  const std::string model = sec.word("model");
  if (model == "polytropic") {
    c.model = EosModel::polytropic;
    c.polytropic.gamma0 = sec.real("gamma0");
    c.polytropic.k = sec.real("k", 1.0);
    if (!(c.polytropic.gamma0 > 1.0)) throw sec.invalid("gamma0", "must exceed 1");
    if (!(c.polytropic.k > 0.0)) throw sec.invalid("k", "must be positive");
  } else if (model == "tait") {
    c.model = EosModel::tait;
    TaitParams& t = c.tait;
    t.K_r = sec.real("K_r");
    t.v_r = sec.real("v_r");
    t.p_r = sec.real("p_r");
    t.s_r = sec.real("s_r", 0.0);
    t.e_r = sec.real("e_r");
    t.theta_r = sec.real("theta_r");
    t.nu = sec.real("nu");
    t.C = sec.real("C");
    t.D = sec.real("D");
    if (!(t.K_r > 0.0)) throw sec.invalid("K_r", "must be positive");
    if (!(t.v_r > 0.0)) throw sec.invalid("v_r", "must be positive");
    if (!(t.theta_r > 0.0)) throw sec.invalid("theta_r", "must be positive");
    if (!(t.nu >= 1.0)) throw sec.invalid("nu", "must be >= 1");
    if (!(t.C > 0.0)) throw sec.invalid("C", "must be positive");
  } else {
    throw sec.invalid("model", "expected polytropic or tait, got '" + model + "'");
  }
  sec.finish();
  return c;
}

Grid1D parse_grid(Section& sec) {
  Grid1D g;
  const long n = sec.integer("n_cells");
  if (n < 1 || n > 100000000) throw sec.invalid("n_cells", "must be a positive integer");
  g.n_cells = static_cast<int>(n);
  g.x_min = sec.real("x_min", 0.0);
  g.x_max = sec.real("x_max", 1.0);
  if (!(g.x_max > g.x_min)) throw sec.invalid("x_max", "must exceed grid.x_min");
  const std::string b = sec.word("boundary", "transmissive");
  if (b == "transmissive") {
    g.boundary = BoundaryKind::transmissive;
  } else if (b == "periodic") {
    g.boundary = BoundaryKind::periodic;
  } else if (b == "reflective") {
    g.boundary = BoundaryKind::reflective;
  } else {
    throw sec.invalid("boundary", "expected transmissive, periodic or reflective");
  }
  sec.finish();
  return g;
}

SolverConfig parse_solver(Section& sec) {
  SolverConfig s;
  s.t_final = sec.real("t_final");
  s.cfl = sec.real("cfl", s.cfl);
  const std::string order = sec.word("order", "second");
  if (order == "first") {
    s.order = SchemeOrder::first;
  } else if (order == "second") {
    s.order = SchemeOrder::second;
  } else {
    throw sec.invalid("order", "expected first or second");
  }
  const std::string lim = sec.word("slope_limiter", "minmod");
  if (lim == "minmod") {
    s.slope_limiter = SlopeLimiter::minmod;
  } else if (lim == "none") {
    s.slope_limiter = SlopeLimiter::none;
  } else {
    throw sec.invalid("slope_limiter", "expected minmod or none");
  }
  s.irp_enabled = sec.boolean("irp", true);
  s.max_steps = sec.integer("max_steps", s.max_steps);
  s.check_interfaces = sec.boolean("check_interfaces", false);
  s.max_halvings = static_cast<int>(sec.integer("max_halvings", s.max_halvings));
  sec.finish();
  s.validate();
  return s;
}

PrimitiveState parse_side(Section& sec, const std::string& side) {
  PrimitiveState p;
  p.rho = sec.real(side + "_rho");
  p.u = sec.real(side + "_u");
  p.p = sec.real(side + "_p");
  if (!(p.rho > 0.0)) throw sec.invalid(side + "_rho", "must be positive");
  if (!(p.p > 0.0)) throw sec.invalid(side + "_p", "must be positive");
  return p;
}

InitialCondition parse_initial(Section& sec) {
  InitialCondition ic;
  const std::string type = sec.word("type");
  if (type == "riemann") {
    ic.kind = InitialKind::riemann;
    ic.left = parse_side(sec, "left");
    ic.right = parse_side(sec, "right");
    ic.x0 = sec.real("x0", 0.5);
  } else if (type == "preset") {
    ic.kind = InitialKind::preset;
    ic.preset = sec.word("name");
    if (ic.preset != "smooth_wave" && !riemann_preset(ic.preset)) {
      throw sec.invalid("name", "unknown preset '" + ic.preset + "'");
    }
  } else {
    throw sec.invalid("type", "expected riemann or preset");
  }
  sec.finish();
  return ic;
}

OutputConfig parse_output(Section& sec) {
  OutputConfig o;
  if (sec.has("times")) {
    o.times = sec.reals("times");
    for (double t : o.times) {
      if (!(t >= 0.0)) throw sec.invalid("times", "snapshot times must be non-negative");
    }
  }
  o.directory = sec.word("directory", ".");
  o.prefix = sec.word("prefix", "");
  sec.finish();
  return o;
}

SweepConfig parse_sweep(Section& sec) {
  SweepConfig s;
  for (const char* key : {"s_min", "s_max", "v_min", "v_max"}) {
    if (!sec.has(key)) continue;
    const double value = sec.real(key);
    const std::string k = key;
    if (k == "s_min") s.s_min = value;
    if (k == "s_max") s.s_max = value;
    if (k == "v_min") s.v_min = value;
    if (k == "v_max") s.v_max = value;
  }
  s.n_s = static_cast<int>(sec.integer("n_s", s.n_s));
  s.n_v = static_cast<int>(sec.integer("n_v", s.n_v));
  if (s.n_s < 1) throw sec.invalid("n_s", "must be positive");
  if (s.n_v < 1) throw sec.invalid("n_v", "must be positive");
  if (s.v_min && !(*s.v_min > 0.0)) throw sec.invalid("v_min", "must be positive");
  sec.finish();
  return s;
}

VerifyConfig parse_verify(Section& sec) {
  VerifyConfig v;
  v.samples = static_cast<int>(sec.integer("samples", v.samples));
  const long seed = sec.integer("seed", static_cast<long>(v.seed));
  if (seed < 0) throw sec.invalid("seed", "must be non-negative");
  v.seed = static_cast<std::uint64_t>(seed);
  v.h = sec.real("h", v.h);
  if (v.samples < 1) throw sec.invalid("samples", "must be positive");
  if (!(v.h > 0.0 && v.h < 0.1)) throw sec.invalid("h", "must lie in (0, 0.1)");
  sec.finish();
  return v;
}

std::string_view name_of(BoundaryKind b) {
  switch (b) {
    case BoundaryKind::periodic:
      return "periodic";
    case BoundaryKind::reflective:
      return "reflective";
    case BoundaryKind::transmissive:
      break;
  }
  return "transmissive";
}

}  // namespace

const EosConfig& RunConfig::require_eos() const {
  if (!eos) throw ConfigError("eos.model", "missing required section [eos]");
  return *eos;
}

const Grid1D& RunConfig::require_grid() const {
  if (!grid) throw ConfigError("grid.n_cells", "missing required section [grid]");
  return *grid;
}

const SolverConfig& RunConfig::require_solver() const {
  if (!solver) throw ConfigError("solver.t_final", "missing required section [solver]");
  return *solver;
}

const InitialCondition& RunConfig::require_initial_condition() const {
  if (!initial_condition) {
    throw ConfigError("initial_condition.type", "missing required section [initial_condition]");
  }
  return *initial_condition;
}

RunConfig parse_config(std::string_view text) {
  ptree tree;
  std::istringstream in{std::string(text)};
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("", "line " + std::to_string(e.line()) + ": " + e.message());
  }

  RunConfig cfg;
  for (const auto& [name, node] : tree) {
    if (node.empty()) throw ConfigError(name, "key outside of any section");
    Section sec(name, node);
    if (name == "eos") {
      cfg.eos = parse_eos(sec);
    } else if (name == "grid") {
      cfg.grid = parse_grid(sec);
    } else if (name == "solver") {
      cfg.solver = parse_solver(sec);
    } else if (name == "initial_condition") {
      cfg.initial_condition = parse_initial(sec);
    } else if (name == "output") {
      cfg.output = parse_output(sec);
    } else if (name == "sweep") {
      cfg.sweep = parse_sweep(sec);
    } else if (name == "verify") {
      cfg.verify = parse_verify(sec);
    } else {
      throw ConfigError(name, "unknown section");
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize(const RunConfig& cfg) {
  std::ostringstream out;
  auto line = [&](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  auto real = [&](std::string_view key, double value) { line(key, format_real(value)); };
  bool first = true;
  auto header = [&](std::string_view name) {
    if (!first) out << '\n';
    first = false;
    out << '[' << name << "]\n";
  };

  if (cfg.eos) {
    header("eos");
    if (cfg.eos->model == EosModel::polytropic) {
      line("model", "polytropic");
      real("gamma0", cfg.eos->polytropic.gamma0);
      real("k", cfg.eos->polytropic.k);
    } else {
      const TaitParams& t = cfg.eos->tait;
      line("model", "tait");
      real("K_r", t.K_r);
      real("v_r", t.v_r);
      real("p_r", t.p_r);
      real("s_r", t.s_r);
      real("e_r", t.e_r);
      real("theta_r", t.theta_r);
      real("nu", t.nu);
      real("C", t.C);
      real("D", t.D);
    }
  }
  if (cfg.grid) {
    header("grid");
    line("n_cells", std::to_string(cfg.grid->n_cells));
    real("x_min", cfg.grid->x_min);
    real("x_max", cfg.grid->x_max);
    line("boundary", std::string(name_of(cfg.grid->boundary)));
  }
  if (cfg.solver) {
    const SolverConfig& s = *cfg.solver;
    header("solver");
    real("t_final", s.t_final);
    real("cfl", s.cfl);
    line("order", s.order == SchemeOrder::first ? "first" : "second");
    line("slope_limiter", s.slope_limiter == SlopeLimiter::minmod ? "minmod" : "none");
    line("irp", s.irp_enabled ? "true" : "false");
    line("max_steps", std::to_string(s.max_steps));
    line("check_interfaces", s.check_interfaces ? "true" : "false");
    line("max_halvings", std::to_string(s.max_halvings));
  }
  if (cfg.initial_condition) {
    const InitialCondition& ic = *cfg.initial_condition;
    header("initial_condition");
    if (ic.kind == InitialKind::preset) {
      line("type", "preset");
      line("name", ic.preset);
    } else {
      line("type", "riemann");
      real("left_rho", ic.left.rho);
      real("left_u", ic.left.u);
      real("left_p", ic.left.p);
      real("right_rho", ic.right.rho);
      real("right_u", ic.right.u);
      real("right_p", ic.right.p);
      real("x0", ic.x0);
    }
  }
  if (cfg.output) {
    header("output");
    if (!cfg.output->times.empty()) {
      std::string times;
      for (std::size_t i = 0; i < cfg.output->times.size(); ++i) {
        if (i > 0) times += ", ";
        times += format_real(cfg.output->times[i]);
      }
      line("times", times);
    }
    line("directory", cfg.output->directory);
    if (!cfg.output->prefix.empty()) line("prefix", cfg.output->prefix);
  }
  if (cfg.sweep) {
    const SweepConfig& s = *cfg.sweep;
    header("sweep");
    if (s.s_min) real("s_min", *s.s_min);
    if (s.s_max) real("s_max", *s.s_max);
    if (s.v_min) real("v_min", *s.v_min);
    if (s.v_max) real("v_max", *s.v_max);
    line("n_s", std::to_string(s.n_s));
    line("n_v", std::to_string(s.n_v));
  }
  if (cfg.verify) {
    header("verify");
    line("samples", std::to_string(cfg.verify->samples));
    line("seed", std::to_string(cfg.verify->seed));
    real("h", cfg.verify->h);
  }
  return out.str();
}

std::unique_ptr<Eos> make_eos(const EosConfig& config) {
  if (config.model == EosModel::polytropic) return std::make_unique<PolytropicGas>(config.polytropic);
  return std::make_unique<TaitEos>(config.tait);
}

std::optional<InitialCondition> riemann_preset(std::string_view name) {
  InitialCondition ic;
  ic.kind = InitialKind::riemann;
  if (name == "sod") {
    ic.left = {1.0, 0.0, 1.0};
    ic.right = {0.125, 0.0, 0.1};
    ic.x0 = 0.5;
  } else if (name == "double_shock") {
    ic.left = {5.99924, 19.5975, 460.894};
    ic.right = {5.99242, -6.19633, 46.0950};
    ic.x0 = 0.4;
  } else if (name == "tait_shock") {
    ic.left = {1.05, 0.0, 3.0};
    ic.right = {1.0, 0.0, 1.0};
    ic.x0 = 0.5;
  } else {
    return std::nullopt;
  }
  return ic;
}

InitialData make_initial_data(const InitialCondition& ic) {
  if (ic.kind == InitialKind::preset) {
    if (ic.preset == "smooth_wave") {
      return [](double x) {
        return PrimitiveState{1.0 + 0.2 * std::sin(2.0 * std::numbers::pi * x), 1.0, 1.0};
      };
    }
    const auto preset = riemann_preset(ic.preset);
    if (!preset) throw ConfigError("initial_condition.name", "unknown preset '" + ic.preset + "'");
    return make_initial_data(*preset);
  }
  return [left = ic.left, right = ic.right, x0 = ic.x0](double x) { return x < x0 ? left : right; };
}

}  // namespace irp
