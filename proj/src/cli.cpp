#include "shrira/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "shrira/arith.hpp"
#include "shrira/bona_smith.hpp"
#include "shrira/errors.hpp"
#include "shrira/estimates.hpp"
#include "shrira/random_field.hpp"
#include "shrira/solver.hpp"
#include "shrira/spectral_ops.hpp"
#include "shrira/spf2.hpp"

namespace shrira::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Initial conditions
// ---------------------------------------------------------------------------

Complex parse_complex(const std::string& raw) {
  std::string t;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  if (t.empty()) throw PreconditionError("complex value: empty");
  auto to_double = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) throw PreconditionError("complex value: cannot parse '" + raw + "'");
    return v;
  };
  if (t.back() != 'i') return {to_double(t), 0.0};
  t.pop_back();
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, to_double(t)};
  return {to_double(t.substr(0, split)), to_double(t.substr(split))};
}

namespace {

std::map<std::string, std::string> key_values(const std::string& body, const std::string& whole) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ':')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw PreconditionError("initial condition '" + whole + "': expected key=value, got '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

double as_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw PreconditionError("initial condition: '" + key + "' must be a number, got '" + v + "'");
}

}  // namespace

SpectralField parse_initial_condition(const std::string& spec, const GridSpec& grid, bool regrid_file) {
  if (spec.rfind("file:", 0) == 0) {
    SpectralField f = load_field(spec.substr(5));
    if (regrid_file && !f.grid().same_modes(grid)) f = regrid(f, grid);
    return f;
  }
  if (spec.rfind("random", 0) == 0) {
    auto kv = key_values(spec.substr(6), spec);
    static const std::vector<std::string> known{"s", "seed", "norm", "hs", "mean0", "dealias"};
    for (const auto& [k, v] : kv) {
      if (std::find(known.begin(), known.end(), k) == known.end()) {
        throw PreconditionError("initial condition '" + spec + "': unknown key '" + k + "'");
      }
    }
    RandomFieldOptions opts;
    if (kv.count("s")) opts.sigma = as_double("s", kv["s"]);
    opts.x_mean_zero = !kv.count("mean0") || kv["mean0"] != "0";
    opts.dealiased = !kv.count("dealias") || kv["dealias"] != "0";
    std::uint64_t seed = 0;
    if (kv.count("seed")) {
      const double d = as_double("seed", kv["seed"]);
      if (d < 0 || d != std::floor(d)) throw PreconditionError("initial condition: seed must be a nonnegative integer");
      seed = static_cast<std::uint64_t>(d);
    }
    SpectralField f = random_field(grid, opts, seed);
    if (kv.count("norm")) {
      const double hs = kv.count("hs") ? as_double("hs", kv["hs"]) : 2.0;
      f = scaled_to_norm(f, hs, as_double("norm", kv["norm"]));
    }
    return f;
  }
  if (spec.rfind("modes:", 0) == 0) {
    static const std::regex item(R"(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*=\s*([^,()]+))");
    const std::string body = spec.substr(6);
    ModeList modes;
    std::size_t consumed = 0;
    for (auto it = std::sregex_iterator(body.begin(), body.end(), item); it != std::sregex_iterator(); ++it) {
      const auto& mt = *it;
      const std::string gap = body.substr(consumed, static_cast<std::size_t>(mt.position()) - consumed);
      if (gap.find_first_not_of(", ") != std::string::npos) {
        throw PreconditionError("initial condition '" + spec + "': cannot parse near '" + gap + "'");
      }
      modes.push_back({{std::stoi(mt[1]), std::stoi(mt[2])}, parse_complex(mt[3])});
      consumed = static_cast<std::size_t>(mt.position() + mt.length());
    }
    if (modes.empty() || body.substr(consumed).find_first_not_of(", ") != std::string::npos) {
      throw PreconditionError("initial condition '" + spec + "': expected (m,n)=value[,...]");
    }
    return synthesize(modes, grid, true);
  }
  throw PreconditionError("initial condition '" + spec + "': expected random:..., modes:... or file:...");
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

namespace {

std::string utc_stamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

class Session {
 public:
  Session(RunConfig cfg, std::ostream& out) : cfg_(std::move(cfg)), out_(out) {}

  const RunConfig& config() const { return cfg_; }

  // Created lazily so commands that fail validation leave nothing behind.
  const fs::path& dir() {
    if (dir_.empty()) {
      const std::string stamp = utc_stamp();
      std::string base = cfg_.subcommand + "-" + stamp + "-s" + std::to_string(cfg_.rng_seed);
      fs::path candidate = cfg_.output_dir / base;
      for (int k = 1; fs::exists(candidate); ++k) candidate = cfg_.output_dir / (base + "-" + std::to_string(k));
      fs::create_directories(candidate);
      dir_ = candidate;
      created_ = stamp;
    }
    return dir_;
  }

  void report(const std::string& name, const ProbeReport& rep) {
    if (cfg_.report_format != ReportFormat::kCsv) artifact(name + ".json", rep.to_json().dump(2) + "\n");
    if (cfg_.report_format != ReportFormat::kJson) artifact(name + ".csv", rep.to_csv());
    out_ << name << ": estimate=" << to_string(rep.estimate_id) << " fitted_constant=" << rep.fitted_constant
         << " ceiling=" << rep.ceiling;
    if (rep.slope_fit) out_ << " slope=" << rep.slope_fit->exponent;
    out_ << " pass=" << (rep.pass ? "true" : "false") << "\n";
    if (!rep.pass) breach_ = true;
  }

  void artifact(const std::string& name, const std::string& text) {
    write_text(dir() / name, text);
    artifacts_.push_back(name);
  }

  void field(const std::string& name, const SpectralField& f) {
    fs::create_directories((dir() / name).parent_path());
    save_field(f, dir() / name);
    artifacts_.push_back(name);
  }

  bool wrote_anything() const { return !dir_.empty(); }
  bool breach() const { return breach_; }

  void finish() {
    if (dir_.empty()) return;
    json m;
    m["schema"] = "shrira-lab/manifest-v1";
    m["version"] = SHRIRA_LAB_VERSION;
    m["created_utc"] = created_;
    m["subcommand"] = cfg_.subcommand;
    m["argv"] = cfg_.argv;
    m["rng_seed"] = cfg_.rng_seed;
    m["report_format"] = cfg_.report_format == ReportFormat::kJson ? "json"
                         : cfg_.report_format == ReportFormat::kCsv ? "csv"
                                                                     : "both";
    m["params"] = cfg_.params;
    m["artifacts"] = artifacts_;
    write_text(dir_ / "manifest.json", m.dump(2) + "\n");
    out_ << "run directory: " << dir_.string() << "\n";
  }

 private:
  RunConfig cfg_;
  std::ostream& out_;
  fs::path dir_;
  std::string created_;
  std::vector<std::string> artifacts_;
  bool breach_ = false;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw PreconditionError(std::string(what) + ": cannot parse '" + item + "'");
    }
  }
  if (v.empty()) throw PreconditionError(std::string(what) + ": empty list");
  return v;
}

json trajectory_json(const Trajectory& tr) {
  json j;
  j["schema"] = "shrira-lab/trajectory-v1";
  j["s"] = tr.s;
  j["times"] = tr.times;
  json diag = json::array();
  for (const auto& d : tr.diagnostics) {
    diag.push_back({{"l2", d.l2},
                    {"hs", d.hs},
                    {"linf", d.linf},
                    {"ux_linf", d.ux_linf},
                    {"uy_linf", d.uy_linf},
                    {"grad_linf", d.grad_linf},
                    {"x_mean_residual", d.x_mean_residual}});
  }
  j["diagnostics"] = diag;
  j["warnings"] = tr.warnings;
  return j;
}

std::string trajectory_csv(const Trajectory& tr) {
  std::ostringstream os;
  os << std::setprecision(17) << "t,l2,hs,linf,ux_linf,uy_linf,grad_linf,x_mean_residual\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const auto& d = tr.diagnostics[i];
    os << tr.times[i] << ',' << d.l2 << ',' << d.hs << ',' << d.linf << ',' << d.ux_linf << ',' << d.uy_linf << ','
       << d.grad_linf << ',' << d.x_mean_residual << '\n';
  }
  return os.str();
}

// Options shared by every command that integrates the equation.
struct SolveOptions {
  int grid = 128;
  int grid_y = 0;
  double dt = 1e-4;
  double horizon = 0.05;
  std::string ic;
  std::string integrator = "ifrk4";
  double s = 2.0;
  int stride = 1;
  bool no_dealias = false;
  double cfl = 0.5;
  double blowup = 1e6;

  void add(CLI::App* app, bool require_ic = true) {
    app->add_option("--grid", grid, "modes per direction (power of two)")->capture_default_str();
    app->add_option("--grid-y", grid_y, "modes in y if different from --grid");
    app->add_option("--dt", dt, "time step")->capture_default_str();
    app->add_option("--T", horizon, "final time")->capture_default_str();
    auto* o = app->add_option("--ic", ic, "initial condition (random:..., modes:..., file:...)");
    if (require_ic) o->required();
    app->add_option("--integrator", integrator, "ifrk4 or strang")->capture_default_str();
    app->add_option("--s", s, "Sobolev index for diagnostics and probes")->capture_default_str();
    app->add_option("--stride", stride, "record every k-th step")->capture_default_str();
    app->add_flag("--no-dealias", no_dealias, "disable the 2/3 rule");
    app->add_option("--cfl", cfl, "CFL ceiling")->capture_default_str();
    app->add_option("--blowup", blowup, "L^inf ceiling treated as blow-up")->capture_default_str();
  }

  GridSpec grid_spec() const { return GridSpec(grid, grid_y > 0 ? grid_y : grid); }

  SolveConfig config() const {
    SolveConfig c;
    c.dt = dt;
    c.horizon = horizon;
    c.integrator = parse_integrator(integrator);
    c.dealias = !no_dealias;
    c.s = s;
    c.record_stride = stride;
    c.cfl = cfl;
    c.blowup_ceiling = blowup;
    c.validate();
    return c;
  }

  SpectralField initial() const { return parse_initial_condition(ic, grid_spec()); }
};

void record_params(const CLI::App* sub, json& params) {
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_name();
    if (name.empty() || name == "--help" || name == "-h") continue;
    const std::string key = opt->get_lnames().empty() ? name : opt->get_lnames().front();
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_type_size() == 0) params[key] = true;
      else params[key] = res.size() == 1 ? json(res.front()) : json(res);
    } else if (!opt->get_default_str().empty()) {
      params[key] = opt->get_default_str();
    }
  }
}

template <class T>
void print_row(std::ostream& out, const T& row) {
  out << row.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& argv_in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> argv = argv_in;
  CLI::App app{"Pseudospectral lab for the periodic 2-D Benjamin-Ono (Shrira) equation"};
  app.name("shrira-lab");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string format = "json";
  std::string out_dir = "runs";
  bool out_given = false;
  app.add_option("--seed", cfg.rng_seed, "RNG seed")->capture_default_str();
  auto* out_opt = app.add_option("--out", out_dir, "parent directory for run directories")->capture_default_str();
  app.add_option("--format", format, "report format: json, csv or both")
      ->check(CLI::IsMember({"json", "csv", "both"}))
      ->capture_default_str();
  std::string replay;
  app.add_option("--replay", replay, "re-execute the run recorded in a manifest.json");

  // solve ------------------------------------------------------------------
  SolveOptions solve_opt;
  int snapshot_every = 0;
  auto* solve = app.add_subcommand("solve", "integrate the equation and record diagnostics");
  solve_opt.add(solve);
  solve->add_option("--snapshots", snapshot_every, "save every k-th recorded state as SPF2 (0: first and last)");

  // probe-strichartz --------------------------------------------------------
  int n_max = 64, strich_samples = 50, strich_grid = 256, global_grid = 32, shell = -1;
  double alpha = 0.3, strich_sigma = 1.0, strich_ceiling = 4.0, slope_ceiling = 0.35, global_s = 0.8;
  bool global = false;
  auto* strich = app.add_subcommand("probe-strichartz", "localized and global Strichartz probes");
  strich->add_option("--Nmax", n_max, "largest dyadic shell")->capture_default_str();
  strich->add_option("--N", shell, "probe a single shell (0 or a power of two)");
  strich->add_option("--samples", strich_samples, "random data per shell")->capture_default_str();
  strich->add_option("--alpha", alpha, "exponent in the right-hand side (> 1/4)")->capture_default_str();
  strich->add_option("--grid", strich_grid, "modes per direction")->capture_default_str();
  strich->add_option("--sigma", strich_sigma, "decay exponent of the random data")->capture_default_str();
  strich->add_option("--ceiling", strich_ceiling, "ceiling for the fitted constant")->capture_default_str();
  strich->add_option("--slope-ceiling", slope_ceiling, "ceiling for the fitted exponent")->capture_default_str();
  strich->add_flag("--global", global, "run the [0,1] probe against ||u0||_{H^s} instead");
  strich->add_option("--s", global_s, "Sobolev index for --global")->capture_default_str();
  strich->add_option("--global-grid", global_grid, "grid for --global")->capture_default_str();

  // probe-kernel ------------------------------------------------------------
  int k_max = 6, j_max = 12, per_cell = 20;
  double kernel_eps = 0.1, kernel_ceiling = 64.0;
  auto* kernel = app.add_subcommand("probe-kernel", "kernel sum scan over (k, j)");
  kernel->add_option("--kmax", k_max)->capture_default_str();
  kernel->add_option("--jmax", j_max)->capture_default_str();
  kernel->add_option("--per-cell", per_cell, "random (t, x, y) per cell")->capture_default_str();
  kernel->add_option("--eps", kernel_eps)->capture_default_str();
  kernel->add_option("--ceiling", kernel_ceiling)->capture_default_str();

  // probe-commutator / probe-product ---------------------------------------
  struct PairOptions {
    double s = 1.0;
    int samples = 100;
    int grid = 32;
    double sigma = 3.0;
    double ceiling = 4.0;
    std::string f, g;
  };
  PairOptions comm_opt, prod_opt;
  prod_opt.s = 0.0;
  auto add_pair = [](CLI::App* sub, PairOptions& o) {
    sub->add_option("--s", o.s, "Sobolev index")->capture_default_str();
    sub->add_option("--samples", o.samples)->capture_default_str();
    sub->add_option("--grid", o.grid)->capture_default_str();
    sub->add_option("--sigma", o.sigma, "decay exponent of the random pairs")->capture_default_str();
    sub->add_option("--ceiling", o.ceiling)->capture_default_str();
    sub->add_option("--f", o.f, "first field (initial-condition syntax); with --g, probes one pair");
    sub->add_option("--g", o.g, "second field");
  };
  auto* comm = app.add_subcommand("probe-commutator", "commutator estimate ||J^s(fg) - f J^s g||");
  add_pair(comm, comm_opt);
  auto* prod = app.add_subcommand("probe-product", "product estimate ||fg||_{H^s}");
  add_pair(prod, prod_opt);

  // probe-energy / probe-gt / probe-lemma52 ---------------------------------
  SolveOptions energy_opt, gt_opt, l52_opt;
  auto* energy = app.add_subcommand("probe-energy", "energy inequality along a trajectory");
  energy_opt.add(energy);
  auto* gt = app.add_subcommand("probe-gt", "g(T) and L^1_T L^inf bounds along a trajectory");
  gt_opt.add(gt);
  double a_s = 10.0;
  std::optional<double> c_s;
  int min_steps = 64;
  auto* l52 = app.add_subcommand("probe-lemma52", "a priori bounds up to the existence time");
  l52_opt.add(l52);
  l52->add_option("--A", a_s, "constant A_s in T = (A_s ||u0|| + 1)^-2")->capture_default_str();
  l52->add_option("--Cs", c_s, "C_s (default: fitted on the same run)");
  l52->add_option("--min-steps", min_steps, "at least this many steps up to T")->capture_default_str();

  // bona-smith --------------------------------------------------------------
  std::string bs_mode = "convergence", bs_n_list = "8,16,32,64,128", bs_deltas = "1e-1,1e-2,1e-3,1e-4";
  double s_data = 2.5;
  int export_n = 0;
  SolveOptions bs_opt;
  bs_opt.grid = 1024;
  bs_opt.s = 1.75;
  auto* bs = app.add_subcommand("bona-smith", "mollifier convergence and flow continuity");
  bs->add_option("--mode", bs_mode, "convergence or continuity")
      ->check(CLI::IsMember({"convergence", "continuity"}))
      ->capture_default_str();
  bs_opt.add(bs, false);
  bs->add_option("--s-data", s_data, "decay of the synthetic data (used when --ic is absent)")->capture_default_str();
  bs->add_option("--n-list", bs_n_list, "comma-separated mollifier scales")->capture_default_str();
  bs->add_option("--deltas", bs_deltas, "comma-separated perturbation sizes")->capture_default_str();
  bs->add_option("--export-n", export_n, "also save mollify(w0, n) as SPF2");

  // dirichlet / weyl / poisson / field-info --------------------------------
  double d_alpha = 0.0, d_q = 1.0;
  auto* dir = app.add_subcommand("dirichlet", "rational approximation a/q with q <= Q");
  dir->add_option("--alpha", d_alpha)->required();
  dir->add_option("--Q", d_q)->required();

  double w_alpha = 0.0, w_beta = 0.0, w_eps = 0.05, w_q = 0.0;
  long long w_n = 100;
  bool w_scan = false;
  int w_samples = 500, w_lo = 4, w_hi = 12;
  auto* weyl = app.add_subcommand("weyl", "quadratic Weyl sums against the Weyl bound");
  weyl->add_option("--alpha", w_alpha)->capture_default_str();
  weyl->add_option("--beta", w_beta)->capture_default_str();
  weyl->add_option("--N", w_n)->capture_default_str();
  weyl->add_option("--eps", w_eps)->capture_default_str();
  weyl->add_option("--Q", w_q, "Dirichlet Q (default N)");
  weyl->add_flag("--scan", w_scan, "Monte-Carlo scan instead of a single sum");
  weyl->add_option("--samples", w_samples, "quadratics in the scan")->capture_default_str();
  weyl->add_option("--log2-min", w_lo)->capture_default_str();
  weyl->add_option("--log2-max", w_hi)->capture_default_str();

  std::string p_family = "gaussian";
  double p_sigma = 1.0;
  int p_trunc = 20;
  auto* poisson = app.add_subcommand("poisson", "truncated Poisson summation check");
  poisson->add_option("--family", p_family, "gaussian or bump")->capture_default_str();
  poisson->add_option("--sigma", p_sigma)->capture_default_str();
  poisson->add_option("--truncation", p_trunc)->capture_default_str();

  std::string info_ic;
  int info_grid = 0;
  auto* info = app.add_subcommand("field-info", "norms and structure of a field");
  info->add_option("--ic", info_ic, "field (initial-condition syntax)")->required();
  info->add_option("--grid", info_grid, "grid for random/modes data (default 64; files keep their own)");

  // --replay is handled before the subcommand requirement applies.
  for (std::size_t i = 0; i + 1 < argv.size(); ++i) {
    if (argv[i] == "--replay") {
      std::ifstream f(argv[i + 1]);
      if (!f) {
        err << "--replay: cannot read " << argv[i + 1] << "\n";
        return kUsage;
      }
      json m;
      try {
        m = json::parse(f);
        return run(m.at("argv").get<std::vector<std::string>>(), out, err);
      } catch (const nlohmann::json::exception& e) {
        err << "--replay: malformed manifest: " << e.what() << "\n";
        return kUsage;
      }
    }
  }

  try {
    std::vector<std::string> rev(argv.rbegin(), argv.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  cfg.subcommand = sub->get_name();
  cfg.argv = argv_in;
  cfg.output_dir = out_dir;
  cfg.report_format = format == "json" ? ReportFormat::kJson : format == "csv" ? ReportFormat::kCsv : ReportFormat::kBoth;
  out_given = out_opt->count() > 0;
  record_params(sub, cfg.params);
  Session session(cfg, out);
  const std::uint64_t seed = cfg.rng_seed;

  try {
    if (sub == solve) {
      const SolveConfig sc = solve_opt.config();
      const SpectralField u0 = solve_opt.initial();
      const Trajectory tr = solve_ivp(u0, sc);
      session.artifact("trajectory.json", trajectory_json(tr).dump(2) + "\n");
      if (cfg.report_format != ReportFormat::kJson) session.artifact("trajectory.csv", trajectory_csv(tr));
      session.field("initial.spf2", tr.states.front());
      session.field("final.spf2", tr.states.back());
      if (snapshot_every > 0) {
        for (std::size_t i = 0; i < tr.states.size(); i += static_cast<std::size_t>(snapshot_every)) {
          std::ostringstream name;
          name << "snapshots/state_" << std::setw(6) << std::setfill('0') << i << ".spf2";
          session.field(name.str(), tr.states[i]);
        }
      }
      for (const auto& w : tr.warnings) err << "warning: " << w << "\n";
      out << "solve: " << tr.times.size() << " records up to t=" << tr.horizon() << "\n";
    } else if (sub == strich) {
      if (global) {
        StrichartzGlobalConfig gc;
        gc.grid_modes = global_grid;
        gc.ceiling = strich_ceiling;
        session.report("strichartz_global", strichartz_global_probe(global_s, strich_samples, seed, gc));
      } else {
        StrichartzConfig sc;
        sc.grid_modes = strich_grid;
        sc.sigma = strich_sigma;
        sc.ceiling = strich_ceiling;
        if (shell >= 0) {
          session.report("strichartz_local",
                         strichartz_local_probe(DyadicIndex::from_value(shell), alpha, strich_samples, seed, sc));
        } else {
          session.report("strichartz_scan", strichartz_scan(n_max, alpha, strich_samples, seed, sc, slope_ceiling));
        }
      }
    } else if (sub == kernel) {
      session.report("kernel_sum", kernel_sum_scan(k_max, j_max, per_cell, kernel_eps, seed, kernel_ceiling));
    } else if (sub == comm || sub == prod) {
      const bool is_comm = sub == comm;
      const PairOptions& o = is_comm ? comm_opt : prod_opt;
      if (o.f.empty() != o.g.empty()) throw PreconditionError("--f and --g must be given together");
      if (!o.f.empty()) {
        const GridSpec grid = GridSpec::square(o.grid);
        const SpectralField f = parse_initial_condition(o.f, grid);
        const SpectralField g = parse_initial_condition(o.g, grid);
        ProbeSample smp = is_comm ? commutator_probe(f, g, o.s) : product_probe(f, g, o.s);
        ProbeReport rep;
        rep.estimate_id = is_comm ? EstimateId::kCommutator : EstimateId::kProduct;
        rep.rng_seed = seed;
        rep.ceiling = o.ceiling;
        rep.add("f=" + o.f + ";g=" + o.g, smp.lhs, smp.rhs);
        rep.extras["s"] = o.s;
        rep.finalize();
        session.report(is_comm ? "commutator" : "product", rep);
      } else {
        PairSweepConfig pc;
        pc.grid_modes = o.grid;
        pc.sigma = o.sigma;
        pc.ceiling = o.ceiling;
        session.report(is_comm ? "commutator" : "product",
                       is_comm ? commutator_sweep(o.s, o.samples, seed, pc) : product_sweep(o.s, o.samples, seed, pc));
      }
    } else if (sub == energy || sub == gt) {
      const SolveOptions& o = sub == energy ? energy_opt : gt_opt;
      const Trajectory tr = solve_ivp(o.initial(), o.config());
      if (sub == energy) {
        session.report("energy", energy_probe(tr, o.s));
      } else {
        session.report("g_T", gT_probe(tr, o.s));
        session.report("l1_linf", l1_linf_probe(tr, o.s));
      }
    } else if (sub == l52) {
      session.report("bootstrap", lemma52_probe(l52_opt.initial(), l52_opt.s, a_s, l52_opt.config(), c_s, min_steps));
    } else if (sub == bs) {
      if (bs_mode == "convergence") {
        const GridSpec grid = bs_opt.grid_spec();
        const SpectralField w0 = bs_opt.ic.empty() ? synthetic_decay_field(grid, s_data) : bs_opt.initial();
        std::vector<int> ns;
        for (double v : parse_list(bs_n_list, "--n-list")) {
          if (v < 1 || v != std::floor(v)) throw PreconditionError("--n-list: entries must be positive integers");
          ns.push_back(static_cast<int>(v));
        }
        session.report("bona_smith_convergence", convergence_experiment(w0, bs_opt.s, s_data, ns));
        if (export_n > 0) session.field("mollified_n" + std::to_string(export_n) + ".spf2", mollify(w0, export_n));
      } else {
        if (bs_opt.ic.empty()) throw PreconditionError("--mode continuity requires --ic");
        session.report("flow_continuity", flow_continuity_probe(bs_opt.initial(), bs_opt.s,
                                                                parse_list(bs_deltas, "--deltas"), bs_opt.config(), seed));
      }
    } else if (sub == dir) {
      const arith::RationalApprox r = arith::dirichlet_approx(d_alpha, d_q);
      json row{{"alpha", d_alpha}, {"Q", d_q}, {"a", r.a}, {"q", r.q}, {"error", static_cast<double>(r.error())}};
      print_row(out, row);
      if (out_given) session.artifact("dirichlet.json", row.dump(2) + "\n");
    } else if (sub == weyl) {
      if (w_scan) {
        session.report("weyl", weyl_scan(w_samples, w_eps, w_lo, w_hi, seed));
      } else {
        if (w_n < 1) throw PreconditionError("--N must be >= 1");
        const arith::RealQuadratic f{w_alpha, w_beta};
        const double S = std::abs(arith::weyl_sum(f, w_n));
        const double bound = arith::weyl_bound_rhs(f, w_n, w_eps, w_q > 0 ? w_q : static_cast<double>(w_n));
        json row{{"alpha", w_alpha}, {"beta", w_beta}, {"N", w_n}, {"abs_S", S}, {"bound", bound}, {"ratio", S / bound}};
        print_row(out, row);
        if (out_given) session.artifact("weyl.json", row.dump(2) + "\n");
      }
    } else if (sub == poisson) {
      const arith::PoissonResult r = arith::poisson_check(arith::parse_poisson_family(p_family), p_sigma, p_trunc);
      json row{{"family", p_family}, {"sigma", p_sigma},  {"truncation", p_trunc},
               {"lhs", r.lhs},       {"rhs", r.rhs},      {"abs_diff", std::abs(r.lhs - r.rhs)},
               {"tail_bound", r.tail_bound}};
      print_row(out, row);
      if (out_given) session.artifact("poisson.json", row.dump(2) + "\n");
    } else if (sub == info) {
      const bool from_file = info_ic.rfind("file:", 0) == 0;
      const GridSpec grid = GridSpec::square(info_grid > 0 ? info_grid : 64);
      const SpectralField f = parse_initial_condition(info_ic, grid, !from_file || info_grid > 0);
      json row{{"modes_x", f.grid().modes_x},
               {"modes_y", f.grid().modes_y},
               {"real", f.is_real()},
               {"band_x", f.band_x()},
               {"band_y", f.band_y()},
               {"l2", f.l2_norm()},
               {"h1", sobolev_norm(f, 1.0)},
               {"h2", sobolev_norm(f, 2.0)},
               {"linf", linf_norm(f)},
               {"hermitian_defect", f.hermitian_defect()},
               {"x_mean_zero", x_mean_zero(f)}};
      print_row(out, row);
    }
  } catch (const BlowUpError& e) {
    err << "numerical failure: " << e.what() << " (t=" << e.time() << ")\n";
    session.finish();
    return kNumerical;
  } catch (const ResolutionError& e) {
    err << "numerical failure: " << e.what() << "\n";
    session.finish();
    return kNumerical;
  } catch (const DomainError& e) {
    err << "numerical failure: " << e.what() << "\n";
    session.finish();
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  }
  session.finish();
  return session.breach() ? kCeilingBreach : kOk;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace shrira::cli
