#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "gabor_super/duality.hpp"
#include "gabor_super/errors.hpp"
#include "gabor_super/gabor.hpp"
#include "gabor_super/json_io.hpp"
#include "gabor_super/shiftalg.hpp"
#include "gabor_super/walnut.hpp"

namespace gabor_super::cli {

namespace {

using json_io::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::vector<std::string> inputs;
  std::string window;
  std::string dual_window;
  std::string weight;
  std::string out = "-";
  std::string format;
  int a = 0;
  int b = 0;
  std::string p = "2";
  std::string q = "2";
  double tol = 0.0;
  std::uint64_t seed = 1;
  bool dump = false;
  std::vector<int> sizes{256, 512, 1024, 2048, 4096};
  int repeats = 20;
};

void add_common(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--input", cfg.inputs, "input JSON file (repeatable for mux)");
  cmd->add_option("--window", cfg.window, "window signal JSON");
  cmd->add_option("--dual-window", cfg.dual_window, "partner window signal JSON");
  cmd->add_option("--a", cfg.a, "time step (divides L)")->check(CLI::PositiveNumber);
  cmd->add_option("--b", cfg.b, "frequency step (divides L)")->check(CLI::PositiveNumber);
  cmd->add_option("--p", cfg.p, "inner exponent, 1..inf");
  cmd->add_option("--q", cfg.q, "outer exponent, 1..inf");
  cmd->add_option("--weight", cfg.weight, "weight JSON file or inline JSON");
  cmd->add_option("--tol", cfg.tol, "tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--out", cfg.out, "output path, - for stdout");
  cmd->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

double tol_or(const Config& cfg, double fallback) { return cfg.tol > 0.0 ? cfg.tol : fallback; }

bool wants_csv(const Config& cfg, bool csv_default) {
  return cfg.format.empty() ? csv_default : cfg.format == "csv";
}

void require_json(const Config& cfg, const char* command) {
  if (wants_csv(cfg, false)) throw UsageError(std::string(command) + " only emits json");
}

const std::string& require_path(const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string(flag) + " is required");
  return path;
}

const std::string& single_input(const Config& cfg) {
  if (cfg.inputs.size() != 1) throw UsageError("exactly one --input is required");
  return cfg.inputs.front();
}

VectorSignal load_signal(const std::string& path) {
  return json_io::signal_from_json(json_io::read_file(path));
}

GaborLattice lattice(const Config& cfg, int length) {
  if (cfg.a < 1 || cfg.b < 1) throw UsageError("--a and --b are required");
  return GaborLattice(cfg.a, cfg.b, length);
}

double exponent(const std::string& text, const char* name) {
  double p = 0.0;
  if (text == "inf" || text == "infinity") {
    p = kInf;
  } else {
    std::size_t used = 0;
    try {
      p = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) {
      throw UsageError(std::string("--") + name + " must be a number or inf");
    }
  }
  try {
    validate_exponent(p, name);
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  return p;
}

Weight weight(const Config& cfg, int length) {
  if (cfg.weight.empty()) return Weight::constant(length);
  json j;
  if (cfg.weight.front() == '{') {
    try {
      j = json::parse(cfg.weight);
    } catch (const json::parse_error& e) {
      throw FormatError(std::string("--weight is not valid JSON: ") + e.what());
    }
  } else {
    j = json_io::read_file(cfg.weight);
  }
  return json_io::weight_from_json(j, length);
}

std::string signal_csv(const VectorSignal& f) {
  std::ostringstream s;
  s.precision(17);
  s << "l,channel,re,im\n";
  for (int l = 0; l < f.length(); ++l) {
    for (int i = 0; i < f.channels(); ++i) {
      s << l << ',' << i << ',' << f(l, i).real() << ',' << f(l, i).imag() << '\n';
    }
  }
  return s.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string cmd_dual(const Config& cfg) {
  require_json(cfg, "dual");
  const VectorSignal g = load_signal(require_path(cfg.window, "--window"));
  const GaborLattice lat = lattice(cfg, g.length());
  DualOptions options;
  options.tol = tol_or(cfg, options.tol);
  const DualWindow dw = compute_dual_window(g, lat, options);
  json j = json_io::signal_to_json(dw.window);
  j["meta"] = {{"A", dw.bounds.A},
               {"B", dw.bounds.B},
               {"cond", dw.bounds.condition()},
               {"cg_iters", dw.iterations},
               {"residual", dw.relative_residual},
               {"wr_max_dev", wexler_raz_check(g, dw.window, lat, 1.0).max_dev}};
  return dump(j);
}

std::string cmd_analyze(const Config& cfg) {
  const VectorSignal f = load_signal(single_input(cfg));
  const VectorSignal g = load_signal(require_path(cfg.window, "--window"));
  const GaborCoefficients c = analyze(f, g, lattice(cfg, f.length()));
  if (!wants_csv(cfg, false)) return dump(json_io::coefficients_to_json(c));
  std::ostringstream s;
  s.precision(17);
  s << "k,m,re,im\n";
  for (Eigen::Index k = 0; k < c.c.rows(); ++k) {
    for (Eigen::Index m = 0; m < c.c.cols(); ++m) {
      s << k << ',' << m << ',' << c.c(k, m).real() << ',' << c.c(k, m).imag() << '\n';
    }
  }
  return s.str();
}

std::string cmd_synthesize(const Config& cfg) {
  const GaborCoefficients c = json_io::coefficients_from_json(json_io::read_file(single_input(cfg)));
  const VectorSignal g = load_signal(require_path(cfg.window, "--window"));
  if ((cfg.a && cfg.a != c.lattice.a()) || (cfg.b && cfg.b != c.lattice.b())) {
    throw UsageError("--a/--b disagree with the coefficient lattice");
  }
  const VectorSignal f = synthesize(c, g);
  return wants_csv(cfg, false) ? signal_csv(f) : dump(json_io::signal_to_json(f));
}

std::string cmd_bounds(const Config& cfg) {
  const VectorSignal g = load_signal(require_path(cfg.window, "--window"));
  const FrameBounds fb = frame_bounds(g, lattice(cfg, g.length()), tol_or(cfg, 1e-10));
  if (!wants_csv(cfg, false)) return dump(json_io::frame_bounds_to_json(fb));
  std::ostringstream s;
  s.precision(17);
  s << "A,B,is_frame,cond\n" << fb.A << ',' << fb.B << ',' << (fb.is_frame ? "true" : "false")
    << ',' << fb.condition() << '\n';
  return s.str();
}

std::string cmd_wr(const Config& cfg, bool& failed) {
  const VectorSignal g = load_signal(require_path(cfg.window, "--window"));
  const VectorSignal h = load_signal(require_path(cfg.dual_window, "--dual-window"));
  const double tol = tol_or(cfg, 1e-10);
  const WexlerRazResult r = wexler_raz_check(g, h, lattice(cfg, g.length()), tol);
  failed = !r.pass;
  if (!wants_csv(cfg, false)) {
    return dump(json{{"pass", r.pass}, {"max_dev", r.max_dev}, {"tol", tol}});
  }
  std::ostringstream s;
  s.precision(17);
  s << "pass,max_dev,tol\n" << (r.pass ? "true" : "false") << ',' << r.max_dev << ',' << tol
    << '\n';
  return s.str();
}

std::string cmd_walnut(const Config& cfg) {
  require_json(cfg, "walnut");
  if (cfg.inputs.empty() && !cfg.dump) throw UsageError("walnut needs --input, --dump or both");
  const VectorSignal g = load_signal(require_path(cfg.window, "--window"));
  const VectorSignal h = cfg.dual_window.empty() ? g : load_signal(cfg.dual_window);
  const GaborLattice lat = lattice(cfg, g.length());
  const CorrelationFamily G = correlations(g, h, lat);
  json j = json::object();
  if (!cfg.inputs.empty()) j = json_io::signal_to_json(walnut_apply(G, load_signal(single_input(cfg))));
  if (cfg.dump) {
    j["correlations"] = json_io::correlations_to_json(G);
    j["janssen"] = json_io::janssen_to_json(janssen_coeffs(g, h, lat));
  }
  return dump(j);
}

std::string cmd_convergence(const Config& cfg) {
  const VectorSignal f = load_signal(single_input(cfg));
  const VectorSignal g = load_signal(require_path(cfg.window, "--window"));
  const GaborLattice lat = lattice(cfg, f.length());
  const VectorSignal h = cfg.dual_window.empty() ? dual_window(g, lat) : load_signal(cfg.dual_window);
  const ConvergenceProfile prof =
      truncation_error_profile(f, g, h, lat, exponent(cfg.p, "p"), exponent(cfg.q, "q"),
                               weight(cfg, f.length()), tol_or(cfg, 1e-6));
  if (!wants_csv(cfg, true)) {
    json rows = json::array();
    for (const ConvergenceRecord& r : prof) rows.push_back({{"K", r.K}, {"N", r.N}, {"err", r.err}});
    return dump(rows);
  }
  std::ostringstream s;
  s.precision(17);
  s << "K,N,err\n";
  for (const ConvergenceRecord& r : prof) s << r.K << ',' << r.N << ',' << r.err << '\n';
  return s.str();
}

std::string cmd_spectral(const Config& cfg) {
  const ShiftOperator A = json_io::shift_operator_from_json(json_io::read_file(single_input(cfg)));
  const Weight w = weight(cfg, A.length());
  const SpectralInverse inv = spectral_invert(A, w, tol_or(cfg, 1e-8), cfg.seed);
  if (wants_csv(cfg, false)) {
    std::ostringstream s;
    s.precision(17);
    s << "x,norm,weight\n";
    for (const DecayEntry& e : inv.decay) s << e.x << ',' << e.symbol_norm << ',' << e.weight << '\n';
    return s.str();
  }
  json decay = json::array();
  for (const DecayEntry& e : inv.decay) {
    decay.push_back({{"x", e.x}, {"norm", e.symbol_norm}, {"weight", e.weight}});
  }
  return dump(json{{"condition", inv.condition},
                   {"roundtrip_error", inv.roundtrip_error},
                   {"algebra_norm", algebra_norm(inv.inverse, w).value},
                   {"inverse", json_io::shift_operator_to_json(inv.inverse)},
                   {"decay", std::move(decay)}});
}

std::string cmd_mux(const Config& cfg) {
  if (cfg.inputs.empty()) throw UsageError("mux needs --input");
  std::vector<VectorSignal> parts;
  for (const std::string& path : cfg.inputs) parts.push_back(load_signal(path));
  for (const VectorSignal& part : parts) {
    if (part.length() != parts.front().length()) {
      throw DimensionError("mux inputs have different lengths");
    }
  }
  const VectorSignal f = direct_sum(parts);
  const VectorSignal g = load_signal(require_path(cfg.window, "--window"));
  if (g.channels() != f.channels()) {
    throw DimensionError("channel mismatch: " + std::to_string(f.channels()) +
                         " input channels but the window has n=" + std::to_string(g.channels()));
  }
  const GaborLattice lat = lattice(cfg, f.length());
  const GaborCoefficients c = analyze(f, g, lat);
  const VectorSignal h = dual_window(g, lat, tol_or(cfg, 1e-12));
  const VectorSignal recovered = synthesize(c, h);
  std::vector<double> errors;
  for (int i = 0; i < f.channels(); ++i) {
    errors.push_back(max_abs_diff(recovered.channel(i), f.channel(i)));
  }
  if (wants_csv(cfg, false)) {
    std::ostringstream s;
    s.precision(17);
    s << "channel,max_error\n";
    for (std::size_t i = 0; i < errors.size(); ++i) s << i << ',' << errors[i] << '\n';
    return s.str();
  }
  return dump(json{{"coefficients", json_io::coefficients_to_json(c)},
                   {"recovered", json_io::signal_to_json(recovered)},
                   {"max_error", errors}});
}

volatile double bench_sink = 0.0;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string cmd_bench(const Config& cfg) {
  const int a = cfg.a > 0 ? cfg.a : 16;
  const int b = cfg.b > 0 ? cfg.b : 16;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal;
  auto random_signal = [&](int L) {
    std::vector<Complex> d(static_cast<std::size_t>(L));
    for (auto& z : d) z = Complex(normal(rng), normal(rng));
    return VectorSignal::scalar(std::move(d));
  };
  using Clock = std::chrono::steady_clock;
  auto ns = [](Clock::duration d) {
    return static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(d).count());
  };

  json rows = json::array();
  std::ostringstream s;
  s << "L,t_walnut_ns,t_dense_ns\n";
  double sink = 0.0;
  for (int L : cfg.sizes) {
    const GaborLattice lat(a, b, L);
    const VectorSignal g = random_signal(L);
    const VectorSignal f = random_signal(L);
    const CorrelationFamily G = correlations(g, g, lat);
    const DenseOperator D = walnut_dense(G);
    const Eigen::VectorXcd x = f.flat();
    std::vector<double> tw, td;
    for (int r = 0; r < cfg.repeats; ++r) {
      auto t0 = Clock::now();
      const VectorSignal y = walnut_apply(G, f);
      tw.push_back(ns(Clock::now() - t0));
      sink += y(0, 0).real();
      t0 = Clock::now();
      const Eigen::VectorXcd z = D * x;
      td.push_back(ns(Clock::now() - t0));
      sink += z(0).real();
    }
    const double mw = median(tw);
    const double md = median(td);
    rows.push_back({{"L", L}, {"t_walnut_ns", mw}, {"t_dense_ns", md}});
    s << L << ',' << static_cast<long long>(mw) << ',' << static_cast<long long>(md) << '\n';
  }
  bench_sink = sink;
  return wants_csv(cfg, true) ? s.str() : dump(rows);
}

void emit(const Config& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-") {
    out << text;
  } else {
    json_io::write_text(cfg.out, text);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gabor frames for vector-valued signals on Z_L", "gabor-super"};
  app.require_subcommand(1);
  Config cfg;
  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"dual", "dual window and frame metadata"},
      {"analyze", "Gabor coefficients of --input against --window"},
      {"synthesize", "signal from coefficients (--input) and --window"},
      {"bounds", "frame bounds A, B"},
      {"wr", "Wexler-Raz check of --window against --dual-window"},
      {"walnut", "apply the frame operator (--input) and/or --dump its tables"},
      {"convergence", "truncation error profile, CSV K,N,err"},
      {"spectral", "invert a weighted shift operator"},
      {"mux", "encode r channels with a vector window and decode with its dual"},
      {"bench", "time walnut_apply against dense apply"},
  };
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, cfg);
    if (std::string(c.name) == "walnut") sub->add_flag("--dump", cfg.dump, "include G and the Janssen table");
    if (std::string(c.name) == "bench") {
      sub->add_option("--sizes", cfg.sizes, "signal lengths, comma separated")
          ->delimiter(',')
          ->check(CLI::PositiveNumber);
      sub->add_option("--repeats", cfg.repeats, "timed runs per size")->check(CLI::PositiveNumber);
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageOrIo;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    bool failed = false;
    std::string text;
    if (name == "dual") text = cmd_dual(cfg);
    else if (name == "analyze") text = cmd_analyze(cfg);
    else if (name == "synthesize") text = cmd_synthesize(cfg);
    else if (name == "bounds") text = cmd_bounds(cfg);
    else if (name == "wr") text = cmd_wr(cfg, failed);
    else if (name == "walnut") text = cmd_walnut(cfg);
    else if (name == "convergence") text = cmd_convergence(cfg);
    else if (name == "spectral") text = cmd_spectral(cfg);
    else if (name == "mux") text = cmd_mux(cfg);
    else text = cmd_bench(cfg);
    emit(cfg, out, text);
    return failed ? kDomain : kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.get_subcommand(name)->help();
    return kUsageOrIo;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrIo;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrIo;
  } catch (const NoConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const json::exception& e) {
    err << "error: malformed JSON: " << e.what() << '\n';
    return kUsageOrIo;
  }
}

}  // namespace gabor_super::cli
