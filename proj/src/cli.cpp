#include "wienerwave/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <iostream>
#include <sstream>
#include <vector>

#include "wienerwave/amalgam.hpp"
#include "wienerwave/decaylab.hpp"
#include "wienerwave/errors.hpp"
#include "wienerwave/kernel.hpp"
#include "wienerwave/nlw.hpp"
#include "wienerwave/parallel.hpp"
#include "wienerwave/rational.hpp"
#include "wienerwave/regions.hpp"

namespace ww {

namespace {

using json = nlohmann::ordered_json;

struct Flag {
  const char* name;
  const char* help;
  bool required = false;
};

struct Subcommand {
  Command command;
  const char* name;
  const char* help;
  std::vector<Flag> flags;
};

const std::vector<Subcommand>& subcommands() {
  static const std::vector<Subcommand> table{
      {Command::kernel,
       "kernel",
       "Evaluate the n = 3 kernel at one point",
       {{"gamma", "order gamma in (0, 3)", true},
        {"r", "radius |x| > 0", true},
        {"t", "time", true},
        {"method", "eval (quadrature) or closed"}}},
      {Command::decay,
       "decay",
       "Fit time-decay slopes of the kernel amalgam norm",
       {{"gamma", "order gamma", true},
        {"r", "outer exponent r", true},
        {"rt", "inner exponent r_tilde", true},
        {"regime", "small, large or both (default large)"},
        {"estimator", "direct or surrogate (default direct)"},
        {"source", "quadrature or closed (default quadrature)"}}},
      {Command::regions,
       "regions",
       "Evaluate an exponent predicate",
       {{"check", "thm1, thm2, propfix, corollary, nlw, wave, kmax, decay, dual, centroid or sample", true},
        {"n", "dimension (default 3)"},
        {"sigma", "regularity"},
        {"gamma", "kernel order"},
        {"q", "q"},
        {"qt", "q_tilde"},
        {"r", "r"},
        {"rt", "r_tilde"},
        {"q1", "dual q1"},
        {"q1t", "dual q1_tilde"},
        {"r1", "dual r1"},
        {"r1t", "dual r1_tilde"},
        {"k", "power of the nonlinearity"},
        {"denominator", "grid denominator for --check sample (default 20)"}}},
      {Command::quotient,
       "quotient",
       "Strichartz quotient of a Gaussian datum under dilation",
       {{"sigma", "regularity", true},
        {"q", "q", true},
        {"qt", "q_tilde", true},
        {"r", "r", true},
        {"rt", "r_tilde", true},
        {"width", "Gaussian width (default 1)"},
        {"lambdas", "comma separated dilations (default 1/8,...,8)"}}},
      {Command::nlw,
       "nlw",
       "Solve the radial power-type wave equation by Picard iteration",
       {{"k", "power", true},
        {"q", "q", true},
        {"qt", "q_tilde", true},
        {"r", "r", true},
        {"rt", "r_tilde", true},
        {"amplitude", "Gaussian amplitude of f (default 0.05)"},
        {"width", "Gaussian width (default 1)"},
        {"C", "life-span constant (default 1)"},
        {"slices", "time slices (default 64)"},
        {"form", "signed or power (default signed)"},
        {"sign", "+1 or -1 (default 1)"}}},
      {Command::norms,
       "norms",
       "Amalgam norm of a radial Gaussian or ball indicator",
       {{"inner", "inner exponent p", true},
        {"outer", "outer exponent q", true},
        {"profile", "gaussian or indicator (default gaussian)"},
        {"width", "width or radius (default 1)"},
        {"estimator", "direct or surrogate (default direct)"}}},
  };
  return table;
}

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& m) : m_(m) {}

  [[nodiscard]] bool has(const std::string& key) const { return m_.count(key) > 0; }

  [[nodiscard]] const std::string& str(const std::string& key) const {
    auto it = m_.find(key);
    if (it == m_.end()) throw UsageError("missing required flag --" + key);
    return it->second;
  }

  [[nodiscard]] std::string str(const std::string& key, const std::string& fallback) const {
    return has(key) ? str(key) : fallback;
  }

  [[nodiscard]] Rational rational(const std::string& key) const {
    try {
      return Rational::parse(str(key));
    } catch (const DomainError&) {
      throw UsageError("--" + key + ": expected a rational p/q, got '" + str(key) + "'");
    }
  }

  [[nodiscard]] Rational rational(const std::string& key, const Rational& fallback) const {
    return has(key) ? rational(key) : fallback;
  }

  [[nodiscard]] double real(const std::string& key) const { return parse_real(str(key), key); }
  [[nodiscard]] double real(const std::string& key, double fallback) const {
    return has(key) ? real(key) : fallback;
  }

  static double parse_real(const std::string& s, const std::string& key) {
    if (s.find('/') != std::string::npos) {
      try {
        return Rational::parse(s).to_double();
      } catch (const DomainError&) {
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
      throw UsageError("--" + key + ": expected a number, got '" + s + "'");
    return v;
  }

 private:
  const std::map<std::string, std::string>& m_;
};

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

json header(const char* command) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

ExponentTuple tuple_from(const Params& p) {
  ExponentTuple t;
  t.n = static_cast<int>(p.real("n", 3.0));
  if (p.has("sigma")) t.sigma = p.rational("sigma");
  if (p.has("gamma")) t.gamma = p.rational("gamma");
  if (p.has("q")) t.q = p.rational("q");
  if (p.has("qt")) t.q_tilde = p.rational("qt");
  if (p.has("r")) t.r = p.rational("r");
  if (p.has("rt")) t.r_tilde = p.rational("rt");
  if (p.has("q1") || p.has("q1t") || p.has("r1") || p.has("r1t"))
    t.dual = DualIndices{p.rational("q1"), p.rational("q1t"), p.rational("r1"), p.rational("r1t")};
  return t;
}

json tuple_json(const ExponentTuple& t) {
  json j;
  j["n"] = t.n;
  j["sigma"] = t.sigma.to_string();
  j["q"] = t.q.to_string();
  j["q_tilde"] = t.q_tilde.to_string();
  j["r"] = t.r.to_string();
  j["r_tilde"] = t.r_tilde.to_string();
  if (t.dual) {
    j["q1"] = t.dual->q1.to_string();
    j["q1_tilde"] = t.dual->q1_tilde.to_string();
    j["r1"] = t.dual->r1.to_string();
    j["r1_tilde"] = t.dual->r1_tilde.to_string();
  }
  return j;
}

const char* method_name(KernelMethod m) {
  switch (m) {
    case KernelMethod::damped_extrapolated: return "damped_extrapolated";
    case KernelMethod::split_asymptotic: return "split_asymptotic";
    case KernelMethod::closed_form_n3: return "closed_form_n3";
  }
  return "unknown";
}

int run_kernel(const Params& p, std::ostream& out) {
  const double g = p.real("gamma"), r = p.real("r"), t = p.real("t");
  const std::string method = p.str("method", "eval");
  json j = header("kernel");
  j["gamma"] = g;
  j["r"] = r;
  j["t"] = t;
  if (method == "closed") {
    const complex v = kernel_closed_form_n3(g, r, t);
    j["re"] = v.real();
    j["im"] = v.imag();
    j["method"] = "closed_form_n3";
  } else if (method == "eval") {
    const KernelValue v = kernel_eval(KernelQuery{3, g, r, t});
    j["re"] = v.value.real();
    j["im"] = v.value.imag();
    j["abs_error_estimate"] = v.abs_error_estimate;
    j["method"] = method_name(v.method);
  } else {
    throw UsageError("--method must be eval or closed");
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

Estimator estimator_from(const Params& p) {
  const std::string e = p.str("estimator", "direct");
  if (e == "direct") return Estimator::direct;
  if (e == "surrogate") return Estimator::surrogate;
  throw UsageError("--estimator must be direct or surrogate");
}

int run_decay(const Params& p, const std::filesystem::path& dir, std::ostream& out) {
  ExperimentConfig cfg;
  cfg.gamma = p.rational("gamma");
  cfg.tuple.r = p.rational("r");
  cfg.tuple.r_tilde = p.rational("rt");
  cfg.estimator = estimator_from(p);
  const std::string src = p.str("source", "quadrature");
  if (src == "closed") cfg.source = KernelSource::closed_form;
  else if (src != "quadrature") throw UsageError("--source must be quadrature or closed");

  const std::string regime = p.str("regime", "large");
  std::vector<DecayRegime> regimes;
  if (regime == "small" || regime == "both") regimes.push_back(DecayRegime::small_t);
  if (regime == "large" || regime == "both") regimes.push_back(DecayRegime::large_t);
  if (regimes.empty()) throw UsageError("--regime must be small, large or both");
  for (DecayRegime r : regimes) {
    const auto g = regime_grid(r);
    cfg.t_grid.insert(cfg.t_grid.end(), g.begin(), g.end());
  }

  const DecayExponents target = decay_exponents(3, cfg.gamma, cfg.tuple.r, cfg.tuple.r_tilde);
  const TimeNormTable table = kernel_time_profile(cfg);
  write_file(dir / "decay.csv", time_profile_csv(table, cfg));

  json j = header("decay");
  j["gamma"] = cfg.gamma.to_string();
  j["r"] = cfg.tuple.r.to_string();
  j["r_tilde"] = cfg.tuple.r_tilde.to_string();
  j["estimator"] = to_string(cfg.estimator);
  json fits = json::array();
  for (DecayRegime r : regimes) {
    const DecayFit f = fit_decay(table, r);
    const Rational exact = r == DecayRegime::small_t ? target.omega_small : target.omega_large;
    const double tol = r == DecayRegime::small_t ? 0.15 : 0.10;
    json e;
    e["regime"] = to_string(r);
    e["slope"] = f.slope;
    e["intercept"] = f.intercept;
    e["residual_rms"] = f.residual_rms;
    e["points"] = f.points;
    e["t_min"] = f.fit_range.first;
    e["t_max"] = f.fit_range.second;
    e["target"] = exact.to_string();
    e["tolerance"] = tol;
    e["pass"] = std::abs(f.slope - exact.to_double()) <= tol;
    fits.push_back(e);
  }
  j["fits"] = fits;
  write_file(dir / "decay.json", j.dump(2) + "\n");
  out << j.dump(2) << '\n';
  return kExitOk;
}

int run_regions(const Params& p, const std::filesystem::path& dir, std::ostream& out) {
  const std::string check = p.str("check");
  const ExponentTuple t = tuple_from(p);
  json j = header("regions");
  j["check"] = check;
  std::optional<bool> verdict;
  if (check == "thm1") {
    verdict = thm1_admissible(t);
  } else if (check == "thm2") {
    verdict = thm2_admissible(t, p.rational("gamma"));
  } else if (check == "propfix") {
    verdict = propfix_admissible(t.n, p.rational("gamma"), t.r, t.r_tilde);
  } else if (check == "corollary") {
    verdict = corollary_admissible(p.rational("sigma"), t);
  } else if (check == "nlw") {
    verdict = nlw_admissible(t, p.rational("k"));
    j["implied_sigma"] = implied_sigma(t).to_string();
  } else if (check == "wave") {
    verdict = is_wave_admissible(t.n, t.q, t.r, p.rational("sigma"));
  } else if (check == "kmax") {
    j["k_max"] = k_max(t.n, p.rational("sigma")).to_string();
  } else if (check == "decay") {
    const DecayExponents d = decay_exponents(t.n, p.rational("gamma"), t.r, t.r_tilde);
    j["omega_small"] = d.omega_small.to_string();
    j["omega_large"] = d.omega_large.to_string();
  } else if (check == "dual") {
    const NonlinearDual d = nlw_dual_indices(t, p.rational("k"));
    j["sigma1"] = d.sigma1.to_string();
    j["q1"] = d.dual.q1.to_string();
    j["q1_tilde"] = d.dual.q1_tilde.to_string();
    j["r1"] = d.dual.r1.to_string();
    j["r1_tilde"] = d.dual.r1_tilde.to_string();
    j["q0_tilde"] = d.q0_tilde.to_string();
  } else if (check == "centroid") {
    const ExponentPair c = propfix_centroid(t.n, p.rational("gamma"));
    j["r"] = c.r.to_string();
    j["r_tilde"] = c.r_tilde.to_string();
  } else if (check == "sample") {
    const int den = static_cast<int>(p.real("denominator", 20.0));
    write_file(dir / "region.csv", region_csv(sample_propfix_region(t.n, p.rational("gamma"), den)));
    j["csv"] = (dir / "region.csv").string();
  } else {
    throw UsageError("unknown --check " + check);
  }
  j["tuple"] = tuple_json(t);
  if (verdict) j["admissible"] = *verdict;
  out << j.dump(2) << '\n';
  return verdict && !*verdict ? kExitAdmissibility : kExitOk;
}

RadialProfile gaussian_on(const RadialGrid& grid, double amplitude, double width) {
  if (!(width > 0.0)) throw UsageError("--width must be positive");
  return sample_profile(grid, [&](double r) { return amplitude * std::exp(-(r * r) / (width * width)); });
}

int run_quotient(const Params& p, const std::filesystem::path& dir, std::ostream& out) {
  ExponentTuple t = tuple_from(p);
  const Rational sigma = p.rational("sigma");
  std::vector<double> lambdas;
  if (p.has("lambdas")) {
    std::stringstream ss(p.str("lambdas"));
    for (std::string item; std::getline(ss, item, ',');) lambdas.push_back(Params::parse_real(item, "lambdas"));
  } else {
    for (int e = -3; e <= 3; ++e) lambdas.push_back(std::ldexp(1.0, e));
  }
  const QuotientBox box;
  const RadialProfile datum = gaussian_on(box.evolution, 1.0, p.real("width", 1.0));
  const auto rows = strichartz_quotient(sigma, t, {datum}, lambdas, box);

  std::ostringstream csv;
  csv << "family,lambda,quotient\n";
  double lo = INFINITY, hi = 0.0;
  for (const auto& row : rows) {
    csv << row.family << ',' << format_double(row.lambda) << ',' << format_double(row.quotient) << '\n';
    lo = std::min(lo, row.quotient);
    hi = std::max(hi, row.quotient);
  }
  write_file(dir / "quotient.csv", csv.str());
  json j = header("quotient");
  j["sigma"] = sigma.to_string();
  j["tuple"] = tuple_json(t);
  j["max_over_min"] = hi / lo;
  j["pass"] = hi / lo <= 1.1;
  write_file(dir / "quotient.json", j.dump(2) + "\n");
  out << j.dump(2) << '\n';
  return kExitOk;
}

int run_nlw(const Params& p, const std::filesystem::path& dir, std::ostream& out) {
  ExponentTuple t = tuple_from(p);
  Nonlinearity F;
  F.k = p.rational("k");
  const std::string form = p.str("form", "signed");
  if (form == "power") F.form = NonlinearityForm::power;
  else if (form != "signed") throw UsageError("--form must be signed or power");
  F.sign = static_cast<int>(p.real("sign", 1.0));
  const double C = p.real("C", 1.0);
  FixedPointOptions opt;
  opt.slices = static_cast<std::size_t>(p.real("slices", 64.0));
  const double amplitude = p.real("amplitude", 0.05), width = p.real("width", 1.0);

  const RadialGrid grid;
  const RadialProfile f = gaussian_on(grid, amplitude, width);
  const RadialProfile g = gaussian_on(grid, 0.0, 1.0);
  const FixedPointResult res = fixed_point_solve(f, g, F, t, C, opt);
  const PersistenceReport pr = persistence_check(res, res.sigma.to_double());

  std::ostringstream csv;
  csv << "radius,re_u,im_u\n";
  const RadialProfile& last = res.solution.back();
  for (std::size_t j = 0; j < last.radii.size(); ++j)
    csv << format_double(last.radii[j]) << ',' << format_double(last.values[j].real()) << ','
        << format_double(last.values[j].imag()) << '\n';
  write_file(dir / "nlw_final.csv", csv.str());

  json j = header("nlw");
  j["data"] = {{"f", "amplitude * exp(-r^2/width^2)"}, {"g", "0"}, {"amplitude", amplitude}, {"width", width}};
  j["tuple"] = tuple_json(t);
  j["k"] = F.k.to_string();
  j["sigma"] = res.sigma.to_string();
  j["C"] = C;
  j["plan"] = {{"M", res.plan.M}, {"T", res.plan.T}, {"q0_tilde", res.plan.q0_tilde.to_string()}};
  j["data_norm"] = res.data_norm;
  j["iterations"] = res.iterations;
  j["contraction_ratios"] = res.contraction_ratios;
  j["persistence"] = {{"sup_Hsigma", pr.sup_Hsigma},
                      {"sup_Hsigma_minus_1", pr.sup_Hsigma_minus_1},
                      {"data_norm_ratio", pr.data_norm_ratio}};
  write_file(dir / "nlw.json", j.dump(2) + "\n");
  out << j.dump(2) << '\n';
  return kExitOk;
}

int run_norms(const Params& p, std::ostream& out) {
  const Rational inner = p.rational("inner"), outer = p.rational("outer");
  const double width = p.real("width", 1.0);
  const std::string shape = p.str("profile", "gaussian");
  if (!(width > 0.0)) throw UsageError("--width must be positive");
  RadialProfile prof;
  const std::size_t n = 4097;
  const double rmax = shape == "indicator" ? width : 8.0 * width;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = rmax * static_cast<double>(i) / static_cast<double>(n - 1);
    prof.radii.push_back(r);
    if (shape == "gaussian") prof.values.emplace_back(std::exp(-(r * r) / (width * width)));
    else if (shape == "indicator") prof.values.emplace_back(1.0);
    else throw UsageError("--profile must be gaussian or indicator");
  }
  const Estimator e = estimator_from(p);
  json j = header("norms");
  j["profile"] = shape;
  j["width"] = width;
  j["inner"] = inner.to_string();
  j["outer"] = outer.to_string();
  j["estimator"] = to_string(e);
  j["norm"] = profile_norm(prof, inner, outer, e);
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Params p(config.parameters);
  try {
    switch (config.command) {
      case Command::kernel: return run_kernel(p, out);
      case Command::decay: return run_decay(p, config.output_dir, out);
      case Command::regions: return run_regions(p, config.output_dir, out);
      case Command::quotient: return run_quotient(p, config.output_dir, out);
      case Command::nlw: return run_nlw(p, config.output_dir, out);
      case Command::norms: return run_norms(p, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const AdmissibilityError& e) {
    err << "not admissible: " << e.what() << '\n';
    return kExitAdmissibility;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const AliasingError& e) {
    err << "aliasing: " << e.what() << '\n';
    return kExitConvergence;
  }
  return kExitUsage;
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wiener amalgam Strichartz experiments"};
  app.require_subcommand(1);
  unsigned threads = 0;
  std::string out_dir;
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_option("--out", out_dir, std::string("output directory (default $") + kOutputDirEnv + " or .)");

  std::map<std::string, std::map<std::string, std::string>> storage;
  std::vector<std::pair<CLI::App*, const Subcommand*>> subs;
  for (const Subcommand& sc : subcommands()) {
    CLI::App* sub = app.add_subcommand(sc.name, sc.help);
    auto& store = storage[sc.name];
    for (const Flag& f : sc.flags) {
      CLI::Option* opt = sub->add_option(std::string("--") + f.name, store[f.name], f.help);
      if (f.required) opt->required();
    }
    subs.emplace_back(sub, &sc);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    err << app.help();
    return code == 0 ? kExitOk : kExitUsage;
  }

  set_thread_count(threads);
  RunConfig cfg;
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  else if (const char* env = std::getenv(kOutputDirEnv)) cfg.output_dir = env;
  else cfg.output_dir = ".";
  for (const auto& [sub, sc] : subs) {
    if (!sub->parsed()) continue;
    cfg.command = sc->command;
    for (const Flag& f : sc->flags)
      if (sub->count(std::string("--") + f.name) > 0) cfg.parameters[f.name] = storage[sc->name][f.name];
  }
  return run(cfg, out, err);
}

}  // namespace ww
