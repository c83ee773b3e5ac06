// vortwave: command-line driver for the solver library.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "config.hpp"
#include "vortwave/flattening.hpp"
#include "vortwave/linear.hpp"
#include "vortwave/reduced.hpp"
#include "vortwave/verify.hpp"
#include "vortwave/wave.hpp"

namespace fs = std::filesystem;
using namespace vortwave;
using cli::RunConfig;
using cli::UsageError;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumerical = 3 };

std::string g17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Flat JSON objects with numbers printed to 17 significant digits.
class Json {
 public:
  Json &num(const std::string &k, double v) { return put(k, std::isfinite(v) ? g17(v) : "null"); }
  Json &integer(const std::string &k, long v) { return put(k, std::to_string(v)); }
  Json &boolean(const std::string &k, bool v) { return put(k, v ? "true" : "false"); }
  Json &text(const std::string &k, const std::string &v) { return put(k, nlohmann::json(v).dump()); }
  Json &nums(const std::string &k, const std::vector<double> &v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + (std::isfinite(v[i]) ? g17(v[i]) : "null");
    return put(k, s + "]");
  }
  Json &obj(const std::string &k, const Json &o) { return put(k, o.dump(1)); }

  std::string dump(int depth = 0) const {
    const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
    std::string s = "{\n";
    for (size_t i = 0; i < f_.size(); ++i)
      s += pad + nlohmann::json(f_[i].first).dump() + ": " + f_[i].second + (i + 1 < f_.size() ? ",\n" : "\n");
    return s + close + "}";
  }

 private:
  Json &put(const std::string &k, std::string v) {
    f_.emplace_back(k, std::move(v));
    return *this;
  }
  std::vector<std::pair<std::string, std::string>> f_;
};

void write_text(const fs::path &file, const std::string &text) {
  fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + file.string());
}

void write_json(const fs::path &file, const Json &j) { write_text(file, j.dump() + "\n"); }

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : cols_(header.size()) {
    for (size_t i = 0; i < header.size(); ++i) s_ += (i ? "," : "") + header[i];
    s_ += "\n";
  }
  void row(const std::vector<double> &v) {
    if (v.size() != cols_) throw std::logic_error("csv: column count");
    for (size_t i = 0; i < v.size(); ++i) s_ += (i ? "," : "") + g17(v[i]);
    s_ += "\n";
  }
  void save(const fs::path &file) const { write_text(file, s_); }

 private:
  size_t cols_;
  std::string s_;
};

std::string tag(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Options every subcommand accepts.
struct Common {
  std::optional<std::string> config, out;
  std::optional<int> jobs;
  RunConfig cfg;
  fs::path root;
  int njobs = 1;

  void attach(CLI::App *sc) {
    sc->add_option("--config", config, "key=value configuration file");
    sc->add_option("--out", out, "output root (default: $VORTWAVE_OUT, config key out, ./vortwave_out)");
    sc->add_option("--jobs", jobs, "worker threads for independent evaluations");
  }
  void resolve() {
    if (config) cfg = RunConfig::load(*config);
    root = cli::output_root(out, cfg);
    njobs = jobs ? *jobs : int(cfg.integer("jobs").value_or(1));
    if (njobs < 1) throw UsageError("--jobs must be at least 1");
  }
  double num(const std::optional<double> &flag, const std::string &key, double def) const {
    return flag ? *flag : cfg.num(key).value_or(def);
  }
  int integer(const std::optional<int> &flag, const std::string &key, int def) const {
    return flag ? *flag : int(cfg.integer(key).value_or(def));
  }
  std::vector<double> list(const std::optional<std::string> &flag, const std::string &key,
                           std::vector<double> def) const {
    if (flag) return cli::parse_list(*flag, key);
    return cfg.list(key).value_or(std::move(def));
  }
};

void require_sigma(double s) {
  if (!(s > 1.0 / 3.0)) throw UsageError("sigma0 must exceed 1/3 (got " + g17(s) + ")");
}

// Runs fn(i) for i in [0, count) on `jobs` threads.
template <class Fn>
void parallel_for(int count, int jobs, Fn fn) {
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errs(count);
  auto work = [&] {
    for (int i; (i = next++) < count;) {
      try {
        fn(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::min(jobs, count); ++t) pool.emplace_back(work);
  work();
  for (auto &t : pool) t.join();
  for (auto &e : errs)
    if (e) std::rethrow_exception(e);
}

// dispersion ------------------------------------------------------------

struct DispersionCmd {
  Common c;
  std::optional<double> sigma0, tol;
  std::optional<int> count;

  int run() {
    c.resolve();
    const double sg = c.num(sigma0, "sigma0", 1.0), tl = c.num(tol, "tol", 1e-12);
    const int cnt = c.integer(count, "count", 10);
    require_sigma(sg);
    if (cnt < 1) throw UsageError("count must be positive");
    auto roots = dispersion_roots(sg, cnt);
    Csv csv({"sigma0", "index", "re", "im", "residual", "converged"});
    double worst = 0.0;
    bool ok = int(roots.size()) == cnt;
    for (size_t i = 0; i < roots.size(); ++i) {
      const auto &r = roots[i];
      csv.row({sg, double(i), r.lambda.real(), r.lambda.imag(), r.residual, r.converged ? 1.0 : 0.0});
      worst = std::max(worst, r.residual);
      ok = ok && r.converged && r.residual <= tl;
    }
    csv.save(c.root / "dispersion.csv");
    write_json(c.root / "dispersion.json", Json()
                                               .num("sigma0", sg)
                                               .integer("count", long(roots.size()))
                                               .num("tol", tl)
                                               .num("max_residual", worst)
                                               .boolean("ok", ok));
    if (!ok) {
      std::cerr << "dispersion: root residual above " << g17(tl) << " or Newton failure\n";
      return kNumerical;
    }
    return kOk;
  }
};

// spectrum --------------------------------------------------------------

struct SpectrumCmd {
  Common c;
  std::optional<double> sigma0;
  std::optional<int> n;

  int run() {
    c.resolve();
    const double sg = c.num(sigma0, "sigma0", 0.5);
    const int nn = c.integer(n, "n", 64);
    require_sigma(sg);
    if (nn < 32) throw UsageError("spectra need n >= 32");
    auto rep = collocation_spectrum(sg, nn);
    Csv csv({"re", "im", "multiplicity", "residual", "dispersion_residual"});
    for (size_t i = 0; i < rep.eigenvalues.size(); ++i)
      csv.row({rep.eigenvalues[i].real(), rep.eigenvalues[i].imag(), double(rep.multiplicity[i]), rep.residuals[i],
               rep.dispersion_residuals[i]});
    csv.save(c.root / "spectrum.csv");
    double axis = 0.0, worst = 0.0;
    for (auto l : rep.raw_clustered)
      if (std::abs(l.real()) <= 1e-6) axis = std::max(axis, std::abs(l));
    for (double r : rep.dispersion_residuals) worst = std::max(worst, r);
    write_json(c.root / "spectrum.json", Json()
                                             .num("sigma0", sg)
                                             .integer("n", nn)
                                             .integer("raw_eigenvalues", long(rep.raw.size()))
                                             .integer("kept_eigenvalues", long(rep.eigenvalues.size()))
                                             .integer("zero_geometric_multiplicity", rep.zero_geometric)
                                             .integer("zero_algebraic_multiplicity", rep.zero_algebraic)
                                             .num("largest_modulus_on_imaginary_axis", axis)
                                             .num("max_dispersion_residual", worst));
    return kOk;
  }
};

// resolvent -------------------------------------------------------------

struct ResolventCmd {
  Common c;
  std::optional<double> sigma0, amin, amax;
  std::optional<int> n, points;

  int run() {
    c.resolve();
    const double sg = c.num(sigma0, "sigma0", 0.5);
    const double a0 = c.num(amin, "alpha_min", 5.0), a1 = c.num(amax, "alpha_max", 500.0);
    const int nn = c.integer(n, "n", 64), np = c.integer(points, "points", 25);
    require_sigma(sg);
    if (!(a0 >= 1.0 && a1 > a0)) throw UsageError("need 1 <= alpha_min < alpha_max");
    if (np < 2) throw UsageError("points must be at least 2");
    std::vector<double> al(np), gain(np);
    for (int i = 0; i < np; ++i) al[i] = a0 * std::pow(a1 / a0, double(i) / (np - 1));
    parallel_for(np, c.njobs, [&](int i) { gain[i] = resolvent_gain(al[i], sg, nn); });
    Csv csv({"alpha", "gain"});
    double mx = 0.0, my = 0.0, gmax = 0.0, gmin = INFINITY;
    for (int i = 0; i < np; ++i) {
      csv.row({al[i], gain[i]});
      mx += std::log(al[i]) / np;
      my += std::log(gain[i]) / np;
      gmax = std::max(gmax, gain[i]);
      gmin = std::min(gmin, gain[i]);
    }
    double sxy = 0.0, sxx = 0.0;
    for (int i = 0; i < np; ++i) {
      sxy += (std::log(al[i]) - mx) * (std::log(gain[i]) - my);
      sxx += (std::log(al[i]) - mx) * (std::log(al[i]) - mx);
    }
    csv.save(c.root / "resolvent.csv");
    write_json(c.root / "resolvent.json", Json()
                                              .num("sigma0", sg)
                                              .integer("n", nn)
                                              .num("alpha_min", a0)
                                              .num("alpha_max", a1)
                                              .num("loglog_slope", sxy / sxx)
                                              .num("max_gain", gmax)
                                              .num("max_over_min", gmax / gmin));
    return kOk;
  }
};

// reduced ---------------------------------------------------------------

struct ReducedCmd {
  Common c;
  std::optional<double> sigma0, eps1;
  std::optional<int> n;

  int run() {
    c.resolve();
    const double sg = c.num(sigma0, "sigma0", 0.5), e1 = c.num(eps1, "eps1", 0.04);
    const int nn = c.integer(n, "n", 48);
    require_sigma(sg);
    if (!(e1 > 0.0)) throw UsageError("eps1 must be positive");
    auto g = build_grid(nn);
    Params p;
    p.sigma0 = sg;
    auto j = jordan_chain(g, p);
    const auto &e = j.e, &f = j.f;
    const double c0 = sg - 1.0 / 3.0;
    Json coeff;
    coeff.num("d2H0_ee", quad_form_d2H0(g, e, e, p))
        .num("d2H0_ef", quad_form_d2H0(g, e, f, p))
        .num("d2H0_ff", quad_form_d2H0(g, f, f, p))
        .num("d2H1_ee", quad_form_d2H1(g, e, e, p))
        .num("d2H1_ef", quad_form_d2H1(g, e, f, p))
        .num("d2H1_ff", quad_form_d2H1(g, f, f, p))
        .num("d3H0_eee", cubic_form_d3H0(g, e, e, e, p))
        .num("d3H0_eef", cubic_form_d3H0(g, e, e, f, p))
        .num("d3H0_eff", cubic_form_d3H0(g, e, f, f, p))
        .num("d3H0_fff", cubic_form_d3H0(g, f, f, f, p));
    Json closed;
    closed.num("d2H0_ff", 1.0)
        .num("d2H1_ee", -1.0 / c0)
        .num("d3H0_eee", -std::pow(c0, -1.5))
        .num("d3H0_eff", -1.0 / std::sqrt(c0));
    const double qs = -2.0 * e1 * std::sqrt(c0);
    write_json(c.root / "reduced.json", Json()
                                            .num("sigma0", sg)
                                            .num("eps1", e1)
                                            .integer("n", nn)
                                            .obj("quadrature", coeff)
                                            .obj("closed_form", closed)
                                            .num("linear_coefficient", e1 / c0)
                                            .num("quadratic_coefficient", 0.5 * std::pow(c0, -1.5))
                                            .num("equilibrium_q", qs)
                                            .num("length_scale", std::sqrt(c0 / e1)));
    return kOk;
  }
};

// homoclinic ------------------------------------------------------------

struct HomoclinicCmd {
  Common c;
  std::optional<double> offset, tol, dx;

  int run() {
    c.resolve();
    ShootOptions o;
    o.offset = c.num(offset, "offset", o.offset);
    o.tol = c.num(tol, "tol", o.tol);
    o.dx = c.num(dx, "dx", o.dx);
    if (!(o.offset > 0.0 && o.tol > 0.0 && o.dx > 0.0)) throw UsageError("offset, tol and dx must be positive");
    auto tr = shoot_homoclinic(kdv_field, o);
    Csv csv({"xbar", "Q", "P", "Q_exact"});
    double err = 0.0, en = 0.0;
    for (size_t i = 0; i < tr.x.size(); ++i) {
      const double rel = tr.x[i] - tr.x0, qe = exact_homoclinic(rel).Q;
      csv.row({rel, tr.Q[i], tr.P[i], qe});
      if (std::abs(rel) <= 20.0) err = std::max(err, std::abs(tr.Q[i] - qe));
      en = std::max(en, std::abs(kdv_energy({tr.Q[i], tr.P[i]})));
    }
    csv.save(c.root / "homoclinic.csv");
    write_json(c.root / "homoclinic.json", Json()
                                               .num("offset", o.offset)
                                               .num("tol", o.tol)
                                               .num("x0", tr.x0)
                                               .num("Q_turn", tr.Q_turn)
                                               .num("max_error_within_20", err)
                                               .num("max_abs_energy", en)
                                               .integer("steps", tr.steps));
    return kOk;
  }
};

// solve / sweep ---------------------------------------------------------

Json profile_json(const WaveProfile &w) {
  Json r;
  r.num("laplace", w.residuals.laplace)
      .num("bottom", w.residuals.bottom)
      .num("kinematic", w.residuals.kinematic)
      .num("bernoulli", w.residuals.bernoulli);
  return Json()
      .num("eps", w.eps)
      .num("sigma0", w.params.sigma0)
      .num("omega", w.params.omega())
      .num("Lambda", w.Lambda)
      .integer("M", w.M)
      .integer("n", w.n)
      .num("amplitude", w.amplitude)
      .num("half_width", w.half_width)
      .num("rho", w.rho)
      .obj("residuals", r)
      .integer("newton_iterations", w.newton_iters)
      .nums("increments", w.increments)
      .nums("residual_history", w.residual_history);
}

void save_profile(const WaveProfile &w, const fs::path &file) {
  Csv csv({"xi", "eta", "eta_kdv"});
  for (int i = 0; i < w.xi.size(); ++i)
    csv.row({w.xi(i), w.eta(i), asymptotic_profile(w.eps, w.params.sigma0, 1.0, 1.0, w.xi(i))});
  csv.save(file);
}

struct WaveOpts {
  std::optional<double> sigma0, tol;
  std::optional<int> M, n;

  void attach(CLI::App *sc) {
    sc->add_option("--sigma0", sigma0, "surface tension parameter (> 1/3)");
    sc->add_option("--M", M, "Fourier modes in xi");
    sc->add_option("--n", n, "Chebyshev nodes across the depth");
    sc->add_option("--tol", tol, "Newton residual tolerance");
  }
};

void check_eps(double e) {
  if (!(e > 0.0 && e <= 0.15)) throw UsageError("eps must lie in (0, 0.15] (got " + g17(e) + ")");
}

struct SolveCmd {
  Common c;
  WaveOpts w;
  std::optional<double> eps, Lambda;
  std::optional<int> maxit;

  int run() {
    c.resolve();
    const double e = c.num(eps, "eps", 0.04), sg = c.num(w.sigma0, "sigma0", 0.5);
    const double tl = c.num(w.tol, "tol", 1e-10), L = c.num(Lambda, "Lambda", 0.0);
    const int M = c.integer(w.M, "M", 64), n = c.integer(w.n, "n", 16), it = c.integer(maxit, "maxit", 50);
    require_sigma(sg);
    check_eps(e);
    StripSolver solver(e, sg, M, n, L);
    const auto t0 = std::chrono::steady_clock::now();
    auto prof = newton_solve(solver, solver.guess(), tl, it);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const fs::path dir = c.root / "solve";
    save_profile(prof, dir / ("profile_eps" + tag(e) + ".csv"));
    write_json(dir / ("profile_eps" + tag(e) + ".json"), profile_json(prof));
    std::cerr << "solve: eps " << e << ", " << prof.newton_iters << " Newton steps, residual "
              << prof.residuals.max() << ", " << secs << " s\n";
    return kOk;
  }
};

struct SweepCmd {
  Common c;
  WaveOpts w;
  std::optional<std::string> eps;

  int run() {
    c.resolve();
    const auto list = c.list(eps, "eps", {0.02, 0.04, 0.08});
    const double sg = c.num(w.sigma0, "sigma0", 0.5), tl = c.num(w.tol, "tol", 1e-10);
    const int M = c.integer(w.M, "M", 64), n = c.integer(w.n, "n", 16);
    require_sigma(sg);
    for (double e : list) check_eps(e);
    for (size_t i = 1; i < list.size(); ++i)
      if (list[i] <= list[i - 1]) throw UsageError("eps list must be increasing");
    auto profiles = continuation_sweep(list, sg, M, n, tl);
    std::vector<double> refined(profiles.size());
    parallel_for(int(profiles.size()), c.njobs, [&](int i) { refined[i] = refined_residual(profiles[i]); });
    const fs::path dir = c.root / "sweep";
    Csv table({"eps", "amplitude", "rho", "half_width", "residual", "refined_residual", "newton_iterations"});
    double rmax = 0.0, rmin = INFINITY;
    for (size_t i = 0; i < profiles.size(); ++i) {
      const auto &p = profiles[i];
      table.row({p.eps, p.amplitude, p.rho, p.half_width, p.residuals.max(), refined[i], double(p.newton_iters)});
      save_profile(p, dir / ("profile_eps" + tag(p.eps) + ".csv"));
      rmax = std::max(rmax, p.rho);
      rmin = std::min(rmin, p.rho);
    }
    table.save(dir / "rho.csv");
    write_json(dir / "sweep.json", Json()
                                       .num("sigma0", sg)
                                       .nums("eps", list)
                                       .num("rho_max_over_min", rmax / rmin)
                                       .num("half_width_ratio_first_last",
                                            profiles.front().half_width / profiles.back().half_width)
                                       .num("amplitude_over_3eps_first",
                                            -profiles.front().amplitude / (3.0 * profiles.front().eps)));
    return kOk;
  }
};

// verify ----------------------------------------------------------------

// Re-reads a dispersion.csv and recomputes each stored residual.
std::vector<CheckResult> recheck_dispersion(const fs::path &file) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read " + file.string());
  std::string line;
  std::getline(in, line);
  if (line.rfind("sigma0,index,re,im,residual", 0) != 0) throw UsageError(file.string() + ": not a dispersion table");
  double drift = 0.0, worst = 0.0;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto v = cli::parse_list(line, file.string());
    if (v.size() != 6) throw UsageError(file.string() + ": bad row");
    const double r = std::abs(dispersion_residual({v[2], v[3]}, v[0]));
    drift = std::max(drift, std::abs(r - v[4]));
    worst = std::max(worst, r);
    ++rows;
  }
  const std::string G = "recheck";
  return {{G, "stored dispersion residuals reproduce", rows > 0 && drift <= 1e-14, drift, 1e-14,
           std::to_string(rows) + " roots"},
          {G, "stored dispersion roots still solve the relation", rows > 0 && worst <= 1e-12, worst, 1e-12, ""}};
}

struct VerifyCmd {
  Common c;
  std::vector<std::string> only;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<std::string> recheck;

  int run() {
    c.resolve();
    VerifyOptions o;
    o.seed = seed ? *seed : std::uint64_t(c.cfg.integer("seed").value_or(long(o.seed)));
    o.samples = c.integer(samples, "samples", o.samples);
    if (o.samples < 1) throw UsageError("samples must be positive");
    o.only = only;
    if (o.only.empty())
      if (auto s = c.cfg.str("only")) {
        std::stringstream ss(*s);
        for (std::string t; std::getline(ss, t, ',');) o.only.push_back(t);
      }
    const auto groups = verify_groups();
    for (const auto &g : o.only)
      if (std::find(groups.begin(), groups.end(), g) == groups.end())
        throw UsageError("unknown verify group '" + g + "'");
    auto results = (recheck && o.only.empty()) ? std::vector<CheckResult>{} : run_verify(o);
    if (recheck) {
      auto extra = recheck_dispersion(*recheck);
      results.insert(results.end(), extra.begin(), extra.end());
    }
    const std::string report = format_report(results);
    std::cout << report;
    write_text(c.root / "verify_report.txt", report);
    for (const auto &r : results)
      if (!r.pass) return kVerifyFailed;
    return kOk;
  }
};

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Solitary capillary waves with constant vorticity: spectra, reduction and Newton solver"};
  app.require_subcommand(1);

  DispersionCmd disp;
  auto *sd = app.add_subcommand("dispersion", "roots of the dispersion relation");
  disp.c.attach(sd);
  sd->add_option("--sigma0", disp.sigma0, "surface tension parameter (> 1/3)");
  sd->add_option("--count", disp.count, "number of roots");
  sd->add_option("--tol", disp.tol, "residual tolerance");

  SpectrumCmd spec;
  auto *ss = app.add_subcommand("spectrum", "collocation spectrum of the linearised operator");
  spec.c.attach(ss);
  ss->add_option("--sigma0", spec.sigma0, "surface tension parameter (> 1/3)");
  ss->add_option("--n", spec.n, "Chebyshev nodes (>= 32)");

  ResolventCmd res;
  auto *sr = app.add_subcommand("resolvent", "scaled resolvent norm along the imaginary axis");
  res.c.attach(sr);
  sr->add_option("--sigma0", res.sigma0, "surface tension parameter (> 1/3)");
  sr->add_option("--n", res.n, "Chebyshev nodes");
  sr->add_option("--alpha-min", res.amin, "smallest alpha");
  sr->add_option("--alpha-max", res.amax, "largest alpha");
  sr->add_option("--points", res.points, "log-spaced sample count");

  ReducedCmd red;
  auto *sR = app.add_subcommand("reduced", "normal form coefficients of the reduced system");
  red.c.attach(sR);
  sR->add_option("--sigma0", red.sigma0, "surface tension parameter (> 1/3)");
  sR->add_option("--eps1", red.eps1, "vorticity detuning");
  sR->add_option("--n", red.n, "Chebyshev nodes");

  HomoclinicCmd hom;
  auto *sh = app.add_subcommand("homoclinic", "shoot the KdV homoclinic orbit");
  hom.c.attach(sh);
  sh->add_option("--offset", hom.offset, "launch distance from the saddle");
  sh->add_option("--tol", hom.tol, "integrator tolerance");
  sh->add_option("--dx", hom.dx, "output spacing");

  SolveCmd sol;
  auto *sv = app.add_subcommand("solve", "Newton solve for one solitary wave");
  sol.c.attach(sv);
  sol.w.attach(sv);
  sv->add_option("--eps", sol.eps, "amplitude parameter in (0, 0.15]");
  sv->add_option("--Lambda", sol.Lambda, "half-length of the truncated domain (0: automatic)");
  sv->add_option("--maxit", sol.maxit, "Newton iteration cap");

  SweepCmd swp;
  auto *sw = app.add_subcommand("sweep", "continuation in eps with the remainder table");
  swp.c.attach(sw);
  swp.w.attach(sw);
  sw->add_option("--eps", swp.eps, "comma-separated increasing eps values");

  VerifyCmd ver;
  auto *sV = app.add_subcommand("verify", "run the property suite");
  ver.c.attach(sV);
  sV->add_option("--only", ver.only, "restrict to groups (kernel, phase, hamiltonian, flattening, linear, reduced, wave)")
      ->delimiter(',');
  sV->add_option("--seed", ver.seed, "seed for random states");
  sV->add_option("--samples", ver.samples, "random states per property");
  sV->add_option("--recheck", ver.recheck, "re-verify a dispersion.csv written earlier");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sd) return disp.run();
    if (*ss) return spec.run();
    if (*sr) return res.run();
    if (*sR) return red.run();
    if (*sh) return hom.run();
    if (*sv) return sol.run();
    if (*sw) return swp.run();
    if (*sV) return ver.run();
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception &e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}
