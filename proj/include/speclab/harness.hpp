#pragma once
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "speclab/cauchy.hpp"
#include "speclab/config.hpp"
#include "speclab/csv.hpp"
#include "speclab/eigensolver.hpp"
#include "speclab/lift.hpp"
#include "speclab/localization.hpp"
#include "speclab/multiplier.hpp"
#include "speclab/observability.hpp"
#include "speclab/three_ball.hpp"

namespace speclab {

struct RunContext {
  json cfg;
  std::string config_path;
  std::string outdir = "speclab_out";
  std::uint64_t seed = 12345;
  int jobs = 1;
  std::string hash;
  std::vector<std::string> outputs;
};

namespace detail {

inline std::string out_path(RunContext& ctx, const std::string& name) {
  const std::string p = ctx.outdir + "/" + name;
  ctx.outputs.push_back(name);
  return p;
}

inline void ensure_outdir(const RunContext& ctx) {
  std::error_code ec;
  std::filesystem::create_directories(ctx.outdir + "/cache", ec);
  if (ec)
    throw ConfigError("cli: cannot create output directory '" + ctx.outdir +
                      "': " + ec.message());
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Eigenpair cache: identical (potential, box, cutoff, solver seed) inputs
// reuse the stored pairs bit-for-bit, so warm runs reproduce cold runs.
// ---------------------------------------------------------------------------
namespace detail {

constexpr std::uint64_t kEigMagic = 0x3147494543455053ULL;  // "SPECEIG1"

inline std::string eig_cache_path(const RunContext& ctx, const Grid1D& g, double lambda_cut) {
  json key;
  key["grid"] = {{"L", g.L}, {"n", g.n}};
  key["lambda"] = lambda_cut;
  key["potential"] = ctx.cfg.contains("potential") ? ctx.cfg.at("potential") : json::object();
  return ctx.outdir + "/cache/eig_" + config_hash(key, ctx.seed) + ".bin";
}

inline void save_subspace(const std::string& path, const SpectralSubspace& sub) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cache: cannot open for writing: " + path);
  const std::uint64_t magic = kEigMagic;
  const std::uint64_t n = static_cast<std::uint64_t>(sub.grid.n);
  const std::uint64_t m = static_cast<std::uint64_t>(sub.m());
  out.write(reinterpret_cast<const char*>(&magic), sizeof magic);
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(&m), sizeof m);
  out.write(reinterpret_cast<const char*>(&sub.grid.L), sizeof sub.grid.L);
  out.write(reinterpret_cast<const char*>(&sub.grid.h), sizeof sub.grid.h);
  out.write(reinterpret_cast<const char*>(&sub.lambda_cut), sizeof sub.lambda_cut);
  out.write(reinterpret_cast<const char*>(sub.lambdas.data()),
            static_cast<std::streamsize>(m * sizeof(double)));
  for (const auto& v : sub.vecs)
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
}

inline bool load_subspace(const std::string& path, const Grid1D& g, double lambda_cut,
                          SpectralSubspace& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::uint64_t magic = 0, n = 0, m = 0;
  double L = 0, h = 0, cut = 0;
  in.read(reinterpret_cast<char*>(&magic), sizeof magic);
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  in.read(reinterpret_cast<char*>(&m), sizeof m);
  in.read(reinterpret_cast<char*>(&L), sizeof L);
  in.read(reinterpret_cast<char*>(&h), sizeof h);
  in.read(reinterpret_cast<char*>(&cut), sizeof cut);
  if (!in || magic != kEigMagic || n != static_cast<std::uint64_t>(g.n) || L != g.L ||
      h != g.h || cut != lambda_cut || m > n)
    return false;
  out.grid = g;
  out.lambda_cut = lambda_cut;
  out.lambdas.resize(m);
  in.read(reinterpret_cast<char*>(out.lambdas.data()),
          static_cast<std::streamsize>(m * sizeof(double)));
  out.vecs.assign(m, std::vector<double>(n));
  for (auto& v : out.vecs)
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
  return static_cast<bool>(in);
}

}  // namespace detail

inline SpectralSubspace obtain_subspace(RunContext& ctx, const Potential& pot, const Grid1D& g,
                                        double lambda_cut, bool& from_cache) {
  const std::string path = detail::eig_cache_path(ctx, g, lambda_cut);
  SpectralSubspace sub;
  if (detail::load_subspace(path, g, lambda_cut, sub)) {
    from_cache = true;
    return sub;
  }
  sub = eigenpairs_below(g, pot, lambda_cut, ctx.seed);
  detail::save_subspace(path, sub);
  from_cache = false;
  return sub;
}

// Leading modes of a subspace up to a smaller cutoff.
inline SpectralSubspace prefix_subspace(const SpectralSubspace& sub, double lambda) {
  SpectralSubspace out;
  out.grid = sub.grid;
  out.lambda_cut = lambda;
  for (int k = 0; k < sub.m(); ++k) {
    if (sub.lambdas[static_cast<std::size_t>(k)] > lambda) break;
    out.lambdas.push_back(sub.lambdas[static_cast<std::size_t>(k)]);
    out.vecs.push_back(sub.vecs[static_cast<std::size_t>(k)]);
  }
  return out;
}

namespace detail {

inline void write_run_record(const RunContext& ctx, const std::string& command, double seconds) {
  std::ofstream rec(ctx.outdir + "/run_record.txt", std::ios::app);
  if (!rec) return;
  const std::time_t t = std::time(nullptr);
  char stamp[32] = "unknown";
  if (std::tm tmv{}; gmtime_r(&t, &tmv) != nullptr)
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tmv);
  rec << stamp << " command=" << command << " config=" << ctx.config_path
      << " hash=" << ctx.hash << " seed=" << ctx.seed << " jobs=" << ctx.jobs
      << " elapsed_s=" << fmt_double(seconds) << " outputs=";
  for (std::size_t i = 0; i < ctx.outputs.size(); ++i)
    rec << (i ? "," : "") << ctx.outputs[i];
  rec << "\n";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// eig: eigenpairs below a cutoff, residuals, counting diagnostics.
// ---------------------------------------------------------------------------
inline int run_eig(RunContext& ctx) {
  const json& sec = ctx.cfg.contains("eig") ? ctx.cfg.at("eig") : json::object();
  if (!ctx.cfg.contains("eig"))
    throw ConfigError("config: command 'eig' needs an \"eig\" section");
  const double lambda = cfg::num(sec, "eig", "lambda");
  const double tol = cfg::num_or(sec, "eig", "residual_tol", 1e-7);
  const Potential pot = potential_from_config(ctx.cfg);
  const Grid1D g = grid_from_config(ctx.cfg, pot);

  bool from_cache = false;
  const SpectralSubspace sub = obtain_subspace(ctx, pot, g, lambda, from_cache);
  if (sub.m() == 0)
    throw ConfigError("eig: no eigenvalues below lambda = " + std::to_string(lambda));
  const TridiagonalOperator op = build_hamiltonian(g, pot);
  const SubspaceDiagnostics diag = check_subspace(op, sub);

  {
    CsvWriter csv(detail::out_path(ctx, "eigenvalues.csv"));
    csv.row({"k", "lambda_k", "residual"});
    std::vector<double> tv;
    for (int k = 0; k < sub.m(); ++k) {
      const double lk = sub.lambdas[static_cast<std::size_t>(k)];
      tridiag_apply(op, sub.vecs[static_cast<std::size_t>(k)], tv, lk);
      const double res = norm_h(g.h, tv) / std::max(1.0, std::abs(lk));
      csv.row({std::to_string(k), fmt_double(lk), fmt_double(res)});
    }
  }
  {
    std::ofstream bin(detail::out_path(ctx, "eigvecs.bin"), std::ios::binary);
    if (!bin) throw std::runtime_error("eig: cannot open eigvecs.bin for writing");
    const std::uint64_t n = static_cast<std::uint64_t>(g.n);
    const std::uint64_t m = static_cast<std::uint64_t>(sub.m());
    bin.write(reinterpret_cast<const char*>(&n), sizeof n);
    bin.write(reinterpret_cast<const char*>(&m), sizeof m);
    for (const auto& v : sub.vecs)
      bin.write(reinterpret_cast<const char*>(v.data()),
                static_cast<std::streamsize>(v.size() * sizeof(double)));
  }
  {
    CsvWriter csv(detail::out_path(ctx, "counting.csv"));
    csv.row({"lambda", "count", "weyl_ratio"});
    for (double f : {0.25, 0.5, 0.75, 1.0}) {
      const double lv = lambda * f;
      csv.row({fmt_double(lv), std::to_string(sturm_count(op, lv)),
               fmt_double(counting_ratio(op, pot, lv))});
    }
  }

  std::cout << "eig: modes=" << sub.m() << " lambda_cut=" << fmt_double(lambda)
            << " max_residual=" << fmt_double(diag.max_residual_rel)
            << " ortho_defect=" << fmt_double(diag.max_ortho_defect)
            << " sturm_match=" << detail::yes_no(diag.sturm_match)
            << " cache=" << (from_cache ? "hit" : "cold") << "\n";
  if (diag.max_residual_rel > tol || diag.max_ortho_defect > 1e-10 || !diag.sturm_match) {
    std::cout << "FAIL eig: residual " << fmt_double(diag.max_residual_rel) << " vs tol "
              << fmt_double(tol) << ", ortho " << fmt_double(diag.max_ortho_defect)
              << ", sturm_match=" << detail::yes_no(diag.sturm_match) << "\n";
    return 2;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// thick: thickness verdicts, recipe equivalences, covering multiplicity.
// ---------------------------------------------------------------------------
inline int run_thick(RunContext& ctx) {
  if (!ctx.cfg.contains("thick"))
    throw ConfigError("config: command 'thick' needs a \"thick\" section");
  const json& sec = ctx.cfg.at("thick");

  Grid1D g;
  bool has_grid = false;
  if (ctx.cfg.contains("grid") && ctx.cfg.contains("potential")) {
    g = grid_from_config(ctx.cfg, potential_from_config(ctx.cfg));
    has_grid = true;
  }
  const double W = window_from_config(ctx.cfg, has_grid ? &g : nullptr);
  const IntervalSet sensor = sensor_from_config(ctx.cfg, W, ctx.seed);

  const std::string mode = cfg::str(sec, "thick", "mode");
  double default_step = W / 4096.0;
  if (ctx.cfg.at("sensor").contains("period") && ctx.cfg.at("sensor").contains("delta"))
    default_step = cfg::num(ctx.cfg.at("sensor"), "sensor", "period") *
                   cfg::num(ctx.cfg.at("sensor"), "sensor", "delta") / 4.0;
  const double step = cfg::num_or(sec, "thick", "step", default_step);

  struct Row {
    std::string check;
    double position, margin;
    bool ok;
  };
  std::vector<Row> rows;
  double part_a = 0.0, part_s = 0.0;  // partition geometry for the multiplicity row

  if (mode == "direct") {
    ThicknessParams p{cfg::num(sec, "thick", "s"), cfg::num(sec, "thick", "tau"),
                      cfg::num(sec, "thick", "gamma"), cfg::num(sec, "thick", "D")};
    const ThicknessReport rep = is_thick_direct(sensor, p, W, step);
    rows.push_back({"direct", rep.worst_center, rep.worst_margin, rep.ok});
    if (p.s < 1.0) {
      const PartitionParams q = partition_from_direct(p);
      part_a = q.a;
      part_s = q.s;
      if (cfg::flag_or(sec, "thick", "equivalence", false)) {
        const ThicknessReport rp = is_thick_partition(sensor, q, W);
        rows.push_back({"partition_from_direct", rp.worst_center, rp.worst_margin, rp.ok});
      }
    }
    if (cfg::flag_or(sec, "thick", "equivalence", false)) {
      const json& sj = ctx.cfg.at("sensor");
      if (cfg::str(sj, "sensor", "kind") == "periodic" && p.s == 0.0 && p.tau == 0.0) {
        const double period = cfg::num(sj, "sensor", "period");
        const double delta = cfg::num(sj, "sensor", "delta");
        const ThicknessReport re =
            is_thick_partition(sensor, PartitionParams{3.0 * period, 0.0, 0.0, delta / 6.0}, W);
        rows.push_back({"periodic_partition_example", re.worst_center, re.worst_margin, re.ok});
      }
    }
  } else if (mode == "partition") {
    PartitionParams p{cfg::num(sec, "thick", "a"), cfg::num(sec, "thick", "s"),
                      cfg::num(sec, "thick", "tau"), cfg::num(sec, "thick", "gamma1")};
    const ThicknessReport rep = is_thick_partition(sensor, p, W);
    rows.push_back({"partition", rep.worst_center, rep.worst_margin, rep.ok});
    part_a = p.a;
    part_s = p.s;
    if (cfg::flag_or(sec, "thick", "equivalence", false)) {
      const ThicknessParams d = direct_from_partition(p);
      const ThicknessReport rd = is_thick_direct(sensor, d, W, step);
      rows.push_back({"direct_from_partition", rd.worst_center, rd.worst_margin, rd.ok});
    }
  } else if (mode == "s1") {
    const double gamma1 = cfg::num(sec, "thick", "gamma1");
    const long long n0 = cfg::integer(sec, "thick", "n0");
    if (n0 < 1)
      throw ConfigError("config: thick n0 = " + std::to_string(n0) + " must be >= 1");
    const ThicknessReport rep = is_thick_s1(sensor, gamma1, static_cast<int>(n0), W);
    rows.push_back({"s1_window", rep.worst_center, rep.worst_margin, rep.ok});
    const ThicknessParams d = s1_direct_params(gamma1, static_cast<int>(n0));
    if (cfg::flag_or(sec, "thick", "equivalence", false)) {
      const ThicknessReport rd = is_thick_direct(sensor, d, W, step);
      rows.push_back({"direct_from_s1", rd.worst_center, rd.worst_margin, rd.ok});
    }
  } else {
    throw ConfigError("config: unknown thick mode '" + mode + "'");
  }

  if (cfg::flag_or(sec, "thick", "multiplicity", false) && part_a > 0.0) {
    const int mult = dilated_cell_multiplicity(part_a, part_s, 200, 4.0);
    rows.push_back({"dilated_multiplicity", 0.0, 64.0 - mult, mult <= 64});
  }

  {
    CsvWriter csv(detail::out_path(ctx, "thickness_report.csv"));
    csv.row({"check", "position", "margin", "ok"});
    for (const Row& r : rows)
      csv.row({r.check, fmt_double(r.position), fmt_double(r.margin), detail::yes_no(r.ok)});
  }

  bool all_ok = true;
  double worst = std::numeric_limits<double>::infinity();
  for (const Row& r : rows) {
    all_ok = all_ok && r.ok;
    worst = std::min(worst, r.margin);
  }
  std::cout << "thick: mode=" << mode << " step=" << fmt_double(step)
            << " checks=" << rows.size() << " worst_margin=" << fmt_double(worst)
            << " ok=" << detail::yes_no(all_ok) << "\n";
  if (!all_ok) {
    for (const Row& r : rows)
      if (!r.ok)
        std::cout << "FAIL thick: check '" << r.check << "' at position "
                  << fmt_double(r.position) << " margin " << fmt_double(r.margin) << "\n";
    return 2;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// obs: spectral-inequality constants at one or more cutoffs.
// ---------------------------------------------------------------------------
inline int run_obs(RunContext& ctx) {
  if (!ctx.cfg.contains("obs"))
    throw ConfigError("config: command 'obs' needs an \"obs\" section");
  const json& sec = ctx.cfg.at("obs");
  std::vector<double> lambdas;
  if (sec.contains("lambdas"))
    lambdas = cfg::num_list(sec, "obs", "lambdas");
  else
    lambdas.push_back(cfg::num(sec, "obs", "lambda"));
  for (double l : lambdas)
    if (!(l > 0)) throw ConfigError("config: obs lambda " + std::to_string(l) + " must be > 0");

  const Potential pot = potential_from_config(ctx.cfg);
  const Grid1D g = grid_from_config(ctx.cfg, pot);
  const IntervalSet sensor = sensor_from_config(ctx.cfg, window_from_config(ctx.cfg, &g),
                                                ctx.seed);
  const double lmax = *std::max_element(lambdas.begin(), lambdas.end());
  bool from_cache = false;
  const SpectralSubspace sub = obtain_subspace(ctx, pot, g, lmax, from_cache);
  const std::vector<SweepPoint> pts = observability_sweep(sub, sensor, lambdas);

  CsvWriter csv(detail::out_path(ctx, "observability.csv"));
  csv.row({"lambda", "modes", "lambda_min", "lambda_max", "c_obs", "certificate_rel",
           "unobservable"});
  bool ok = true;
  for (const SweepPoint& sp : pts) {
    const ObservabilityResult& r = sp.obs;
    csv.row({fmt_double(sp.lambda), std::to_string(r.m), fmt_double(r.lambda_min),
             fmt_double(r.lambda_max), fmt_double(r.c_obs), fmt_double(r.certificate_rel),
             detail::yes_no(r.unobservable)});
    std::cout << "obs: lambda=" << fmt_double(sp.lambda) << " modes=" << r.m
              << " c_obs=" << fmt_double(r.c_obs)
              << " certificate_rel=" << fmt_double(r.certificate_rel)
              << " cache=" << (from_cache ? "hit" : "cold") << "\n";
    if (r.unobservable) {
      std::cout << "FAIL obs: subspace at lambda " << fmt_double(sp.lambda)
                << " is unobservable on the sensor set (lambda_min = "
                << fmt_double(r.lambda_min) << ")\n";
      ok = false;
    } else if (r.certificate_rel > 1e-6) {
      std::cout << "FAIL obs: extremal certificate mismatch " << fmt_double(r.certificate_rel)
                << " at lambda " << fmt_double(sp.lambda) << "\n";
      ok = false;
    }
  }
  return ok ? 0 : 2;
}

// ---------------------------------------------------------------------------
// sweep: growth exponent of log C_obs across cutoffs, plus the optional
// sensor-density scaling study at a fixed cutoff.
// ---------------------------------------------------------------------------
inline int run_sweep(RunContext& ctx) {
  if (!ctx.cfg.contains("sweep"))
    throw ConfigError("config: command 'sweep' needs a \"sweep\" section");
  const json& sec = ctx.cfg.at("sweep");
  const std::vector<double> lambdas = cfg::num_list(sec, "sweep", "lambdas");
  const Potential pot = potential_from_config(ctx.cfg);
  const Grid1D g = grid_from_config(ctx.cfg, pot);
  const double W = window_from_config(ctx.cfg, &g);
  const IntervalSet sensor = sensor_from_config(ctx.cfg, W, ctx.seed);

  double geo_s = cfg::num_or(sec, "sweep", "s", 0.0);
  double geo_tau = cfg::num_or(sec, "sweep", "tau", 0.0);
  double kappa_th = pot.kappa_predicted;
  if (pot.beta1 > 0.0 && pot.beta2 > 0.0)
    kappa_th = kappa_theory(geo_s, geo_tau, pot.beta1, pot.beta2);

  const double lmax = *std::max_element(lambdas.begin(), lambdas.end());
  double need = lmax;
  if (sec.contains("deltas")) need = std::max(need, cfg::num_or(sec, "sweep", "delta_lambda", 200.0));
  bool from_cache = false;
  const SpectralSubspace sub = obtain_subspace(ctx, pot, g, need, from_cache);

  const std::vector<SweepPoint> pts = observability_sweep(sub, sensor, lambdas);
  bool ok = true;
  for (const SweepPoint& sp : pts)
    if (sp.obs.unobservable) {
      std::cout << "FAIL sweep: unobservable subspace at lambda " << fmt_double(sp.lambda)
                << "\n";
      ok = false;
    }
  const KappaFit fit = fit_kappa(pts);

  {
    CsvWriter csv(detail::out_path(ctx, "kappa_fit.csv"));
    csv.row({"x", "y", "series"});
    double x_last = 0.0, y_last = 0.0;
    for (const SweepPoint& sp : pts) {
      if (sp.obs.unobservable || !(sp.obs.c_obs > 1.0)) continue;
      x_last = std::log(sp.lambda);
      y_last = std::log(std::log(sp.obs.c_obs));
      csv.row({fmt_double(x_last), fmt_double(y_last), "measured"});
    }
    for (const SweepPoint& sp : pts) {
      if (sp.obs.unobservable || !(sp.obs.c_obs > 1.0)) continue;
      const double x = std::log(sp.lambda);
      csv.row({fmt_double(x), fmt_double(y_last - kappa_th * (x_last - x)), "theory"});
    }
  }
  std::cout << "sweep: kappa_hat=" << fmt_double(fit.kappa_hat)
            << " kappa_theory=" << fmt_double(kappa_th) << " r2=" << fmt_double(fit.r2)
            << " points=" << fit.used << " cache=" << (from_cache ? "hit" : "cold") << "\n";

  if (sec.contains("deltas")) {
    const std::vector<double> deltas = cfg::num_list(sec, "sweep", "deltas");
    const double dl = cfg::num_or(sec, "sweep", "delta_lambda", 200.0);
    double period = 1.0;
    if (ctx.cfg.at("sensor").contains("period"))
      period = cfg::num(ctx.cfg.at("sensor"), "sensor", "period");
    std::vector<double> xs, ys;
    CsvWriter csv(detail::out_path(ctx, "delta_scaling.csv"));
    csv.row({"x", "y", "series"});
    for (double d : deltas) {
      if (!(d > 0.0) || !(d < 1.0))
        throw ConfigError("config: sweep delta " + std::to_string(d) + " must lie in (0, 1)");
      const IntervalSet sd = periodic_set(period, d, W);
      const std::vector<SweepPoint> p1 = observability_sweep(sub, sd, {dl});
      if (p1[0].obs.unobservable) {
        std::cout << "FAIL sweep: unobservable at delta " << fmt_double(d) << "\n";
        ok = false;
        continue;
      }
      const double x = std::fabs(std::log(d));
      const double y = std::log(p1[0].obs.c_obs);
      xs.push_back(x);
      ys.push_back(y);
      csv.row({fmt_double(x), fmt_double(y), "measured"});
    }
    if (xs.size() >= 2) {
      const LineFit lf = fit_line(xs, ys);
      csv.row({fmt_double(xs.front()), fmt_double(lf.intercept + lf.slope * xs.front()), "fit"});
      csv.row({fmt_double(xs.back()), fmt_double(lf.intercept + lf.slope * xs.back()), "fit"});
      std::cout << "sweep: delta_slope=" << fmt_double(lf.slope)
                << " delta_r2=" << fmt_double(lf.r2) << " delta_lambda=" << fmt_double(dl)
                << "\n";
    }
  }
  return ok ? 0 : 2;
}

// ---------------------------------------------------------------------------
// lift: ghost-dimension field diagnostics (trace identities, slab bounds,
// interior-equation residual convergence).
// ---------------------------------------------------------------------------
inline int run_lift(RunContext& ctx) {
  if (!ctx.cfg.contains("lift"))
    throw ConfigError("config: command 'lift' needs a \"lift\" section");
  const json& sec = ctx.cfg.at("lift");
  const double lambda = cfg::num(sec, "lift", "lambda");
  const double Y = cfg::num_or(sec, "lift", "Y", 1.0);
  const long long ny = cfg::integer_or(sec, "lift", "ny", 65);
  const std::string ck = cfg::str_or(sec, "lift", "coefficients", "uniform");
  if (!(Y > 0)) throw ConfigError("config: lift Y = " + std::to_string(Y) + " must be positive");
  if (ny < 3 || ny % 2 == 0 || ny > 100000)
    throw ConfigError("config: lift ny = " + std::to_string(ny) + " must be odd, in [3, 1e5]");

  const Potential pot = potential_from_config(ctx.cfg);
  const Grid1D g = grid_from_config(ctx.cfg, pot);
  bool from_cache = false;
  const SpectralSubspace sub = obtain_subspace(ctx, pot, g, lambda, from_cache);
  if (sub.m() == 0) throw ConfigError("lift: no modes below lambda = " + std::to_string(lambda));

  std::vector<double> e;
  if (ck == "uniform")
    e = uniform_coefficients(sub, lambda);
  else if (ck == "odd")
    e = odd_coefficients(sub, lambda);
  else
    throw ConfigError("config: lift coefficients must be 'uniform' or 'odd', got '" + ck + "'");
  if (std::all_of(e.begin(), e.end(), [](double v) { return v == 0.0; }))
    throw ConfigError("lift: coefficient choice '" + ck + "' selects no modes");

  const LiftedField f = make_lift(sub, e, Y, static_cast<int>(ny));

  double worst_gap = 0.0;
  {
    CsvWriter csv(detail::out_path(ctx, "lift_slices.csv"));
    csv.row({"y", "log_measured", "log_parseval", "rel_gap"});
    for (int q = 0; q < 17; ++q) {
      const double y = -Y + 2.0 * Y * q / 16.0;
      const SliceCheck c = slice_parseval_check(f, y);
      worst_gap = std::max(worst_gap, c.rel_gap);
      csv.row({fmt_double(y), fmt_double(c.log_measured), fmt_double(c.log_parseval),
               fmt_double(c.rel_gap)});
    }
  }
  const SymmetryReport sym = symmetry_check(f);
  const SlabReport slab = slab_identity(f, -0.5 * Y, 0.5 * Y);
  ResidualRate rate;
  const bool do_rate = cfg::flag_or(sec, "lift", "rate_check", true);
  if (do_rate) rate = residual_rate_check(g, pot, lambda, Y, static_cast<int>(ny), ctx.seed);

  {
    std::ofstream rep(detail::out_path(ctx, "lift_report.txt"));
    rep << "modes: " << sub.m() << "\n"
        << "lambda_cut: " << fmt_double(lambda) << "\n"
        << "coefficients: " << ck << "\n"
        << "max_slice_gap: " << fmt_double(worst_gap) << "\n"
        << "even_gap: " << fmt_double(sym.even_gap) << "\n"
        << "trace_gap: " << fmt_double(sym.trace_gap) << "\n"
        << "neumann_gap: " << fmt_double(sym.neumann_gap) << "\n"
        << "slab_log_closed: " << fmt_double(slab.log_closed) << "\n"
        << "slab_log_quad: " << fmt_double(slab.log_quad) << "\n"
        << "slab_quad_rel_gap: " << fmt_double(slab.quad_rel_gap) << "\n"
        << "slab_max_slice_gap: " << fmt_double(slab.max_slice_gap) << "\n"
        << "slab_log_lower: " << fmt_double(slab.log_lower) << "\n"
        << "slab_log_upper: " << fmt_double(slab.log_upper) << "\n"
        << "slab_lower_ok: " << detail::yes_no(slab.lower_ok) << "\n"
        << "slab_upper_ok: " << detail::yes_no(slab.upper_ok) << "\n";
    if (do_rate)
      rep << "residual_coarse: " << fmt_double(rate.res_coarse) << "\n"
          << "residual_fine: " << fmt_double(rate.res_fine) << "\n"
          << "residual_rate: " << fmt_double(rate.rate) << "\n";
  }
  if (cfg::flag_or(sec, "lift", "dump_field", false))
    write_field_dump(detail::out_path(ctx, "lift_field.bin"), f);

  std::cout << "lift: modes=" << sub.m() << " max_slice_gap=" << fmt_double(worst_gap)
            << " slab_gap=" << fmt_double(slab.quad_rel_gap)
            << (do_rate ? " residual_rate=" + fmt_double(rate.rate) : std::string())
            << " cache=" << (from_cache ? "hit" : "cold") << "\n";

  bool ok = true;
  if (worst_gap > 1e-8) {
    std::cout << "FAIL lift: slice trace identity gap " << fmt_double(worst_gap) << " > 1e-8\n";
    ok = false;
  }
  if (sym.even_gap > 1e-12 || sym.trace_gap > 1e-10 || sym.neumann_gap > 1e-5) {
    std::cout << "FAIL lift: symmetry gaps even=" << fmt_double(sym.even_gap)
              << " trace=" << fmt_double(sym.trace_gap)
              << " neumann=" << fmt_double(sym.neumann_gap) << "\n";
    ok = false;
  }
  if (slab.quad_rel_gap > 1e-8 || slab.max_slice_gap > 1e-8 || !slab.lower_ok ||
      !slab.upper_ok) {
    std::cout << "FAIL lift: slab identity gap " << fmt_double(slab.quad_rel_gap)
              << " slice gap " << fmt_double(slab.max_slice_gap) << " lower_ok="
              << detail::yes_no(slab.lower_ok) << " upper_ok=" << detail::yes_no(slab.upper_ok)
              << "\n";
    ok = false;
  }
  if (do_rate && !(rate.rate >= 1.7 && rate.rate <= 2.3)) {
    std::cout << "FAIL lift: residual refinement rate " << fmt_double(rate.rate)
              << " outside [1.7, 2.3]\n";
    ok = false;
  }
  return ok ? 0 : 2;
}

// ---------------------------------------------------------------------------
// cauchy: three-circle battery and probe, multiplier solve, conjugate stream
// function oracles, and the end-to-end rescaled chain.
// ---------------------------------------------------------------------------
inline int run_cauchy(RunContext& ctx) {
  if (!ctx.cfg.contains("cauchy"))
    throw ConfigError("config: command 'cauchy' needs a \"cauchy\" section");
  const json& sec = ctx.cfg.at("cauchy");
  bool ok = true;

  if (sec.contains("three_ball")) {
    const json& tb = sec.at("three_ball");
    const long long num = cfg::integer_or(tb, "cauchy.three_ball", "num_polys", 40);
    const long long deg = cfg::integer_or(tb, "cauchy.three_ball", "max_degree", 64);
    if (num < 1 || deg < 1 || deg > 64)
      throw ConfigError("config: cauchy.three_ball needs num_polys >= 1 and max_degree in "
                        "[1, 64], got num_polys = " +
                        std::to_string(num) + ", max_degree = " + std::to_string(deg));
    const std::vector<double> meas = cfg::num_list_or(
        tb, "cauchy.three_ball", "measures",
        {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625});
    Rng rng(ctx.seed + 1);
    const BatteryResult bat =
        three_ball_battery(static_cast<int>(num), static_cast<int>(deg), meas, rng);
    CsvWriter csv(detail::out_path(ctx, "three_ball.csv"));
    csv.row({"degree", "|E|", "alpha_star", "c_star"});
    for (const BatteryRow& r : bat.rows)
      csv.row({std::to_string(r.degree), fmt_double(r.measure), fmt_double(r.alpha_star),
               fmt_double(r.c_star)});
    std::cout << "cauchy: three_ball instances=" << bat.rows.size()
              << " c_envelope=" << fmt_double(bat.c_envelope)
              << " truncation_failures=" << bat.truncation_failures
              << " formula_envelope_failures=" << bat.formula_envelope_failures << "\n";
    if (bat.truncation_failures != 0 || bat.formula_envelope_failures != 0 ||
        bat.recheck_violations != 0) {
      std::cout << "FAIL cauchy: three-circle battery violations (truncation="
                << bat.truncation_failures << ", envelope=" << bat.formula_envelope_failures
                << ", recheck=" << bat.recheck_violations << ")\n";
      ok = false;
    }
  }

  if (sec.contains("probe")) {
    const json& pb = sec.at("probe");
    const long long deg = cfg::integer_or(pb, "cauchy.probe", "degree", 16);
    if (deg < 2 || deg > 64)
      throw ConfigError("config: cauchy.probe degree = " + std::to_string(deg) +
                        " must lie in [2, 64]");
    std::vector<double> eps = cfg::num_list_or(
        pb, "cauchy.probe", "eps",
        {0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625});
    const ProbeResult pr = chebyshev_probe(static_cast<int>(deg), eps);
    CsvWriter csv(detail::out_path(ctx, "alpha_vs_measure.csv"));
    csv.row({"x", "y", "series"});
    for (const ProbeRow& r : pr.rows)
      csv.row({fmt_double(std::log2(1.0 / r.measure)), fmt_double(1.0 / r.alpha_star),
               "probe"});
    std::cout << "cauchy: probe_slope=" << fmt_double(pr.slope_log2)
              << " probe_r2=" << fmt_double(pr.r2) << "\n";
  }

  if (sec.contains("multiplier")) {
    const json& mp = sec.at("multiplier");
    const long long count = cfg::integer_or(mp, "cauchy.multiplier", "count", 20);
    const double mk_max = cfg::num_or(mp, "cauchy.multiplier", "mk_max", 64.0);
    if (count < 0 || !(mk_max >= 1.0) || mk_max > 64.0)
      throw ConfigError("config: cauchy.multiplier needs count >= 0 and mk_max in [1, 64], got "
                        "count = " +
                        std::to_string(count) + ", mk_max = " + std::to_string(mk_max));
    // Constant-coefficient oracle and the node/value table.
    const double M0 = 4.0, K0 = 2.0;
    const Multiplier w0 = solve_multiplier([&](double) { return M0; },
                                           [](double) { return 0.0; }, M0, K0);
    long double worst_oracle = 0.0L;
    for (std::size_t i = 0; i < w0.x.size(); ++i) {
      const long double ex = multiplier_closed_form(M0, K0, w0.x[i]);
      worst_oracle = std::max(worst_oracle, std::fabs(w0.w[i] - ex) / ex);
    }
    {
      CsvWriter csv(detail::out_path(ctx, "multiplier.csv"));
      csv.row({"x", "w"});
      for (std::size_t i = 0; i < w0.x.size(); ++i)
        csv.row({fmt_double(w0.x[i]), fmt_double(static_cast<double>(w0.w[i]))});
    }
    double worst_sand = std::max(w0.sandwich_violation, w0.sub_violation);
    Rng rng(ctx.seed + 2);
    for (long long t = 0; t < count; ++t) {
      const double M = 1.0 + (mk_max - 1.0) * rng.uniform();
      const double K = 1.0 + (mk_max - 1.0) * rng.uniform();
      const double om1 = rng.uniform(0.2, 2.0), ph1 = rng.uniform(0.0, 6.28318);
      const double om2 = rng.uniform(0.2, 2.0), ph2 = rng.uniform(0.0, 6.28318);
      const Multiplier w = solve_multiplier(
          [&](double x) { return M * (0.5 + 0.5 * std::sin(om1 * x + ph1)); },
          [&](double x) { return K * std::sin(om2 * x + ph2); }, M, K);
      worst_sand = std::max({worst_sand, w.sandwich_violation, w.sub_violation});
    }
    std::cout << "cauchy: multiplier_oracle=" << fmt_double(static_cast<double>(worst_oracle))
              << " battery_worst_violation=" << fmt_double(worst_sand)
              << " wprime_c=" << fmt_double(w0.c_prime) << "\n";
    if (static_cast<double>(worst_oracle) > 1e-8) {
      std::cout << "FAIL cauchy: multiplier closed-form mismatch "
                << fmt_double(static_cast<double>(worst_oracle)) << " > 1e-8\n";
      ok = false;
    }
    if (worst_sand > 1e-6) {
      std::cout << "FAIL cauchy: multiplier sandwich violation " << fmt_double(worst_sand)
                << " > 1e-6\n";
      ok = false;
    }
  }

  if (cfg::flag_or(sec, "cauchy", "stream", false)) {
    // Conjugate-field oracles with unit weight and no drift. Each case builds
    // a harmonic u1 on a square, reconstructs the stream function u2, and
    // compares against the closed form. For polynomial data the two
    // integration orders agree to round-off (the per-cell quadrature errors
    // cancel between paths), so the refinement rate of the path mismatch is
    // measured on transcendental data where it is a genuine discretization
    // quantity.
    auto run_case = [](int n, double half, auto f1, auto f2) {
      const double h = 2.0 * half / (n - 1);
      std::vector<std::vector<long double>> u1(
          static_cast<std::size_t>(n), std::vector<long double>(static_cast<std::size_t>(n)));
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          u1[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
              f1(-half + h * i, -half + h * j);
      const std::vector<long double> w(static_cast<std::size_t>(n), 1.0L);
      const std::vector<long double> drift(static_cast<std::size_t>(n), 0.0L);
      const StreamField sf = stream_function(u1, w, drift, h, h);
      double err = 0.0, umax = 0.0;
      for (int j = 1; j + 1 < n; ++j)
        for (int i = 1; i + 1 < n; ++i) {
          const double v = static_cast<double>(
              sf.u2[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
          umax = std::max(umax, std::fabs(v));
          err = std::max(err, std::fabs(v - f2(-half + h * i, -half + h * j)));
        }
      struct Out {
        double mismatch, err, umax;
      };
      return Out{sf.path_mismatch, err, umax};
    };
    const auto quad1 = [](double x, double y) { return x * x - y * y; };
    const auto quad2 = [](double x, double y) { return 2.0 * x * y; };
    const auto cub1 = [](double x, double y) { return x * x * x - 3.0 * x * y * y; };
    const auto cub2 = [](double x, double y) { return 3.0 * x * x * y - y * y * y; };
    const auto exp1 = [](double x, double y) { return std::exp(x) * std::cos(y); };
    const auto exp2 = [](double x, double y) { return std::exp(x) * std::sin(y); };

    const auto q = run_case(101, 5.0, quad1, quad2);
    const auto c1r = run_case(101, 5.0, cub1, cub2);
    const auto c2r = run_case(201, 5.0, cub1, cub2);
    const auto e1r = run_case(101, 2.0, exp1, exp2);
    const auto e2r = run_case(201, 2.0, exp1, exp2);
    const double err_rate = std::log2(c1r.err / c2r.err);
    const double mis_rate = std::log2(e1r.mismatch / e2r.mismatch);
    const double mis_rel = c2r.mismatch / std::max(1.0, c2r.umax);
    std::cout << "cauchy: stream_exact_err=" << fmt_double(q.err)
              << " stream_err_rate=" << fmt_double(err_rate)
              << " stream_mismatch_rate=" << fmt_double(mis_rate)
              << " stream_mismatch_rel=" << fmt_double(mis_rel) << "\n";
    if (q.err > 1e-10 || !(err_rate >= 1.7 && err_rate <= 2.3) ||
        !(mis_rate >= 1.7 && mis_rate <= 2.3) || mis_rel > 1e-8 || c2r.err > 0.05) {
      std::cout << "FAIL cauchy: stream oracles out of range (exact_err="
                << fmt_double(q.err) << ", err_rate=" << fmt_double(err_rate)
                << ", mismatch_rate=" << fmt_double(mis_rate)
                << ", mismatch_rel=" << fmt_double(mis_rel) << ", cubic_err="
                << fmt_double(c2r.err) << ")\n";
      ok = false;
    }
  }

  if (sec.contains("lambdas")) {
    const std::vector<double> lambdas = cfg::num_list(sec, "cauchy", "lambdas");
    const double measure = cfg::num_or(sec, "cauchy", "measure", 1.0);
    if (!(measure > 0.0) || measure > 1.0)
      throw ConfigError("config: cauchy measure = " + std::to_string(measure) +
                        " must lie in (0, 1]");
    CauchyParams params;
    params.c1 = cfg::num_or(sec, "cauchy", "c1", 1.0);
    params.chat = cfg::num_or(sec, "cauchy", "chat", 2.5);
    if (!(params.c1 > 0.0) || !(params.chat > 0.0))
      throw ConfigError("config: cauchy c1 and chat must be positive");
    const Potential pot = potential_from_config(ctx.cfg);
    const Grid1D g = grid_from_config(ctx.cfg, pot);
    const double lmax = *std::max_element(lambdas.begin(), lambdas.end());
    bool from_cache = false;
    const SpectralSubspace sub = obtain_subspace(ctx, pot, g, lmax, from_cache);
    const IntervalSet E({{-0.5 * measure, 0.5 * measure}});
    const std::vector<CauchyReport> reps = cauchy_sweep(sub, pot, lambdas, E, params);
    {
      CsvWriter csv(detail::out_path(ctx, "cauchy.csv"));
      csv.row({"lambda", "rho", "M", "K", "modes", "alpha", "log_b2", "log_b4", "log_e",
               "c_mult", "c_ratio", "c_recovery"});
      for (const CauchyReport& r : reps)
        csv.row({fmt_double(r.lambda), fmt_double(r.rho), fmt_double(r.M), fmt_double(r.K),
                 std::to_string(r.modes), fmt_double(r.alpha), fmt_double(r.log_b2),
                 fmt_double(r.log_b4), fmt_double(r.log_e), fmt_double(r.c_mult),
                 fmt_double(r.c_ratio), fmt_double(r.c_recovery)});
    }
    double cmax = 0.0;
    for (const CauchyReport& r : reps) cmax = std::max(cmax, r.c_ratio);
    const LineFit lf = cauchy_ratio_fit(reps);
    std::cout << "cauchy: c_ratio_max=" << fmt_double(cmax)
              << " logM_slope=" << fmt_double(lf.slope) << " cache="
              << (from_cache ? "hit" : "cold") << "\n";

    if (sec.contains("shrink_measures")) {
      const double sl = cfg::num_or(sec, "cauchy", "shrink_lambda", lambdas.back());
      std::vector<double> meas = cfg::num_list(sec, "cauchy", "shrink_measures");
      const std::vector<CauchyReport> sreps = cauchy_shrink_sweep(sub, pot, sl, meas, params);
      CsvWriter csv(detail::out_path(ctx, "cauchy_shrink.csv"));
      csv.row({"lambda", "measure", "alpha", "c_mult", "c_ratio", "c_recovery"});
      for (const CauchyReport& r : sreps)
        csv.row({fmt_double(r.lambda), fmt_double(r.measure_e), fmt_double(r.alpha),
                 fmt_double(r.c_mult), fmt_double(r.c_ratio), fmt_double(r.c_recovery)});
      const LineFit sf = cauchy_shrink_fit(sreps);
      std::cout << "cauchy: shrink_slope=" << fmt_double(sf.slope)
                << " shrink_r2=" << fmt_double(sf.r2) << "\n";
      // Monotonicity invariant: a smaller sensor can only cost more recovery.
      std::vector<const CauchyReport*> sorted;
      for (const auto& r : sreps) sorted.push_back(&r);
      std::sort(sorted.begin(), sorted.end(), [](const CauchyReport* a, const CauchyReport* b) {
        return a->measure_e > b->measure_e;
      });
      for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i]->c_recovery <
            sorted[i - 1]->c_recovery - 1e-9 * std::max(1.0, std::fabs(sorted[i - 1]->c_recovery))) {
          std::cout << "FAIL cauchy: recovery constant dropped from "
                    << fmt_double(sorted[i - 1]->c_recovery) << " to "
                    << fmt_double(sorted[i]->c_recovery) << " when the sensor shrank to measure "
                    << fmt_double(sorted[i]->measure_e) << "\n";
          ok = false;
        }
    }
  }
  return ok ? 0 : 2;
}

// ---------------------------------------------------------------------------
// agmon: decay-envelope battery, half-mass localization radii, counting.
// ---------------------------------------------------------------------------
inline int run_agmon(RunContext& ctx) {
  if (!ctx.cfg.contains("agmon"))
    throw ConfigError("config: command 'agmon' needs an \"agmon\" section");
  const json& sec = ctx.cfg.at("agmon");
  const std::vector<double> lambdas = cfg::num_list(sec, "agmon", "lambdas");
  const std::vector<double> r_list = cfg::num_list_or(sec, "agmon", "r_list", {2.0, 3.0, 4.0});
  const double c0 = cfg::num_or(sec, "agmon", "c0", 3.0);
  const long long num_random = cfg::integer_or(sec, "agmon", "num_random", 50);
  if (num_random < 1)
    throw ConfigError("config: agmon num_random = " + std::to_string(num_random) +
                      " must be >= 1");

  const Potential pot = potential_from_config(ctx.cfg);
  const Grid1D g = grid_from_config(ctx.cfg, pot);
  const double lmax = *std::max_element(lambdas.begin(), lambdas.end());
  bool from_cache = false;
  const SpectralSubspace sub = obtain_subspace(ctx, pot, g, lmax, from_cache);
  if (sub.m() == 0) throw ConfigError("agmon: no modes below lambda = " + std::to_string(lmax));

  long checks = 0, failures = 0;
  double worst_ratio = 0.0;
  {
    CsvWriter csv(detail::out_path(ctx, "agmon.csv"));
    csv.row({"k", "lambda_k", "r", "tail", "bound", "ok"});
    for (int k = 0; k < sub.m(); ++k) {
      const double lk = sub.lambdas[static_cast<std::size_t>(k)];
      const double R = phi_inverse(pot, 2.0 + lk);
      for (double r : r_list) {
        const TailReport rep =
            agmon_tail_check(g, sub.vecs[static_cast<std::size_t>(k)], R, r);
        ++checks;
        if (!rep.ok) ++failures;
        if (rep.bound > 0.0) worst_ratio = std::max(worst_ratio, rep.tail / rep.bound);
        csv.row({std::to_string(k), fmt_double(lk), fmt_double(r), fmt_double(rep.tail),
                 fmt_double(rep.bound), detail::yes_no(rep.ok)});
      }
    }
  }
  std::cout << "agmon: checks=" << checks << " failures=" << failures
            << " worst_ratio=" << fmt_double(worst_ratio)
            << " cache=" << (from_cache ? "hit" : "cold") << "\n";

  Rng rng(ctx.seed + 3);
  std::vector<double> px, py;
  bool loc_ok = true;
  {
    CsvWriter csv(detail::out_path(ctx, "localization.csv"));
    CsvWriter rv(detail::out_path(ctx, "r_vs_lambda.csv"));
    csv.row({"lambda", "R", "r_min_empirical", "r_lemma", "pass"});
    rv.row({"x", "y", "series"});
    for (double lam : lambdas) {
      const SpectralSubspace sl = prefix_subspace(sub, lam);
      if (sl.m() == 0)
        throw ConfigError("agmon: no modes below lambda = " + std::to_string(lam));
      const LocalizationRow row =
          subspace_localization_check(sl, pot, c0, static_cast<int>(num_random), rng);
      csv.row({fmt_double(row.lambda), fmt_double(row.R), fmt_double(row.r_min),
               fmt_double(row.r_lemma), detail::yes_no(row.pass)});
      rv.row({fmt_double(row.lambda), fmt_double(row.r_min), "empirical"});
      rv.row({fmt_double(row.lambda), fmt_double(row.r_lemma), "lemma"});
      px.push_back(row.r_lemma - c0);  // the lambda-dependent part of the predictor
      py.push_back(row.r_min);
      std::cout << "agmon: lambda=" << fmt_double(lam) << " r_min=" << fmt_double(row.r_min)
                << " r_lemma=" << fmt_double(row.r_lemma)
                << " pass=" << detail::yes_no(row.pass) << "\n";
      if (!row.pass) {
        std::cout << "FAIL agmon: localization at lambda " << fmt_double(lam) << " needs r = "
                  << fmt_double(row.r_min) << " > lemma radius " << fmt_double(row.r_lemma)
                  << " (failures=" << row.failures << ")\n";
        loc_ok = false;
      }
    }
  }
  if (px.size() >= 2) {
    const LineFit lf = fit_line(px, py);
    std::cout << "agmon: slope_vs_predictor=" << fmt_double(lf.slope) << "\n";
  }
  const TridiagonalOperator op = build_hamiltonian(g, pot);
  std::cout << "agmon: counting_ratio=" << fmt_double(counting_ratio(op, pot, lmax)) << "\n";

  if (failures != 0) {
    std::cout << "FAIL agmon: " << failures << " of " << checks
              << " decay-envelope checks failed (worst ratio " << fmt_double(worst_ratio)
              << ")\n";
  }
  return (failures == 0 && loc_ok) ? 0 : 2;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------
inline int dispatch_command(const std::string& cmd, RunContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  if (cmd == "eig")
    code = run_eig(ctx);
  else if (cmd == "thick")
    code = run_thick(ctx);
  else if (cmd == "obs")
    code = run_obs(ctx);
  else if (cmd == "sweep")
    code = run_sweep(ctx);
  else if (cmd == "lift")
    code = run_lift(ctx);
  else if (cmd == "cauchy")
    code = run_cauchy(ctx);
  else if (cmd == "agmon")
    code = run_agmon(ctx);
  else if (cmd == "all") {
    static const char* order[] = {"eig", "thick", "obs", "sweep", "lift", "cauchy", "agmon"};
    bool any = false;
    for (const char* c : order)
      if (ctx.cfg.contains(c)) {
        any = true;
        code = std::max(code, dispatch_command(c, ctx));
      }
    if (!any)
      throw ConfigError("config: command 'all' found no command sections in the file");
    return code;
  } else {
    throw ConfigError("cli: unknown command '" + cmd + "'");
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  detail::write_run_record(ctx, cmd, secs);
  return code;
}

inline int speclab_main(const std::vector<std::string>& args);

}  // namespace speclab
