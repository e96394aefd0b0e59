// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phnu/phnu.hpp"

namespace phnu::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

namespace detail {

inline std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const bool same = std::tolower(static_cast<unsigned char>(a[i - 1])) ==
                        std::tolower(static_cast<unsigned char>(b[j - 1]));
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (same ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

inline std::string format_g(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

struct UsageError : Error {
  using Error::Error;
};

inline TableFormat parse_format(const std::string& s) {
  return s == "csv" ? TableFormat::csv : TableFormat::text;
}

inline std::vector<MoleculeRecord> registry_from(const std::string& path) {
  return path.empty() ? default_registry() : load_registry(path);
}

inline const MoleculeRecord& lookup(const std::vector<MoleculeRecord>& reg,
                                    const std::string& name) {
  if (const MoleculeRecord* rec = find_molecule(reg, name)) return *rec;
  std::string msg = "unknown molecule '" + name + "'";
  const MoleculeRecord* best = nullptr;
  std::size_t best_d = std::numeric_limits<std::size_t>::max();
  for (const auto& r : reg) {
    const std::size_t d = edit_distance(name, r.name);
    if (d < best_d) {
      best_d = d;
      best = &r;
    }
  }
  if (best && best_d <= std::max<std::size_t>(2, name.size() / 2)) {
    msg += "; did you mean '" + best->name + "'?";
  } else if (!reg.empty()) {
    msg += "; known:";
    for (const auto& r : reg) msg += " " + r.name;
  }
  throw UsageError(msg);
}

/// Sampling window of a wavefunction: where ln(r^2 R^2) is within `depth` of
/// its peak, found on a fine logarithmic scan.
inline std::pair<double, double> density_window(const RadialWavefunction& wf,
                                                double r_lo, double r_hi, double depth) {
  constexpr int kScan = 20000;
  const double step = std::log(r_hi / r_lo) / kScan;
  std::vector<double> logd(kScan + 1);
  double peak = -INFINITY;
  for (int i = 0; i <= kScan; ++i) {
    const double r = r_lo * std::exp(i * step);
    const auto [lg, sign] = wf.log_abs(r);
    logd[i] = sign == 0 ? -INFINITY : 2.0 * (lg + std::log(r));
    peak = std::max(peak, logd[i]);
  }
  int first = 0;
  int last = kScan;
  while (first < kScan && logd[first] < peak - depth) ++first;
  while (last > 0 && logd[last] < peak - depth) --last;
  first = std::max(first - 1, 0);
  last = std::min(last + 1, kScan);
  return {r_lo * std::exp(first * step), r_lo * std::exp(last * step)};
}

}  // namespace detail

struct Options {
  std::string format = "text";
  std::string registry;
  std::string molecule;
  int n_max = 5;
  int l_max = -1;  // defaults to n_max
  int n = 0;
  int l = 0;
  int points = 500;
  int grid_points = 4000;
  double tolerance = 1e-6;
  bool natural = false;
  std::string observations;
  double mu = 0.0;
  std::string name = "fitted";
  int fit_max_n = -1;
};

inline int cmd_spectrum(const Options& o, std::ostream& out) {
  const auto reg = detail::registry_from(o.registry);
  const MoleculeRecord& rec = detail::lookup(reg, o.molecule);
  const int l_max = o.l_max < 0 ? o.n_max : o.l_max;
  std::vector<QuantumNumbers> states;
  for (int n = 0; n <= o.n_max; ++n) {
    for (int l = 0; l <= std::min(n, l_max); ++l) states.push_back({n, l});
  }
  Column cn{"n", {}, ColumnStyle::integer};
  Column cl{"l", {}, ColumnStyle::integer};
  Column ce{"E_eV", {}, ColumnStyle::fixed, 8};
  for (const auto& lvl : predict_table(rec, states)) {
    cn.values.push_back(lvl.n);
    cl.values.push_back(lvl.l);
    ce.values.push_back(lvl.energy_eV);
  }
  OutputTable t;
  t.add(cn).add(cl).add(ce);
  t.render(out, detail::parse_format(o.format));
  return kOk;
}

inline int cmd_table1(const Options& o, std::ostream& out) {
  const auto reg = detail::registry_from(o.registry);
  const auto states = table1_states();
  Column cn{"n", {}, ColumnStyle::integer};
  Column cl{"l", {}, ColumnStyle::integer};
  for (const auto& qn : states) {
    cn.values.push_back(qn.n);
    cl.values.push_back(qn.l);
  }
  OutputTable t;
  t.add(cn).add(cl);
  for (const char* name : {"N2", "CO", "NO", "CH"}) {
    Column c{name, {}, ColumnStyle::fixed, 8};
    for (const auto& lvl : predict_table(detail::lookup(reg, name), states)) {
      c.values.push_back(lvl.energy_eV);
    }
    t.add(c);
  }
  t.render(out, detail::parse_format(o.format));
  return kOk;
}

inline int cmd_wavefunction(const Options& o, std::ostream& out) {
  if (o.n < 0 || o.l < 0) throw detail::UsageError("invalid state: n and l must be >= 0");
  if (o.points < 2) throw detail::UsageError("--points must be at least 2");
  const auto reg = detail::registry_from(o.registry);
  const MoleculeRecord& rec = detail::lookup(reg, o.molecule);
  const MolecularParams& p = rec.params;
  const RadialWavefunction wf = wavefunction(p, {o.n, o.l});
  const numeric::RadialGrid span = numeric::default_grid(p, o.l);
  const auto [r_lo, r_hi] = detail::density_window(wf, 1e-3 * p.r0_A, span.r_max_A, 40.0);

  Column cr{"r_A", {}, ColumnStyle::scientific, 10};
  Column cR{"R", {}, ColumnStyle::scientific, 10};
  Column cd{"r2R2", {}, ColumnStyle::scientific, 10};
  Column cv{"Veff_eV", {}, ColumnStyle::scientific, 10};
  const double step = (r_hi - r_lo) / (o.points - 1);
  for (int i = 0; i < o.points; ++i) {
    const double r = i + 1 == o.points ? r_hi : r_lo + i * step;
    const double R = wf(r);
    cr.values.push_back(r);
    cR.values.push_back(R);
    cd.values.push_back(r * r * R * R);
    cv.values.push_back(effective_potential(p, o.l, r));
  }
  OutputTable t;
  t.add(cr).add(cR).add(cd).add(cv);
  t.render(out, detail::parse_format(o.format));
  return kOk;
}

namespace detail {

struct StateCheck {
  int n = 0;
  int l = 0;
  double closed = 0.0;
  double fd_h = 0.0, fd_h2 = 0.0, fd = 0.0;
  double num_h = 0.0, num_h2 = 0.0, num = 0.0;
};

/// Both numerical methods at m and 2m + 1 points for every n in
/// [l, n_max] at one l.
inline std::vector<StateCheck> check_l(const MolecularParams& p, const PhysicalConstants& k,
                                       int l, int n_max, int m) {
  const numeric::RadialProblem prob = numeric::radial_problem(p, l, k);
  const numeric::RadialGrid g1 = numeric::default_grid(p, l, m, k);
  const numeric::RadialGrid g2 = numeric::halved(g1);
  const auto fd1 = numeric::fd_spectrum(prob, l, g1, n_max + 1);
  const auto fd2 = numeric::fd_spectrum(prob, l, g2, n_max + 1);
  const auto brackets = numeric::brackets_from(fd2.eigenvalues);
  std::vector<StateCheck> out;
  for (int n = l; n <= n_max; ++n) {
    StateCheck s;
    s.n = n;
    s.l = l;
    s.closed = energy(p, {n, l}, k);
    s.fd_h = fd1.eigenvalues[n];
    s.fd_h2 = fd2.eigenvalues[n];
    s.fd = numeric::richardson(s.fd_h, s.fd_h2, 2);
    s.num_h = numeric::numerov_shoot(prob, n, g1, brackets[n]);
    s.num_h2 = numeric::numerov_shoot(prob, n, g2, brackets[n]);
    s.num = numeric::richardson(s.num_h, s.num_h2, 4);
    out.push_back(s);
  }
  return out;
}

/// Observed order log2(e_h / e_h2) of one method; NaN when the coarse error
/// is too close to rounding to say anything.
inline double observed_order(double e_h, double e_h2, double exact) {
  const double a = std::abs(e_h - exact);
  const double b = std::abs(e_h2 - exact);
  if (a < 1e-10 * std::max(1.0, std::abs(exact)) || b == 0.0) return NAN;
  return std::log2(a / b);
}

inline double median(std::vector<double> v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return std::isnan(x); }), v.end());
  if (v.empty()) return NAN;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace detail

inline int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.n_max < 0) throw detail::UsageError("--nmax must be >= 0");
  if (o.grid_points < 100) throw detail::UsageError("--grid-points must be at least 100");
  MolecularParams p;
  PhysicalConstants k = kCodata2018;
  std::string label;
  if (o.natural) {
    p = MolecularParams{0.5, 1.0, 1.0};
    k = kNaturalUnits;
    label = "natural-units test case (V0=1/2, r0=1, mu=1, hbar=1)";
  } else {
    if (o.molecule.empty()) throw detail::UsageError("validate: molecule name required");
    const auto reg = detail::registry_from(o.registry);
    p = detail::lookup(reg, o.molecule).params;
    label = o.molecule;
  }
  const int l_max = std::min(o.l_max < 0 ? o.n_max : o.l_max, o.n_max);

  std::vector<std::future<std::vector<detail::StateCheck>>> jobs;
  for (int l = 0; l <= l_max; ++l) {
    jobs.push_back(std::async(std::launch::async, detail::check_l, p, k, l, o.n_max,
                              o.grid_points));
  }
  std::vector<detail::StateCheck> all;
  for (auto& j : jobs) {
    auto part = j.get();
    all.insert(all.end(), part.begin(), part.end());
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.n != b.n ? a.n < b.n : a.l < b.l;
  });

  Column cn{"n", {}, ColumnStyle::integer};
  Column cl{"l", {}, ColumnStyle::integer};
  Column cc{"E_closed_eV", {}, ColumnStyle::fixed, 10};
  Column cf{"E_fd_eV", {}, ColumnStyle::fixed, 10};
  Column cu{"E_numerov_eV", {}, ColumnStyle::fixed, 10};
  Column df{"dev_fd_eV", {}, ColumnStyle::scientific, 3};
  Column du{"dev_numerov_eV", {}, ColumnStyle::scientific, 3};
  std::vector<double> fd_orders, num_orders;
  const detail::StateCheck* worst = nullptr;
  double worst_dev = -1.0;
  const char* worst_method = "";
  for (const auto& s : all) {
    cn.values.push_back(s.n);
    cl.values.push_back(s.l);
    cc.values.push_back(s.closed);
    cf.values.push_back(s.fd);
    cu.values.push_back(s.num);
    const double d_fd = std::abs(s.fd - s.closed);
    const double d_num = std::abs(s.num - s.closed);
    df.values.push_back(d_fd);
    du.values.push_back(d_num);
    fd_orders.push_back(detail::observed_order(s.fd_h, s.fd_h2, s.closed));
    num_orders.push_back(detail::observed_order(s.num_h, s.num_h2, s.closed));
    for (auto [d, m] : {std::pair{d_fd, "fd"}, std::pair{d_num, "numerov"}}) {
      if (!(d <= worst_dev)) {
        worst_dev = d;
        worst = &s;
        worst_method = m;
      }
    }
  }
  OutputTable t;
  t.add(cn).add(cl).add(cc).add(cf).add(cu).add(df).add(du);
  t.render(out, detail::parse_format(o.format));

  auto order_text = [](double v) {
    return std::isnan(v) ? std::string("unresolved") : detail::format_g("%.2f", v);
  };
  out << "# " << label << ", grid " << o.grid_points << " -> " << 2 * o.grid_points + 1
      << " points\n";
  out << "# observed order: fd " << order_text(detail::median(fd_orders)) << ", numerov "
      << order_text(detail::median(num_orders)) << "\n";
  const bool ok = worst_dev <= o.tolerance;
  out << "# max deviation " << detail::format_g("%.3e", worst_dev) << " eV at n=" << worst->n
      << " l=" << worst->l << " (" << worst_method << "), tolerance "
      << detail::format_g("%.3e", o.tolerance) << " eV: " << (ok ? "PASS" : "FAIL") << "\n";
  if (!ok) {
    err << "validate: state n=" << worst->n << " l=" << worst->l << " deviates by "
        << detail::format_g("%.3e", worst_dev) << " eV (" << worst_method
        << ") above tolerance " << detail::format_g("%.3e", o.tolerance) << " eV\n";
    return kFailure;
  }
  return kOk;
}

inline int cmd_fit(const Options& o, std::ostream& out, std::ostream& err) {
  if (!(o.mu > 0.0)) throw detail::UsageError("--mu must be positive");
  std::ifstream in(o.observations);
  if (!in) throw detail::UsageError("cannot open observation file '" + o.observations + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::vector<ObservedLevel> obs;
  for (const auto& lvl : parse_observations(buf.str())) {
    if (o.fit_max_n < 0 || lvl.n <= o.fit_max_n) obs.push_back(lvl);
  }

  FitOptions fo;
  fo.tolerance_eV = INFINITY;  // residual check below names the stage
  FitResult fit;
  try {
    fit = fit_parameters(obs, o.mu, fo);
  } catch (const UnderdeterminedError& e) {
    err << "fit failed at stage 'seed' (under-determined): " << e.what() << "\n";
    return kFailure;
  } catch (const InconsistentDataError& e) {
    err << "fit failed at stage 'seed' (inconsistent data): " << e.what() << "\n";
    return kFailure;
  }
  const FitDiagnostics& d = fit.diagnostics;
  if (!(d.max_residual_eV <= o.tolerance)) {
    err << "fit failed at stage 'least-squares' (inconsistent data): max residual "
        << detail::format_g("%.3e", d.max_residual_eV) << " eV exceeds tolerance "
        << detail::format_g("%.3e", o.tolerance) << " eV\n";
    return kFailure;
  }
  MoleculeRecord rec{o.name, fit.params,
                     "fitted to " + std::to_string(obs.size()) + " levels; mu supplied"};
  out << format_record(rec) << "\n";
  out << "# levels used: " << obs.size() << "\n";
  out << "# seed: half-spacing c = " << detail::format_g("%.10g", d.seed_half_spacing_eV)
      << " eV, D = mu V0 r0^2/hbar^2 = " << detail::format_g("%.10g", d.seed_barrier) << "\n";
  out << "# seed: V0 = " << detail::format_g("%.10g", d.seed.V0_eV)
      << " eV, r0 = " << detail::format_g("%.10g", d.seed.r0_A) << " A\n";
  if (d.ground_redundancy_eV) {
    out << "# seed check: E(0,0) predicted - observed = "
        << detail::format_g("%.3e", *d.ground_redundancy_eV) << " eV\n";
  }
  out << "# least squares: " << d.iterations << " iterations, max residual "
      << detail::format_g("%.3e", d.max_residual_eV) << " eV\n";
  out << "# note: the spectrum fixes V0 and mu*r0^2 only; r0 follows from the supplied mu\n";
  return kOk;
}

/// Runs the command line `args` (without the program name). Returns the exit
/// code; regular output goes to `out`, diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudoharmonic diatomic spectra: closed form, numerical checks, fitting",
               "phnu"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> kFormats{"text", "csv"};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(kFormats));
    sub->add_option("--registry", o.registry, "Molecule registry file (default: built in)");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "Closed-form energies E(n, l)");
  add_common(spectrum);
  spectrum->add_option("molecule", o.molecule, "Molecule name")->required();
  spectrum->add_option("--nmax", o.n_max, "Largest n")->check(CLI::NonNegativeNumber);
  spectrum->add_option("--lmax", o.l_max, "Largest l (default: nmax)")
      ->check(CLI::NonNegativeNumber);

  CLI::App* table1 = app.add_subcommand("table1", "Energy table for N2, CO, NO and CH");
  add_common(table1);

  CLI::App* wave = app.add_subcommand("wavefunction", "Sampled radial wavefunction");
  add_common(wave);
  wave->add_option("molecule", o.molecule, "Molecule name")->required();
  wave->add_option("n", o.n, "Radial quantum number")->required();
  wave->add_option("l", o.l, "Angular momentum")->required();
  wave->add_option("--points", o.points, "Number of samples");

  CLI::App* validate = app.add_subcommand("validate", "Closed form against numerical solvers");
  add_common(validate);
  validate->add_option("molecule", o.molecule, "Molecule name");
  validate->add_flag("--natural", o.natural, "Use the natural-units test case");
  validate->add_option("--nmax", o.n_max, "Largest n")->check(CLI::NonNegativeNumber);
  validate->add_option("--lmax", o.l_max, "Largest l (default: nmax)")
      ->check(CLI::NonNegativeNumber);
  validate->add_option("--tolerance", o.tolerance, "Largest accepted deviation, eV")
      ->check(CLI::PositiveNumber);
  validate->add_option("--grid-points", o.grid_points, "Interior grid points (coarse grid)");

  CLI::App* fit = app.add_subcommand("fit", "Fit V0 and r0 to observed levels");
  fit->add_option("observations", o.observations, "File of n,l,energy_eV lines")->required();
  fit->add_option("--mu", o.mu, "Reduced mass, amu")->required();
  fit->add_option("--name", o.name, "Name for the output record");
  fit->add_option("--max-n", o.fit_max_n, "Use only levels with n <= max-n");
  fit->add_option("--tolerance", o.tolerance, "Largest accepted residual, eV")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "phnu: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(o, out);
    if (table1->parsed()) return cmd_table1(o, out);
    if (wave->parsed()) return cmd_wavefunction(o, out);
    if (validate->parsed()) return cmd_validate(o, out, err);
    if (fit->parsed()) return cmd_fit(o, out, err);
  } catch (const detail::UsageError& e) {
    err << "phnu: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "phnu: input error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "phnu: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "phnu: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace phnu::cli
