// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "phnu/error.hpp"
#include "phnu/levenberg_marquardt.hpp"
#include "phnu/pseudoharmonic.hpp"
#include "phnu/units.hpp"

namespace phnu {

struct MoleculeRecord {
  std::string name;
  MolecularParams params;
  std::string provenance;
};

struct ObservedLevel {
  int n = 0;
  int l = 0;
  double energy_eV = 0.0;
};

/// Registry file grammar (one molecule per block):
///
///   file   := { line }
///   line   := blank | '#' comment | '[molecule]' { field } | field { field }
///   field  := key '=' value
///   value  := bare-token | '"' { char | '\"' | '\\' } '"'
///
/// A block starts at a `[molecule]` header and takes the fields that follow
/// it, on the same line or on later lines, up to the next header. Keys are
/// `name`, `V0_eV`, `r0_A`, `mu_amu` (required) and `provenance` (optional).
/// The unit suffix is part of the key; a known quantity with another unit
/// (say `V0_meV`) is rejected as a unit error, anything else as unknown.
namespace registry_detail {

struct Token {
  std::string key;
  std::string value;
};

inline std::vector<Token> split_fields(std::string_view text, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
  };
  while (true) {
    skip_ws();
    if (i >= text.size() || text[i] == '#') break;
    const std::size_t key_start = i;
    while (i < text.size() && text[i] != '=' && text[i] != ' ' && text[i] != '\t') ++i;
    std::string key(text.substr(key_start, i - key_start));
    if (i >= text.size() || text[i] != '=') {
      throw ParseError(line_no, key, "expected key=value");
    }
    ++i;
    std::string value;
    if (i < text.size() && text[i] == '"') {
      ++i;
      bool closed = false;
      while (i < text.size()) {
        const char c = text[i++];
        if (c == '\\' && i < text.size()) {
          value.push_back(text[i++]);
        } else if (c == '"') {
          closed = true;
          break;
        } else {
          value.push_back(c);
        }
      }
      if (!closed) throw ParseError(line_no, key, "unterminated quoted value");
    } else {
      const std::size_t v_start = i;
      while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r') ++i;
      value = std::string(text.substr(v_start, i - v_start));
    }
    if (key.empty()) throw ParseError(line_no, "", "empty key");
    out.push_back({std::move(key), std::move(value)});
  }
  return out;
}

inline double parse_positive(const std::string& value, std::size_t line_no,
                             const std::string& key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ParseError(line_no, key, "not a number: '" + value + "'");
  }
  if (used != value.size() || !std::isfinite(v)) {
    throw ParseError(line_no, key, "not a number: '" + value + "'");
  }
  if (!(v > 0.0)) throw ParseError(line_no, key, "must be positive");
  return v;
}

struct PendingRecord {
  std::size_t header_line = 0;
  std::map<std::string, std::pair<std::string, std::size_t>> fields;  // key -> (value, line)
};

inline MoleculeRecord finish(const PendingRecord& rec) {
  static const std::array<const char*, 4> kRequired{"name", "V0_eV", "r0_A", "mu_amu"};
  for (const char* key : kRequired) {
    if (!rec.fields.count(key)) throw ParseError(rec.header_line, key, "missing field");
  }
  auto num = [&](const char* key) {
    const auto& [value, line] = rec.fields.at(key);
    return parse_positive(value, line, key);
  };
  MoleculeRecord out;
  out.name = rec.fields.at("name").first;
  if (out.name.empty()) throw ParseError(rec.fields.at("name").second, "name", "empty name");
  out.params = MolecularParams{num("V0_eV"), num("r0_A"), num("mu_amu")};
  if (auto it = rec.fields.find("provenance"); it != rec.fields.end()) {
    out.provenance = it->second.first;
  }
  return out;
}

inline void check_key(const std::string& key, std::size_t line_no) {
  static const std::set<std::string> kKnown{"name", "V0_eV", "r0_A", "mu_amu", "provenance"};
  if (kKnown.count(key)) return;
  static const std::map<std::string, std::string> kUnits{
      {"V0", "eV"}, {"r0", "A"}, {"mu", "amu"}};
  const std::string base = key.substr(0, key.find('_'));
  if (auto it = kUnits.find(base); it != kUnits.end()) {
    throw ParseError(line_no, key, "wrong unit, expected " + base + "_" + it->second);
  }
  throw ParseError(line_no, key, "unknown key");
}

}  // namespace registry_detail

inline std::vector<MoleculeRecord> parse_registry(std::string_view text) {
  using namespace registry_detail;
  std::vector<MoleculeRecord> out;
  std::optional<PendingRecord> current;
  std::set<std::string> names;

  auto flush = [&] {
    if (!current) return;
    MoleculeRecord rec = finish(*current);
    if (!names.insert(rec.name).second) {
      throw ParseError(current->fields.at("name").second, "name",
                       "duplicate molecule '" + rec.name + "'");
    }
    out.push_back(std::move(rec));
    current.reset();
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string_view::npos || line[start] == '#') continue;
    line = line.substr(start);

    constexpr std::string_view kHeader = "[molecule]";
    if (line.substr(0, kHeader.size()) == kHeader) {
      flush();
      current = PendingRecord{line_no, {}};
      line = line.substr(kHeader.size());
    } else if (line.front() == '[') {
      throw ParseError(line_no, "", "unknown section '" + std::string(line) + "'");
    } else if (!current) {
      throw ParseError(line_no, "", "field outside a [molecule] block");
    }

    for (auto& tok : split_fields(line, line_no)) {
      check_key(tok.key, line_no);
      if (!current->fields.emplace(tok.key, std::make_pair(tok.value, line_no)).second) {
        throw ParseError(line_no, tok.key, "duplicate field");
      }
    }
  }
  flush();
  return out;
}

inline std::vector<MoleculeRecord> load_registry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open registry file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_registry(buf.str());
}

/// One registry block on a single line; values round-trip at 12 digits.
inline std::string format_record(const MoleculeRecord& rec) {
  std::string prov;
  for (char c : rec.provenance) {
    if (c == '"' || c == '\\') prov.push_back('\\');
    prov.push_back(c);
  }
  char buf[256];
  std::snprintf(buf, sizeof buf, "[molecule] name=%s  V0_eV=%.12g  r0_A=%.12g  mu_amu=%.12g",
                rec.name.c_str(), rec.params.V0_eV, rec.params.r0_A, rec.params.mu_amu);
  return std::string(buf) + "  provenance=\"" + prov + "\"";
}

inline const MoleculeRecord* find_molecule(const std::vector<MoleculeRecord>& reg,
                                           std::string_view name) {
  for (const auto& r : reg) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

/// Observation file: `n,l,energy_eV` per line, `#` starts a comment.
inline std::vector<ObservedLevel> parse_observations(std::string_view text) {
  std::vector<ObservedLevel> out;
  std::set<std::pair<int, int>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string line(text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                     : eol - pos));
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    std::vector<std::string> parts;
    std::stringstream ss(line);
    for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
    if (parts.size() != 3) throw ParseError(line_no, "", "expected n,l,energy_eV");
    static const std::array<const char*, 3> kFields{"n", "l", "energy_eV"};
    ObservedLevel lvl;
    for (int f = 0; f < 3; ++f) {
      std::string s = parts[f];
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      std::size_t used = 0;
      try {
        if (f < 2) {
          const long v = std::stol(s, &used);
          if (v < 0) throw ParseError(line_no, kFields[f], "must be >= 0");
          (f == 0 ? lvl.n : lvl.l) = static_cast<int>(v);
        } else {
          lvl.energy_eV = std::stod(s, &used);
        }
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception&) {
        used = std::string::npos;
      }
      if (used != s.size()) throw ParseError(line_no, kFields[f], "not a number: '" + s + "'");
    }
    if (!seen.insert({lvl.n, lvl.l}).second) {
      throw ParseError(line_no, "", "duplicate level (n, l)");
    }
    out.push_back(lvl);
  }
  return out;
}

struct FitOptions {
  double tolerance_eV = 1e-6;  // largest acceptable residual
};

struct FitDiagnostics {
  double seed_half_spacing_eV = 0.0;  // c = (hbar/r0) sqrt(2 V0/mu)
  double seed_barrier = 0.0;          // D = mu V0 r0^2 / hbar^2
  MolecularParams seed;
  std::optional<double> ground_redundancy_eV;  // E(0,0) from the seed minus observed
  std::vector<double> residuals_eV;             // model - observed, input order
  double max_residual_eV = 0.0;
  int iterations = 0;
};

struct FitResult {
  MolecularParams params;
  FitDiagnostics diagnostics;
};

namespace fit_detail {

inline double centrifugal_shift(int l) { return 0.25 * static_cast<double>(l) * (l + 1) + 1.0 / 16.0; }

/// E in terms of the spectroscopic pair (c, B), B = D/2.
inline double level(double c, double b, int n, int l) {
  const double x = centrifugal_shift(l);
  return c * (2.0 * n + 1.0) + 2.0 * c * x / (std::sqrt(b + x) + std::sqrt(b));
}

}  // namespace fit_detail

/// Recovers (V0, r0) for a given reduced mass from observed levels.
///
/// The spectrum fixes only V0 and mu r0^2, so mu is an input. A closed-form
/// seed comes from the vibrational spacing 2c and one l-splitting (which
/// fixes D by a monotone bisection); Levenberg-Marquardt over (ln V0, ln r0)
/// then fits every level.
inline FitResult fit_parameters(const std::vector<ObservedLevel>& obs, double mu_amu,
                                const FitOptions& opt = {},
                                const PhysicalConstants& k = kCodata2018) {
  using fit_detail::centrifugal_shift;
  if (!(mu_amu > 0.0)) throw DomainError("fit_parameters: mu must be positive");

  // Seed stage 1: vibrational spacing from the widest n-span at one l.
  const ObservedLevel* lo_lvl = nullptr;
  const ObservedLevel* hi_lvl = nullptr;
  for (const auto& a : obs) {
    for (const auto& b : obs) {
      if (a.l != b.l || b.n <= a.n) continue;
      if (!lo_lvl || b.n - a.n > hi_lvl->n - lo_lvl->n) {
        lo_lvl = &a;
        hi_lvl = &b;
      }
    }
  }
  const ObservedLevel* rot = nullptr;
  for (const auto& a : obs) {
    if (a.l >= 1 && (!rot || a.l > rot->l)) rot = &a;
  }
  if (!lo_lvl || !rot) {
    throw UnderdeterminedError(
        "fit_parameters: need two levels with different n at one l and a level with l >= 1");
  }
  const double c = (hi_lvl->energy_eV - lo_lvl->energy_eV) / (2.0 * (hi_lvl->n - lo_lvl->n));
  if (!(c > 0.0)) throw InconsistentDataError("fit_parameters: non-increasing vibrational ladder");

  // Seed stage 2: l-splitting against the lowest-l level, removing the n offset.
  const ObservedLevel* ref = nullptr;
  for (const auto& a : obs) {
    if (a.l >= rot->l) continue;
    if (!ref || a.l < ref->l || (a.l == ref->l && a.n == rot->n && ref->n != rot->n)) ref = &a;
  }
  if (!ref) throw UnderdeterminedError("fit_parameters: need two different l values");
  const double split = rot->energy_eV - ref->energy_eV - 2.0 * c * (rot->n - ref->n);
  const double x_hi = centrifugal_shift(rot->l);
  const double x_lo = centrifugal_shift(ref->l);
  auto splitting = [&](double b) {
    return 2.0 * c * (x_hi - x_lo) / (std::sqrt(b + x_hi) + std::sqrt(b + x_lo));
  };
  if (!(split > 0.0) || !(split < splitting(0.0))) {
    throw InconsistentDataError("fit_parameters: l-splitting outside the attainable range");
  }
  // splitting(b) decreases monotonically; bisect on log b.
  double log_lo = std::log(1e-12);
  double log_hi = std::log(1e16);
  if (splitting(std::exp(log_hi)) > split) {
    throw InconsistentDataError("fit_parameters: l-splitting too small to resolve");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (log_lo + log_hi);
    (splitting(std::exp(mid)) > split ? log_lo : log_hi) = mid;
  }
  const double b = std::exp(0.5 * (log_lo + log_hi));
  const double hbar2_mu = hbar2_over(mu_amu, 1.0, k);
  FitDiagnostics diag;
  diag.seed_half_spacing_eV = c;
  diag.seed_barrier = 2.0 * b;
  const double v0_seed = c * std::sqrt(b);
  diag.seed = MolecularParams{v0_seed, std::sqrt(2.0 * b * hbar2_mu / v0_seed), mu_amu};
  for (const auto& a : obs) {
    if (a.n == 0 && a.l == 0) {
      diag.ground_redundancy_eV = fit_detail::level(c, b, 0, 0) - a.energy_eV;
    }
  }

  // Least squares over (ln V0, ln r0) with the analytic Jacobian via (c, B).
  auto spectro = [&](const std::array<double, 2>& x) {
    const double v0 = std::exp(x[0]);
    const double r0 = std::exp(x[1]);
    return std::pair{std::sqrt(2.0 * v0 * hbar2_mu) / r0, v0 * r0 * r0 / (2.0 * hbar2_mu)};
  };
  auto residuals = [&](const std::array<double, 2>& x) {
    const auto [cc, bb] = spectro(x);
    std::vector<double> r;
    r.reserve(obs.size());
    for (const auto& a : obs) r.push_back(fit_detail::level(cc, bb, a.n, a.l) - a.energy_eV);
    return r;
  };
  auto jacobian = [&](const std::array<double, 2>& x) {
    const auto [cc, bb] = spectro(x);
    std::vector<std::array<double, 2>> j;
    j.reserve(obs.size());
    for (const auto& a : obs) {
      const double xs = centrifugal_shift(a.l);
      const double gap = xs / (std::sqrt(bb + xs) + std::sqrt(bb));
      const double de_dc = (2.0 * a.n + 1.0) + 2.0 * gap;
      const double de_db = cc * (1.0 / std::sqrt(bb + xs) - 1.0 / std::sqrt(bb));
      // dc/dlnV0 = c/2, dc/dlnr0 = -c, dB/dlnV0 = B, dB/dlnr0 = 2B
      j.push_back({de_dc * 0.5 * cc + de_db * bb, -de_dc * cc + de_db * 2.0 * bb});
    }
    return j;
  };
  const auto lm = levenberg_marquardt<2>(
      residuals, jacobian, std::array<double, 2>{std::log(diag.seed.V0_eV), std::log(diag.seed.r0_A)});

  FitResult out;
  out.params = MolecularParams{std::exp(lm.x[0]), std::exp(lm.x[1]), mu_amu};
  diag.iterations = lm.iterations;
  diag.residuals_eV = residuals(lm.x);
  for (double r : diag.residuals_eV) diag.max_residual_eV = std::max(diag.max_residual_eV, std::abs(r));
  out.diagnostics = std::move(diag);
  if (out.diagnostics.max_residual_eV > opt.tolerance_eV) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "fit_parameters: max residual %.3e eV exceeds tolerance %.3e eV",
                  out.diagnostics.max_residual_eV, opt.tolerance_eV);
    throw InconsistentDataError(buf);
  }
  return out;
}

/// The (n, l) states printed in the published pseudoharmonic table, in its
/// row order (n outer, l inner; there is no n = 3 row).
inline std::vector<QuantumNumbers> table1_states() {
  std::vector<QuantumNumbers> out;
  for (int n : {0, 1, 2, 4, 5}) {
    for (int l = 0; l <= n; ++l) out.push_back({n, l});
  }
  return out;
}

/// Energies for the given states, sorted n outer, l inner.
inline std::vector<ObservedLevel> predict_table(const MoleculeRecord& rec,
                                                std::vector<QuantumNumbers> states,
                                                const PhysicalConstants& k = kCodata2018) {
  std::sort(states.begin(), states.end());
  std::vector<ObservedLevel> out;
  out.reserve(states.size());
  for (const auto& qn : states) out.push_back({qn.n, qn.l, energy(rec.params, qn, k)});
  return out;
}

}  // namespace phnu
