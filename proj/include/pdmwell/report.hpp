#pragma once

/**
 * @file report.hpp
 * @brief Table-producing commands behind the command-line tool.
 *
 * Each command turns a RunConfig into a Table; writers render a Table as CSV
 * or JSON. Everything is in natural units (a = m0 = hbar = 1), so z is x/a,
 * k a or eta/a depending on the space column.
 */

#include <algorithm>
#include <cstdio>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pdmwell/complexity.hpp"
#include "pdmwell/info_measures.hpp"
#include "pdmwell/well_model.hpp"

namespace pdmwell::report {

enum class Command { eigenstate, measures, sweep, figure, verify };
enum class Format { csv, json };
enum class Method { closed, numeric };

struct RunConfig {
  Command command = Command::eigenstate;
  // Empty lists select the per-command defaults.
  std::vector<int> n_list;
  std::vector<double> gamma_a_list;
  std::vector<Space> space_list;
  int grid_points = 1001;
  double tol = 1e-6;
  Format format = Format::csv;
  std::optional<std::string> output_path;

  Method method = Method::closed;
  bool entropy_density = false;
  std::vector<std::string> quantities{"ccr", "cfs", "clmc"};
  int figure_id = 1;
  double k_max = 30.0;

  void validate() const {
    for (int n : n_list)
      if (n < 1) throw InvalidConfig("n must be a positive integer");
    for (double g : gamma_a_list)
      if (!std::isfinite(g) || std::abs(g) > kMaxGammaA)
        throw InvalidConfig("gamma a must lie strictly inside (-1, 1)");
    if (grid_points < 2) throw InvalidConfig("grid must have at least 2 points");
    if (!(tol > 0.0) || !std::isfinite(tol)) throw InvalidConfig("tol must be positive");
    if (!(k_max > 0.0) || !std::isfinite(k_max)) throw InvalidConfig("k-max must be positive");
    if (figure_id < 1 || figure_id > 4) throw InvalidConfig("figure id must be 1, 2, 3 or 4");
    for (const auto& q : quantities)
      if (q != "ccr" && q != "cfs" && q != "clmc")
        throw InvalidConfig("unknown quantity '" + q + "' (expected ccr, cfs, clmc)");
    if (quantities.empty()) throw InvalidConfig("at least one quantity is required");
  }
};

inline Space parse_space(const std::string& s) {
  if (s == "x") return Space::position;
  if (s == "k") return Space::wavevector;
  if (s == "eta") return Space::deformed_eta;
  throw InvalidConfig("unknown space '" + s + "' (expected x, k, eta)");
}

/// Inclusive linspace from "MIN:MAX:STEPS".
inline std::vector<double> parse_range(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw InvalidConfig("range must look like MIN:MAX:STEPS");
  double lo = 0.0;
  double hi = 0.0;
  long steps = 0;
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, c1);
    const std::string b = text.substr(c1 + 1, c2 - c1 - 1);
    const std::string c = text.substr(c2 + 1);
    lo = std::stod(a, &used);
    if (used != a.size()) throw InvalidConfig("bad MIN");
    hi = std::stod(b, &used);
    if (used != b.size()) throw InvalidConfig("bad MAX");
    steps = std::stol(c, &used);
    if (used != c.size()) throw InvalidConfig("bad STEPS");
  } catch (const std::logic_error&) {
    throw InvalidConfig("range must look like MIN:MAX:STEPS");
  }
  if (steps < 1) throw InvalidConfig("range needs STEPS >= 1");
  if (steps == 1) {
    if (lo != hi) throw InvalidConfig("range with one step needs MIN == MAX");
    return {lo};
  }
  if (!(lo < hi)) throw InvalidConfig("range needs MIN < MAX");
  std::vector<double> out(static_cast<std::size_t>(steps));
  // (lo (m - i) + hi i)/m is exactly antisymmetric when lo = -hi.
  const double m = static_cast<double>(steps - 1);
  for (long i = 0; i < steps; ++i) out[i] = (lo * (m - i) + hi * i) / m;
  out.front() = lo;
  out.back() = hi;
  return out;
}

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("Table: row width mismatch");
    rows.push_back(std::move(row));
  }
};

inline std::string format_double(double v) {
  if (!std::isfinite(v)) throw NonFinite("refusing to write a non-finite value");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      const Cell& c = row[i];
      if (auto p = std::get_if<long long>(&c)) out << *p;
      else if (auto d = std::get_if<double>(&c)) out << format_double(*d);
      else if (auto s = std::get_if<std::string>(&c)) out << *s;
    }
    out << '\n';
  }
}

inline void write_json(const Table& t, std::ostream& out) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      auto& slot = obj[t.columns[i]];
      if (auto p = std::get_if<long long>(&c)) slot = *p;
      else if (auto d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) throw NonFinite("refusing to write a non-finite value");
        slot = *d;
      } else if (auto s = std::get_if<std::string>(&c)) slot = *s;
      else slot = nullptr;
    }
    arr.push_back(std::move(obj));
  }
  out << arr.dump(1) << '\n';
}

inline void write_table(const Table& t, Format f, std::ostream& out) {
  if (f == Format::csv) write_csv(t, out);
  else write_json(t, out);
}

// ---------------------------------------------------------------------------
// Helpers

namespace detail {

inline std::vector<int> or_default(const std::vector<int>& v, std::vector<int> d) {
  return v.empty() ? d : v;
}
inline std::vector<double> or_default(const std::vector<double>& v, std::vector<double> d) {
  return v.empty() ? d : v;
}
inline std::vector<Space> or_default(const std::vector<Space>& v, std::vector<Space> d) {
  return v.empty() ? d : v;
}

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  const double m = n - 1;
  for (int i = 0; i < n; ++i) out[i] = (lo * (m - i) + hi * i) / m;
  out.front() = lo;
  out.back() = hi;
  return out;
}

/// Grid over the natural extent of a space for one state.
inline std::vector<double> grid_for(const EigenState& st, Space space, const RunConfig& cfg) {
  switch (space) {
    case Space::position: return linspace(-st.well().a(), st.well().a(), cfg.grid_points);
    case Space::wavevector: return linspace(-cfg.k_max, cfg.k_max, cfg.grid_points);
    case Space::deformed_eta: return linspace(st.eta_left(), st.eta_right(), cfg.grid_points);
  }
  return {};
}

struct StateKey {
  Space space;
  int n;
  double gamma_a;
};

/// Evaluates fn over every key concurrently; results come back in key order.
template <class R, class Fn>
std::vector<R> ordered_parallel_map(const std::vector<StateKey>& keys, Fn fn) {
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<R> out;
  out.reserve(keys.size());
  for (std::size_t start = 0; start < keys.size(); start += workers) {
    std::vector<std::future<R>> batch;
    const std::size_t stop = std::min(keys.size(), start + workers);
    for (std::size_t i = start; i < stop; ++i)
      batch.push_back(std::async(std::launch::async, fn, keys[i]));
    for (auto& f : batch) out.push_back(f.get());
  }
  return out;
}

inline std::vector<StateKey> cells(const std::vector<Space>& spaces, const std::vector<int>& ns,
                                   std::vector<double> gammas) {
  std::vector<StateKey> keys;
  for (Space s : spaces)
    for (int n : ns)
      for (double g : gammas) keys.push_back({s, n, g});
  return keys;
}

inline Cell space_cell(Space s) { return std::string(to_string(s)); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands

/// Rows space,n,gamma_a,z,psi_real,psi_imag,rho on each space's grid.
inline Table cmd_eigenstate(const RunConfig& cfg) {
  cfg.validate();
  using namespace detail;
  Table t{{"space", "n", "gamma_a", "z", "psi_real", "psi_imag", "rho"}, {}};
  for (const auto& key : cells(or_default(cfg.space_list, {Space::position}),
                               or_default(cfg.n_list, {1}), or_default(cfg.gamma_a_list, {0.0}))) {
    const EigenState st(DeformedWell(key.gamma_a), key.n);
    for (double z : grid_for(st, key.space, cfg)) {
      std::complex<double> psi;
      double rho = 0.0;
      switch (key.space) {
        case Space::position:
          psi = eigenfunction_x(st, z);
          rho = density_x(st, z);
          break;
        case Space::wavevector:
          psi = eigenfunction_k(st, z);
          rho = density_k(st, z);
          break;
        case Space::deformed_eta:
          // sqrt(1 + gamma x) psi_n(x) = A sin(k_n (eta - eta(a)))
          psi = (z > st.eta_left() && z < st.eta_right())
                    ? st.amplitude() * std::sin(st.wavenumber() * (z - st.eta_right()))
                    : 0.0;
          rho = density_eta(st, z);
          break;
      }
      t.add({space_cell(key.space), static_cast<long long>(key.n), key.gamma_a, z, psi.real(),
             psi.imag(), rho});
    }
  }
  return t;
}

/// Rows space,n,gamma_a,z,rho_S; the entropy density on each space's grid.
inline Table entropy_density_table(const RunConfig& cfg, const std::vector<Space>& spaces,
                                   const std::vector<int>& ns, const std::vector<double>& gammas) {
  Table t{{"space", "n", "gamma_a", "z", "rho_S"}, {}};
  const MeasureContext ctx;
  for (const auto& key : detail::cells(spaces, ns, gammas)) {
    const EigenState st(DeformedWell(key.gamma_a), key.n);
    for (double z : detail::grid_for(st, key.space, cfg))
      t.add({detail::space_cell(key.space), static_cast<long long>(key.n), key.gamma_a, z,
             entropy_density(st, key.space, z, ctx)});
  }
  return t;
}

/// Rows space,n,gamma_a,shannon,fisher,disequilibrium,L_H,L_S,L_F,f_n, or the
/// entropy-density profile when cfg.entropy_density is set.
inline Table cmd_measures(const RunConfig& cfg) {
  cfg.validate();
  using namespace detail;
  const auto spaces = or_default(cfg.space_list, {Space::position, Space::wavevector});
  const auto ns = or_default(cfg.n_list, {1});
  const auto gammas = or_default(cfg.gamma_a_list, {0.0});
  if (cfg.entropy_density) return entropy_density_table(cfg, spaces, ns, gammas);

  const auto keys = cells(spaces, ns, gammas);
  const auto sets = ordered_parallel_map<MeasureSet>(keys, [&cfg](const StateKey& key) {
    const EigenState st(DeformedWell(key.gamma_a), key.n);
    const MeasureContext ctx;
    return cfg.method == Method::closed ? closed_measures(st, key.space, ctx)
                                        : numeric_state_measures(st, key.space, ctx);
  });
  Table t{{"space", "n", "gamma_a", "shannon", "fisher", "disequilibrium", "L_H", "L_S", "L_F",
           "f_n"},
          {}};
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto& m = sets[i];
    const Cell f = keys[i].space == Space::wavevector ? Cell(f_of_n(keys[i].n)) : Cell();
    t.add({space_cell(keys[i].space), static_cast<long long>(keys[i].n), keys[i].gamma_a,
           m.shannon, m.fisher, m.disequilibrium, m.heisenberg_length, m.shannon_length,
           m.fisher_length, f});
  }
  return t;
}

/// Complexities of one state; eta uses the generic combination of its closed measures.
inline ComplexitySet state_complexities(const EigenState& st, Space space) {
  if (space == Space::deformed_eta)
    return complexity_numeric(closed_measures(st, space, MeasureContext{}));
  return complexity_closed(st, space);
}

/// Rows space,n,gamma_a followed by the selected complexities, gamma_a ascending.
inline Table complexity_table(const std::vector<Space>& spaces, const std::vector<int>& ns,
                              std::vector<double> gammas,
                              const std::vector<std::string>& quantities) {
  std::sort(gammas.begin(), gammas.end());
  const auto keys = detail::cells(spaces, ns, gammas);
  const auto sets = detail::ordered_parallel_map<ComplexitySet>(keys, [](const detail::StateKey& k) {
    return state_complexities(EigenState(DeformedWell(k.gamma_a), k.n), k.space);
  });
  Table t{{"space", "n", "gamma_a"}, {}};
  for (const auto& q : quantities) t.columns.push_back("c_" + q.substr(1));
  for (std::size_t i = 0; i < keys.size(); ++i) {
    std::vector<Cell> row{detail::space_cell(keys[i].space), static_cast<long long>(keys[i].n),
                          keys[i].gamma_a};
    for (const auto& q : quantities)
      row.push_back(q == "ccr" ? sets[i].c_cr : q == "cfs" ? sets[i].c_fs : sets[i].c_lmc);
    t.add(std::move(row));
  }
  return t;
}

inline Table cmd_sweep(const RunConfig& cfg) {
  cfg.validate();
  using namespace detail;
  return complexity_table(or_default(cfg.space_list, {Space::position, Space::wavevector}),
                          or_default(cfg.n_list, {1}),
                          or_default(cfg.gamma_a_list, parse_range("-0.95:0.95:39")),
                          cfg.quantities);
}

/// The series plotted in each of the four figures.
inline Table cmd_figure(const RunConfig& cfg) {
  cfg.validate();
  using namespace detail;
  const std::vector<double> default_gammas{0.0, 0.4, 0.8};
  switch (cfg.figure_id) {
    case 1: {
      RunConfig c = cfg;
      c.n_list = or_default(cfg.n_list, {1, 2, 3});
      c.gamma_a_list = or_default(cfg.gamma_a_list, default_gammas);
      c.space_list = or_default(cfg.space_list, {Space::position, Space::wavevector});
      return cmd_eigenstate(c);
    }
    case 2: {
      Table t{{"space", "n", "gamma_a", "z", "rho", "rho_classical", "two_rho_classical"}, {}};
      for (int n : or_default(cfg.n_list, {10}))
        for (double g : or_default(cfg.gamma_a_list, {0.8})) {
          const EigenState st(DeformedWell(g), n);
          const auto ens = ClassicalEnsemble::matching(st);
          for (double x : grid_for(st, Space::position, cfg)) {
            const double rc = classical_density(ens, x);
            t.add({space_cell(Space::position), static_cast<long long>(n), g, x, density_x(st, x),
                   rc, 2.0 * rc});
          }
        }
      return t;
    }
    case 3:
      return entropy_density_table(cfg,
                                   or_default(cfg.space_list, {Space::position, Space::wavevector}),
                                   or_default(cfg.n_list, {1, 2, 3}),
                                   or_default(cfg.gamma_a_list, default_gammas));
    default:
      return complexity_table(or_default(cfg.space_list, {Space::position, Space::wavevector}),
                              or_default(cfg.n_list, {1, 2, 3}),
                              or_default(cfg.gamma_a_list, parse_range("-0.95:0.95:39")),
                              cfg.quantities);
  }
}

}  // namespace pdmwell::report
