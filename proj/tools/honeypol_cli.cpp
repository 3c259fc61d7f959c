// honeypol-cli: structures, lattice sums, cold spots, sweeps and identity
// checks from the command line. Talks to the library only through honeypol.h.
//
// exit codes: 0 ok, 1 usage / bad input, 2 numerical failure, 3 theorem violation

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "honeypol/honeypol.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kViolation = 3 };

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(hp_status s) {
  switch (s) {
    case HP_OK:
      return kOk;
    case HP_ERR_INVALID_ARGUMENT:
    case HP_ERR_DOMAIN:
    case HP_ERR_UNSUPPORTED_GEOMETRY:
    case HP_ERR_VALIDATION:
    case HP_ERR_IO:
      return kUsage;
    case HP_ERR_THEOREM_VIOLATION:
      return kViolation;
    default:
      return kNumerical;
  }
}

void check(hp_status s) {
  if (s != HP_OK) {
    throw Failure{exit_code_for(s), std::string(hp_status_string(s)) + ": " + hp_last_error()};
  }
}

struct ConfigDeleter {
  void operator()(hp_config_s *c) const { hp_config_free(c); }
};
struct SweepDeleter {
  void operator()(hp_sweep_s *s) const { hp_sweep_free(s); }
};
using ConfigPtr = std::unique_ptr<hp_config_s, ConfigDeleter>;
using SweepPtr = std::unique_ptr<hp_sweep_s, SweepDeleter>;

std::string owned(char *s) {
  std::string out(s);
  hp_string_free(s);
  return out;
}

std::string fmt(long double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*Lg", digits, v);
  return buf;
}
std::string j17(long double v) {
  if (!std::isfinite(v)) return "null";
  return fmt(v, 17);
}

struct Options {
  double alpha = 1.0;
  bool alpha_given = false;
  double alpha_min = 0.01;
  double alpha_max = 100.0;
  int alpha_steps = 200;
  bool range_given = false;
  double density = 1.0;
  double tol = 1e-10;
  int grid = 64;
  std::string output = "table";
  std::string out_path;
  std::string structure = "hex";
  std::string custom_file;
  std::optional<double> x, y;
};

// Columnar result shared by the table / csv / json writers.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;       // csv / table text
  std::vector<std::vector<std::string>> json_rows;  // json literals
};

std::string render(const Table &t, const std::string &output) {
  std::ostringstream os;
  if (output == "csv") {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto &r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << '\n';
    }
  } else if (output == "json") {
    os << "[";
    for (std::size_t k = 0; k < t.json_rows.size(); ++k) {
      os << (k ? ",\n " : "\n ") << "{";
      for (std::size_t i = 0; i < t.columns.size(); ++i) {
        os << (i ? ", " : "") << '"' << t.columns[i] << "\": " << t.json_rows[k][i];
      }
      os << "}";
    }
    os << (t.json_rows.empty() ? "]\n" : "\n]\n");
  } else {
    std::vector<std::size_t> w(t.columns.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = t.columns[i].size();
    for (const auto &r : t.rows)
      for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
    auto line = [&](const std::vector<std::string> &cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        os << (i ? "  " : "") << cells[i];
        if (i + 1 < cells.size()) os << std::string(w[i] - cells[i].size(), ' ');
      }
      os << '\n';
    };
    line(t.columns);
    for (const auto &r : t.rows) line(r);
  }
  return os.str();
}

void emit(const std::string &text, const Options &o) {
  if (o.out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw Failure{kUsage, "cannot write " + o.out_path};
  f << text;
}

ConfigPtr make_structure(const Options &o) {
  hp_config c = nullptr;
  if (o.structure == "hex") {
    check(hp_config_hexagonal(o.density, &c));
  } else if (o.structure == "honeycomb") {
    check(hp_config_honeycomb(o.density, &c));
  } else {
    if (o.custom_file.empty()) throw Failure{kUsage, "--structure custom needs --custom-file"};
    check(hp_config_load(o.custom_file.c_str(), &c));
  }
  return ConfigPtr(c);
}

hp_budget budget_of(const Options &o) {
  hp_budget b = hp_budget_default();
  b.abs_tol = o.tol;
  return b;
}

hp_search search_of(const Options &o) {
  hp_search s = hp_search_default();
  s.grid_resolution = o.grid;
  return s;
}

std::vector<double> alphas_of(const Options &o) {
  if (o.alpha_given && !o.range_given) return {o.alpha};
  if (!(o.alpha_min > 0.0) || !(o.alpha_min < o.alpha_max)) {
    throw Failure{kUsage, "need 0 < --alpha-min < --alpha-max"};
  }
  if (o.alpha_steps < 2) throw Failure{kUsage, "--alpha-steps must be at least 2"};
  std::vector<double> a(static_cast<std::size_t>(o.alpha_steps));
  check(hp_log_spaced(o.alpha_min, o.alpha_max, o.alpha_steps, a.data()));
  return a;
}

// evaluation point for poisson-check: the deep hole when there is one
void probe_point(hp_config c, const Options &o, double &x, double &y) {
  x = 0.0;
  y = 0.0;
  double holes[4];
  if (hp_config_deep_holes(c, holes) == HP_OK) {
    x = holes[0];
    y = holes[1];
  }
  if (o.x) x = *o.x;
  if (o.y) y = *o.y;
}

const char *path_name(hp_path p) { return p == HP_PATH_DUAL ? "dual" : "direct"; }

int cmd_polarize(const Options &o, bool details) {
  ConfigPtr c = make_structure(o);
  const hp_search s = search_of(o);
  const hp_budget b = budget_of(o);
  Table t;
  if (details) {
    t.columns = {"alpha", "value", "x", "y", "frac_x", "frac_y", "gradient_norm", "iterations",
                 "path"};
  } else {
    t.columns = {"alpha", "value", "tail_bound", "path"};
  }
  for (double a : alphas_of(o)) {
    hp_polarization p;
    check(hp_cold_spot(c.get(), a, &s, &b, &p));
    const std::string path = path_name(p.path);
    if (details) {
      t.rows.push_back({fmt(a, 12), fmt(p.value, 12), fmt(p.x, 12), fmt(p.y, 12),
                        fmt(p.frac_x, 12), fmt(p.frac_y, 12), fmt(p.gradient_norm, 3),
                        std::to_string(p.iterations), path});
      t.json_rows.push_back({j17(a), j17(p.value), j17(p.x), j17(p.y), j17(p.frac_x),
                             j17(p.frac_y), j17(p.gradient_norm), std::to_string(p.iterations),
                             '"' + path + '"'});
    } else {
      t.rows.push_back({fmt(a, 12), fmt(p.value, 12), fmt(p.tail_bound, 3), path});
      t.json_rows.push_back({j17(a), j17(p.value), j17(p.tail_bound), '"' + path + '"'});
    }
  }
  emit(render(t, o.output), o);
  return kOk;
}

int cmd_sweep(const Options &o) {
  const std::vector<double> alphas = alphas_of(o);
  const hp_search s = search_of(o);
  const hp_budget b = budget_of(o);
  hp_sweep raw = nullptr;
  check(hp_sweep_run(o.density, alphas.data(), alphas.size(), &s, &b, &raw));
  SweepPtr sweep(raw);

  std::size_t n = 0;
  check(hp_sweep_size(sweep.get(), &n));
  std::size_t uncertified = 0;
  Table t;
  t.columns = {"alpha", "hex_value", "honey_value", "gap", "regime", "certified"};
  for (std::size_t i = 0; i < n; ++i) {
    hp_sweep_row r;
    check(hp_sweep_get_row(sweep.get(), i, &r));
    if (!r.certified) ++uncertified;
    t.rows.push_back({fmt(r.alpha, 12), fmt(r.hex_value, 12), fmt(r.honey_value, 12),
                      fmt(r.gap, 12), r.regime, r.certified ? "true" : "false"});
  }

  char *text = nullptr;
  if (o.output == "csv") {
    check(hp_sweep_to_csv(sweep.get(), &text));
    emit(owned(text), o);
  } else if (o.output == "json") {
    check(hp_sweep_to_json(sweep.get(), &text));
    emit(owned(text), o);
  } else {
    emit(render(t, "table"), o);
  }
  if (uncertified > 0) {
    std::cerr << uncertified << " of " << n
              << " rows not certified (gap within truncation and rounding bounds)\n";
    return kNumerical;
  }
  return kOk;
}

int cmd_agm(const Options &o) {
  const hp_budget b = budget_of(o);
  Table t;
  t.columns = {"alpha", "q", "a", "a_cubed", "b", "residual", "tail_bound"};
  for (double a : alphas_of(o)) {
    hp_agm_check r;
    check(hp_agm_check_alpha(a, &b, &r));
    t.rows.push_back({fmt(a, 12), fmt(r.q, 12), fmt(r.a, 12), fmt(r.a_cubed, 12), fmt(r.b, 12),
                      fmt(r.residual, 3), fmt(r.tail_bound, 3)});
    t.json_rows.push_back({j17(a), j17(r.q), j17(r.a), j17(r.a_cubed), j17(r.b), j17(r.residual),
                           j17(r.tail_bound)});
  }
  emit(render(t, o.output), o);
  return kOk;
}

int cmd_poisson(const Options &o) {
  ConfigPtr c = make_structure(o);
  const hp_budget b = budget_of(o);
  double x, y;
  probe_point(c.get(), o, x, y);
  Table t;
  t.columns = {"alpha", "x", "y", "direct", "dual", "difference", "imaginary"};
  for (double a : alphas_of(o)) {
    hp_poisson_check r;
    check(hp_poisson_check_run(c.get(), x, y, a, &b, &r));
    t.rows.push_back({fmt(a, 12), fmt(x, 12), fmt(y, 12), fmt(r.direct, 15), fmt(r.dual, 15),
                      fmt(r.difference, 3), fmt(r.imaginary, 3)});
    t.json_rows.push_back({j17(a), j17(x), j17(y), j17(r.direct), j17(r.dual), j17(r.difference),
                           j17(r.imaginary)});
  }
  emit(render(t, o.output), o);
  return kOk;
}

int cmd_thresholds(const Options &o) {
  hp_thresholds th;
  check(hp_get_thresholds(&th));
  Table t;
  t.columns = {"name", "value"};
  // printed precision: 6, 6 and 5 significant digits
  const std::pair<const char *, std::pair<double, int>> items[] = {
      {"alpha_direct", {th.alpha_direct, 6}},
      {"alpha_dual", {th.alpha_dual, 6}},
      {"alpha_agm", {th.alpha_agm, 5}}};
  for (const auto &[name, v] : items) {
    t.rows.push_back({name, fmt(v.first, v.second)});
    t.json_rows.push_back({std::string("\"") + name + '"', j17(v.first)});
  }
  emit(render(t, o.output), o);
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Gaussian polarization of the hexagonal lattice and the honeycomb"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App *sub, bool structure, bool range) {
    auto *alpha = sub->add_option("--alpha", o.alpha, "Gaussian parameter");
    if (range) {
      auto *lo = sub->add_option("--alpha-min", o.alpha_min, "lower end of a log-spaced range");
      auto *hi = sub->add_option("--alpha-max", o.alpha_max, "upper end");
      auto *st = sub->add_option("--alpha-steps", o.alpha_steps, "number of points");
      alpha->excludes(lo)->excludes(hi)->excludes(st);
    }
    sub->add_option("--tol", o.tol, "absolute series tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--output", o.output, "table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    sub->add_option("--out", o.out_path, "write to this file instead of stdout");
    if (structure) {
      sub->add_option("--density", o.density, "points per unit area")
          ->check(CLI::PositiveNumber);
      sub->add_option("--grid", o.grid, "search grid per axis");
      sub->add_option("--structure", o.structure, "hex, honeycomb or custom")
          ->check(CLI::IsMember({"hex", "honeycomb", "custom"}));
      sub->add_option("--custom-file", o.custom_file, "structure JSON for --structure custom");
    }
  };

  auto *polarize = app.add_subcommand("polarize", "polarization (minimal Gaussian sum) of a structure");
  add_common(polarize, true, true);
  auto *coldspot = app.add_subcommand("coldspot", "minimizer of the Gaussian sum over the torus");
  add_common(coldspot, true, true);
  auto *sweep = app.add_subcommand("sweep", "hexagonal minus honeycomb polarization over an alpha grid");
  add_common(sweep, false, true);
  sweep->add_option("--density", o.density, "points per unit area")->check(CLI::PositiveNumber);
  sweep->add_option("--grid", o.grid, "search grid per axis");
  auto *agm = app.add_subcommand("agm-check", "residual of 3a(q^3) = a(q) + 2b(q)");
  add_common(agm, false, true);
  auto *poisson = app.add_subcommand("poisson-check", "direct against Poisson-dual evaluation");
  add_common(poisson, true, true);
  poisson->add_option("--x", o.x, "evaluation point (default: deep hole)");
  poisson->add_option("--y", o.y);
  auto *thresh = app.add_subcommand("thresholds", "the three regime constants");
  thresh->add_option("--output", o.output, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  thresh->add_option("--out", o.out_path, "write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  for (CLI::App *sub : {polarize, coldspot, sweep, agm, poisson}) {
    if (!sub->parsed()) continue;
    o.alpha_given = sub->count("--alpha") > 0;
    o.range_given = sub->count("--alpha-min") + sub->count("--alpha-max") +
                        sub->count("--alpha-steps") > 0;
  }
  // single-alpha commands default to alpha = 1 when no range is asked for
  if (!sweep->parsed() && !o.range_given) o.alpha_given = true;

  try {
    if (polarize->parsed()) return cmd_polarize(o, false);
    if (coldspot->parsed()) return cmd_polarize(o, true);
    if (sweep->parsed()) return cmd_sweep(o);
    if (agm->parsed()) return cmd_agm(o);
    if (poisson->parsed()) return cmd_poisson(o);
    if (thresh->parsed()) return cmd_thresholds(o);
  } catch (const Failure &f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
  return kUsage;
}
