// frolip: command-line front end for the library.
//
// Exit codes: 0 success, 2 input or parse error, 3 resource limit, 4 domain
// error; decide also returns 10 (NOT_EQUIVALENT) and 11 (UNDECIDED).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "frolip/frolip.hpp"

namespace {

using namespace frolip;
using io::json;

constexpr int kExitParse = 2;
constexpr int kExitResource = 3;
constexpr int kExitDomain = 4;
constexpr int kExitNotEquivalent = 10;
constexpr int kExitUndecided = 11;

struct Output {
  std::string path;

  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
  }
  void write(const json& doc) const { write(doc.dump(2) + "\n"); }
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::vector<Rational> parse_point(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_rational(part));
  if (out.empty()) throw ParseError("empty point");
  return out;
}

std::vector<double> parse_direction(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ParseError("not a number: \"" + part + "\"");
    }
  }
  if (out.empty()) throw ParseError("empty direction");
  return out;
}

struct ThresholdArgs {
  std::string t;
  std::string k;

  void attach(CLI::App* cmd) {
    auto* a = cmd->add_option("--t", t, "Threshold t in (0,1) as an exact rational");
    auto* b = cmd->add_option("--k", k, "Threshold exp(-k), rational k > 0 (lambda^k for one symbolic generator)");
    a->excludes(b);
  }
  Threshold get() const {
    if (!t.empty()) return Threshold::exact(parse_rational(t));
    if (!k.empty()) return Threshold::exp_neg(parse_rational(k));
    throw ParseError("one of --t or --k is required");
  }
};

// ---------------------------------------------------------------------------

int cmd_build(const std::string& input, const Output& out) {
  out.write(io::system_json(io::parse_system(io::load_json(input))));
  return 0;
}

struct GammaArgs {
  std::string input;
  int dirs = 9;
  std::string theta;
  bool analytic = false, empirical = false, both = false;
  int k_max = 120, k_count = 12;
};

int cmd_gamma(const GammaArgs& a, const Output& out) {
  const DefiningData data = io::parse_defining_data(io::load_json(a.input));
  const bool want_analytic = a.analytic || a.both || !a.empirical;
  const bool want_empirical = a.empirical || a.both || !a.analytic;
  std::vector<std::vector<double>> thetas;
  if (!a.theta.empty()) {
    const auto th = parse_direction(a.theta);
    if (th.size() != data.dimension()) throw DomainError("DimensionMismatch", "direction and data differ in dimension");
    detail::require_direction_in_cone(data, th);
    thetas.push_back(detail::unit(th));
  } else {
    thetas = direction_sweep(data, a.dirs);
  }
  const auto eta = coplanar_functional(data.vectors());
  if (a.analytic && !a.both && !eta.present())
    throw DomainError("NotCoplanar", "analytic growth needs coplanar data");

  const GammaOptions g{static_cast<double>(a.k_max), a.k_count};
  std::optional<MultiplicityTable> table;
  if (want_empirical) table.emplace(build_multiplicity(data, gamma_table_bound(data, thetas, a.k_max)));

  std::ostringstream text;
  io::CsvWriter csv(text);
  std::vector<std::string> header;
  for (std::size_t i = 0; i < data.dimension(); ++i) header.push_back("theta_" + std::to_string(i + 1));
  header.insert(header.end(), {"gamma_analytic", "gamma_empirical", "stderr"});
  csv.row(header);
  for (const auto& th : thetas) {
    std::vector<std::string> row;
    for (double c : th) row.push_back(io::cell(c));
    row.push_back(want_analytic && eta.present() ? io::cell(analytic_gamma(data, eta, th)) : "");
    if (table) {
      const auto est = estimate_gamma(*table, th, g);
      row.push_back(io::cell(est.gamma_hat));
      row.push_back(io::cell(est.std_error));
    } else {
      row.insert(row.end(), {"", ""});
    }
    csv.row(row);
  }
  out.write(text.str());
  return 0;
}

int cmd_decide(const std::string& a, const std::string& b, int pq_bound, bool diagnostics, const Output& out) {
  const auto e = io::parse_system(io::load_json(a));
  const auto f = io::parse_system(io::load_json(b));
  DecideOptions opts;
  opts.pq_bound = pq_bound;
  opts.gamma_diagnostics = diagnostics;
  const Verdict v = decide(e, f, opts);
  out.write(io::verdict_json(v));
  switch (v.result) {
    case Result::Equivalent: return 0;
    case Result::NotEquivalent: return kExitNotEquivalent;
    case Result::Undecided: return kExitUndecided;
  }
  return kExitUndecided;
}

int cmd_multiplicity(const std::string& input, std::int64_t bound, const std::vector<std::string>& points,
                     const Output& out) {
  const DefiningData data = io::parse_defining_data(io::load_json(input));
  const auto table = build_multiplicity(data, bound);
  std::ostringstream text;
  io::CsvWriter csv(text);
  const std::size_t s = data.dimension();
  std::vector<std::string> header;
  if (points.empty()) {
    for (std::size_t i = 0; i < s; ++i) header.push_back("z_" + std::to_string(i + 1));
    header.insert(header.end(), {"level", "multiplicity"});
    csv.row(header);
    for (std::size_t i = 0; i < table.size(); ++i) {
      std::vector<std::string> row;
      for (auto c : table.points()[i]) row.push_back(std::to_string(c));
      row.push_back(std::to_string(data.level(table.points()[i])));
      row.push_back(to_string(table.counts()[i]));
      csv.row(row);
    }
  } else {
    for (std::size_t i = 0; i < s; ++i) header.push_back("x_" + std::to_string(i + 1));
    header.insert(header.end(), {"multiplicity", "nearest_squared_distance", "ties"});
    csv.row(header);
    for (const auto& text_point : points) {
      const auto x = parse_point(text_point);
      if (x.size() != s) throw DomainError("DimensionMismatch", "point and data differ in dimension");
      const auto near = nearest_semigroup_points(table, x);
      std::vector<std::string> row;
      for (const auto& c : x) row.push_back(to_string(c));
      row.push_back(to_string(near.multiplicity));
      row.push_back(to_string(near.squared_distance));
      row.push_back(std::to_string(near.ties.size()));
      csv.row(row);
    }
  }
  out.write(text.str());
  return 0;
}

int cmd_cutset(const std::string& input, const ThresholdArgs& t, std::size_t budget, const Output& out) {
  const auto sys = io::parse_system(io::load_json(input));
  out.write(io::cut_set_json(cut_set(sys, t.get(), budget), sys.size()));
  return 0;
}

int cmd_matchable(const std::string& a, const std::string& b, const ThresholdArgs& t, std::int64_t m0, bool search,
                  const Output& out) {
  const auto pair = common_basis(io::parse_system(io::load_json(a)), io::parse_system(io::load_json(b)));
  const auto report = search ? matchable_search(pair.first, pair.second, t.get(), m0)
                             : matchable(pair.first, pair.second, t.get(), m0);
  out.write(io::match_report_json(report, pair.first.size(), pair.second.size()));
  return 0;
}

int cmd_frobenius1d(const std::vector<std::int64_t>& gens, const Output& out) {
  json doc = {{"generators", gens}, {"frobenius_number", frobenius_number_1d(gens)}};
  out.write(doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicities, growth invariants and Lipschitz equivalence of self-similar sets"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::kVersionHeader).substr(2));
  Output out;
  auto add_out = [&](CLI::App* cmd) { cmd->add_option("-o,--out", out.path, "Output file (default stdout)"); };

  std::string input, second;
  auto* build = app.add_subcommand("build", "Build a contraction system and print it as JSON");
  build->add_option("input", input, "Ratio JSON")->required();
  add_out(build);

  GammaArgs gamma;
  auto* gam = app.add_subcommand("gamma", "Directional growth: CSV of analytic and empirical values");
  gam->add_option("input", gamma.input, "Ratio or vector JSON")->required();
  auto* dirs = gam->add_option("--dirs", gamma.dirs, "Number of sweep directions")->check(CLI::Range(1, 10000));
  gam->add_option("--theta", gamma.theta, "Single direction, comma separated")->excludes(dirs);
  gam->add_flag("--analytic", gamma.analytic, "Entropy formula only (coplanar data)");
  gam->add_flag("--empirical", gamma.empirical, "Regression estimate only");
  gam->add_flag("--both", gamma.both, "Both columns (default)");
  gam->add_option("--k-max", gamma.k_max, "Largest sample k")->check(CLI::Range(4, 2000));
  gam->add_option("--k-count", gamma.k_count, "Number of sample k values")->check(CLI::Range(2, 200));
  add_out(gam);

  int pq_bound = 24;
  bool diagnostics = false;
  auto* dec = app.add_subcommand("decide", "Decide Lipschitz equivalence of two systems");
  dec->add_option("first", input, "Ratio JSON")->required();
  dec->add_option("second", second, "Ratio JSON")->required();
  dec->add_option("--pq-bound", pq_bound, "Largest iteration order searched")->check(CLI::Range(1, 64));
  dec->add_flag("--diagnostics", diagnostics, "Attach growth estimates to UNDECIDED verdicts");
  add_out(dec);

  std::int64_t bound = 0;
  std::vector<std::string> points;
  auto* mul = app.add_subcommand("multiplicity", "Multiplicity table or queries as CSV");
  mul->add_option("input", input, "Ratio or vector JSON")->required();
  mul->add_option("--bound", bound, "Level bound K")->required()->check(CLI::Range(std::int64_t{0}, std::int64_t{1} << 40));
  mul->add_option("--point", points, "Query point, comma separated rationals (repeatable)");
  add_out(mul);

  ThresholdArgs cut_t;
  std::size_t budget = kCutSetWordBudget;
  auto* cut = app.add_subcommand("cutset", "Cut-set words as JSON");
  cut->add_option("input", input, "Ratio JSON")->required();
  cut_t.attach(cut);
  cut->add_option("--budget", budget, "Word budget");
  add_out(cut);

  ThresholdArgs match_t;
  std::int64_t m0 = 1;
  bool search = false;
  auto* mat = app.add_subcommand("matchable", "Bounded-degree matching of two cut-sets as JSON");
  mat->add_option("first", input, "Ratio JSON")->required();
  mat->add_option("second", second, "Ratio JSON")->required();
  match_t.attach(mat);
  auto* m0_opt = mat->add_option("--m0", m0, "Constant M0 (largest tried with --search)")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 20));
  mat->add_flag("--search", search, "Double M0 from 1 until feasible");
  add_out(mat);

  std::vector<std::int64_t> gens;
  auto* fro = app.add_subcommand("frobenius1d", "Frobenius number of positive integers");
  fro->add_option("generators", gens, "Integers with gcd 1")->required();
  add_out(fro);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*build) return cmd_build(input, out);
    if (*gam) return cmd_gamma(gamma, out);
    if (*dec) return cmd_decide(input, second, pq_bound, diagnostics, out);
    if (*mul) return cmd_multiplicity(input, bound, points, out);
    if (*cut) return cmd_cutset(input, cut_t, budget, out);
    if (*mat) return cmd_matchable(input, second, match_t, search && m0_opt->count() == 0 ? 64 : m0, search, out);
    if (*fro) return cmd_frobenius1d(gens, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Parse: return kExitParse;
      case ErrorKind::Resource: return kExitResource;
      case ErrorKind::Domain: return kExitDomain;
    }
  } catch (const json::exception& e) {
    std::cerr << "error: ParseError: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
