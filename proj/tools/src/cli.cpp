#include "hysnet_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hysnet/error.hpp"
#include "hysnet/loading_curve.hpp"
#include "hysnet/loading_trace.hpp"
#include "hysnet/reducibility.hpp"
#include "hysnet/sweeping.hpp"
#include "hysnet_cli/io.hpp"

namespace hysnet::cli {

namespace {

using nlohmann::ordered_json;

// nlohmann serializes doubles with max_digits10, which is round-trip safe
// but not the shortest form; raw text keeps CSV and JSON output identical.
ordered_json num(double x) { return ordered_json::parse(format_number(x)); }

ordered_json num_array(const Eigen::VectorXd& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(num(v(k)));
  return a;
}

std::vector<std::string> labels(const SpringNetwork& net) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < net.spring_count(); ++k) out.push_back(net.label(k));
  return out;
}

SimulationOptions simulation_options(double dt_max, double tol) {
  SimulationOptions so;
  so.max_dg = dt_max;
  so.projection.tol = tol;
  return so;
}

ordered_json curve_json(const LoadingCurve& c) {
  ordered_json pts = ordered_json::array();
  for (const auto& p : c.points()) pts.push_back({num(p.tau), num(p.value)});
  return pts;
}

// Stops of the reaction curve, if it is concave and nondecreasing.
std::optional<PiOperator> reaction_stops(const LoadingCurve& reaction) {
  try {
    return pi_from_curve(reaction);
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

int cmd_simulate(const SpringNetwork& net, const Signal& signal, const SimulateOptions& opts, std::ostream& out) {
  const ConfigurationGeometry geom = build_geometry(net);
  const auto samples = simulate(geom, signal, simulation_options(opts.dt_max, opts.tol));
  const auto names = labels(net);

  if (opts.format == Format::Json) {
    ordered_json doc;
    doc["springs"] = names;
    ordered_json rows = ordered_json::array();
    for (const auto& s : samples)
      rows.push_back({{"t", num(s.t)}, {"g", num(s.g)}, {"sigma", num_array(s.sigma)}, {"R", num(s.reaction)}});
    doc["samples"] = std::move(rows);
    out << doc.dump(2) << '\n';
    return kOk;
  }
  out << "t,g";
  for (const auto& n : names) out << ",sigma_" << n;
  out << ",R\n";
  for (const auto& s : samples) {
    out << format_number(s.t) << ',' << format_number(s.g);
    for (Eigen::Index k = 0; k < s.sigma.size(); ++k) out << ',' << format_number(s.sigma(k));
    out << ',' << format_number(s.reaction) << '\n';
  }
  return kOk;
}

int cmd_check(const SpringNetwork& net, const CheckCommandOptions& opts, std::ostream& out) {
  const ConfigurationGeometry geom = build_geometry(net);
  const PolylineTrace trace = trace_loading_polyline(geom);
  CheckOptions co;
  co.tol = opts.tol;
  const ReducibilityReport rep = check_reducibility(geom, trace, co);
  const EffectiveCurves eff = effective_pi_curves(geom, trace, co);
  const auto stops = reaction_stops(eff.reaction);
  const auto names = labels(net);

  if (opts.format == Format::Json) {
    ordered_json doc;
    ordered_json tr;
    tr["links"] = trace.links();
    tr["saturated"] = trace.saturated;
    tr["horizon"] = num(trace.horizon());
    ordered_json verts = ordered_json::array();
    for (std::size_t k = 0; k < trace.points.size(); ++k)
      verts.push_back({{"d", num(trace.distances[k])}, {"B", num_array(trace.points[k])}});
    tr["vertices"] = std::move(verts);
    doc["springs"] = names;
    doc["trace"] = std::move(tr);
    doc["report"] = {{"nested_faces", rep.nested_faces},         {"unit_dim_drops", rep.unit_dim_drops},
                     {"interior_vertices", rep.interior_vertices}, {"omega_contained", rep.omega_contained},
                     {"invertible", rep.invertible},             {"overall", rep.overall}};
    ordered_json wit = ordered_json::array();
    for (const auto& w : rep.witnesses)
      wit.push_back({{"condition", w.condition},
                     {"k", w.k},
                     {"spring", w.coordinate >= 0 ? ordered_json(names[static_cast<std::size_t>(w.coordinate)])
                                                  : ordered_json(nullptr)},
                     {"margin", num(w.margin)},
                     {"detail", w.detail}});
    doc["witnesses"] = std::move(wit);
    ordered_json curves;
    for (std::size_t k = 0; k < names.size(); ++k) curves[names[k]] = curve_json(eff.springs[k]);
    curves["R"] = curve_json(eff.reaction);
    doc["effective_curves"] = std::move(curves);
    ordered_json st = ordered_json::array();
    if (stops)
      for (const auto& s : stops->stops()) st.push_back({{"a", num(s.weight)}, {"rho", num(s.threshold)}});
    doc["reaction_stops"] = stops ? st : ordered_json(nullptr);
    out << doc.dump(2) << '\n';
    return rep.overall ? kOk : kCheckFailed;
  }

  out << "# trace links=" << trace.links() << " saturated=" << flag(trace.saturated)
      << " horizon=" << format_number(trace.horizon()) << '\n';
  out << "k,d";
  for (const auto& n : names) out << ",u_" << n;
  out << '\n';
  for (std::size_t k = 0; k < trace.points.size(); ++k) {
    out << k << ',' << format_number(trace.distances[k]);
    for (Eigen::Index c = 0; c < geom.m(); ++c) out << ',' << format_number(trace.points[k](c));
    out << '\n';
  }
  out << "# report\n"
      << "nested_faces=" << flag(rep.nested_faces) << '\n'
      << "unit_dim_drops=" << flag(rep.unit_dim_drops) << '\n'
      << "interior_vertices=" << flag(rep.interior_vertices) << '\n'
      << "omega_contained=" << flag(rep.omega_contained) << '\n'
      << "invertible=" << flag(rep.invertible) << '\n'
      << "overall=" << flag(rep.overall) << '\n';
  out << "# witnesses\ncondition,k,spring,margin,detail\n";
  for (const auto& w : rep.witnesses)
    out << w.condition << ',' << w.k << ','
        << (w.coordinate >= 0 ? names[static_cast<std::size_t>(w.coordinate)] : std::string()) << ','
        << format_number(w.margin) << ",\"" << w.detail << "\"\n";
  out << "# effective curves" << (eff.equivalent ? "" : " (not equivalent to the network)") << "\ncurve,tau,phi\n";
  auto dump_curve = [&](const std::string& name, const LoadingCurve& c) {
    for (const auto& p : c.points()) out << name << ',' << format_number(p.tau) << ',' << format_number(p.value) << '\n';
  };
  for (std::size_t k = 0; k < names.size(); ++k) dump_curve(names[k], eff.springs[k]);
  dump_curve("R", eff.reaction);
  if (stops) {
    out << "# reaction stops\na,rho\n";
    for (const auto& s : stops->stops()) out << format_number(s.weight) << ',' << format_number(s.threshold) << '\n';
  }
  return rep.overall ? kOk : kCheckFailed;
}

int cmd_compare(const SpringNetwork& net, const Signal& signal, const CompareOptions& opts, std::ostream& out,
                std::ostream& err) {
  const ConfigurationGeometry geom = build_geometry(net);
  const PolylineTrace trace = trace_loading_polyline(geom);
  const double horizon = trace.horizon();
  if (!opts.allow_beyond_saturation && signal.max_abs() > horizon)
    throw HorizonError("signal leaves [-L, L]; pass --allow-beyond-saturation to extend", signal.max_abs(), horizon);
  if (signal.max_abs() > horizon)
    err << "warning: signal exceeds L = " << format_number(horizon) << "; results beyond L are not covered\n";

  const EffectiveCurves eff = effective_pi_curves(geom, trace);
  const SimulationOptions so = simulation_options(opts.dt_max, opts.tol);
  const double dt = so.max_dg > 0.0 ? so.max_dg : default_max_dg(geom);
  const auto samples = simulate(geom, signal, so);
  const Horizon mode = opts.allow_beyond_saturation ? Horizon::Extend : Horizon::Strict;

  MainExtremaMemory mem(opts.allow_beyond_saturation ? std::numeric_limits<double>::infinity() : horizon);
  std::vector<double> disc;
  disc.reserve(samples.size());
  double worst = 0.0;
  for (const auto& s : samples) {
    mem.update(s.g);
    double d = 0.0;
    for (Eigen::Index c = 0; c < geom.m(); ++c)
      d = std::max(d, std::abs(s.sigma(c) - memory_evaluate(eff.springs[static_cast<std::size_t>(c)], mem, mode)));
    disc.push_back(d);
    worst = std::max(worst, d);
  }

  if (opts.format == Format::Json) {
    ordered_json rows = ordered_json::array();
    for (std::size_t k = 0; k < samples.size(); ++k)
      rows.push_back({{"t", num(samples[k].t)}, {"g", num(samples[k].g)}, {"discrepancy", num(disc[k])}});
    ordered_json doc;
    doc["samples"] = std::move(rows);
    doc["max_discrepancy"] = num(worst);
    doc["dt_max"] = num(dt);
    doc["equivalent"] = eff.equivalent;
    out << doc.dump(2) << '\n';
    return kOk;
  }
  out << "t,g,discrepancy\n";
  for (std::size_t k = 0; k < samples.size(); ++k)
    out << format_number(samples[k].t) << ',' << format_number(samples[k].g) << ',' << format_number(disc[k]) << '\n';
  out << "# max_discrepancy=" << format_number(worst) << " dt_max=" << format_number(dt)
      << " equivalent=" << flag(eff.equivalent) << '\n';
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spring networks under a moving constraint: simulation, loading trace, PI reduction", "hysnet"};
  app.require_subcommand(1);
  const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};

  std::string network_file, signal_file;
  SimulateOptions sim_opts;
  CheckCommandOptions check_opts;
  CompareOptions cmp_opts;

  auto* sim = app.add_subcommand("simulate", "Catch-up simulation; CSV of t, g, spring stresses and R");
  sim->add_option("network", network_file, "network JSON file")->required();
  sim->add_option("signal", signal_file, "signal JSON file")->required();
  sim->add_option("--dt-max", sim_opts.dt_max, "largest input increment per step (default: min bound / 100)");
  sim->add_option("--tol", sim_opts.tol, "projection tolerance")->capture_default_str();
  sim->add_option("--format", sim_opts.format, "output format (default: csv)")->transform(CLI::CheckedTransformer(formats))->option_text("csv|json");

  auto* chk = app.add_subcommand("check", "Trace the loading polyline and test the reducibility conditions");
  chk->add_option("network", network_file, "network JSON file")->required();
  chk->add_option("--tol", check_opts.tol, "relative tolerance of the geometric tests")->capture_default_str();
  chk->add_option("--format", check_opts.format, "output format (default: csv)")->transform(CLI::CheckedTransformer(formats))->option_text("csv|json");

  auto* cmp = app.add_subcommand("compare", "Per-sample |sigma_sweep - sigma_PI|_inf against the effective curves");
  cmp->add_option("network", network_file, "network JSON file")->required();
  cmp->add_option("signal", signal_file, "signal JSON file")->required();
  cmp->add_option("--dt-max", cmp_opts.dt_max, "largest input increment per step (default: min bound / 100)");
  cmp->add_option("--tol", cmp_opts.tol, "projection tolerance")->capture_default_str();
  cmp->add_flag("--allow-beyond-saturation", cmp_opts.allow_beyond_saturation,
                "accept |g| > L, extending the effective curves flat");
  cmp->add_option("--format", cmp_opts.format, "output format (default: csv)")->transform(CLI::CheckedTransformer(formats))->option_text("csv|json");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(std::move(rev));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  try {
    if (sim->parsed()) return cmd_simulate(load_network(network_file), load_signal(signal_file), sim_opts, out);
    if (chk->parsed()) return cmd_check(load_network(network_file), check_opts, out);
    return cmd_compare(load_network(network_file), load_signal(signal_file), cmp_opts, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const HorizonError& e) {
    err << "error: " << e.what() << " (|g| = " << format_number(e.value()) << ", L = " << format_number(e.horizon())
        << ")\n";
    return kHorizonViolation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kSolverError;
  }
}

}  // namespace hysnet::cli
