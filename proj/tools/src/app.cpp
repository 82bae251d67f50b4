#include "triwave/cli/app.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "triwave/cli/checkpoint.hpp"
#include "triwave/cli/emit.hpp"
#include "triwave/defaults.hpp"
#include "triwave/diagnostics.hpp"
#include "triwave/error.hpp"
#include "triwave/exact.hpp"

namespace triwave::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Model {
  double p = defaults::kExponent;
  double alpha = defaults::kAlpha;
  double beta = defaults::kBeta;
  std::size_t grid_n = defaults::kPoints;
  double grid_l = defaults::kHalfLength;

  Params params() const {
    Params prm{p, alpha, beta};
    prm.validate();
    return prm;
  }
  Grid grid() const { return Grid(grid_l, grid_n); }
};

void add_model(CLI::App* sub, Model& m) {
  sub->add_option("--p", m.p, "Nonlinearity exponent")->capture_default_str();
  sub->add_option("--alpha", m.alpha, "Three-wave coupling")->capture_default_str();
  sub->add_option("--beta", m.beta, "Self-interaction strength")->capture_default_str();
  sub->add_option("--grid-n", m.grid_n, "Number of grid points (power of two)")->capture_default_str();
  sub->add_option("--grid-l", m.grid_l, "Half length L of the box [-L, L)")->capture_default_str();
}

struct GroundOpts {
  std::optional<double> gamma, mu, s, q1, q2;
  FlowConfig flow;
};

struct EvolveOpts {
  std::string input;
  double dt = defaults::kEvolveDt;
  double t_end = defaults::kEvolveTEnd;
  std::size_t sample_every = defaults::kSampleEvery;
  std::optional<double> blowup;
  bool backward = false;
};

struct StabilityOpts {
  std::string input;
  double scale = 1e-2;
  std::uint64_t seed = defaults::kSeed;
  double dt = defaults::kEvolveDt;
  double t_end = defaults::kStabilityTEnd;
  std::size_t sample_every = defaults::kSampleEvery;
};

struct DiagnoseOpts {
  std::string suite;
  std::string input;
  std::size_t count = 100;
  std::uint64_t seed = defaults::kSeed;
  FlowConfig flow;
};

struct ExactOpts {
  std::string family;
  double omega = 0.5;
};

struct ConvertOpts {
  std::string input, output;
};

struct Context {
  fs::path out_dir = ".";
  std::vector<std::string> argv;
  std::ostream& out;
};

void prepare(const Context& ctx, const std::string& command) {
  std::error_code ec;
  fs::create_directories(ctx.out_dir, ec);
  if (ec) throw OutputError("cannot create output directory " + ctx.out_dir.string() + ": " + ec.message());
  write_meta(ctx.out_dir, command, ctx.argv);
}

void summary(const Context& ctx, json j) { ctx.out << j.dump() << '\n'; }

json drift_summary(const ConservationTrace& c) {
  return {{"energy", c.max_energy_drift()}, {"q1", c.max_q1_drift()}, {"q2", c.max_q2_drift()}};
}

int cmd_groundstate(const Context& ctx, const Model& model, GroundOpts o) {
  const bool per = o.gamma || o.mu || o.s;
  const bool comb = o.q1 || o.q2;
  if (per == comb || (per && !(o.gamma && o.mu && o.s)) || (comb && !(o.q1 && o.q2))) {
    throw ContractViolation("groundstate: give either --gamma --mu --s or --q1 --q2");
  }
  const Params prm = model.params();
  const Grid g = model.grid();
  o.flow.validate();
  prepare(ctx, "groundstate");
  const GroundStateResult* r = nullptr;
  std::optional<JResult> jr;
  std::optional<GroundStateResult> ir;
  json j;
  if (per) {
    ir = minimize_i({*o.gamma, *o.mu, *o.s}, prm, g, o.flow);
    r = &*ir;
    emit_results(*ir, Format::JsonLines, ctx.out_dir / "groundstate.json");
    j = to_json(*ir);
  } else {
    jr = minimize_j({*o.q1, *o.q2}, prm, g, o.flow);
    r = &jr->inner;
    emit_results(*jr, Format::JsonLines, ctx.out_dir / "groundstate.json");
    j = to_json(*jr);
    j.erase("probes");
  }
  emit_results(*r, Format::Csv, ctx.out_dir / "profile.csv");
  write_energy_trace_csv(r->energy_trace, ctx.out_dir / "energy_trace.csv");
  checkpoint_write(r->minimizer, prm, ctx.out_dir / "state.triw");
  summary(ctx, j);
  return kOk;
}

fs::path resolve_input(const Context& ctx, const std::string& input, const char* fallback) {
  if (!input.empty()) return input;
  return ctx.out_dir / fallback;
}

int cmd_evolve(const Context& ctx, const EvolveOpts& o) {
  EvolveConfig cfg{o.dt, o.t_end, o.sample_every, o.blowup, o.backward};
  cfg.validate();
  const Checkpoint ck = checkpoint_read(resolve_input(ctx, o.input, "state.triw"));
  prepare(ctx, "evolve");
  const EvolveResult r = evolve(ck.field, cfg, ck.params);
  emit_results(r.conservation, Format::Csv, ctx.out_dir / "conservation.csv");
  checkpoint_write(r.state, ck.params, ctx.out_dir / "final.triw");
  json j{{"steps", r.steps},
         {"max_drift", drift_summary(r.conservation)},
         {"blowup",
          {{"detected", r.blowup.detected},
           {"t_detect", r.blowup.t_detect ? json(*r.blowup.t_detect) : json(nullptr)},
           {"gradient_norm_at_detect", r.blowup.gradient_norm_at_detect}}}};
  write_text(ctx.out_dir / "evolve.json", j.dump() + '\n');
  summary(ctx, j);
  return kOk;
}

int cmd_stability(const Context& ctx, const StabilityOpts& o) {
  EvolveConfig cfg{o.dt, o.t_end, o.sample_every, std::nullopt, false};
  cfg.validate();
  if (!(o.scale >= 0.0)) throw ContractViolation("stability: --scale must be >= 0");
  const Checkpoint ck = checkpoint_read(resolve_input(ctx, o.input, "state.triw"));
  prepare(ctx, "stability");
  const GroundStateResult ground = assess(ck.field, ck.params);
  const StabilityReport rep = stability_experiment(ground, o.scale, o.seed, cfg, ck.params);
  emit_results(rep, Format::Csv, ctx.out_dir / "stability.csv");
  json j{{"initial_distance", rep.initial_distance},
         {"max_distance", rep.max_distance},
         {"ratio", rep.initial_distance > 0.0 ? json(rep.max_distance / rep.initial_distance) : json(nullptr)},
         {"samples", rep.times.size()},
         {"max_drift", drift_summary(rep.conservation)}};
  write_text(ctx.out_dir / "stability.json", j.dump() + '\n');
  summary(ctx, j);
  return kOk;
}

std::vector<std::pair<MassTriple, MassTriple>> default_splits() {
  return {
      {{0.75, 0.75, 0.75}, {0.75, 0.75, 0.75}},
      {{0.5, 1.0, 0.5}, {1.0, 0.5, 1.0}},
      {{1.0, 1.0, 0.25}, {0.5, 0.5, 0.25}},
      {{0.25, 0.5, 0.75}, {0.75, 0.5, 0.25}},
      {{1.5, 0.5, 1.0}, {0.5, 1.5, 1.0}},
      {{0.2, 0.2, 0.2}, {1.0, 1.0, 1.0}},
  };
}

int cmd_diagnose(const Context& ctx, const Model& model, const DiagnoseOpts& o) {
  const Params prm = model.params();
  if (o.suite == "rearrangement") {
    const Grid g = model.grid();
    prepare(ctx, "diagnose");
    std::string csv = "index,e_rearranged,e_modulus,e_original,ok,max_norm_error\n";
    std::size_t violations = 0;
    double worst_norm = 0.0;
    for (std::size_t i = 0; i < o.count; ++i) {
      const TriField v = random_test_field(g, o.seed + i);
      const EnergyTriple e = rearrangement_energy_check(v, prm);
      const TriField star = rearranged_modulus(v);
      double norm_err = 0.0;
      for (std::size_t c = 0; c < 3; ++c) {
        for (double q : {1.0, 2.0, 3.0, 4.0, 6.0}) {
          const double a = lq_norm_pow(v[c], q, g), b = lq_norm_pow(star[c], q, g);
          norm_err = std::max(norm_err, std::abs(a - b) / std::max(a, 1e-300));
        }
      }
      const bool ok = e.rearranged <= e.modulus + 1e-10 && e.modulus <= e.original + 1e-10;
      violations += ok ? 0 : 1;
      worst_norm = std::max(worst_norm, norm_err);
      csv += std::to_string(i) + ',' + format_double(e.rearranged) + ',' + format_double(e.modulus) + ',' +
             format_double(e.original) + ',' + (ok ? "1" : "0") + ',' + format_double(norm_err) + '\n';
    }
    write_text(ctx.out_dir / "rearrangement.csv", csv);
    json j{{"suite", "rearrangement"}, {"count", o.count}, {"violations", violations}, {"max_norm_error", worst_norm}};
    write_text(ctx.out_dir / "diagnose.json", j.dump() + '\n');
    summary(ctx, j);
    return kOk;
  }
  if (o.suite == "concentration") {
    std::optional<TriField> v;
    if (!o.input.empty()) {
      v = checkpoint_read(o.input).field;
    } else {
      const Grid g = model.grid();
      const ComplexField psi = psi_omega({0.5, prm.p, prm.beta, prm.alpha}, g);
      v = TriField(g, psi, psi, psi);
    }
    prepare(ctx, "diagnose");
    std::vector<double> radii;
    const double l = v->grid().half_length();
    for (int i = 1; i <= 64; ++i) radii.push_back(l * i / 64.0);
    const ConcentrationProfile c = concentration_function(*v, radii);
    emit_results(c, Format::Csv, ctx.out_dir / "concentration.csv");
    json j{{"suite", "concentration"}, {"total_mass", c.total_mass}, {"lambda", c.lambda()}};
    write_text(ctx.out_dir / "diagnose.json", j.dump() + '\n');
    summary(ctx, j);
    return kOk;
  }
  if (o.suite == "subadditivity") {
    const Grid g = model.grid();
    o.flow.validate();
    prepare(ctx, "diagnose");
    const auto rows = subadditivity_scan(default_splits(), prm, g, o.flow);
    emit_results(rows, Format::Csv, ctx.out_dir / "subadditivity.csv");
    std::size_t violations = 0;
    double min_margin = INFINITY;
    for (const auto& r : rows) {
      violations += r.strict ? 0 : 1;
      min_margin = std::min(min_margin, r.margin);
    }
    json j{{"suite", "subadditivity"}, {"rows", rows.size()}, {"violations", violations},
           {"min_margin", std::isfinite(min_margin) ? json(min_margin) : json(nullptr)}};
    write_text(ctx.out_dir / "diagnose.json", j.dump() + '\n');
    summary(ctx, j);
    return kOk;
  }
  throw ContractViolation("diagnose: --suite must be rearrangement, concentration or subadditivity");
}

int cmd_exact(const Context& ctx, const Model& model, const ExactOpts& o) {
  const Grid g = model.grid();
  const SolitonSpec spec{o.omega, model.p, model.beta, model.alpha};
  if (!(o.omega > 0.0)) throw ContractViolation("exact: --omega must be > 0");
  Params prm{model.p, model.alpha, model.beta};
  json j{{"family", o.family}, {"omega", o.omega}};
  std::optional<TriField> v;
  if (o.family == "psi") {
    prm.validate();
    const ComplexField psi = psi_omega(spec, g);
    v = TriField(g, psi, psi, psi);
    j["mass"] = gamma_of_omega(o.omega, model.alpha, model.beta);
  } else if (o.family == "phi") {
    prm.validate(true);
    const ComplexField phi = phi_omega(spec, g);
    v = TriField(g, phi, ComplexField(g.points()), ComplexField(g.points()));
    j["mass"] = phi_mass(spec);
  } else {
    throw ContractViolation("exact: --family must be phi or psi");
  }
  prepare(ctx, "exact");
  double peak = 0.0;
  for (const auto& z : (*v)[0]) peak = std::max(peak, std::abs(z));
  j["peak"] = peak;
  j["energy"] = energy(*v, prm);
  write_profile_csv(*v, prm, ctx.out_dir / "exact.csv");
  write_text(ctx.out_dir / "exact.json", j.dump() + '\n');
  summary(ctx, j);
  return kOk;
}

int cmd_convert(const Context& ctx, const ConvertOpts& o) {
  std::ifstream probe(o.input, std::ios::binary);
  if (!probe) throw ContractViolation("convert: cannot open --input " + o.input);
  char magic[4] = {};
  probe.read(magic, 4);
  const bool binary = probe.gcount() == 4 && std::string(magic, 4) == "TRIW";
  probe.close();
  json j{{"input", o.input}, {"output", o.output}};
  if (binary) {
    const Checkpoint ck = checkpoint_read(o.input);
    write_profile_csv(ck.field, ck.params, o.output);
    j["direction"] = "checkpoint->csv";
  } else {
    const auto [field, prm] = read_profile_csv(o.input);
    checkpoint_write(field, prm, o.output);
    j["direction"] = "csv->checkpoint";
  }
  summary(ctx, j);
  return kOk;
}

void add_flow(CLI::App* sub, FlowConfig& f) {
  sub->add_option("--seed", f.seed, "Seed of the first restart")->capture_default_str();
  sub->add_option("--restarts", f.restarts, "Number of seeded restarts")->capture_default_str();
  sub->add_option("--flow-dt", f.time_step, "Fictitious time step of the flow")->capture_default_str();
  sub->add_option("--flow-shift", f.shift, "Stabilizing shift of the flow")->capture_default_str();
  sub->add_option("--max-iters", f.max_iters, "Iteration cap per run")->capture_default_str();
  sub->add_option("--grad-tol", f.grad_tol, "Constrained gradient tolerance")->capture_default_str();
  sub->add_option("--energy-tol", f.energy_tol, "Energy stall tolerance")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Ground states and dynamics of a three-wave NLS system", "triwave");
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx{".", args, out};
  std::string out_dir = ".";
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();

  Model model;
  GroundOpts ground;
  EvolveOpts ev;
  StabilityOpts st;
  DiagnoseOpts dg;
  ExactOpts ex;
  ConvertOpts cv;

  auto* g = app.add_subcommand("groundstate", "Minimize the energy at fixed masses (I) or fixed Q1, Q2 (J)");
  add_model(g, model);
  add_flow(g, ground.flow);
  auto* og = g->add_option("--gamma", ground.gamma, "Target mass of u1");
  auto* om = g->add_option("--mu", ground.mu, "Target mass of u2");
  auto* os = g->add_option("--s", ground.s, "Target mass of u3");
  auto* oq1 = g->add_option("--q1", ground.q1, "Target Q1 = |u1|^2 + |u3|^2");
  auto* oq2 = g->add_option("--q2", ground.q2, "Target Q2 = |u2|^2 + |u3|^2");
  for (auto* a : {og, om, os})
    for (auto* b : {oq1, oq2}) a->excludes(b);

  auto* e = app.add_subcommand("evolve", "Integrate the system from a checkpoint");
  e->add_option("--input", ev.input, "Checkpoint to start from (default <out>/state.triw)");
  e->add_option("--dt", ev.dt, "Time step")->capture_default_str();
  e->add_option("--t-end", ev.t_end, "Final time")->capture_default_str();
  e->add_option("--sample-every", ev.sample_every, "Steps between samples")->capture_default_str();
  e->add_option("--blowup-threshold", ev.blowup, "Absolute gradient-norm threshold");
  e->add_flag("--backward", ev.backward, "Integrate backward in time");

  auto* s = app.add_subcommand("stability", "Perturb a ground state and track its orbital distance");
  s->add_option("--input", st.input, "Ground-state checkpoint (default <out>/state.triw)");
  s->add_option("--scale", st.scale, "Perturbation size relative to the H1 norm")->capture_default_str();
  s->add_option("--seed", st.seed, "Noise seed")->capture_default_str();
  s->add_option("--dt", st.dt, "Time step")->capture_default_str();
  s->add_option("--t-end", st.t_end, "Final time")->capture_default_str();
  s->add_option("--sample-every", st.sample_every, "Steps between samples")->capture_default_str();

  auto* d = app.add_subcommand("diagnose", "Variational property checks");
  d->add_option("--suite", dg.suite, "rearrangement | concentration | subadditivity")
      ->required()
      ->check(CLI::IsMember({"rearrangement", "concentration", "subadditivity"}));
  d->add_option("--input", dg.input, "Checkpoint for the concentration suite");
  d->add_option("--count", dg.count, "Random fields for the rearrangement suite")->capture_default_str();
  add_model(d, model);
  add_flow(d, dg.flow);

  auto* x = app.add_subcommand("exact", "Closed-form profiles");
  x->add_option("--family", ex.family, "phi | psi")->required()->check(CLI::IsMember({"phi", "psi"}));
  x->add_option("--omega", ex.omega, "Frequency")->capture_default_str();
  add_model(x, model);

  auto* c = app.add_subcommand("convert", "Checkpoint <-> profile CSV");
  c->add_option("--input", cv.input, "Source file")->required();
  c->add_option("--output", cv.output, "Destination file")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& pe) {
    err << "error: " << pe.what() << "\n\n" << app.help();
    return kUsage;
  }
  ctx.out_dir = out_dir;
  dg.seed = dg.flow.seed;

  try {
    if (*g) return cmd_groundstate(ctx, model, ground);
    if (*e) return cmd_evolve(ctx, ev);
    if (*s) return cmd_stability(ctx, st);
    if (*d) return cmd_diagnose(ctx, model, dg);
    if (*x) return cmd_exact(ctx, model, ex);
    if (*c) return cmd_convert(ctx, cv);
  } catch (const NumericalFailure& ex2) {
    err << "numerical failure: " << ex2.what() << '\n';
    return kNumerical;
  } catch (const std::exception& ex2) {
    err << "error: " << ex2.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace triwave::cli
