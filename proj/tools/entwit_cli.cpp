// Command-line front end: build states and witnesses, certify measured
// values against loophole thresholds, run click simulations, and emit the
// threshold-surface / bound-entanglement tables as CSV.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "entwit/entwit.hpp"

namespace {

using namespace entwit;

struct RunConfig {
    std::uint64_t seed = 1;
    Tolerances tol;
    SConvention convention = SConvention::Schmidt;
    std::string out_path;
    std::string format = "csv";
};

std::string fd(double v) { return format_double(v); }

// Writes to the --out file when given, otherwise to stdout.
class OutputTarget {
  public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::ios_base::failure("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

Ket qutrit_phi() {
    const cplx r(1.0 / std::sqrt(3.0));
    return Ket::create({3, 3}, {r, 0, 0, 0, r, 0, 0, 0, r});
}

Ket qutrit_psi() {
    return Ket::create({3, 3}, {0, 0.5, 0, 0.5, 0, 0.5, 0, 0.5, 0});
}

BellState parse_bell(const std::string& which) {
    if (which == "phi+") return BellState::PhiPlus;
    if (which == "phi-") return BellState::PhiMinus;
    if (which == "psi+") return BellState::PsiPlus;
    if (which == "psi-") return BellState::PsiMinus;
    throw std::invalid_argument("unknown Bell state '" + which +
                                "' (expected phi+, phi-, psi+ or psi-)");
}

struct WitnessBundle {
    LinearWitness linear;
    NonlinearWitness nonlinear;
};

WitnessBundle build_witness(const std::string& name) {
    if (name == "phi+") {
        LinearWitness w = witness_from_ppt(bell(BellState::PhiPlus));
        return {w, nonlinear_extend(w, bell(BellState::PhiPlus), bell(BellState::PhiMinus))};
    }
    if (name == "bound") {
        LinearWitness w = witness_from_map(choi_map(), qutrit_phi());
        return {w, nonlinear_extend(w, qutrit_phi(), qutrit_psi())};
    }
    throw std::invalid_argument("unknown witness '" + name +
                                "' (expected phi+ or bound)");
}

DensityMatrix load_state_file(const std::string& path, const Tolerances& tol) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open state file: " + path);
    json doc;
    in >> doc;
    return density_from_json(doc, tol);
}

struct StateArgs {
    std::string kind;
    std::string which = "phi+";
    double p = 0.0;
    double a = 0.0;
    std::string path;
};

DensityMatrix build_state(const StateArgs& args, const Tolerances& tol) {
    if (args.kind == "bell") {
        const Ket k = bell(parse_bell(args.which));
        return DensityMatrix::create(k.dims, k.projector(), tol);
    }
    if (args.kind == "werner") return werner(args.p, tol);
    if (args.kind == "rho-b") return rho_b(args.a, tol);
    if (args.kind == "file") return load_state_file(args.path, tol);
    throw std::invalid_argument("unknown state kind '" + args.kind +
                                "' (expected bell, werner, rho-b or file)");
}

CMatrix parse_observable(const std::string& spec) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos || spec.size() < 4)
        throw std::invalid_argument(
            "observable spec must look like s1,s1 (Pauli) or l1,l8 (Gell-Mann)");
    auto parse_one = [](const std::string& tok) -> CMatrix {
        if (tok.size() < 2) throw std::invalid_argument("bad observable token: " + tok);
        const int idx = std::stoi(tok.substr(1));
        if (tok[0] == 's') {
            if (idx < 0 || idx > 3)
                throw std::invalid_argument("Pauli index out of range: " + tok);
            return OperatorBasis::pauli().elements[idx];
        }
        if (tok[0] == 'l') {
            if (idx < 0 || idx > 8)
                throw std::invalid_argument("Gell-Mann index out of range: " + tok);
            return OperatorBasis::gell_mann().elements[idx];
        }
        throw std::invalid_argument("bad observable token: " + tok);
    };
    return kron(parse_one(spec.substr(0, comma)), parse_one(spec.substr(comma + 1)));
}

void report_state(const RunConfig& cfg, const DensityMatrix& rho) {
    std::cout << "dims: " << rho.dims.a << " x " << rho.dims.b << "\n";
    std::cout << "trace: " << fd(rho.matrix.trace().real()) << "\n";
    std::cout << "min eigenvalue: " << fd(min_eigenvalue(rho.matrix, cfg.tol)) << "\n";
    std::cout << "ppt min eigenvalue: " << fd(ppt_min_eigenvalue(rho, cfg.tol)) << "\n";
    if (rho.dims.a == 3 && rho.dims.b == 3)
        std::cout << "map-extended min eigenvalue: "
                  << fd(min_eigenvalue(apply_extended(choi_map(), rho), cfg.tol)) << "\n";

    if (!cfg.out_path.empty() || cfg.format == "json") {
        OutputTarget out(cfg.out_path);
        json doc = density_to_json(rho);
        doc["meta"] = {{"version", kVersion},
                       {"constant_convention", to_string(cfg.convention)}};
        out.stream() << doc.dump(2) << "\n";
    }
}

int cmd_state(const RunConfig& cfg, const StateArgs& args) {
    report_state(cfg, build_state(args, cfg.tol));
    return 0;
}

int cmd_certify(const RunConfig& cfg, const std::string& witness_name,
                const MeasuredTriple& triple, double eta, const std::string& mode_name,
                double guard) {
    const auto det = DetectorModel::with_efficiency(eta);
    const CertifyMode mode =
        mode_name == "nonlinear" ? CertifyMode::Nonlinear : CertifyMode::Linear;
    const WitnessBundle bundle = build_witness(witness_name);
    const WitnessConstants c = constants_of(bundle.nonlinear, cfg.convention);
    const CertifyResult res = certify(triple, c, det, mode, guard);

    if (cfg.format == "json") {
        json doc{{"verdict", to_string(res.verdict)},
                 {"threshold", res.threshold},
                 {"margin", res.margin},
                 {"mode", to_string(mode)},
                 {"constants",
                  {{"c00", c.c00}, {"s", c.s}, {"c0h", c.c0h}, {"c0a", c.c0a}}},
                 {"constant_convention", to_string(cfg.convention)},
                 {"eta_minus", eta},
                 {"measured", {{"w_m", triple.w_m}, {"h_m", triple.h_m}, {"a_m", triple.a_m}}},
                 {"meta", {{"version", kVersion}}}};
        OutputTarget out(cfg.out_path);
        out.stream() << doc.dump(2) << "\n";
    } else {
        std::cout << "witness: " << witness_name << "  mode: " << to_string(mode)
                  << "  convention: " << to_string(cfg.convention) << "\n";
        std::cout << "constants: c00=" << fd(c.c00) << " s=" << fd(c.s)
                  << " c0h=" << fd(c.c0h) << " c0a=" << fd(c.c0a) << "\n";
        std::cout << "eta_minus: " << fd(eta) << "\n";
        std::cout << "measured: w_m=" << fd(triple.w_m) << " h_m=" << fd(triple.h_m)
                  << " a_m=" << fd(triple.a_m) << "\n";
        std::cout << "threshold: " << fd(res.threshold) << "\n";
        std::cout << "margin: " << fd(res.margin) << "\n";
        std::cout << "verdict: " << to_string(res.verdict) << "\n";
    }
    return 0;
}

int cmd_surface(const RunConfig& cfg, int figure, const GridRange& eta_range,
                const GridRange& xnl_range, const std::string& mode_name) {
    const CertifyMode mode =
        mode_name == "linear" ? CertifyMode::Linear : CertifyMode::Nonlinear;
    const WitnessBundle bundle = build_witness(figure == 1 ? "phi+" : "bound");
    const WitnessConstants c = constants_of(bundle.nonlinear, cfg.convention);
    const auto rows = surface_grid(c, eta_range, xnl_range, mode);

    OutputTarget out(cfg.out_path);
    if (cfg.format == "json") {
        json jrows = json::array();
        for (const auto& r : rows)
            jrows.push_back({{"eta_minus", r.eta_minus},
                             {"x_nl", r.x_nl},
                             {"boundary_w_m", r.boundary_w_m}});
        json doc{{"meta",
                  {{"version", kVersion},
                   {"figure", figure},
                   {"mode", to_string(mode)},
                   {"constant_convention", to_string(cfg.convention)},
                   {"c00", c.c00},
                   {"s", c.s}}},
                 {"rows", jrows}};
        out.stream() << doc.dump(2) << "\n";
    } else {
        write_csv_metadata(out.stream(), to_string(cfg.convention), cfg.tol, cfg.seed);
        out.stream() << "# figure: " << figure << "  c00: " << fd(c.c00)
                     << "  s: " << fd(c.s) << "\n";
        write_surface_csv(out.stream(), rows, mode, to_string(cfg.convention));
    }
    return 0;
}

int cmd_simulate(const RunConfig& cfg, const StateArgs& state_args,
                 const std::string& obs_spec, const std::string& obs_file,
                 std::int64_t shots, double eta, const std::string& loss_name) {
    const auto det = DetectorModel::with_efficiency(eta);
    const LossModel model =
        loss_name == "bernoulli" ? LossModel::Bernoulli : LossModel::EqualCount;
    const DensityMatrix rho = build_state(state_args, cfg.tol);
    CMatrix obs;
    if (!obs_file.empty()) {
        std::ifstream in(obs_file);
        if (!in) throw std::ios_base::failure("cannot open observable file: " + obs_file);
        json doc;
        in >> doc;
        obs = matrix_from_json(doc);
    } else {
        obs = parse_observable(obs_spec);
    }

    const SimulationResult sim =
        simulate_clicks(rho, obs, shots, det, cfg.seed, model, cfg.tol);
    const double true_mean = real_expectation(obs, rho, cfg.tol);
    // under Bernoulli losses the mean is unbiased; the 1/eta scaling is the
    // equal-count identity
    const double predicted = model == LossModel::EqualCount
                                 ? measured_from_true(true_mean, 0.0, det)
                                 : true_mean;
    const double se = measured_standard_error(sim.record);
    const double z = se > 0.0 ? (sim.measured_mean - predicted) / se : 0.0;

    if (cfg.format == "json") {
        json doc{{"record", click_record_to_json(sim.record)},
                 {"measured_mean", sim.measured_mean},
                 {"true_mean", true_mean},
                 {"predicted_measured", predicted},
                 {"standard_error", se},
                 {"z_score", z},
                 {"meta", {{"version", kVersion}, {"seed", cfg.seed}}}};
        OutputTarget out(cfg.out_path);
        out.stream() << doc.dump(2) << "\n";
        return 0;
    }

    std::cout << "loss model: "
              << (model == LossModel::EqualCount ? "equal-count" : "bernoulli")
              << "  shots: " << shots << "  seed: " << cfg.seed << "\n";
    std::cout << "outlet  lambda                 true_count  lost\n";
    for (size_t i = 0; i < sim.record.eigenvalues.size(); ++i) {
        std::ostringstream line;
        line << i << "       " << fd(sim.record.eigenvalues[i]);
        std::string s = line.str();
        s.resize(std::max<size_t>(s.size(), 30), ' ');
        std::cout << s << " " << sim.record.true_counts[i] << "  "
                  << sim.record.lost_counts[i] << "\n";
    }
    std::cout << "kept: " << sim.record.kept << " of " << sim.record.shots
              << "  realized eta: " << fd(sim.record.realized_eta) << "\n";
    std::cout << "empirical measured mean: " << fd(sim.measured_mean) << "\n";
    std::cout << "analytic true mean: " << fd(true_mean) << "\n";
    std::cout << "predicted measured mean: " << fd(predicted) << "\n";
    std::cout << "standard error: " << fd(se) << "\n";
    std::cout << "z-score: " << fd(z) << "\n";
    if (!cfg.out_path.empty()) {
        OutputTarget out(cfg.out_path);
        out.stream() << click_record_to_json(sim.record).dump(2) << "\n";
    }
    return 0;
}

int cmd_demo_bound(const RunConfig& cfg, const GridRange& a_range) {
    if (a_range.steps < 1 || a_range.lo < 0.0 || a_range.hi > 5.0 ||
        a_range.lo > a_range.hi)
        throw std::domain_error("demo-bound: a range must lie in [0, 5]");
    const WitnessBundle bundle = build_witness("bound");
    const PositiveMap map = choi_map();
    const double s_conv = bundle.nonlinear.s_for(cfg.convention);

    OutputTarget out(cfg.out_path);
    std::ostream& os = out.stream();
    write_csv_metadata(os, to_string(cfg.convention), cfg.tol, cfg.seed);
    os << "a,ppt_min_eig,map_min_eig,linear_w,nonlinear_f\n";
    for (int k = 0; k < a_range.steps; ++k) {
        const double a = a_range.steps == 1
                             ? a_range.lo
                             : a_range.lo + (a_range.hi - a_range.lo) * k / (a_range.steps - 1);
        const DensityMatrix rho = rho_b(a, cfg.tol);
        const double ppt = ppt_min_eigenvalue(rho, cfg.tol);
        const double map_min = min_eigenvalue(apply_extended(map, rho), cfg.tol);
        const double lin = eval_linear(bundle.linear, rho, cfg.tol);
        const double h = real_expectation(bundle.nonlinear.h, rho, cfg.tol);
        const double aa = real_expectation(bundle.nonlinear.a, rho, cfg.tol);
        const double nl = lin - (h * h + aa * aa) / s_conv;
        os << fd(a) << ',' << fd(ppt) << ',' << fd(map_min) << ',' << fd(lin) << ','
           << fd(nl) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    std::string convention_name = "schmidt";

    CLI::App app{"entanglement witness construction and detection-loophole analysis"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--seed", cfg.seed, "RNG seed");
    app.add_option("--tol", cfg.tol.structural, "structural tolerance");
    app.add_option("--s-convention", convention_name,
                   "quadratic-term constant convention")
        ->check(CLI::IsMember({"schmidt", "paper-figure"}));
    app.add_option("--out", cfg.out_path, "output file (default stdout)");
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    // state
    StateArgs state_args;
    auto* state = app.add_subcommand("state", "construct a state and report its checks");
    state->add_option("kind", state_args.kind, "bell | werner | rho-b | file")
        ->required();
    state->add_option("--which", state_args.which, "Bell state (phi+|phi-|psi+|psi-)");
    state->add_option("--p", state_args.p, "Werner mixing parameter in [0,1]");
    state->add_option("--a", state_args.a, "rho-b family parameter in [0,5]");
    state->add_option("--path", state_args.path, "JSON state file");

    // certify
    std::string witness_name, mode_name = "linear";
    MeasuredTriple triple;
    double eta = 1.0, guard = 0.0;
    auto* certify_cmd =
        app.add_subcommand("certify", "decide entanglement from measured values");
    certify_cmd->add_option("--witness", witness_name, "phi+ | bound")->required();
    certify_cmd->add_option("--wm", triple.w_m, "measured witness value")->required();
    certify_cmd->add_option("--hm", triple.h_m, "measured <H>");
    certify_cmd->add_option("--am", triple.a_m, "measured <A>");
    certify_cmd->add_option("--eta", eta, "lost-event efficiency in (0,1]")->required();
    certify_cmd->add_option("--mode", mode_name, "linear | nonlinear")
        ->check(CLI::IsMember({"linear", "nonlinear"}));
    certify_cmd->add_option("--guard", guard, "guard band subtracted from threshold");

    // surface
    int figure = 1;
    GridRange eta_range{0.2, 1.0, 41};
    GridRange xnl_range{0.0, 1.0, 41};
    std::string surface_mode = "nonlinear";
    auto* surface =
        app.add_subcommand("surface", "emit the loophole-closure boundary surface");
    surface->add_option("--figure", figure, "1 (phi+ witness) | 2 (bound witness)")
        ->required()
        ->check(CLI::IsMember({1, 2}));
    surface->add_option("--eta-lo", eta_range.lo, "eta grid start");
    surface->add_option("--eta-hi", eta_range.hi, "eta grid end");
    surface->add_option("--eta-steps", eta_range.steps, "eta grid points");
    surface->add_option("--xnl-lo", xnl_range.lo, "X_nl grid start");
    surface->add_option("--xnl-hi", xnl_range.hi, "X_nl grid end");
    surface->add_option("--xnl-steps", xnl_range.steps, "X_nl grid points");
    surface->add_option("--mode", surface_mode, "linear | nonlinear")
        ->check(CLI::IsMember({"linear", "nonlinear"}));

    // simulate
    StateArgs sim_state;
    std::string obs_spec = "s3,s3", obs_file, loss_name = "equal-count";
    std::int64_t shots = 1000000;
    double sim_eta = 1.0;
    auto* simulate =
        app.add_subcommand("simulate", "Monte Carlo click simulation of an observable");
    simulate->add_option("--state", sim_state.kind, "bell | werner | rho-b | file")
        ->required();
    simulate->add_option("--which", sim_state.which, "Bell state for --state bell");
    simulate->add_option("--p", sim_state.p, "Werner parameter");
    simulate->add_option("--a", sim_state.a, "rho-b parameter");
    simulate->add_option("--path", sim_state.path, "JSON state file");
    simulate->add_option("--observable", obs_spec, "si,sj (Pauli) or li,lj (Gell-Mann)");
    simulate->add_option("--observable-file", obs_file, "JSON matrix file");
    simulate->add_option("--shots", shots, "number of true events");
    simulate->add_option("--eta", sim_eta, "lost-event efficiency in (0,1]")->required();
    simulate->add_option("--loss-model", loss_name, "equal-count | bernoulli")
        ->check(CLI::IsMember({"equal-count", "bernoulli"}));

    // demo-bound
    GridRange a_range{2.0, 4.5, 11};
    auto* demo = app.add_subcommand(
        "demo-bound", "scan the rho-b family: PPT vs map negativity vs witness values");
    demo->add_option("--a-lo", a_range.lo, "family parameter start");
    demo->add_option("--a-hi", a_range.hi, "family parameter end");
    demo->add_option("--steps", a_range.steps, "grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    cfg.convention =
        convention_name == "paper-figure" ? SConvention::PaperFigure : SConvention::Schmidt;

    try {
        if (state->parsed()) return cmd_state(cfg, state_args);
        if (certify_cmd->parsed())
            return cmd_certify(cfg, witness_name, triple, eta, mode_name, guard);
        if (surface->parsed())
            return cmd_surface(cfg, figure, eta_range, xnl_range, surface_mode);
        if (simulate->parsed())
            return cmd_simulate(cfg, sim_state, obs_spec, obs_file, shots, sim_eta,
                                loss_name);
        if (demo->parsed()) return cmd_demo_bound(cfg, a_range);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 1;
    } catch (const entwit::json::parse_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
