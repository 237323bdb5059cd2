// gencop -- estimate Archimedean copula generators from censored pairs,
// compare candidate families, simulate from the fitted dependence
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "CLI11.hpp"
#include "gencop/dataset.hpp"
#include "gencop/errors.hpp"
#include "gencop/io_json.hpp"
#include "gencop/pipeline.hpp"
#include "gencop/sampler.hpp"
#include "gencop/selector.hpp"
#include "gencop/synth.hpp"

namespace {

using namespace gencop;

struct FitArgs {
    std::string input, schema, mode = "nonparam", condition;
    bool covariates = false, cv = false;
    double nu0 = 0.5, epsilon = 1e-10, w = 0.5, h1 = 0.0, h2 = 0.0;
    std::size_t grid = 1001;
};

void add_fit_options(CLI::App* cmd, FitArgs& a) {
    cmd->add_option("--input", a.input, "input CSV (y1,y2,delta1,delta2 + covariates)")
        ->required();
    cmd->add_option("--schema", a.schema, "column mapping, e.g. y1=t1,delta1=s1,covariates=age");
    cmd->add_option("--mode", a.mode, "nonparam (default) or param");
    cmd->add_flag("--covariates", a.covariates, "parametric mixture over the covariate column");
    cmd->add_option("--condition", a.condition, "row filter NAME=V, NAME<=V or NAME>V");
    cmd->add_option("--nu0", a.nu0, "generator anchor point (default 0.5)");
    cmd->add_option("--epsilon", a.epsilon, "denominator floor for the generator integral");
    cmd->add_option("--grid", a.grid, "grid size (default 1001)");
    cmd->add_option("--w", a.w, "direction weight of the joint estimate (default 0.5)");
    cmd->add_option("--h1", a.h1, "bandwidth on the first margin (0 = default rule)");
    cmd->add_option("--h2", a.h2, "bandwidth on the second margin (0 = default rule)");
    cmd->add_flag("--cv", a.cv, "pick bandwidths by cross-validation");
}

PipelineResult fit_from_args(const FitArgs& a) {
    Schema schema = a.schema.empty() ? Schema{} : parse_schema(a.schema);
    Dataset ds = load_csv(a.input, schema);
    PipelineOptions opt;
    opt.mode = fit_mode_from_name(a.mode);
    opt.use_covariates = a.covariates;
    opt.condition = a.condition;
    opt.nu0 = a.nu0;
    opt.epsilon = a.epsilon;
    opt.grid = a.grid;
    opt.w = a.w;
    opt.h1 = a.h1;
    opt.h2 = a.h2;
    opt.cv_bandwidth = a.cv;
    return run_pipeline(ds, opt);
}

Family family_arg(const std::string& family, double alpha, double tau, bool tau_set,
                  double& alpha_out) {
    Family f = family_from_name(family);
    alpha_out = tau_set ? tau_to_alpha(f, tau) : alpha;
    return f;
}

void write_pairs_csv(const std::string& path, const std::vector<double>& u1,
                     const std::vector<double>& u2) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write '" + path + "'");
    out << "u1,u2\n";
    out.precision(17);
    for (std::size_t i = 0; i < u1.size(); ++i) out << u1[i] << ',' << u2[i] << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"Archimedean copula generators from bivariate censored data"};
    app.require_subcommand(1);

    FitArgs fit_a, tau_a, sel_a, curves_a;
    std::string out_dir = ".";

    auto* fit = app.add_subcommand("fit", "estimate the generator, write curves + JSON bundle");
    add_fit_options(fit, fit_a);
    fit->add_option("--out-dir", out_dir, "output directory (default .)");

    auto* tau = app.add_subcommand("tau", "print Kendall's tau of the fitted dependence");
    add_fit_options(tau, tau_a);

    auto* sel = app.add_subcommand("select", "pseudo p-values for the candidate families");
    add_fit_options(sel, sel_a);
    std::size_t J = 1000, sel_n = 0;
    double xi = 0.02;
    std::uint64_t seed = 1;
    std::string sel_out;
    sel->add_option("--J", J, "number of replicates (default 1000)");
    sel->add_option("--n", sel_n, "replicate sample size (default: dataset rows)");
    sel->add_option("--xi", xi, "lower cutoff of the L2 distance (default 0.02)");
    sel->add_option("--seed", seed, "master seed (default 1)");
    sel->add_option("--out-dir", sel_out, "also write selection.json/.txt there");

    auto* sim = app.add_subcommand("simulate", "draw pairs from a fitted or closed-form copula");
    FitArgs sim_a;
    std::string sim_input, sim_family, sim_out = "pairs.csv";
    double sim_alpha = 0.0, sim_tau = 0.0;
    std::size_t sim_n = 1000;
    std::uint64_t sim_seed = 1;
    sim->add_option("--input", sim_a.input, "fit this CSV and sample from the generator");
    sim->add_option("--schema", sim_a.schema, "column mapping for --input");
    sim->add_option("--mode", sim_a.mode, "fit mode for --input");
    sim->add_flag("--covariates", sim_a.covariates, "parametric covariate mixture for --input");
    sim->add_option("--condition", sim_a.condition, "row filter for --input");
    sim->add_option("--family", sim_family, "closed-form family: clayton/frank/gumbel/joe");
    auto* sim_alpha_opt = sim->add_option("--alpha", sim_alpha, "family parameter");
    auto* sim_tau_opt = sim->add_option("--tau", sim_tau, "family parameter via Kendall's tau");
    sim->add_option("--n", sim_n, "number of pairs (default 1000)");
    sim->add_option("--seed", sim_seed, "seed (default 1)");
    sim->add_option("--out", sim_out, "output CSV (default pairs.csv)");

    auto* synth = app.add_subcommand("synth", "generate a synthetic censored dataset");
    std::string sy_family = "clayton", sy_out = "synth.csv";
    std::vector<std::string> sy_levels;
    double sy_alpha = 0.0, sy_tau = 0.0, sy_cens = 0.0;
    double sy_scale1 = 10.0, sy_shape1 = 1.5, sy_scale2 = 10.0, sy_shape2 = 1.5;
    double sy_beta1 = 0.0, sy_beta2 = 0.0;
    std::size_t sy_n = 1000;
    std::uint64_t sy_seed = 1;
    synth->add_option("--family", sy_family, "copula family (default clayton)");
    auto* sy_alpha_opt = synth->add_option("--alpha", sy_alpha, "family parameter");
    auto* sy_tau_opt = synth->add_option("--tau", sy_tau, "family parameter via Kendall's tau");
    synth->add_option("--n", sy_n, "records (single-level; default 1000)");
    synth->add_option("--level", sy_levels,
                      "covariate level LABEL:ALPHA:N, repeatable (overrides --alpha/--n)");
    synth->add_option("--censor-scale", sy_cens, "exponential censoring scale (0 = none)");
    synth->add_option("--scale1", sy_scale1, "Weibull scale, margin 1 (default 10)");
    synth->add_option("--shape1", sy_shape1, "Weibull shape, margin 1 (default 1.5)");
    synth->add_option("--scale2", sy_scale2, "Weibull scale, margin 2 (default 10)");
    synth->add_option("--shape2", sy_shape2, "Weibull shape, margin 2 (default 1.5)");
    synth->add_option("--beta1", sy_beta1, "log-scale covariate effect, margin 1");
    synth->add_option("--beta2", sy_beta2, "log-scale covariate effect, margin 2");
    synth->add_option("--seed", sy_seed, "seed (default 1)");
    synth->add_option("--out", sy_out, "output CSV (default synth.csv)");

    auto* curves = app.add_subcommand("curves", "write Kendall/lambda curve CSVs");
    std::string cu_family, cu_dir = ".";
    double cu_alpha = 0.0, cu_tau = 0.0;
    std::size_t cu_grid = 1001;
    curves->add_option("--input", curves_a.input, "fit this CSV and write its curves");
    curves->add_option("--schema", curves_a.schema, "column mapping for --input");
    curves->add_option("--mode", curves_a.mode, "fit mode for --input");
    curves->add_flag("--covariates", curves_a.covariates, "parametric covariate mixture");
    curves->add_option("--condition", curves_a.condition, "row filter for --input");
    curves->add_option("--family", cu_family, "closed-form family instead of --input");
    auto* cu_alpha_opt = curves->add_option("--alpha", cu_alpha, "family parameter");
    auto* cu_tau_opt = curves->add_option("--tau", cu_tau, "family parameter via tau");
    curves->add_option("--grid", cu_grid, "grid size (default 1001)");
    curves->add_option("--out-dir", cu_dir, "output directory (default .)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version leave 0; bad usage is a validation failure
    }

    namespace fs = std::filesystem;
    if (fit->parsed()) {
        PipelineResult r = fit_from_args(fit_a);
        fs::create_directories(out_dir);
        write_curve_csv((fs::path(out_dir) / "K.csv").string(), r.K, "K");
        write_curve_csv((fs::path(out_dir) / "lambda.csv").string(), r.lambda(), "lambda");
        Curve lp{r.K.nu, r.log_phi};
        write_curve_csv((fs::path(out_dir) / "log_phi.csv").string(), lp, "log_phi");
        write_text_file((fs::path(out_dir) / "fit.json").string(), pipeline_to_json(r));
        std::printf("tau=%.6f mode=%s rows=%zu/%zu -> %s\n", r.tau, fit_mode_name(r.mode),
                    r.diag.stratum_rows, r.diag.n_rows, out_dir.c_str());
    } else if (tau->parsed()) {
        PipelineResult r = fit_from_args(tau_a);
        std::printf("{\"tau\": %.17g, \"mode\": \"%s\", \"condition\": %s}\n", r.tau,
                    fit_mode_name(r.mode),
                    r.condition.empty() ? "null" : ("\"" + r.condition + "\"").c_str());
    } else if (sel->parsed()) {
        PipelineResult r = fit_from_args(sel_a);
        if (sel_n == 0) sel_n = r.diag.stratum_rows;
        SelectionReport rep = select_family(r.K, J, sel_n, xi, seed);
        std::fputs(selection_table(rep).c_str(), stdout);
        if (!sel_out.empty()) {
            fs::create_directories(sel_out);
            write_text_file((fs::path(sel_out) / "selection.json").string(),
                            selection_to_json(rep));
            write_text_file((fs::path(sel_out) / "selection.txt").string(),
                            selection_table(rep));
        }
    } else if (sim->parsed()) {
        std::vector<double> u1, u2;
        if (!sim_a.input.empty()) {
            PipelineResult r = fit_from_args(sim_a);
            GeneratorFit gen = fit_generator(r.K);
            RngStream rng(sim_seed);
            sample_from_generator(gen, sim_n, rng, u1, u2);
        } else if (!sim_family.empty()) {
            double alpha;
            Family f = family_arg(sim_family, sim_alpha, sim_tau, sim_tau_opt->count() > 0, alpha);
            if (sim_alpha_opt->count() == 0 && sim_tau_opt->count() == 0)
                throw validation_error("simulate --family needs --alpha or --tau");
            RngStream rng(sim_seed);
            mo_sample(f, alpha, sim_n, rng, u1, u2);
        } else {
            throw validation_error("simulate needs --input or --family");
        }
        write_pairs_csv(sim_out, u1, u2);
        std::printf("wrote %zu pairs -> %s\n", u1.size(), sim_out.c_str());
    } else if (synth->parsed()) {
        SynthConfig cfg;
        cfg.family = family_from_name(sy_family);
        cfg.scale1 = sy_scale1; cfg.shape1 = sy_shape1;
        cfg.scale2 = sy_scale2; cfg.shape2 = sy_shape2;
        cfg.beta1 = sy_beta1; cfg.beta2 = sy_beta2;
        cfg.censor_scale = sy_cens;
        cfg.seed = sy_seed;
        if (!sy_levels.empty()) {
            for (const auto& spec : sy_levels) {
                auto c1 = spec.find(':');
                auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
                if (c1 == std::string::npos || c2 == std::string::npos)
                    throw validation_error("bad --level '" + spec + "' (expected LABEL:ALPHA:N)");
                SynthLevel lev;
                lev.label = spec.substr(0, c1);
                lev.alpha = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
                lev.n = static_cast<std::size_t>(std::stoul(spec.substr(c2 + 1)));
                cfg.levels.push_back(lev);
            }
        } else {
            double alpha;
            family_arg(sy_family, sy_alpha, sy_tau, sy_tau_opt->count() > 0, alpha);
            if (sy_alpha_opt->count() == 0 && sy_tau_opt->count() == 0)
                throw validation_error("synth needs --alpha, --tau or --level entries");
            cfg.levels.push_back(SynthLevel{"0", alpha, sy_n});
        }
        Dataset ds = synth_generate(cfg);
        write_csv(sy_out, ds);
        std::printf("wrote %zu records -> %s\n", ds.n(), sy_out.c_str());
    } else if (curves->parsed()) {
        fs::create_directories(cu_dir);
        if (!curves_a.input.empty()) {
            curves_a.grid = cu_grid;
            PipelineResult r = fit_from_args(curves_a);
            write_curve_csv((fs::path(cu_dir) / "K.csv").string(), r.K, "K");
            write_curve_csv((fs::path(cu_dir) / "lambda.csv").string(), r.lambda(), "lambda");
        } else if (!cu_family.empty()) {
            double alpha;
            Family f = family_arg(cu_family, cu_alpha, cu_tau, cu_tau_opt->count() > 0, alpha);
            if (cu_alpha_opt->count() == 0 && cu_tau_opt->count() == 0)
                throw validation_error("curves --family needs --alpha or --tau");
            Curve K;
            K.nu = uniform_grid(static_cast<int>(cu_grid));
            K.val = kendall_K_grid(f, K.nu, alpha);
            write_curve_csv((fs::path(cu_dir) / "K.csv").string(), K, "K");
            Curve lam{K.nu, {}};
            lam.val.resize(K.size());
            for (std::size_t i = 0; i < K.size(); ++i) lam.val[i] = K.nu[i] - K.val[i];
            write_curve_csv((fs::path(cu_dir) / "lambda.csv").string(), lam, "lambda");
        } else {
            throw validation_error("curves needs --input or --family");
        }
        std::printf("curves -> %s\n", cu_dir.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const gencop::validation_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const gencop::numeric_error& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
