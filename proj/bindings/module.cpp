#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gencop/dataset.hpp"
#include "gencop/errors.hpp"
#include "gencop/io_json.hpp"
#include "gencop/kendall.hpp"
#include "gencop/pipeline.hpp"
#include "gencop/sampler.hpp"
#include "gencop/selector.hpp"
#include "gencop/synth.hpp"

namespace py = pybind11;
using namespace gencop;

namespace {

PipelineOptions make_options(const std::string& mode, bool covariates,
                             const std::string& condition, double nu0, double epsilon,
                             std::size_t grid, double w, double h1, double h2, bool cv) {
    PipelineOptions opt;
    opt.mode = fit_mode_from_name(mode);
    opt.use_covariates = covariates;
    opt.condition = condition;
    opt.nu0 = nu0;
    opt.epsilon = epsilon;
    opt.grid = grid;
    opt.w = w;
    opt.h1 = h1;
    opt.h2 = h2;
    opt.cv_bandwidth = cv;
    return opt;
}

py::dict result_dict(const PipelineResult& r) {
    py::dict d;
    d["tau"] = r.tau;
    d["mode"] = fit_mode_name(r.mode);
    d["condition"] = r.condition;
    d["nu"] = r.K.nu;
    d["K"] = r.K.val;
    d["log_phi"] = r.log_phi;
    d["lambda"] = r.lambda().val;
    py::dict g;
    g["n_rows"] = r.diag.n_rows;
    g["stratum_rows"] = r.diag.stratum_rows;
    g["h1"] = r.diag.h1;
    g["h2"] = r.diag.h2;
    g["denom_clipped"] = r.diag.denom_clipped;
    g["monotone_fixed"] = r.diag.monotone_fixed;
    g["tau_clipped"] = r.diag.tau_clipped;
    g["joint_total"] = r.diag.joint_total;
    g["lambda_max"] = r.diag.lambda_max;
    d["diagnostics"] = g;
    return d;
}

py::dict selection_dict(const SelectionReport& rep) {
    py::dict d;
    d["J"] = rep.J;
    d["n"] = rep.n;
    d["xi"] = rep.xi;
    d["seed"] = rep.seed;
    d["mean_tau"] = rep.mean_tau;
    d["ties"] = rep.ties;
    d["winner"] = family_name(rep.winner());
    py::list fams;
    for (const auto& f : rep.families) {
        py::dict e;
        e["family"] = family_name(f.family);
        e["wins"] = f.wins;
        e["eligible"] = f.eligible;
        e["p"] = f.p;
        e["one_minus_p"] = f.one_minus_p;
        e["mean_d"] = f.mean_d;
        fams.append(e);
    }
    d["families"] = fams;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Archimedean copula generators from bivariate censored data";

    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<Dataset>(m, "Dataset")
        .def_property_readonly("n", &Dataset::n)
        .def_readonly("y1", &Dataset::y1)
        .def_readonly("y2", &Dataset::y2)
        .def_readonly("delta1", &Dataset::d1)
        .def_readonly("delta2", &Dataset::d2)
        .def_readonly("covariates", &Dataset::cov_names)
        .def("covariate", [](const Dataset& ds, const std::string& name) {
            int j = ds.cov_index(name);
            if (j < 0) throw validation_error("unknown covariate '" + name + "'");
            return ds.cov[j];
        });

    m.def(
        "load_csv",
        [](const std::string& path, const std::string& schema) {
            return load_csv(path, schema.empty() ? Schema{} : parse_schema(schema));
        },
        py::arg("path"), py::arg("schema") = "");

    m.def("write_csv", &write_csv, py::arg("path"), py::arg("dataset"));

    m.def(
        "synth",
        [](const std::string& family, const std::vector<std::tuple<std::string, double, std::size_t>>& levels,
           double censor_scale, double scale1, double shape1, double scale2, double shape2,
           double beta1, double beta2, std::uint64_t seed) {
            SynthConfig cfg;
            cfg.family = family_from_name(family);
            for (const auto& [label, alpha, n] : levels)
                cfg.levels.push_back(SynthLevel{label, alpha, n});
            cfg.censor_scale = censor_scale;
            cfg.scale1 = scale1;
            cfg.shape1 = shape1;
            cfg.scale2 = scale2;
            cfg.shape2 = shape2;
            cfg.beta1 = beta1;
            cfg.beta2 = beta2;
            cfg.seed = seed;
            return synth_generate(cfg);
        },
        py::arg("family"), py::arg("levels"), py::arg("censor_scale") = 0.0,
        py::arg("scale1") = 10.0, py::arg("shape1") = 1.5, py::arg("scale2") = 10.0,
        py::arg("shape2") = 1.5, py::arg("beta1") = 0.0, py::arg("beta2") = 0.0,
        py::arg("seed") = 1);

    m.def(
        "fit",
        [](const Dataset& ds, const std::string& mode, bool covariates,
           const std::string& condition, double nu0, double epsilon, std::size_t grid, double w,
           double h1, double h2, bool cv) {
            return result_dict(run_pipeline(
                ds, make_options(mode, covariates, condition, nu0, epsilon, grid, w, h1, h2, cv)));
        },
        py::arg("dataset"), py::arg("mode") = "nonparam", py::arg("covariates") = false,
        py::arg("condition") = "", py::arg("nu0") = 0.5, py::arg("epsilon") = 1e-10,
        py::arg("grid") = 1001, py::arg("w") = 0.5, py::arg("h1") = 0.0, py::arg("h2") = 0.0,
        py::arg("cv") = false);

    m.def(
        "select",
        [](const Dataset& ds, std::size_t J, std::size_t n, double xi, std::uint64_t seed,
           const std::string& mode, bool covariates, const std::string& condition, double nu0,
           double epsilon, std::size_t grid, double w, double h1, double h2, bool cv) {
            PipelineResult r = run_pipeline(
                ds, make_options(mode, covariates, condition, nu0, epsilon, grid, w, h1, h2, cv));
            if (n == 0) n = r.diag.stratum_rows;
            return selection_dict(select_family(r.K, J, n, xi, seed));
        },
        py::arg("dataset"), py::arg("J") = 1000, py::arg("n") = 0, py::arg("xi") = 0.02,
        py::arg("seed") = 1, py::arg("mode") = "nonparam", py::arg("covariates") = false,
        py::arg("condition") = "", py::arg("nu0") = 0.5, py::arg("epsilon") = 1e-10,
        py::arg("grid") = 1001, py::arg("w") = 0.5, py::arg("h1") = 0.0, py::arg("h2") = 0.0,
        py::arg("cv") = false);

    m.def(
        "sample_fit",
        [](const Dataset& ds, std::size_t n, std::uint64_t seed, const std::string& mode,
           bool covariates, const std::string& condition) {
            PipelineResult r = run_pipeline(
                ds, make_options(mode, covariates, condition, 0.5, 1e-10, 1001, 0.5, 0, 0, false));
            GeneratorFit gen = fit_generator(r.K);
            RngStream rng(seed);
            std::vector<double> x1, x2;
            sample_from_generator(gen, n, rng, x1, x2);
            return py::make_tuple(x1, x2);
        },
        py::arg("dataset"), py::arg("n"), py::arg("seed") = 1, py::arg("mode") = "nonparam",
        py::arg("covariates") = false, py::arg("condition") = "");

    m.def(
        "sample_family",
        [](const std::string& family, double alpha, std::size_t n, std::uint64_t seed) {
            RngStream rng(seed);
            std::vector<double> u1, u2;
            mo_sample(family_from_name(family), alpha, n, rng, u1, u2);
            return py::make_tuple(u1, u2);
        },
        py::arg("family"), py::arg("alpha"), py::arg("n"), py::arg("seed") = 1);

    m.def(
        "kendall_curve",
        [](const std::string& family, double alpha, std::size_t grid) {
            std::vector<double> nu = uniform_grid(static_cast<int>(grid));
            return py::make_tuple(nu, kendall_K_grid(family_from_name(family), nu, alpha));
        },
        py::arg("family"), py::arg("alpha"), py::arg("grid") = 1001);

    m.def("tau_to_alpha",
          [](const std::string& family, double tau) { return tau_to_alpha(family_from_name(family), tau); },
          py::arg("family"), py::arg("tau"));
    m.def("alpha_to_tau",
          [](const std::string& family, double alpha) { return alpha_to_tau(family_from_name(family), alpha); },
          py::arg("family"), py::arg("alpha"));
    m.def("kendall_tau", &kendall_tau_pairs, py::arg("x"), py::arg("y"),
          "sample Kendall tau from concordant/discordant pairs");
}
