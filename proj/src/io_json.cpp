#include "gencop/io_json.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "gencop/errors.hpp"
#include "json.hpp"

namespace gencop {

using nlohmann::json;

void write_curve_csv(const std::string& path, const Curve& c, const std::string& value_name) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write '" + path + "'");
    out << "nu," << value_name << '\n';
    out.precision(17);
    for (std::size_t i = 0; i < c.size(); ++i) out << c.nu[i] << ',' << c.val[i] << '\n';
}

Curve read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw validation_error("'" + path + "' is empty");
    Curve c;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw validation_error("'" + path + "' line " + std::to_string(lineno) +
                                   ": expected two columns");
        double nu, val;
        auto r1 = std::from_chars(line.data(), line.data() + comma, nu);
        auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), val);
        if (r1.ec != std::errc() || r2.ec != std::errc())
            throw validation_error("'" + path + "' line " + std::to_string(lineno) +
                                   ": cannot parse numbers");
        if (!c.nu.empty() && nu <= c.nu.back())
            throw validation_error("'" + path + "' line " + std::to_string(lineno) +
                                   ": grid not strictly increasing");
        c.nu.push_back(nu);
        c.val.push_back(val);
    }
    return c;
}

namespace {

json coef_json(const WeibullFit& f) {
    json j;
    j["beta"] = std::vector<double>(f.beta.data(), f.beta.data() + f.beta.size());
    j["gamma"] = std::vector<double>(f.gamma.data(), f.gamma.data() + f.gamma.size());
    j["nll"] = f.nll;
    j["converged"] = f.converged;
    return j;
}

}  // namespace

std::string pipeline_to_json(const PipelineResult& r) {
    json j;
    j["mode"] = fit_mode_name(r.mode);
    j["condition"] = r.condition.empty() ? json(nullptr) : json(r.condition);
    j["tau"] = r.tau;
    j["grid"] = r.K.size();
    json d;
    d["n_rows"] = r.diag.n_rows;
    d["stratum_rows"] = r.diag.stratum_rows;
    d["h1"] = r.diag.h1;
    d["h2"] = r.diag.h2;
    d["denom_clipped"] = r.diag.denom_clipped;
    d["monotone_fixed"] = r.diag.monotone_fixed;
    d["tau_clipped"] = r.diag.tau_clipped;
    d["joint_total"] = r.diag.joint_total;
    d["lambda_max"] = r.diag.lambda_max;
    j["diagnostics"] = d;
    if (r.models) {
        json m;
        m["m12"] = coef_json(r.models->m12);
        m["m21"] = coef_json(r.models->m21);
        m["f1"] = coef_json(r.models->f1);
        m["f2"] = coef_json(r.models->f2);
        j["models"] = m;
    }
    json curves;
    curves["nu"] = r.K.nu;
    curves["K"] = r.K.val;
    curves["log_phi"] = r.log_phi;
    Curve lam = r.lambda();
    curves["lambda"] = lam.val;
    j["curves"] = curves;
    return j.dump(2) + "\n";
}

std::string selection_to_json(const SelectionReport& r) {
    json j;
    j["J"] = r.J;
    j["n"] = r.n;
    j["xi"] = r.xi;
    j["seed"] = r.seed;
    j["mean_tau"] = r.mean_tau;
    j["ties"] = r.ties;
    json fams = json::array();
    for (const auto& f : r.families) {
        json e;
        e["family"] = family_name(f.family);
        e["wins"] = f.wins;
        e["eligible"] = f.eligible;
        e["p"] = f.p;
        e["one_minus_p"] = f.one_minus_p;
        e["mean_d"] = std::isfinite(f.mean_d) ? json(f.mean_d) : json(nullptr);
        fams.push_back(e);
    }
    j["families"] = fams;
    j["winner"] = family_name(r.winner());
    return j.dump(2) + "\n";
}

std::string selection_table(const SelectionReport& r) {
    char buf[160];
    std::string out = "family      wins        p      1-p\n";
    for (const auto& f : r.families) {
        std::snprintf(buf, sizeof(buf), "%-9s %6zu %8.3f %8.3f\n", family_name(f.family),
                      f.wins, f.p, f.one_minus_p);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "winner=%s ties=%zu mean_tau=%.4f (J=%zu n=%zu xi=%.3f seed=%llu)\n",
                  family_name(r.winner()), r.ties, r.mean_tau, r.J, r.n, r.xi,
                  static_cast<unsigned long long>(r.seed));
    out += buf;
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write '" + path + "'");
    out << content;
}

}  // namespace gencop
