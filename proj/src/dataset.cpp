#include "gencop/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "gencop/errors.hpp"

namespace gencop {

int Dataset::cov_index(const std::string& name) const {
    for (std::size_t j = 0; j < cov_names.size(); ++j)
        if (cov_names[j] == name) return static_cast<int>(j);
    return -1;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, sep)) out.push_back(trim(field));
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

bool parse_double(const std::string& s, double& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    auto r = std::from_chars(b, e, out);
    return r.ec == std::errc() && r.ptr == e && !s.empty();
}

double require_double(const std::string& s, std::size_t line, const std::string& col) {
    double v;
    if (!parse_double(s, v))
        throw validation_error("parse error at line " + std::to_string(line) + ", column '" + col +
                               "': cannot read '" + s + "' as a number");
    return v;
}

}  // namespace

Schema parse_schema(const std::string& text) {
    Schema s;
    for (const auto& kv : split(text, ',')) {
        if (kv.empty()) continue;
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw validation_error("bad schema entry '" + kv + "' (expected key=value)");
        std::string key = trim(kv.substr(0, eq)), val = trim(kv.substr(eq + 1));
        if (key == "y1") s.y1 = val;
        else if (key == "y2") s.y2 = val;
        else if (key == "delta1") s.delta1 = val;
        else if (key == "delta2") s.delta2 = val;
        else if (key == "covariates") {
            s.covariates.clear();
            for (const auto& c : split(val, ';'))
                if (!c.empty()) s.covariates.push_back(c);
        } else
            throw validation_error("unknown schema key '" + key + "'");
    }
    return s;
}

Dataset load_csv(const std::string& path, const Schema& schema) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw validation_error("'" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = split(line, ',');

    auto col_of = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw validation_error("missing column '" + name + "' in '" + path + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    std::size_t c_y1 = col_of(schema.y1), c_y2 = col_of(schema.y2);
    std::size_t c_d1 = col_of(schema.delta1), c_d2 = col_of(schema.delta2);

    std::vector<std::string> cov_names = schema.covariates;
    if (cov_names.empty()) {
        for (const auto& h : header)
            if (h != schema.y1 && h != schema.y2 && h != schema.delta1 && h != schema.delta2)
                cov_names.push_back(h);
    }
    std::vector<std::size_t> c_cov;
    for (const auto& name : cov_names) c_cov.push_back(col_of(name));

    Dataset ds;
    ds.cov_names = cov_names;
    ds.cov.resize(cov_names.size());
    ds.cov_categorical.assign(cov_names.size(), false);
    ds.cov_levels.resize(cov_names.size());
    std::vector<std::vector<std::string>> raw(cov_names.size());

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> f = split(line, ',');
        if (f.size() != header.size())
            throw validation_error("line " + std::to_string(lineno) + " has " +
                                   std::to_string(f.size()) + " fields, expected " +
                                   std::to_string(header.size()));
        double v1 = require_double(f[c_y1], lineno, schema.y1);
        double v2 = require_double(f[c_y2], lineno, schema.y2);
        if (v1 < 0.0 || v2 < 0.0)
            throw validation_error("negative time at line " + std::to_string(lineno));
        double e1 = require_double(f[c_d1], lineno, schema.delta1);
        double e2 = require_double(f[c_d2], lineno, schema.delta2);
        if ((e1 != 0.0 && e1 != 1.0) || (e2 != 0.0 && e2 != 1.0))
            throw validation_error("censoring indicator not 0/1 at line " + std::to_string(lineno));
        ds.y1.push_back(v1);
        ds.y2.push_back(v2);
        ds.d1.push_back(static_cast<int>(e1));
        ds.d2.push_back(static_cast<int>(e2));
        for (std::size_t j = 0; j < c_cov.size(); ++j) raw[j].push_back(f[c_cov[j]]);
    }
    if (ds.n() == 0) throw validation_error("'" + path + "' has no data rows");

    // numeric column when every value parses; otherwise lexicographic level codes
    for (std::size_t j = 0; j < cov_names.size(); ++j) {
        bool numeric = true;
        std::vector<double> vals(raw[j].size());
        for (std::size_t i = 0; i < raw[j].size(); ++i)
            if (!parse_double(raw[j][i], vals[i])) { numeric = false; break; }
        if (numeric) {
            ds.cov[j] = std::move(vals);
        } else {
            std::vector<std::string> lv(raw[j]);
            std::sort(lv.begin(), lv.end());
            lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
            ds.cov_categorical[j] = true;
            ds.cov_levels[j] = lv;
            ds.cov[j].resize(raw[j].size());
            for (std::size_t i = 0; i < raw[j].size(); ++i) {
                auto it = std::lower_bound(lv.begin(), lv.end(), raw[j][i]);
                ds.cov[j][i] = static_cast<double>(it - lv.begin());
            }
        }
    }
    return ds;
}

void write_csv(const std::string& path, const Dataset& ds) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write '" + path + "'");
    out << "y1,y2,delta1,delta2";
    for (const auto& name : ds.cov_names) out << ',' << name;
    out << '\n';
    out.precision(17);
    for (std::size_t i = 0; i < ds.n(); ++i) {
        out << ds.y1[i] << ',' << ds.y2[i] << ',' << ds.d1[i] << ',' << ds.d2[i];
        for (std::size_t j = 0; j < ds.n_cov(); ++j) {
            out << ',';
            if (ds.cov_categorical[j])
                out << ds.cov_levels[j][static_cast<std::size_t>(ds.cov[j][i])];
            else
                out << ds.cov[j][i];
        }
        out << '\n';
    }
}

Condition parse_condition(const std::string& text) {
    Condition c;
    auto le = text.find("<=");
    auto gt = text.find('>');
    auto eq = text.find('=');
    if (le != std::string::npos) {
        c.op = Condition::Op::le;
        c.name = trim(text.substr(0, le));
        c.value = trim(text.substr(le + 2));
    } else if (gt != std::string::npos) {
        c.op = Condition::Op::gt;
        c.name = trim(text.substr(0, gt));
        c.value = trim(text.substr(gt + 1));
    } else if (eq != std::string::npos) {
        c.op = Condition::Op::eq;
        c.name = trim(text.substr(0, eq));
        c.value = trim(text.substr(eq + 1));
    } else {
        throw validation_error("bad condition '" + text + "' (expected NAME=V, NAME<=V or NAME>V)");
    }
    if (c.name.empty() || c.value.empty())
        throw validation_error("bad condition '" + text + "'");
    return c;
}

std::vector<char> condition_mask(const Dataset& ds, const Condition& c) {
    int j = ds.cov_index(c.name);
    if (j < 0) throw validation_error("unknown covariate '" + c.name + "' in condition");
    std::vector<char> keep(ds.n(), 0);
    if (ds.cov_categorical[j]) {
        if (c.op != Condition::Op::eq)
            throw validation_error("ordered condition on categorical covariate '" + c.name + "'");
        const auto& lv = ds.cov_levels[j];
        auto it = std::lower_bound(lv.begin(), lv.end(), c.value);
        if (it == lv.end() || *it != c.value) return keep;  // unknown level: empty stratum
        double code = static_cast<double>(it - lv.begin());
        for (std::size_t i = 0; i < ds.n(); ++i) keep[i] = ds.cov[j][i] == code;
        return keep;
    }
    double v;
    {
        const char* b = c.value.data();
        auto r = std::from_chars(b, b + c.value.size(), v);
        if (r.ec != std::errc() || r.ptr != b + c.value.size())
            throw validation_error("condition value '" + c.value + "' is not numeric");
    }
    for (std::size_t i = 0; i < ds.n(); ++i) {
        double x = ds.cov[j][i];
        keep[i] = c.op == Condition::Op::eq ? x == v
                : c.op == Condition::Op::le ? x <= v
                                            : x > v;
    }
    return keep;
}

Dataset subset_rows(const Dataset& ds, const std::vector<char>& keep) {
    Dataset out;
    out.cov_names = ds.cov_names;
    out.cov_categorical = ds.cov_categorical;
    out.cov_levels = ds.cov_levels;
    out.cov.resize(ds.n_cov());
    for (std::size_t i = 0; i < ds.n(); ++i) {
        if (!keep[i]) continue;
        out.y1.push_back(ds.y1[i]);
        out.y2.push_back(ds.y2[i]);
        out.d1.push_back(ds.d1[i]);
        out.d2.push_back(ds.d2[i]);
        for (std::size_t j = 0; j < ds.n_cov(); ++j) out.cov[j].push_back(ds.cov[j][i]);
    }
    return out;
}

std::string condition_label(const Condition& c) {
    const char* op = c.op == Condition::Op::eq ? "=" : c.op == Condition::Op::le ? "<=" : ">";
    return c.name + op + c.value;
}

}  // namespace gencop
