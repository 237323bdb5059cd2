#pragma once
#include <cstddef>
#include <string>
#include <vector>

namespace gencop {

// bivariate right-censored sample plus covariate columns
struct Dataset {
    std::vector<double> y1, y2;
    std::vector<int> d1, d2;                       // 1 = event, 0 = censored
    std::vector<std::string> cov_names;
    std::vector<std::vector<double>> cov;          // column-major; categorical columns hold level codes
    std::vector<bool> cov_categorical;
    std::vector<std::vector<std::string>> cov_levels;  // sorted level strings (empty when numeric)

    std::size_t n() const { return y1.size(); }
    std::size_t n_cov() const { return cov_names.size(); }
    int cov_index(const std::string& name) const;
};

// column-name mapping for load_csv; empty covariates = every remaining column
struct Schema {
    std::string y1 = "y1", y2 = "y2", delta1 = "delta1", delta2 = "delta2";
    std::vector<std::string> covariates;
};

Schema parse_schema(const std::string& text);  // "y1=t1,y2=t2,delta1=s1,delta2=s2,covariates=a;b"

Dataset load_csv(const std::string& path, const Schema& schema = Schema{});
void write_csv(const std::string& path, const Dataset& ds);

// row filter: NAME=VALUE, NAME<=VALUE or NAME>VALUE
struct Condition {
    enum class Op { eq, le, gt };
    std::string name;
    Op op = Op::eq;
    std::string value;
};

Condition parse_condition(const std::string& text);
std::vector<char> condition_mask(const Dataset& ds, const Condition& c);
Dataset subset_rows(const Dataset& ds, const std::vector<char>& keep);
std::string condition_label(const Condition& c);

}  // namespace gencop
