#include <cmath>
#include <vector>

#include "doctest.h"
#include "gencop/dataset.hpp"
#include "gencop/joint.hpp"
#include "gencop/kendall.hpp"
#include "gencop/rng.hpp"
#include "gencop/survival.hpp"

using namespace gencop;

namespace {

const std::string RDS = std::string(GENCOP_SOURCE_DIR) + "/data/retinopathy.csv";

Dataset rds() { return load_csv(RDS, Schema{}); }

double tau_of(const JointMass& jm) {
    Curve K = kendall_from_joint(jm, 1001);
    return tau_from_curve(K);
}

void check_mass_structure(const JointMass& jm) {
    const auto n1 = jm.g1.size(), n2 = jm.g2.size();
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) CHECK(jm.m(i, j) >= 0.0);
    double tot = jm.total();
    CHECK(tot > 0.0);
    CHECK(tot <= 1.0 + 1e-9);
    // cdf monotone in each coordinate and below both marginals
    Eigen::MatrixXd C = jm.m;
    for (std::size_t i = 1; i < n1; ++i) C.row(i) += C.row(i - 1);
    for (std::size_t j = 1; j < n2; ++j) C.col(j) += C.col(j - 1);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) {
            if (i > 0) CHECK(C(i, j) >= C(i - 1, j) - 1e-12);
            if (j > 0) CHECK(C(i, j) >= C(i, j - 1) - 1e-12);
            CHECK(C(i, j) <= std::min(C(i, n2 - 1), C(n1 - 1, j)) + 1e-9);
        }
}

}  // namespace

TEST_CASE("nonparametric joint estimate on retinopathy reproduces the frozen tau") {
    Dataset ds = rds();
    double h1 = bandwidth_default(ds.y1), h2 = bandwidth_default(ds.y2);
    JointMass jm = joint_nonparam(ds, h1, h2);
    check_mass_structure(jm);
    CHECK(tau_of(jm) == doctest::Approx(0.188857).epsilon(1e-5));
}

TEST_CASE("parametric joint estimates on retinopathy reproduce the frozen taus") {
    Dataset ds = rds();
    CHECK(tau_of(joint_param(ds, false)) == doctest::Approx(0.173166).epsilon(3e-3));
    JointMass cov = joint_param(ds, true);
    check_mass_structure(cov);
    CHECK(tau_of(cov) == doctest::Approx(0.172860).epsilon(3e-3));

    auto lo = condition_mask(ds, parse_condition("age<=20"));
    auto hi = condition_mask(ds, parse_condition("age>20"));
    CHECK(tau_of(joint_param(ds, true, &lo)) == doctest::Approx(0.167242).epsilon(3e-3));
    CHECK(tau_of(joint_param(ds, true, &hi)) == doctest::Approx(0.203488).epsilon(3e-3));
}

TEST_CASE("total mass is 1 exactly when the largest observation is uncensored in both margins") {
    Dataset ds;
    ds.y1 = {1, 2, 3, 4};
    ds.y2 = {2, 1, 4, 3};
    ds.d1 = {1, 1, 1, 1};
    ds.d2 = {1, 1, 1, 1};
    JointMass jm = joint_nonparam(ds, 1.0, 1.0);
    CHECK(jm.total() == doctest::Approx(1.0).epsilon(1e-12));

    ds.d1 = {1, 1, 1, 0};  // largest y1 censored
    JointMass jc = joint_nonparam(ds, 1.0, 1.0);
    CHECK(jc.total() < 1.0);
}

TEST_CASE("with weight 1 the unused direction's bandwidth cannot matter") {
    Dataset ds = rds();
    double h2 = bandwidth_default(ds.y2);
    JointMass a = joint_nonparam(ds, 5.0, h2, 1.0);
    JointMass b = joint_nonparam(ds, 50.0, h2, 1.0);
    CHECK((a.m.array() == b.m.array()).all());
}

TEST_CASE("parametric mixture with a constant covariate column equals the no-covariate fit") {
    Dataset ds = rds();
    Dataset flat = ds;
    for (auto& v : flat.cov[0]) v = 7.0;
    JointMass a = joint_param(ds, false);
    JointMass b = joint_param(flat, true);
    CHECK((a.m.array() == b.m.array()).all());
}

TEST_CASE("lattices are the distinct uncensored values") {
    Dataset ds;
    ds.y1 = {3, 1, 3, 9, 5};
    ds.y2 = {2, 2, 8, 4, 6};
    ds.d1 = {1, 0, 1, 1, 0};
    ds.d2 = {0, 1, 1, 1, 1};
    JointMass jm = joint_nonparam(ds, 2.0, 2.0);
    CHECK(jm.g1 == std::vector<double>{3, 9});
    CHECK(jm.g2 == std::vector<double>{2, 4, 6, 8});
}

TEST_CASE("one margin without events is rejected") {
    Dataset ds;
    ds.y1 = {1, 2};
    ds.y2 = {1, 2};
    ds.d1 = {0, 0};
    ds.d2 = {1, 1};
    CHECK_THROWS_AS(joint_nonparam(ds, 1.0, 1.0), validation_error);
}

TEST_CASE("empty stratum in the parametric mixture is rejected") {
    Dataset ds = rds();
    std::vector<char> none(ds.n(), 0);
    CHECK_THROWS_AS(joint_param(ds, true, &none), validation_error);
}
