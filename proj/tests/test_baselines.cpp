#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "speedscale/baselines.hpp"
#include "speedscale/yds.hpp"
#include "testutil.hpp"

using namespace speedscale;

TEST_CASE("avr runs a single job at its density") {
    Instance inst({{1, 0, 2, 4.0}});
    Schedule sched = avr(inst);
    CHECK(sched.profile().speed_at(0.5) == doctest::Approx(2.0));
    CHECK(sched.profile().speed_at(1.9) == doctest::Approx(2.0));
    CHECK(verify_feasible(sched, inst, 1e-9).ok());
}

TEST_CASE("avr adds densities where windows overlap") {
    Instance inst({{0, 0, 4, 4.0}, {1, 1, 2, 3.0}});
    Schedule sched = avr(inst);
    CHECK(sched.profile().speed_at(0.5) == doctest::Approx(1.0));
    CHECK(sched.profile().speed_at(1.5) == doctest::Approx(4.0));
    CHECK(sched.profile().speed_at(3.0) == doctest::Approx(1.0));
    CHECK(verify_feasible(sched, inst, 1e-9).ok());
}

TEST_CASE("avr profile equals the density sum everywhere") {
    std::mt19937_64 eng(53);
    for (int round = 0; round < 20; ++round) {
        Instance inst = testutil::random_instance(eng, 10, 16, 4.0);
        SpeedProfile prof = avr_profile(inst);
        std::uniform_real_distribution<double> t(-1.0, 17.0);
        for (int i = 0; i < 1000; ++i) {
            double at = t(eng);
            double expect = 0.0;
            for (const Job& j : inst.jobs())
                if (at >= static_cast<double>(j.release) &&
                    at < static_cast<double>(j.deadline))
                    expect += j.density();
            CHECK(std::fabs(prof.speed_at(at) - expect) <= 1e-9);
        }
        CHECK(verify_feasible(avr(inst), inst, 1e-9).ok());
    }
}

TEST_CASE("oa on one release event equals the offline optimum") {
    Instance inst({{1, 0, 2, 4.0}});
    Schedule sched = oa(inst);
    CHECK(sched.energy(3.0) == doctest::Approx(16.0));
    CHECK(sched.profile().speed_at(1.0) == doctest::Approx(2.0));
}

TEST_CASE("oa replans at the second release") {
    Instance inst({{0, 0, 4, 4.0}, {1, 2, 4, 4.0}});
    Schedule sched = oa(inst);
    CHECK(sched.profile().speed_at(1.0) == doctest::Approx(1.0));
    CHECK(sched.profile().speed_at(3.0) == doctest::Approx(3.0));
    CHECK(verify_feasible(sched, inst, 1e-9).ok());
}

TEST_CASE("oa equals yds when all jobs share one release") {
    std::mt19937_64 eng(59);
    for (int round = 0; round < 30; ++round) {
        std::uniform_int_distribution<int> count(1, 6);
        std::uniform_int_distribution<Slot> len(1, 12);
        std::uniform_real_distribution<double> work(0.1, 4.0);
        int n = count(eng);
        std::vector<Job> jobs;
        for (int i = 0; i < n; ++i) jobs.push_back({i, 0, len(eng), work(eng)});
        Instance inst(jobs);
        double a = oa(inst).energy(3.0);
        double b = yds(inst).energy(3.0);
        CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
}

TEST_CASE("oa stays within its competitive ratio on random instances") {
    std::mt19937_64 eng(61);
    const double alpha = 3.0;
    for (int round = 0; round < 40; ++round) {
        Instance inst = testutil::random_instance(eng, 8, 14, 4.0);
        Schedule sched = oa(inst);
        CHECK(verify_feasible(sched, inst, 1e-9).ok());
        double opt = yds(inst).energy(alpha);
        CHECK(sched.energy(alpha) <= std::pow(alpha, alpha) * opt + 1e-9);
    }
}

TEST_CASE("qoa with q = 1 tracks oa on a single job") {
    Instance inst({{1, 0, 2, 4.0}});
    Schedule sched = qoa(inst, 1.0, 1.0 / 64.0);
    CHECK(sched.energy(3.0) == doctest::Approx(16.0).epsilon(1e-9));
    CHECK(verify_feasible(sched, inst, 1e-6).ok());
}

TEST_CASE("qoa starts at q times the density of a fresh job") {
    Instance inst({{1, 3, 11, 4.0}});
    double q = qoa_default_q(3.0);
    Schedule sched = qoa(inst, q, 1.0 / 256.0);
    REQUIRE(!sched.slices().empty());
    CHECK(sched.slices().front().start == doctest::Approx(3.0));
    CHECK(sched.slices().front().speed == doctest::Approx(q * 4.0 / 8.0));
}

TEST_CASE("qoa rejects bad parameters") {
    Instance inst({{1, 0, 2, 4.0}});
    CHECK_THROWS_AS(qoa(inst, 1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(qoa(inst, 1.5, -0.25), std::invalid_argument);
    CHECK_THROWS_AS(qoa(inst, 0.5, 0.25), std::invalid_argument);
}

TEST_CASE("qoa converges first order in the grid step") {
    std::mt19937_64 eng(67);
    const double q = qoa_default_q(3.0);
    for (int round = 0; round < 10; ++round) {
        Instance inst = testutil::random_instance(eng, 6, 10, 4.0);
        double e1 = qoa(inst, q, 1.0 / 32.0).energy(3.0);
        double e2 = qoa(inst, q, 1.0 / 64.0).energy(3.0);
        double e3 = qoa(inst, q, 1.0 / 128.0).energy(3.0);
        CHECK(std::fabs(e3 - e2) <= 2.0 * std::fabs(e2 - e1) + 1e-9 * std::max(1.0, e1));
        Schedule fine = qoa(inst, q, 1.0 / 256.0);
        FeasibilityReport report = verify_feasible(fine, inst, 1e-4);
        CHECK(report.ok());
        for (const auto& pj : report.jobs)
            CHECK(pj.required - pj.processed <= 1e-4 * pj.required);
    }
}

TEST_CASE("qoa stays within its competitive ratio on random instances") {
    std::mt19937_64 eng(71);
    const double alpha = 3.0;
    const double q = qoa_default_q(alpha);
    const double bound =
        std::pow(4.0, alpha) / (2.0 * std::exp(0.5) * std::pow(alpha, 0.25));
    for (int round = 0; round < 25; ++round) {
        Instance inst = testutil::random_instance(eng, 6, 12, 4.0);
        double e = qoa(inst, q, 1.0 / 256.0).energy(alpha);
        double opt = yds(inst).energy(alpha);
        CHECK(e <= bound * opt + 1e-9);
    }
}
