#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "speedscale/baselines.hpp"
#include "speedscale/cdswp.hpp"
#include "speedscale/yds.hpp"
#include "testutil.hpp"

using namespace speedscale;

TEST_CASE("ftp instance with nothing pending is the lone aggregate") {
    Instance inst = build_ftp_instance(4.0, 2, {}, 10);
    REQUIRE(inst.size() == 1);
    CHECK(inst[0].id == 0);
    CHECK(inst[0].release == 2);
    CHECK(inst[0].deadline == 10);
    CHECK(inst[0].work == doctest::Approx(4.0));
}

TEST_CASE("ftp instance keeps zero-work aggregates and placeholders") {
    Instance inst = build_ftp_instance(0.0, 1, {{4, 2.0}, {6, 1.0}}, 10);
    REQUIRE(inst.size() == 3);
    CHECK(inst[0].work == 0.0);
}

TEST_CASE("ftp instance assembles aggregate plus pending") {
    Instance inst = build_ftp_instance(5.0, 3, {{6, 2.0}}, 10);
    REQUIRE(inst.size() == 2);
    CHECK(inst[0].release == 3);
    CHECK(inst[0].deadline == 10);
    CHECK(inst[0].work == doctest::Approx(5.0));
    CHECK(inst[1].release == 6);
    CHECK(inst[1].deadline == 10);
    CHECK(inst[1].work == doctest::Approx(2.0));
}

TEST_CASE("ftp instance rejects an aggregate released at or after d") {
    CHECK_THROWS_AS(build_ftp_instance(1.0, 10, {}, 10), std::invalid_argument);
}

TEST_CASE("cdswp needs a common deadline") {
    Instance inst({{0, 0, 4, 1.0}, {1, 1, 5, 1.0}});
    PredictedInstance preds = testutil::perfect_predictions(inst);
    CHECK_THROWS_AS(cdswp_run(inst, preds, 0.2, 1.5, 1.0 / 64.0), std::invalid_argument);
}

TEST_CASE("lambda range is [0, 1/2]") {
    Instance inst({{0, 0, 4, 1.0}});
    PredictedInstance preds = testutil::perfect_predictions(inst);
    CHECK_THROWS_AS(cdswp_run(inst, preds, -0.1, 1.5, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(cdswp_run(inst, preds, 0.6, 1.5, 0.25), std::invalid_argument);
    CHECK_NOTHROW(cdswp_run(inst, preds, 0.5, 1.5, 0.25));
}

TEST_CASE("perfect predictions at lambda 0 track the offline optimum") {
    std::mt19937_64 eng(137);
    for (int round = 0; round < 30; ++round) {
        Instance inst = testutil::random_common_deadline_instance(eng, 8, 20, 4.0);
        PredictedInstance preds = testutil::perfect_predictions(inst);
        CdswpResult result = cdswp_run_detailed(inst, preds, 0.0, 1.5, 1.0 / 64.0);
        CHECK(!result.switch_index.has_value());
        CHECK(verify_feasible(result.schedule, inst, 1e-6).ok());
        double opt = yds(inst).energy(3.0);
        CHECK(result.schedule.energy(3.0) == doctest::Approx(opt).epsilon(1e-6));
    }
}

TEST_CASE("small errors stay in prediction mode and meet the consistency bound") {
    std::mt19937_64 eng(139);
    const double alpha = 3.0, lambda = 0.25;
    for (int round = 0; round < 30; ++round) {
        Instance inst = testutil::random_common_deadline_instance(eng, 8, 40, 4.0);
        PredictedInstance preds = testutil::cd_predictions_with_error_below(inst, eng, lambda);
        double eta = max_norm_error(inst, preds);
        REQUIRE(eta < lambda);
        CdswpResult result = cdswp_run_detailed(inst, preds, lambda, 1.5, 1.0 / 64.0);
        CHECK(!result.switch_index.has_value());
        CHECK(verify_feasible(result.schedule, inst, 1e-6).ok());
        double e = result.schedule.energy(alpha);
        double opt = yds(inst).energy(alpha);
        CHECK(e <= std::pow((1.0 + eta) / (1.0 - lambda), alpha - 1.0) * opt * (1 + 1e-6));

        // sharper telescoping bound: never above the shrunk-prediction optimum
        Slot d = *inst.common_deadline();
        std::vector<Job> shrunk;
        for (const Job& j : inst.jobs()) {
            const JobPrediction* p = preds.find(j.id);
            shrunk.push_back({j.id, std::min(shrunk_release(p->p, d, lambda), d - 1), d,
                              j.work});
        }
        double e_shrunk = yds(Instance(shrunk)).energy(alpha);
        CHECK(e <= e_shrunk * (1 + 1e-6) + 1e-9);
    }
}

TEST_CASE("a bad arrival switches to recovery exactly once") {
    // six jobs, the fourth one predicted far too early
    Instance inst({{0, 0, 30, 3.0},
                   {1, 4, 30, 2.0},
                   {2, 8, 30, 4.0},
                   {3, 14, 30, 2.5},
                   {4, 18, 30, 1.5},
                   {5, 22, 30, 2.0}});
    std::vector<JobPrediction> entries;
    for (const Job& j : inst.jobs()) entries.push_back({j.id, j.release, 30});
    entries[3].p = 2;  // eta_3 = 12 / 28 > lambda
    PredictedInstance preds(std::move(entries));
    const double lambda = 0.2;
    const double q = qoa_default_q(3.0), step = 1.0 / 256.0;

    CdswpResult result = cdswp_run_detailed(inst, preds, lambda, q, step);
    REQUIRE(result.switch_index.has_value());
    CHECK(*result.switch_index == 3);
    CHECK(verify_feasible(result.schedule, inst, 1e-4).ok());

    // after the switch the profile is the pointwise sum of the two parts
    std::vector<SpeedProfile> parts{result.ftp_part.profile(), result.qoa_part.profile()};
    CHECK(SpeedProfile::max_difference(result.schedule.profile(), SpeedProfile::sum(parts)) <=
          1e-9);

    // the frozen part serves the first three jobs, the live part the rest
    Instance head({inst[0], inst[1], inst[2]});
    Instance tail({inst[3], inst[4], inst[5]});
    CHECK(verify_feasible(result.ftp_part, head, 1e-6).ok());
    CHECK(verify_feasible(result.qoa_part, tail, 1e-4).ok());
}

TEST_CASE("recovery stays within the robustness bound") {
    std::mt19937_64 eng(149);
    const double alpha = 3.0, lambda = 0.2;
    const double q = qoa_default_q(alpha), step = 1.0 / 256.0;
    for (int round = 0; round < 20; ++round) {
        Instance inst = testutil::random_common_deadline_instance(eng, 8, 30, 4.0);
        Slot d = *inst.common_deadline();
        std::vector<JobPrediction> entries;
        std::size_t bad = inst.size() / 2;
        for (std::size_t i = 0; i < inst.size(); ++i) {
            const Job& j = inst[i];
            // the chosen job is predicted right before d, the rest spot on
            entries.push_back({j.id, i == bad ? d - 1 : j.release, d});
        }
        PredictedInstance preds(std::move(entries));
        if (max_norm_error(inst, preds) <= lambda) continue;  // bad job released at d-1
        CdswpResult result = cdswp_run_detailed(inst, preds, lambda, q, step);
        CHECK(verify_feasible(result.schedule, inst, 1e-4).ok());
        double e = result.schedule.energy(alpha);
        double e_qoa = qoa(inst, q, step).energy(alpha);
        double bound = std::pow(2.0, alpha) *
                       std::pow((1.0 + lambda) / (1.0 - lambda), alpha - 1.0) * e_qoa;
        CHECK(e <= bound * (1.0 + 1e-3));
    }
}

TEST_CASE("volume is conserved per job") {
    std::mt19937_64 eng(151);
    for (int round = 0; round < 20; ++round) {
        Instance inst = testutil::random_common_deadline_instance(eng, 8, 24, 4.0);
        PredictedInstance preds = gen_common_deadline_predictions(inst, 0.2, 31 + round);
        Schedule sched = cdswp_run(inst, preds, 0.2, 1.5, 1.0 / 256.0);
        for (const Job& j : inst.jobs())
            CHECK(std::fabs(sched.processed(j.id) - j.work) <= 1e-4 * std::max(1.0, j.work));
    }
}

TEST_CASE("a wrong predicted job count forces recovery from the start") {
    Instance inst({{0, 0, 10, 2.0}, {1, 3, 10, 2.0}});
    PredictedInstance partial({{0, 0, 10}});  // job 1 missing
    const double q = 1.5, step = 1.0 / 128.0;
    CdswpResult result = cdswp_run_detailed(inst, partial, 0.3, q, step);
    REQUIRE(result.switch_index.has_value());
    CHECK(*result.switch_index == 0);
    CHECK(result.ftp_part.slices().empty());
    CHECK(result.schedule.energy(3.0) == doctest::Approx(qoa(inst, q, step).energy(3.0)));
}
