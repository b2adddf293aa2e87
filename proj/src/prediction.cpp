#include "speedscale/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace speedscale {

namespace {

template <typename T>
void sort_by_id(std::vector<T>& v) {
    std::sort(v.begin(), v.end(), [](const T& a, const T& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i].id == v[i - 1].id)
            throw std::invalid_argument("invalid-parameter: duplicate prediction for job id " +
                                        std::to_string(v[i].id));
}

template <typename T>
const T* find_by_id(const std::vector<T>& v, JobId id) {
    auto it = std::lower_bound(v.begin(), v.end(), id,
                               [](const T& e, JobId key) { return e.id < key; });
    if (it == v.end() || it->id != id) return nullptr;
    return &*it;
}

}  // namespace

PredictedInstance::PredictedInstance(std::vector<JobPrediction> preds)
    : preds_(std::move(preds)) {
    for (const JobPrediction& e : preds_)
        if (e.p > e.q)
            throw std::invalid_argument("invalid-parameter: prediction for job " +
                                        std::to_string(e.id) + " has p > q");
    sort_by_id(preds_);
}

const JobPrediction* PredictedInstance::find(JobId id) const {
    return find_by_id(preds_, id);
}

ShrunkPrediction::ShrunkPrediction(double lambda, std::vector<ShrunkJobPrediction> preds)
    : lambda_(lambda), preds_(std::move(preds)) {
    sort_by_id(preds_);
}

const ShrunkJobPrediction* ShrunkPrediction::find(JobId id) const {
    return find_by_id(preds_, id);
}

double job_error(const Job& job, Slot p, Slot q) {
    if (p == q)
        throw std::invalid_argument("degenerate-prediction: p = q for job " +
                                    std::to_string(job.id));
    double span = static_cast<double>(q - p);
    double rp = std::fabs(static_cast<double>(p - job.release));
    double qd = std::fabs(static_cast<double>(q - job.deadline));
    return std::max(rp, qd) / span;
}

double max_norm_error(const Instance& instance, const PredictedInstance& preds) {
    double worst = 0.0;
    for (const Job& j : instance.jobs()) {
        const JobPrediction* e = preds.find(j.id);
        if (!e)
            throw std::invalid_argument("invalid-parameter: no prediction for job " +
                                        std::to_string(j.id));
        worst = std::max(worst, job_error(j, e->p, e->q));
    }
    return worst;
}

Slot shrunk_release(Slot p, Slot q, double lambda) {
    // snap answers that are integers in exact arithmetic before flooring
    double v = static_cast<double>(p) + lambda * static_cast<double>(q - p);
    return static_cast<Slot>(std::floor(v + 1e-9));
}

Slot shrunk_deadline(Slot p, Slot q, double lambda) {
    double v = static_cast<double>(q) - lambda * static_cast<double>(q - p);
    return static_cast<Slot>(std::ceil(v - 1e-9));
}

ShrunkPrediction shrink(const PredictedInstance& preds, double lambda) {
    if (lambda < 0.0 || lambda >= 0.5)
        throw std::invalid_argument("invalid-parameter: lambda must lie in [0, 1/2)");
    std::vector<ShrunkJobPrediction> out;
    out.reserve(preds.size());
    for (const JobPrediction& e : preds.entries())
        out.push_back({e.id, shrunk_release(e.p, e.q, lambda),
                       shrunk_deadline(e.p, e.q, lambda)});
    return ShrunkPrediction(lambda, std::move(out));
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Two standard normal draws from the per-job stream. Hand-rolled Box-Muller
// keeps the output identical across standard libraries.
std::pair<double, double> normal_pair(std::uint64_t seed, JobId id) {
    std::uint64_t s = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(id)));
    std::mt19937_64 eng(s);
    auto unit = [&]() {
        return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;  // (0, 1)
    };
    double u1 = unit(), u2 = unit();
    double radius = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    return {radius * std::cos(two_pi * u2), radius * std::sin(two_pi * u2)};
}

}  // namespace

PredictedInstance gen_predictions(const Instance& instance, double stddev,
                                  std::uint64_t seed) {
    if (stddev < 0.0)
        throw std::invalid_argument("invalid-parameter: stddev must be >= 0");
    std::vector<JobPrediction> out;
    out.reserve(instance.size());
    for (const Job& j : instance.jobs()) {
        auto [n1, n2] = normal_pair(seed, j.id);
        double len = j.window();
        Slot p = static_cast<Slot>(std::round(static_cast<double>(j.release) +
                                              stddev * n1 * len));
        Slot q = static_cast<Slot>(std::round(static_cast<double>(j.deadline) +
                                              stddev * n2 * len));
        if (q <= p) q = p + 1;
        out.push_back({j.id, p, q});
    }
    return PredictedInstance(std::move(out));
}

PredictedInstance gen_common_deadline_predictions(const Instance& instance, double stddev,
                                                  std::uint64_t seed) {
    if (!instance.common_deadline())
        throw std::invalid_argument("invalid-instance: common deadline required");
    if (stddev < 0.0)
        throw std::invalid_argument("invalid-parameter: stddev must be >= 0");
    Slot d = *instance.common_deadline();
    std::vector<JobPrediction> out;
    out.reserve(instance.size());
    for (const Job& j : instance.jobs()) {
        auto [n1, n2] = normal_pair(seed, j.id);
        (void)n2;
        double len = j.window();
        Slot p = static_cast<Slot>(std::round(static_cast<double>(j.release) +
                                              stddev * n1 * len));
        if (p >= d) p = d - 1;
        out.push_back({j.id, p, d});
    }
    return PredictedInstance(std::move(out));
}

}  // namespace speedscale
