#include "speedscale/types.hpp"

#include <algorithm>
#include <unordered_set>

namespace speedscale {

void Instance::validate_and_sort() {
    std::unordered_set<JobId> seen;
    for (const Job& j : jobs_) {
        if (j.release >= j.deadline)
            throw std::invalid_argument("invalid-instance: job " + std::to_string(j.id) +
                                        " needs release < deadline");
        if (j.work < 0.0)
            throw std::invalid_argument("invalid-instance: job " + std::to_string(j.id) +
                                        " has negative work");
        if (!seen.insert(j.id).second)
            throw std::invalid_argument("invalid-instance: duplicate job id " +
                                        std::to_string(j.id));
    }
    std::sort(jobs_.begin(), jobs_.end(), [](const Job& a, const Job& b) {
        return a.release != b.release ? a.release < b.release : a.id < b.id;
    });
    if (!jobs_.empty()) {
        Slot d = jobs_.front().deadline;
        bool common = std::all_of(jobs_.begin(), jobs_.end(),
                                  [d](const Job& j) { return j.deadline == d; });
        if (common) common_deadline_ = d;
    }
}

Slot Instance::horizon_start() const {
    if (jobs_.empty()) return 0;
    return jobs_.front().release;  // sorted by release
}

Slot Instance::horizon_end() const {
    Slot end = 0;
    bool first = true;
    for (const Job& j : jobs_) {
        if (first || j.deadline > end) end = j.deadline;
        first = false;
    }
    return end;
}

const Job* Instance::find(JobId id) const {
    for (const Job& j : jobs_)
        if (j.id == id) return &j;
    return nullptr;
}

}  // namespace speedscale
