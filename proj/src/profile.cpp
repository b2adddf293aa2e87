#include "speedscale/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace speedscale {

namespace {

struct Edge {
    double at;
    double delta;  // speed added (+) or removed (-) at this timepoint
};

}  // namespace

SpeedProfile SpeedProfile::from_segments(std::vector<Segment> pieces) {
    std::vector<Edge> edges;
    edges.reserve(pieces.size() * 2);
    double scale = 0.0;
    for (const Segment& p : pieces) {
        if (p.end < p.start)
            throw std::invalid_argument("invalid-parameter: profile segment with negative length");
        if (p.speed < 0.0)
            throw std::invalid_argument("invalid-parameter: negative speed");
        if (p.end == p.start || p.speed == 0.0) continue;
        edges.push_back({p.start, p.speed});
        edges.push_back({p.end, -p.speed});
        scale = std::max(scale, p.speed);
    }
    if (edges.empty()) return {};
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.at < b.at; });

    // Sweep: level on [times[k], times[k+1]) after applying edges at times[k].
    std::vector<double> times;
    std::vector<double> levels;
    const double snap = scale * 1e-12;
    double level = 0.0;
    std::size_t i = 0;
    while (i < edges.size()) {
        double t = edges[i].at;
        while (i < edges.size() && edges[i].at == t) level += edges[i++].delta;
        times.push_back(t);
        levels.push_back(std::fabs(level) <= snap ? 0.0 : level);
    }

    SpeedProfile out;
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        double s = levels[k];
        if (out.speeds_.empty()) {
            if (s == 0.0) continue;  // trim leading zero stretch
            out.breakpoints_.push_back(times[k]);
            out.speeds_.push_back(s);
            out.breakpoints_.push_back(times[k + 1]);
        } else if (s == out.speeds_.back()) {
            out.breakpoints_.back() = times[k + 1];  // merge equal adjacent
        } else {
            out.speeds_.push_back(s);
            out.breakpoints_.push_back(times[k + 1]);
        }
    }
    while (!out.speeds_.empty() && out.speeds_.back() == 0.0) {
        out.speeds_.pop_back();
        out.breakpoints_.pop_back();
    }
    if (out.speeds_.empty()) out.breakpoints_.clear();
    return out;
}

double SpeedProfile::speed_at(double t) const {
    if (empty() || t < breakpoints_.front() || t >= breakpoints_.back()) return 0.0;
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    std::size_t idx = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    if (idx >= speeds_.size()) return 0.0;
    return speeds_[idx];
}

double SpeedProfile::integral(double a, double b) const {
    if (empty() || b <= a) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < speeds_.size(); ++i) {
        double lo = std::max(a, breakpoints_[i]);
        double hi = std::min(b, breakpoints_[i + 1]);
        if (hi > lo) total += speeds_[i] * (hi - lo);
    }
    return total;
}

double SpeedProfile::total_volume() const {
    double total = 0.0;
    for (std::size_t i = 0; i < speeds_.size(); ++i)
        total += speeds_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
    return total;
}

double SpeedProfile::max_speed() const {
    double m = 0.0;
    for (double s : speeds_) m = std::max(m, s);
    return m;
}

SpeedProfile SpeedProfile::scaled(double factor) const {
    if (factor < 0.0) throw std::invalid_argument("invalid-parameter: negative scale factor");
    std::vector<Segment> pieces;
    pieces.reserve(speeds_.size());
    for (std::size_t i = 0; i < speeds_.size(); ++i)
        pieces.push_back({breakpoints_[i], breakpoints_[i + 1], speeds_[i] * factor});
    return from_segments(std::move(pieces));
}

SpeedProfile SpeedProfile::sum(std::span<const SpeedProfile> parts) {
    std::vector<Segment> pieces;
    for (const SpeedProfile& p : parts)
        for (std::size_t i = 0; i < p.speeds_.size(); ++i)
            pieces.push_back({p.breakpoints_[i], p.breakpoints_[i + 1], p.speeds_[i]});
    return from_segments(std::move(pieces));
}

double SpeedProfile::max_difference(const SpeedProfile& a, const SpeedProfile& b) {
    std::vector<double> cuts;
    cuts.reserve(a.breakpoints_.size() + b.breakpoints_.size());
    cuts.insert(cuts.end(), a.breakpoints_.begin(), a.breakpoints_.end());
    cuts.insert(cuts.end(), b.breakpoints_.begin(), b.breakpoints_.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double mid = cuts[i] + (cuts[i + 1] - cuts[i]) / 2.0;
        worst = std::max(worst, std::fabs(a.speed_at(mid) - b.speed_at(mid)));
    }
    return worst;
}

double energy(const SpeedProfile& profile, double alpha) {
    if (alpha <= 1.0)
        throw std::invalid_argument("invalid-parameter: alpha must exceed 1");
    double total = 0.0;
    for (std::size_t i = 0; i < profile.segment_count(); ++i) {
        SpeedProfile::Segment s = profile.segment(i);
        total += std::pow(s.speed, alpha) * (s.end - s.start);
    }
    return total;
}

}  // namespace speedscale
