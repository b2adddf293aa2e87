#ifndef SPEEDSCALE_PROFILE_HPP
#define SPEEDSCALE_PROFILE_HPP

#include <span>
#include <vector>

namespace speedscale {

/// Piecewise-constant nonnegative speed function over real time.
/// Outside the stored breakpoint range the speed is zero. Profiles are
/// normalized on construction: zero-length segments are dropped, adjacent
/// segments with equal speed are merged, and leading/trailing zero-speed
/// segments are trimmed, so equal functions compare equal.
class SpeedProfile {
public:
    struct Segment {
        double start;
        double end;
        double speed;
    };

    SpeedProfile() = default;

    /// Builds the pointwise sum of possibly overlapping constant-speed
    /// pieces.
    static SpeedProfile from_segments(std::vector<Segment> pieces);

    bool empty() const { return speeds_.empty(); }
    std::size_t segment_count() const { return speeds_.size(); }
    Segment segment(std::size_t i) const {
        return {breakpoints_[i], breakpoints_[i + 1], speeds_[i]};
    }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& speeds() const { return speeds_; }

    double speed_at(double t) const;
    /// Processed volume over [a, b).
    double integral(double a, double b) const;
    double total_volume() const;
    double max_speed() const;
    double start() const { return empty() ? 0.0 : breakpoints_.front(); }
    double end() const { return empty() ? 0.0 : breakpoints_.back(); }

    SpeedProfile scaled(double factor) const;

    static SpeedProfile sum(std::span<const SpeedProfile> parts);

    /// Largest |a(t) - b(t)| over all t.
    static double max_difference(const SpeedProfile& a, const SpeedProfile& b);

    bool operator==(const SpeedProfile&) const = default;

private:
    std::vector<double> breakpoints_;  // ascending, size = speeds_.size() + 1
    std::vector<double> speeds_;
};

/// Energy of a profile, integral of s(t)^alpha. Requires alpha > 1.
double energy(const SpeedProfile& profile, double alpha);

}  // namespace speedscale

#endif
