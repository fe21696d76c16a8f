#pragma once

// Modulation signal: time-ordered amplitude samples, linearly interpolated
// and held at the ends.

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fourdlo::script {

class Signal {
public:
    struct Sample {
        double t;
        double amplitude;
    };

    static Signal constant(double amplitude) { return Signal({{0.0, amplitude}}); }

    /// Samples must be non-empty with strictly increasing times; amplitudes are clamped to [0, 1].
    explicit Signal(std::vector<Sample> samples) : samples_(std::move(samples)) {
        if (samples_.empty()) throw std::invalid_argument("signal: no samples");
        for (std::size_t i = 1; i < samples_.size(); ++i)
            if (!(samples_[i].t > samples_[i - 1].t)) throw std::invalid_argument("signal: times must be strictly increasing");
        for (auto& s : samples_) s.amplitude = std::clamp(s.amplitude, 0.0, 1.0);
    }

    double at(double t) const {
        if (t <= samples_.front().t) return samples_.front().amplitude;
        if (t >= samples_.back().t) return samples_.back().amplitude;
        const auto hi = std::upper_bound(samples_.begin(), samples_.end(), t,
                                         [](double x, const Sample& s) { return x < s.t; });
        const auto lo = hi - 1;
        const double f = (t - lo->t) / (hi->t - lo->t);
        return lo->amplitude + f * (hi->amplitude - lo->amplitude);
    }

    const std::vector<Sample>& samples() const { return samples_; }

private:
    std::vector<Sample> samples_;
};

namespace detail {

inline bool parse_double(const std::string& s, double& out) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return false;
    const std::string trimmed = s.substr(b, e - b + 1);
    char* end = nullptr;
    out = std::strtod(trimmed.c_str(), &end);
    return end == trimmed.c_str() + trimmed.size();
}

}  // namespace detail

/// Reads "t,amplitude" lines. A first line that is not numeric is taken as a
/// header; blank lines are skipped. Throws std::invalid_argument naming the line.
inline Signal read_signal_csv(std::istream& in) {
    std::vector<Signal::Sample> samples;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto comma = line.find(',');
        double t = 0, a = 0;
        const bool ok = comma != std::string::npos && detail::parse_double(line.substr(0, comma), t) &&
                        detail::parse_double(line.substr(comma + 1), a);
        if (!ok) {
            if (samples.empty() && line_no == 1) continue;
            throw std::invalid_argument("signal line " + std::to_string(line_no) + ": expected 't,amplitude'");
        }
        if (!samples.empty() && !(t > samples.back().t))
            throw std::invalid_argument("signal line " + std::to_string(line_no) + ": times must be strictly increasing");
        samples.push_back({t, a});
    }
    if (samples.empty()) throw std::invalid_argument("signal: no samples");
    return Signal(std::move(samples));
}

inline Signal parse_signal_csv(const std::string& text) {
    std::istringstream in(text);
    return read_signal_csv(in);
}

}  // namespace fourdlo::script
