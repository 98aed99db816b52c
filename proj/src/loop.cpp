#include "holo/loop.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace holo {

std::string Schedule::name() const {
    if (is_linear()) return "linear";
    std::ostringstream s;
    s << "power(" << k << ")";
    return s.str();
}

Schedule Schedule::parse(const std::string& s) {
    if (s == "linear") return linear();
    if (s.rfind("power(", 0) == 0 && s.back() == ')') {
        const std::string inner = s.substr(6, s.size() - 7);
        std::size_t pos = 0;
        double k = 0.0;
        try {
            k = std::stod(inner, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == inner.size() && k >= 1.0) return power(k);
    }
    throw std::invalid_argument("unknown schedule '" + s + "' (expected linear or power(k), k >= 1)");
}

TimeFunction TimeFunction::constant(double c) {
    return {[c](double) { return c; }, [](double) { return 0.0; }};
}

void PacmanParams::validate() const {
    require(R > 0.0, "pacman: R must be > 0");
    require(beta > 0.0 && beta <= 2.0 * kPi, "pacman: beta must lie in (0, 2pi]");
    require(t1 > 0.0 && t2 > 0.0, "pacman: t1 and t2 must be > 0");
    require(schedule.k >= 1.0, "pacman: schedule exponent must be >= 1");
    require(wraps >= 0, "pacman: wraps must be >= 0");
}

PacmanProfile::PacmanProfile(PacmanParams p) : p_(p) { p_.validate(); }

cplx PacmanProfile::value(double t) const {
    const double k = p_.schedule.k;
    const double T = p_.duration();
    if (t <= p_.t1) return p_.R * std::pow(std::max(t, 0.0) / p_.t1, k);
    if (t <= p_.t1 + p_.t2) return p_.R * std::polar(1.0, p_.arc_angle() * (t - p_.t1) / p_.t2);
    return p_.R * std::pow(std::max(T - t, 0.0) / p_.t1, k) * std::polar(1.0, p_.arc_angle());
}

// One-sided at the junctions: the right-hand segment wins.
cplx PacmanProfile::rate(double t) const {
    const double k = p_.schedule.k;
    const double T = p_.duration();
    if (t < p_.t1) return p_.R * k * std::pow(std::max(t, 0.0) / p_.t1, k - 1.0) / p_.t1;
    if (t < p_.t1 + p_.t2) {
        const double w = p_.arc_angle() / p_.t2;
        return kI * w * p_.R * std::polar(1.0, w * (t - p_.t1));
    }
    return -p_.R * k * std::pow(std::max(T - t, 0.0) / p_.t1, k - 1.0) / p_.t1 *
           std::polar(1.0, p_.arc_angle());
}

std::vector<double> PacmanProfile::breakpoints() const {
    return {0.0, p_.t1, p_.t1 + p_.t2, p_.duration()};
}

SampledProfile::SampledProfile(std::vector<double> times, std::vector<cplx> values)
    : times_(std::move(times)), values_(std::move(values)) {
    require(times_.size() >= 3, "samples: need at least three points");
    require(times_.size() == values_.size(), "samples: times and values differ in length");
    require(times_.front() == 0.0, "samples: first time must be 0");
    for (std::size_t i = 1; i < times_.size(); ++i)
        require(times_[i] > times_[i - 1], "samples: times must be strictly increasing");
}

std::size_t SampledProfile::segment(double t) const {
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t i = it == times_.begin() ? 0 : static_cast<std::size_t>(it - times_.begin()) - 1;
    return std::min(i, times_.size() - 2);
}

cplx SampledProfile::value(double t) const {
    const std::size_t i = segment(t);
    const double u = (t - times_[i]) / (times_[i + 1] - times_[i]);
    return values_[i] + u * (values_[i + 1] - values_[i]);
}

cplx SampledProfile::rate(double t) const {
    const std::size_t i = segment(t);
    return (values_[i + 1] - values_[i]) / (times_[i + 1] - times_[i]);
}

std::vector<double> SampledProfile::breakpoints() const { return times_; }

FunctionProfile::FunctionProfile(double T, std::function<cplx(double)> f, std::function<cplx(double)> fdot,
                                 std::vector<double> interior_breaks)
    : T_(T), f_(std::move(f)), fdot_(std::move(fdot)), breaks_(std::move(interior_breaks)) {
    require(T_ > 0.0, "function profile: duration must be > 0");
    std::sort(breaks_.begin(), breaks_.end());
    for (double b : breaks_) require(b > 0.0 && b < T_, "function profile: breakpoints must lie in (0, T)");
}

std::vector<double> FunctionProfile::breakpoints() const {
    std::vector<double> out{0.0};
    out.insert(out.end(), breaks_.begin(), breaks_.end());
    out.push_back(T_);
    return out;
}

ReparametrizedProfile::ReparametrizedProfile(std::shared_ptr<const LoopProfile> base, double new_duration,
                                             TimeFunction warp)
    : base_(std::move(base)), T_(new_duration), warp_(std::move(warp)) {
    require(T_ > 0.0, "reparametrization: duration must be > 0");
    require(std::abs(warp_.value(0.0)) < 1e-12 && std::abs(warp_.value(T_) - base_->duration()) < 1e-9,
            "reparametrization: warp must map [0, T'] onto [0, T]");
}

cplx ReparametrizedProfile::value(double t) const { return base_->value(warp_.value(t)); }

cplx ReparametrizedProfile::rate(double t) const {
    return base_->rate(warp_.value(t)) * warp_.rate(t);
}

std::vector<double> ReparametrizedProfile::breakpoints() const {
    const auto inner = base_->breakpoints();
    std::vector<double> out{0.0};
    for (std::size_t i = 1; i + 1 < inner.size(); ++i) {
        const double target = inner[i];
        auto g = [&](double t) { return warp_.value(t) - target; };
        boost::math::tools::eps_tolerance<double> tol(52);
        std::uintmax_t iters = 200;
        const auto [lo, hi] = boost::math::tools::toms748_solve(g, 0.0, T_, tol, iters);
        out.push_back(0.5 * (lo + hi));
    }
    out.push_back(T_);
    return out;
}

std::vector<double> ReversedProfile::breakpoints() const {
    auto b = base_->breakpoints();
    const double T = duration();
    for (double& x : b) x = T - x;
    std::reverse(b.begin(), b.end());
    return b;
}

ConcatenatedProfile::ConcatenatedProfile(std::vector<std::shared_ptr<const LoopProfile>> parts)
    : parts_(std::move(parts)) {
    require(!parts_.empty(), "concatenation: no parts");
    offsets_.push_back(0.0);
    for (const auto& p : parts_) offsets_.push_back(offsets_.back() + p->duration());
}

std::size_t ConcatenatedProfile::part(double t) const {
    for (std::size_t i = 0; i + 1 < parts_.size(); ++i)
        if (t < offsets_[i + 1]) return i;
    return parts_.size() - 1;
}

cplx ConcatenatedProfile::value(double t) const {
    const std::size_t i = part(t);
    return parts_[i]->value(t - offsets_[i]);
}

cplx ConcatenatedProfile::rate(double t) const {
    const std::size_t i = part(t);
    return parts_[i]->rate(t - offsets_[i]);
}

std::vector<double> ConcatenatedProfile::breakpoints() const {
    std::vector<double> out{0.0};
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        const auto b = parts_[i]->breakpoints();
        for (std::size_t j = 1; j < b.size(); ++j) out.push_back(offsets_[i] + b[j]);
    }
    return out;
}

PerturbedProfile::PerturbedProfile(std::shared_ptr<const LoopProfile> base, TimeFunction epsilon,
                                   TimeFunction phi)
    : base_(std::move(base)), eps_(std::move(epsilon)), phi_(std::move(phi)) {}

cplx PerturbedProfile::value(double t) const {
    return (1.0 + eps_.value(t)) * base_->value(t) * std::polar(1.0, phi_.value(t));
}

cplx PerturbedProfile::rate(double t) const {
    const cplx f = base_->value(t);
    const cplx phase = std::polar(1.0, phi_.value(t));
    const double e = eps_.value(t);
    return (eps_.rate(t) * f + (1.0 + e) * base_->rate(t) + (1.0 + e) * f * kI * phi_.rate(t)) * phase;
}

// ---------------------------------------------------------------------------

Loop::Loop(std::shared_ptr<const LoopProfile> profile, std::vector<cplx> direction)
    : profile_(std::move(profile)), omega_(std::move(direction)) {
    require(profile_ != nullptr, "loop: missing profile");
    require(omega_.size() >= 2, "loop: direction must have length d >= 2");
    double n = 0.0;
    for (const auto& w : omega_) n += std::norm(w);
    require(std::abs(n - 1.0) <= 1e-12, "loop: direction must be a unit vector");
}

Loop Loop::pacman(const PacmanParams& p, std::vector<cplx> direction) {
    return Loop(std::make_shared<PacmanProfile>(p), std::move(direction));
}

Loop Loop::constant_zero(double T, std::vector<cplx> direction) {
    return Loop(std::make_shared<FunctionProfile>(
                    T, [](double) { return cplx{}; }, [](double) { return cplx{}; }),
                std::move(direction));
}

CVector Loop::direction_vector() const {
    CVector v(d());
    for (int a = 0; a < d(); ++a) v(a) = omega_[static_cast<std::size_t>(a)];
    return v;
}

std::optional<PacmanParams> Loop::pacman_params() const {
    if (const auto* p = dynamic_cast<const PacmanProfile*>(profile_.get())) return p->params();
    return std::nullopt;
}

ParameterPoint Loop::point(const ModelConfig& cfg, double t) const {
    require(cfg.d == d(), "loop: direction length does not match d");
    const cplx s = cfg.omega_d_abs() * f(t);
    std::vector<cplx> amp(omega_.size());
    for (std::size_t a = 0; a < omega_.size(); ++a) amp[a] = s * omega_[a];
    return ParameterPoint::from_amplitudes(amp);
}

std::vector<double> Loop::velocity(const ModelConfig& cfg, double t) const {
    const cplx s = cfg.omega_d_abs() * fdot(t);
    const std::size_t n = omega_.size();
    std::vector<double> v(2 * n);
    for (std::size_t a = 0; a < n; ++a) {
        const cplx x = s * omega_[a];
        v[a] = x.real();
        v[a + n] = x.imag();
    }
    return v;
}

bool Loop::is_closed(double tol) const {
    return std::abs(f(0.0)) <= tol && std::abs(f(duration())) <= tol;
}

Loop Loop::with_profile(std::shared_ptr<const LoopProfile> profile) const {
    return Loop(std::move(profile), omega_);
}

Loop Loop::reversed() const { return with_profile(std::make_shared<ReversedProfile>(profile_)); }

std::vector<TimeSegment> Loop::segment_grid(int steps) const {
    const auto b = breakpoints();
    const std::size_t nseg = b.size() - 1;
    require(steps >= static_cast<int>(nseg), "segment_grid: fewer steps than segments");
    const double T = duration();
    std::vector<TimeSegment> out;
    int used = 0;
    for (std::size_t i = 0; i < nseg; ++i) {
        const int n = std::max(1, static_cast<int>(std::lround(steps * (b[i + 1] - b[i]) / T)));
        out.push_back({b[i], b[i + 1], n});
        used += n;
    }
    // absorb rounding into the longest segment
    auto longest = std::max_element(out.begin(), out.end(), [](const TimeSegment& x, const TimeSegment& y) {
        return x.end - x.begin < y.end - y.begin;
    });
    longest->steps = std::max(1, longest->steps + steps - used);
    return out;
}

}  // namespace holo
