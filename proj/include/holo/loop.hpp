// loop.hpp — closed drive loops Ω_a(t) = |Ω_d| f(t) ω_a and their complex profiles f

#pragma once

#include "holo/linalg.hpp"
#include "holo/model.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace holo {

/// Radial time warp: linear, or power(k) replacing t/t₁ with (t/t₁)^k.
struct Schedule {
    double k = 1.0;

    static Schedule linear() { return {1.0}; }
    static Schedule power(double k) { return {k}; }
    bool is_linear() const { return k == 1.0; }
    std::string name() const;
    static Schedule parse(const std::string& s);
};

/// Scalar function of time with its derivative.
struct TimeFunction {
    std::function<double(double)> value;
    std::function<double(double)> rate;

    static TimeFunction constant(double c);
};

class LoopProfile {
public:
    virtual ~LoopProfile() = default;
    virtual double duration() const = 0;
    virtual cplx value(double t) const = 0;
    virtual cplx rate(double t) const = 0;
    /// Segment boundaries including 0 and T, ascending.
    virtual std::vector<double> breakpoints() const = 0;
};

struct PacmanParams {
    double R = 5.0;
    double beta = kPi;
    double t1 = 10.0;
    double t2 = 10.0;
    Schedule schedule{};
    int wraps = 0;  // extra full turns added to the arc

    double duration() const { return 2.0 * t1 + t2; }
    double arc_angle() const { return beta + 2.0 * kPi * wraps; }
    void validate() const;
};

class PacmanProfile final : public LoopProfile {
public:
    explicit PacmanProfile(PacmanParams p);
    double duration() const override { return p_.duration(); }
    cplx value(double t) const override;
    cplx rate(double t) const override;
    std::vector<double> breakpoints() const override;
    const PacmanParams& params() const { return p_; }

private:
    PacmanParams p_;
};

/// Piecewise-linear interpolation through samples (t_k, f_k).
class SampledProfile final : public LoopProfile {
public:
    SampledProfile(std::vector<double> times, std::vector<cplx> values);
    double duration() const override { return times_.back() - times_.front(); }
    cplx value(double t) const override;
    cplx rate(double t) const override;
    std::vector<double> breakpoints() const override;
    const std::vector<cplx>& samples() const { return values_; }

private:
    std::size_t segment(double t) const;
    std::vector<double> times_;
    std::vector<cplx> values_;
};

/// Closed-form profile given by value and derivative callables.
class FunctionProfile final : public LoopProfile {
public:
    FunctionProfile(double T, std::function<cplx(double)> f, std::function<cplx(double)> fdot,
                    std::vector<double> interior_breaks = {});
    double duration() const override { return T_; }
    cplx value(double t) const override { return f_(t); }
    cplx rate(double t) const override { return fdot_(t); }
    std::vector<double> breakpoints() const override;

private:
    double T_;
    std::function<cplx(double)> f_;
    std::function<cplx(double)> fdot_;
    std::vector<double> breaks_;
};

/// g(t) = f(s(t)) for a strictly increasing warp s: [0, T'] -> [0, T].
class ReparametrizedProfile final : public LoopProfile {
public:
    ReparametrizedProfile(std::shared_ptr<const LoopProfile> base, double new_duration, TimeFunction warp);
    double duration() const override { return T_; }
    cplx value(double t) const override;
    cplx rate(double t) const override;
    std::vector<double> breakpoints() const override;

private:
    std::shared_ptr<const LoopProfile> base_;
    double T_;
    TimeFunction warp_;
};

class ReversedProfile final : public LoopProfile {
public:
    explicit ReversedProfile(std::shared_ptr<const LoopProfile> base) : base_(std::move(base)) {}
    double duration() const override { return base_->duration(); }
    cplx value(double t) const override { return base_->value(duration() - t); }
    cplx rate(double t) const override { return -base_->rate(duration() - t); }
    std::vector<double> breakpoints() const override;

private:
    std::shared_ptr<const LoopProfile> base_;
};

class ConcatenatedProfile final : public LoopProfile {
public:
    explicit ConcatenatedProfile(std::vector<std::shared_ptr<const LoopProfile>> parts);
    double duration() const override { return offsets_.back(); }
    cplx value(double t) const override;
    cplx rate(double t) const override;
    std::vector<double> breakpoints() const override;

private:
    std::size_t part(double t) const;
    std::vector<std::shared_ptr<const LoopProfile>> parts_;
    std::vector<double> offsets_;
};

/// f̃ = (1+ε) f e^{iφ}.
class PerturbedProfile final : public LoopProfile {
public:
    PerturbedProfile(std::shared_ptr<const LoopProfile> base, TimeFunction epsilon, TimeFunction phi);
    double duration() const override { return base_->duration(); }
    cplx value(double t) const override;
    cplx rate(double t) const override;
    std::vector<double> breakpoints() const override { return base_->breakpoints(); }

private:
    std::shared_ptr<const LoopProfile> base_;
    TimeFunction eps_;
    TimeFunction phi_;
};

struct TimeSegment {
    double begin;
    double end;
    int steps;
};

class Loop {
public:
    Loop(std::shared_ptr<const LoopProfile> profile, std::vector<cplx> direction);

    static Loop pacman(const PacmanParams& p, std::vector<cplx> direction);
    static Loop constant_zero(double T, std::vector<cplx> direction);

    int d() const { return static_cast<int>(omega_.size()); }
    double duration() const { return profile_->duration(); }
    cplx f(double t) const { return profile_->value(t); }
    cplx fdot(double t) const { return profile_->rate(t); }
    const std::vector<cplx>& direction() const { return omega_; }
    CVector direction_vector() const;
    const std::shared_ptr<const LoopProfile>& profile() const { return profile_; }
    std::vector<double> breakpoints() const { return profile_->breakpoints(); }

    /// Pacman metadata when the profile is an unmodified pacman loop.
    std::optional<PacmanParams> pacman_params() const;

    ParameterPoint point(const ModelConfig& cfg, double t) const;
    /// dλ/dt at t.
    std::vector<double> velocity(const ModelConfig& cfg, double t) const;

    bool is_closed(double tol = 1e-12) const;
    Loop with_profile(std::shared_ptr<const LoopProfile> profile) const;
    Loop reversed() const;

    /// Distributes `steps` uniform-per-segment steps across the breakpoints,
    /// proportionally to segment length, at least one per segment.
    std::vector<TimeSegment> segment_grid(int steps) const;

private:
    std::shared_ptr<const LoopProfile> profile_;
    std::vector<cplx> omega_;
};

}  // namespace holo
