#include "dce/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dce/quad.hpp"

namespace dce {

namespace {

// J_n extended to negative order/argument through the reflection identities.
double bessel_jn(int n, double x) {
    double sign = 1.0;
    if (n < 0) {
        n = -n;
        if (n % 2 == 1) sign = -sign;
    }
    if (x < 0.0) {
        x = -x;
        if (n % 2 == 1) sign = -sign;
    }
    return sign * std::cyl_bessel_j(static_cast<double>(n), x);
}

std::complex<double> minus_i_pow(int n) {
    // (-i)^n
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

double taper_value(const TaperWindow& w, double s) {
    // s in [0, 1] along the record; raised-cosine ramps outside the flat core
    const double flat = std::clamp(w.flat_fraction, 0.0, 1.0);
    const double ramp = 0.5 * (1.0 - flat);
    if (ramp == 0.0) return 1.0;
    if (s < ramp) return 0.5 * (1.0 - std::cos(M_PI * s / ramp));
    if (s > 1.0 - ramp) return 0.5 * (1.0 - std::cos(M_PI * (1.0 - s) / ramp));
    return 1.0;
}

void validate_sampled(const Sampled& s) {
    if (s.times.size() < 2) throw std::invalid_argument("sampled trajectory: need >= 2 samples");
    if (s.times.size() != s.positions.size())
        throw std::invalid_argument("sampled trajectory: times/positions size mismatch");
    for (size_t i = 0; i + 1 < s.times.size(); ++i) {
        if (!(s.times[i] < s.times[i + 1]))
            throw std::invalid_argument("sampled trajectory: times must strictly increase");
        const double dt = s.times[i + 1] - s.times[i];
        const Vec3 dr = s.positions[i + 1] - s.positions[i];
        if (!(dr.norm() / dt < 1.0))
            throw std::invalid_argument("sampled trajectory: finite-difference speed >= 1");
    }
    for (size_t i = 0; i < s.times.size(); ++i)
        if (!std::isfinite(s.times[i]) || !std::isfinite(s.positions[i].x) ||
            !std::isfinite(s.positions[i].y) || !std::isfinite(s.positions[i].z))
            throw std::invalid_argument("sampled trajectory: non-finite sample");
}

}  // namespace

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Trajectory Trajectory::uniform_velocity(Vec3 u, Vec3 r0) {
    if (!(u.norm() < 1.0))
        throw std::invalid_argument("uniform_velocity: need |u| < 1");
    return Trajectory{UniformVelocity{u, r0}};
}

Trajectory Trajectory::harmonic_line(Vec3 amplitude, double nu0, Vec3 r0) {
    if (!(nu0 > 0.0) || !std::isfinite(nu0))
        throw std::invalid_argument("harmonic_line: need nu0 > 0");
    if (!(amplitude.norm() * nu0 < 1.0))
        throw std::invalid_argument("harmonic_line: peak speed |A| nu0 must stay below 1");
    return Trajectory{HarmonicLine{amplitude, nu0, r0}};
}

Trajectory Trajectory::sampled(std::vector<double> times, std::vector<Vec3> positions,
                               TaperWindow window) {
    Sampled s{std::move(times), std::move(positions), window};
    validate_sampled(s);
    return Trajectory{std::move(s)};
}

std::complex<double> harmonic_line_coefficient(const HarmonicLine& h, const Vec3& p, int n) {
    const std::complex<double> phase{std::cos(-p.dot(h.r0)), std::sin(-p.dot(h.r0))};
    return minus_i_pow(n) * bessel_jn(n, p.dot(h.amplitude)) * phase;
}

SpectrumValue spectrum_f(const Trajectory& traj, const Vec3& p, double nu) {
    if (traj.is_uniform()) {
        const auto& u = traj.uniform();
        const std::complex<double> phase{std::cos(-p.dot(u.r0)), std::sin(-p.dot(u.r0))};
        return SpectrumValue{SpectrumValue::Kind::Line, phase, p.dot(u.u)};
    }
    if (traj.is_harmonic()) {
        const auto& h = traj.harmonic();
        const int n = static_cast<int>(std::llround(nu / h.nu0));
        return SpectrumValue{SpectrumValue::Kind::Line, harmonic_line_coefficient(h, p, n),
                             n * h.nu0};
    }

    const Sampled& s = traj.sampled_data();
    const double t0 = s.times.front(), t1 = s.times.back();
    const double span = t1 - t0;
    // trapezoid over the samples of w(t) e^{-i p.r(t)} e^{i nu t}
    std::complex<double> acc{0.0, 0.0};
    auto term = [&](size_t i) {
        const double w = taper_value(s.window, (s.times[i] - t0) / span);
        const double ph = nu * s.times[i] - p.dot(s.positions[i]);
        return w * std::complex<double>{std::cos(ph), std::sin(ph)};
    };
    std::complex<double> prev = term(0);
    for (size_t i = 1; i < s.times.size(); ++i) {
        const std::complex<double> cur = term(i);
        acc += 0.5 * (s.times[i] - s.times[i - 1]) * (prev + cur);
        prev = cur;
    }
    return SpectrumValue{SpectrumValue::Kind::Pointwise, acc, 0.0};
}

std::complex<double> pointwise(const SpectrumValue& s) {
    if (s.kind != SpectrumValue::Kind::Pointwise)
        throw DistributionalSpectrumError(
            "spectrum is a delta line at nu = " + std::to_string(s.line_freq) +
            "; use the rate-based line APIs instead of pointwise evaluation");
    return s.value;
}

LineSpectrum smallosc_lines(const Trajectory& traj) {
    if (!traj.is_harmonic())
        throw ExpansionInvalidError(
            "smallosc_lines: small-amplitude line decomposition requires a harmonic "
            "trajectory (sampled/uniform motion has no single-line expansion)");
    const auto& h = traj.harmonic();
    const double par_sq = h.amplitude.x * h.amplitude.x + h.amplitude.y * h.amplitude.y;
    const double perp_sq = h.amplitude.z * h.amplitude.z;
    return LineSpectrum{h.nu0, par_sq, perp_sq};
}

double effective_time(const Sampled& s) {
    const double t0 = s.times.front(), span = s.times.back() - t0;
    double acc = 0.0;
    auto w2 = [&](size_t i) {
        const double w = taper_value(s.window, (s.times[i] - t0) / span);
        return w * w;
    };
    double prev = w2(0);
    for (size_t i = 1; i < s.times.size(); ++i) {
        const double cur = w2(i);
        acc += 0.5 * (s.times[i] - s.times[i - 1]) * (prev + cur);
        prev = cur;
    }
    return acc;
}

double f_sq_angular_integrated(const Trajectory& traj, double p, double omega_p) {
    if (!(p >= 0.0) || !(omega_p > 0.0))
        throw std::domain_error("f_sq_angular_integrated: need p >= 0 and omega_p > 0");

    if (traj.is_uniform())
        throw DistributionalSpectrumError(
            "f_sq_angular_integrated: uniform motion has a purely distributional spectrum; "
            "use the friction rate API");

    if (traj.is_harmonic()) {
        // First order in the amplitude: lines at +-nu0 only. The one-sided
        // line sits at p* = nu0 - omega_p; both signs of the frequency
        // argument contribute equally, giving the weight
        //   f_sq(p) = (2 pi / 3) |A|^2 p^2 delta(p - p*),
        // regularized as a narrow Gaussian with the p^2 factor frozen at p*
        // so the radial first moment is exact at any width.
        const auto& h = traj.harmonic();
        const double p_star = h.nu0 - omega_p;
        if (p_star <= 0.0) return 0.0;
        const double amp_sq = h.amplitude.dot(h.amplitude);
        const double sigma = p_star / 64.0;
        const double t = (p - p_star) / sigma;
        if (std::abs(t) > 40.0) return 0.0;
        const double gauss = std::exp(-0.5 * t * t) / (sigma * std::sqrt(2.0 * M_PI));
        return (2.0 * M_PI / 3.0) * amp_sq * p_star * p_star * gauss;
    }

    // Sampled: 2 <|f(p, p + omega_p)|^2> / T_eff, Gauss-Legendre x trapezoid
    // over the sphere directions.
    const Sampled& s = traj.sampled_data();
    const double nu = p + omega_p;
    const double t_eff = effective_time(s);

    // 12-point Gauss-Legendre abscissae/weights on [-1, 1] for cos(theta)
    static const double gx[6] = {0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
                                 0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
    static const double gw[6] = {0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                                 0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

    const int n_phi = 16;
    double acc = 0.0;
    double wsum = 0.0;
    for (int i = 0; i < 12; ++i) {
        const double ct = (i < 6) ? -gx[i] : gx[i - 6];
        const double wc = (i < 6) ? gw[i] : gw[i - 6];
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int k = 0; k < n_phi; ++k) {
            const double phi = 2.0 * M_PI * (k + 0.5) / n_phi;
            const Vec3 dir{st * std::cos(phi), st * std::sin(phi), ct};
            const std::complex<double> f = pointwise(spectrum_f(traj, dir * p, nu));
            acc += wc * std::norm(f);
            wsum += wc;
        }
    }
    return 2.0 * (acc / wsum) / t_eff;
}

Trajectory load_sampled_trajectory(std::istream& in, TaperWindow window) {
    std::vector<double> times;
    std::vector<Vec3> positions;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        double t;
        Vec3 r;
        if (!(row >> t >> r.x >> r.y >> r.z))
            throw std::invalid_argument("sampled trajectory: malformed line " +
                                        std::to_string(line_no));
        if (!times.empty() && !(t > times.back()))
            throw std::invalid_argument("sampled trajectory: t must strictly increase (line " +
                                        std::to_string(line_no) + ")");
        times.push_back(t);
        positions.push_back(r);
    }
    return Trajectory::sampled(std::move(times), std::move(positions), window);
}

Trajectory load_sampled_trajectory(const std::string& path, TaperWindow window) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trajectory file: " + path);
    return load_sampled_trajectory(in, window);
}

}  // namespace dce
