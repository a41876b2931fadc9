#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "dce/params.hpp"

namespace dce {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const;
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

// Raised-cosine (Tukey) taper for sampled trajectories. flat_fraction is the
// untapered middle portion; the two cosine ramps share the rest.
struct TaperWindow {
    double flat_fraction = 0.5;
};

struct UniformVelocity {
    Vec3 u;   // |u| < 1
    Vec3 r0;
};

// r(t) = r0 + amplitude * cos(nu0 t); zero mean displacement by construction.
struct HarmonicLine {
    Vec3 amplitude;
    double nu0 = 1.0;  // > 0
    Vec3 r0;
};

struct Sampled {
    std::vector<double> times;    // strictly increasing
    std::vector<Vec3> positions;
    TaperWindow window;
};

class Trajectory {
  public:
    static Trajectory uniform_velocity(Vec3 u, Vec3 r0);
    static Trajectory harmonic_line(Vec3 amplitude, double nu0, Vec3 r0);
    static Trajectory sampled(std::vector<double> times, std::vector<Vec3> positions,
                              TaperWindow window = {});

    bool is_uniform() const { return std::holds_alternative<UniformVelocity>(v_); }
    bool is_harmonic() const { return std::holds_alternative<HarmonicLine>(v_); }
    bool is_sampled() const { return std::holds_alternative<Sampled>(v_); }

    const UniformVelocity& uniform() const { return std::get<UniformVelocity>(v_); }
    const HarmonicLine& harmonic() const { return std::get<HarmonicLine>(v_); }
    const Sampled& sampled_data() const { return std::get<Sampled>(v_); }

  private:
    explicit Trajectory(std::variant<UniformVelocity, HarmonicLine, Sampled> v)
        : v_(std::move(v)) {}
    std::variant<UniformVelocity, HarmonicLine, Sampled> v_;
};

// Monochromatic center-of-mass motion decomposed against the plate normal
// (z axis). The squared amplitudes follow the convention that a line of
// amplitude A contributes a rate m(nu0) * A^2 / 2, i.e. m times the
// mean-square displacement.
struct LineSpectrum {
    double nu0;                     // > 0
    double amplitude_par_sq = 0.0;  // |A_parallel|^2
    double amplitude_perp_sq = 0.0; // |A_z|^2
};

// Asking for a pointwise number where the spectrum is a delta line.
class DistributionalSpectrumError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Small-oscillation expansion requested outside its validity.
class ExpansionInvalidError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// f(p, nu) = int dt e^{-i p.r(t)} e^{i nu t}. Distributional spectra are
// returned as tagged line labels (the coefficient c of c * 2pi delta(nu - line_freq)),
// never as pointwise numbers.
struct SpectrumValue {
    enum class Kind { Pointwise, Line };
    Kind kind = Kind::Pointwise;
    std::complex<double> value{0.0, 0.0};
    double line_freq = 0.0;  // only meaningful for Kind::Line
};

// Pointwise spectra: Sampled (windowed discrete-time quadrature).
// Line labels: UniformVelocity (single line at nu = p.u) and HarmonicLine
// (Bessel comb; the label returned is the harmonic line nearest nu).
SpectrumValue spectrum_f(const Trajectory& traj, const Vec3& p, double nu);

// Unwraps a pointwise value; throws DistributionalSpectrumError on a line
// label, directing the caller to the rate-based APIs.
std::complex<double> pointwise(const SpectrumValue& s);

// Coefficient c_n of the exact Bessel comb f = sum_n c_n 2pi delta(nu - n nu0)
// for harmonic motion, c_n = (-i)^n J_n(p.A) e^{-i p.r0}. n = 2 is the
// frequency-doubling diagnostic of the second-order term of f.
std::complex<double> harmonic_line_coefficient(const HarmonicLine& h, const Vec3& p, int n);

// First-order line decomposition of a harmonic trajectory.
LineSpectrum smallosc_lines(const Trajectory& traj);

// Angular average over p directions of the first-order emission weight at
// nu = p + omega_p, summed over the +/- frequency lines and per unit time:
//   f_sq(p) = sum_{s=+,-} <|f^(1)(p, s(p + omega_p))|^2> / T.
// The +/- sum is what makes the printed radial formula of the first-order
// rate reproduce the small-oscillation kernel m_p.
// HarmonicLine: narrow-Gaussian regularized line whose first moment in p is
// exact, so downstream radial integrals are width-independent.
// Sampled: direct numeric angular average. UniformVelocity: error.
double f_sq_angular_integrated(const Trajectory& traj, double p, double omega_p);

// Effective duration T_eff = int w(t)^2 dt of a tapered sampled trajectory.
double effective_time(const Sampled& s);

// Plain-text ingestion: whitespace-separated "t x y z" per line, '#' comments,
// strictly increasing t.
Trajectory load_sampled_trajectory(std::istream& in, TaperWindow window = {});
Trajectory load_sampled_trajectory(const std::string& path, TaperWindow window = {});

}  // namespace dce
