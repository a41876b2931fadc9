#include "dce/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "dce/free_space.hpp"
#include "dce/friction.hpp"
#include "dce/plate_response.hpp"
#include "dce/sweep.hpp"
#include "dce/trajectory.hpp"

namespace dce::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// least-squares slope of y against x
double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string fmt(double v) { return cli::format_value(v); }

struct Runner {
    SuiteResult result;
    std::ostream& out;
    std::string scratch;

    Runner(std::ostream& o, std::string s) : out(o), scratch(std::move(s)) {}

    void record(int index, const std::string& name, bool passed, const std::string& detail) {
        result.criteria.push_back({index, name, passed, detail});
        out << (passed ? "PASS" : "FAIL") << "  " << index << ". " << name << "  [" << detail
            << "]\n";
        out.flush();
    }

    template <typename Fn>
    void criterion(int index, const std::string& name, Fn&& fn) {
        try {
            auto [passed, detail] = fn();
            record(index, name, passed, detail);
        } catch (const std::exception& e) {
            record(index, name, false, std::string("exception: ") + e.what());
        }
    }
};

}  // namespace

bool SuiteResult::all_passed() const {
    for (const auto& c : criteria)
        if (!c.passed) return false;
    return !criteria.empty();
}

SuiteResult run_all(std::ostream& out, const std::string& scratch_dir) {
    Runner r(out, scratch_dir);
    using Check = std::pair<bool, std::string>;

    // 1. first-order threshold law
    r.criterion(1, "threshold law of m_p", [&]() -> Check {
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> ug(0.1, 2.0), uw(0.5, 3.0), u01(0.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const AtomParams atom(ug(rng), uw(rng));
            const double nu_below = u01(rng) * atom.omega_p;
            if (m_p_first_order(atom, nu_below) != 0.0)
                return {false, "nonzero below threshold at nu=" + fmt(nu_below)};
            const double nu_above = atom.omega_p * (1.0 + 9.0 * u01(rng));
            const double k = nu_above - atom.omega_p;
            const double direct =
                atom.g * atom.g / (12.0 * M_PI * atom.omega_p) * k * k * k;
            const double got = m_p_first_order(atom, nu_above);
            worst = std::max(worst, std::abs(got - direct) / std::abs(direct));
        }
        return {worst <= 1e-14, "max rel diff above threshold " + fmt(worst)};
    });

    // 2. low-frequency nu^5 scaling of Sigma_ren
    r.criterion(2, "Sigma_ren low-frequency slope = 5 +- 0.10", [&]() -> Check {
        std::vector<double> lx, ly;
        for (int i = 0; i < 20; ++i) {
            const double nu = 0.01 * std::pow(10.0, i / 19.0);
            lx.push_back(std::log(nu));
            ly.push_back(std::log(sigma_ren_total(nu, 1e-12).value));
        }
        const double slope = lsq_slope(lx, ly);
        return {std::abs(slope - 5.0) <= 0.10, "slope " + fmt(slope)};
    });

    // 3. high-frequency -(nu/Omega)^3 behaviour
    r.criterion(3, "Sigma_ren high-frequency slope = 3 +- 0.15, negative", [&]() -> Check {
        std::vector<double> lx, ly;
        bool all_negative = true;
        for (int i = 0; i < 10; ++i) {
            const double nu = 50.0 * std::pow(4.0, i / 9.0);
            const double total = sigma_ren_total(nu, 1e-12).value;
            all_negative = all_negative && total < 0.0;
            lx.push_back(std::log(nu));
            ly.push_back(std::log(std::abs(total)));
        }
        const double slope = lsq_slope(lx, ly);
        return {all_negative && std::abs(slope - 3.0) <= 0.15,
                "slope " + fmt(slope) + (all_negative ? ", all negative" : ", SIGN ERROR")};
    });

    // 4. pointwise pole cancellation of the combined integrand
    r.criterion(4, "combined Sigma integrand finite at q = Omega", [&]() -> Check {
        std::ostringstream detail;
        bool ok = true;
        for (const double nu : {1.5, 2.0, 5.0}) {
            double d[3];
            const double eps[3] = {1e-3, 1e-4, 1e-5};
            for (int i = 0; i < 3; ++i)
                d[i] = std::abs(sigma_combined_integrand(1.0 + eps[i], nu) -
                                sigma_combined_integrand(1.0 - eps[i], nu));
            const bool shrink = d[1] <= 0.3 * d[0] && d[2] <= 0.3 * d[1];
            ok = ok && shrink;
            detail << "nu=" << nu << " d=" << fmt(d[0]) << "/" << fmt(d[1]) << "/" << fmt(d[2])
                   << "; ";
        }
        return {ok, detail.str()};
    });

    // 5. sigma oracle agreement
    r.criterion(5, "sigma_ren vs Romberg oracle", [&]() -> Check {
        const auto t0 = Clock::now();
        std::mt19937 rng(777);
        std::uniform_real_distribution<double> below(0.02, 0.97), above(1.1, 8.0);
        double worst_below = 0.0, worst_above = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double nu = below(rng);
            const double main = sigma_ren_total(nu, 1e-12).value;
            const double orc = oracle::oracle_sigma(nu, 131072);
            worst_below = std::max(worst_below, oracle::rel_diff(main, orc));
            if (i < 3)
                r.result.reports.push_back(oracle::make_report(
                    "sigma_ren(nu_tilde=" + fmt(nu) + ")", main, orc, "fixed-grid Romberg"));
        }
        for (int i = 0; i < 10; ++i) {
            const double nu = above(rng);
            const double main = sigma_ren_total(nu, 1e-12).value;
            const double orc = oracle::oracle_sigma(nu, 131072);
            worst_above = std::max(worst_above, oracle::rel_diff(main, orc));
            if (i < 3)
                r.result.reports.push_back(oracle::make_report(
                    "sigma_ren(nu_tilde=" + fmt(nu) + ")", main, orc,
                    "fixed-grid Romberg, paired about the pole"));
        }
        const double dt = seconds_since(t0);
        const bool ok = worst_below <= 1e-6 && worst_above <= 1e-5 && dt < 60.0;
        return {ok, "rel " + fmt(worst_below) + " below / " + fmt(worst_above) + " above, " +
                        fmt(dt) + " s"};
    });

    // 6. Si identity of the threshold coefficients
    r.criterion(6, "B_par + B_perp = Si(2x) to 1e-12", [&]() -> Check {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double x = 1e-3 * std::pow(1e6, i / 49.0);
            worst = std::max(worst, std::abs(coeff_B_parallel(x) + coeff_B_perp(x) -
                                             sine_integral(2.0 * x)));
        }
        return {worst <= 1e-12, "max abs residual " + fmt(worst)};
    });

    // 7. lossless closed form of the A coefficients
    r.criterion(7, "A coefficients -> closed form as xi -> 0", [&]() -> Check {
        std::ostringstream detail;
        bool ok = true;
        const double pairs[3][2] = {{2.0, 1.0}, {1.0, 2.0}, {4.0, 0.5}};
        for (const auto& p : pairs) {
            const double omega_m = p[0], a = p[1];
            const double closed = coeff_A_closed_form_xi0(omega_m, a);
            const double apar = coeff_A_parallel(1e-4, omega_m, a, 1e-11).value;
            const double aperp = coeff_A_perp(1e-4, omega_m, a, 1e-11).value;
            const double rp = std::abs(apar - closed) / std::abs(closed);
            const double rq = std::abs(aperp - closed) / std::abs(closed);
            ok = ok && rp <= 1e-3 && rq <= 1e-3;
            detail << "(" << omega_m << "," << a << "): " << fmt(rp) << "/" << fmt(rq) << "; ";
        }
        return {ok, detail.str()};
    });

    // 8. resonance peak location of both kernels
    r.criterion(8, "kernels peak at |nu| = omega_m + omega_p", [&]() -> Check {
        const AtomParams atom(1.0, 1.0);
        std::ostringstream detail;
        bool ok = true;
        for (const double om : {1.0, 2.0}) {
            for (const double a : {0.5, 1.0}) {
                const MirrorParams mirror(1.0, om, 0.01);
                const double nu_res = om + 1.0;
                const double hw = 0.01 / (2.0 * nu_res);
                const QuadResult ap = coeff_A_parallel(mirror.xi, om, a, 1e-11);
                const QuadResult aq = coeff_A_perp(mirror.xi, om, a, 1e-11);
                double best_par = -1e300, best_perp = -1e300, at_par = 0, at_perp = 0;
                const int n = 241;
                for (int i = 0; i < n; ++i) {
                    const double nu = nu_res + hw * (-6.0 + 12.0 * i / (n - 1));
                    const PlateKernelPoint k =
                        plate_kernel_point(atom, mirror, a, nu, ap.value, aq.value);
                    if (k.m_parallel > best_par) best_par = k.m_parallel, at_par = nu;
                    if (k.m_perp > best_perp) best_perp = k.m_perp, at_perp = nu;
                }
                const double step = 12.0 * hw / (n - 1);
                const bool good = std::abs(at_par - nu_res) <= hw + step &&
                                  std::abs(at_perp - nu_res) <= hw + step;
                ok = ok && good;
                detail << "(" << om << "," << a << "): off by " << fmt(at_par - nu_res) << "/"
                       << fmt(at_perp - nu_res) << " (hw " << fmt(hw) << "); ";
            }
        }
        return {ok, detail.str()};
    });

    // 9. far-plate dichotomy
    r.criterion(9, "a -> inf: m_par finite limit, m_perp vanishes", [&]() -> Check {
        const AtomParams atom(1.0, 1.0);
        const MirrorParams mirror(1.0, 1.0, 0.01);
        const PlateKernelPoint k = plate_kernel_point(atom, mirror, 50.0, 3.0, 1e-11);
        const double far = m_parallel_far_limit(atom, mirror, 3.0);
        const double rel = std::abs(k.m_parallel - far) / std::abs(far);
        const double perp_frac = std::abs(k.m_perp) / std::abs(k.m_parallel);
        return {rel <= 0.02 && perp_frac <= 0.05,
                "m_par off far limit by " + fmt(rel) + ", |m_perp|/m_par = " + fmt(perp_frac)};
    });

    // 10. enhancement/suppression sign flip
    r.criterion(10, "threshold term flips sign at (|nu|-omega_p)^2 = omega_m^2",
                [&]() -> Check {
                    const AtomParams atom(1.0, 1.0);
                    const MirrorParams mirror(1.0, 2.0, 0.01);
                    const QuadResult ap = coeff_A_parallel(mirror.xi, 2.0, 1.0, 1e-11);
                    const QuadResult aq = coeff_A_perp(mirror.xi, 2.0, 1.0, 1e-11);
                    const int n = 201;
                    const double lo = 2.9, hi = 3.1;
                    // track the last nonzero sign so a grid point landing
                    // exactly on the zero does not mask the flip
                    double flip_at = 0.0, last_nonzero_nu = lo;
                    int flips = 0, last_sign = 0;
                    for (int i = 0; i < n; ++i) {
                        const double nu = lo + (hi - lo) * i / (n - 1);
                        const double cur =
                            plate_kernel_point(atom, mirror, 1.0, nu, ap.value, aq.value)
                                .threshold_term_parallel;
                        const int sign = (cur > 0.0) - (cur < 0.0);
                        if (sign != 0) {
                            if (last_sign != 0 && sign != last_sign) {
                                ++flips;
                                flip_at = 0.5 * (last_nonzero_nu + nu);
                            }
                            last_sign = sign;
                            last_nonzero_nu = nu;
                        }
                    }
                    const double step = (hi - lo) / (n - 1);
                    return {flips == 1 && std::abs(flip_at - 3.0) <= step,
                            "flip at nu_tilde " + fmt(flip_at) + " (expected 3, step " +
                                fmt(step) + ")"};
                });

    // 11. friction oracle, positivity, monotonicity
    r.criterion(11, "friction rate vs 2-D oracle, > 0, decreasing in a", [&]() -> Check {
        const double pts[5][4] = {{0.5, 1.0, 1.0, 1.0},
                                  {0.3, 1.5, 2.0, 1.0},
                                  {0.7, 0.8, 1.0, 1.0},
                                  {0.5, 2.0, 1.0, 1.0},
                                  {0.4, 1.2, 0.7, 1.0}};
        double worst = 0.0;
        for (const auto& p : pts) {
            const FrictionQuery q(AtomParams(1.0, p[3]), MirrorParams(1.0, p[2], 0.0), p[1],
                                  p[0]);
            const double main = friction_rate(q, 1e-12).value;
            const double orc = oracle::oracle_friction_2d(q);
            if (!(main > 0.0)) return {false, "non-positive rate"};
            worst = std::max(worst, oracle::rel_diff(main, orc));
            r.result.reports.push_back(oracle::make_report(
                "friction_rate(u=" + fmt(p[0]) + ",a=" + fmt(p[1]) + ")", main, orc,
                "Romberg on the pre-substitution transverse-momentum integral"));
        }
        bool monotone = true;
        double prev = 1e300;
        for (int i = 0; i < 10; ++i) {
            const double a = 0.5 + 2.5 * i / 9.0;
            const FrictionQuery q(AtomParams(1.0, 1.0), MirrorParams(1.0, 1.0, 0.0), a, 0.5);
            const double rate = friction_rate(q, 1e-12).value;
            monotone = monotone && rate < prev && rate > 0.0;
            prev = rate;
        }
        return {worst <= 1e-6 && monotone,
                "max rel " + fmt(worst) + (monotone ? ", monotone" : ", NOT monotone")};
    });

    // 12. friction asymptotic slope
    r.criterion(12, "ln(rate) slope at a in [5,6]", [&]() -> Check {
        const FrictionQuery q(AtomParams(1.0, 1.0), MirrorParams(1.0, 1.0, 0.0), 5.0, 0.5);
        const double slope = friction_large_a_log_slope(q, 5.0, 6.0);
        const double expect = friction_asymptotic_slope(0.5, 1.0, 1.0);
        const double rel = std::abs(slope - expect) / std::abs(expect);
        return {rel <= 0.01,
                "slope " + fmt(slope) + " vs " + fmt(expect) + " (rel " + fmt(rel) + ")"};
    });

    // 13. unreduced plate kernel at one point
    r.criterion(13, "m_parallel vs unreduced-momentum oracle", [&]() -> Check {
        const auto t0 = Clock::now();
        const AtomParams atom(1.0, 1.0);
        const MirrorParams mirror(1.0, 2.0, 0.01);
        const double main = m_parallel(atom, mirror, 1.0, 2.5, 1e-11);
        const double orc = oracle::oracle_plate_point(atom, mirror, 1.0, 2.5);
        const double rel = oracle::rel_diff(main, orc);
        r.result.reports.push_back(oracle::make_report("m_parallel(nu_tilde=2.5)", main, orc,
                                                     "2-D PV quadrature of the p3/q3 form"));
        const double dt = seconds_since(t0);
        return {rel <= 0.01 && dt < 180.0, "rel " + fmt(rel) + ", " + fmt(dt) + " s"};
    });

    // 14. cross-module consistency of the two first-order routes
    r.criterion(14, "harmonic line through the radial route matches m_p", [&]() -> Check {
        const AtomParams atom(1.0, 1.0);
        const double amp = 0.01, nu0 = 2.0;
        const Trajectory traj = Trajectory::harmonic_line({amp, 0.0, 0.0}, nu0, {});
        auto f_sq = [&traj](double p) { return f_sq_angular_integrated(traj, p, 1.0); };
        const double via_radial = im_gamma1_general(atom, f_sq, 2.0, 1e-13).value;
        const double via_kernel = m_p_first_order(atom, nu0) * amp * amp / 2.0;
        const double rel = std::abs(via_radial - via_kernel) / std::abs(via_kernel);
        return {rel <= 1e-8, "rel diff " + fmt(rel)};
    });

    // 15. byte-identical output across thread counts
    r.criterion(15, "deterministic CSV for every subcommand", [&]() -> Check {
        using namespace cli;
        auto read_file = [](const std::string& p) {
            std::ifstream in(p, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        std::ostringstream detail;
        bool ok = true;
        const std::pair<Subcommand, const char*> scans[] = {
            {Subcommand::MpScan, "mp"},
            {Subcommand::SigmaScan, "sigma"},
            {Subcommand::FrictionScan, "friction"},
            {Subcommand::PlateScan, "plate"},
            {Subcommand::FarLimit, "far"}};
        for (const auto& [sub, name] : scans) {
            SweepConfig cfg;
            cfg.subcommand = sub;
            cfg.tol = 1e-10;
            switch (sub) {
                case Subcommand::MpScan: cfg.grid = {0.0, 5.0, 20, false}; break;
                case Subcommand::SigmaScan: cfg.grid = {0.1, 2.0, 16, false}; break;
                case Subcommand::FrictionScan: cfg.grid = {0.5, 2.0, 10, false}; break;
                case Subcommand::PlateScan: cfg.grid = {2.5, 3.5, 20, false}; break;
                case Subcommand::FarLimit:
                    cfg.grid = {1.5, 5.0, 10, false};
                    cfg.a_tilde = 50.0;
                    cfg.omega_m_tilde = 1.0;
                    break;
                default: break;
            }
            const std::string f1 = r.scratch + "/det_" + name + "_t1.csv";
            const std::string f4 = r.scratch + "/det_" + name + "_t4.csv";
            SweepConfig c1 = cfg, c4 = cfg;
            c1.threads = 1;
            c1.output = f1;
            c4.threads = 4;
            c4.output = f4;
            std::string err;
            if (run(c1, &err) != 0 || run(c4, &err) != 0) {
                ok = false;
                detail << name << ": run failed (" << err << "); ";
                continue;
            }
            const bool same = read_file(f1) == read_file(f4);
            ok = ok && same;
            detail << name << (same ? " ok; " : " DIFFERS; ");
        }
        return {ok, detail.str()};
    });

    return r.result;
}

void write_report(const SuiteResult& result, std::ostream& out) {
    int passed = 0;
    for (const auto& c : result.criteria) {
        out << (c.passed ? "PASS" : "FAIL") << "  " << c.index << ". " << c.name << "  ["
            << c.detail << "]\n";
        passed += c.passed ? 1 : 0;
    }
    out << passed << "/" << result.criteria.size() << " criteria passed\n";
    if (!result.reports.empty()) {
        out << "\nquantity,main_value,oracle_value,rel_diff,method\n";
        for (const auto& rep : result.reports) {
            out << rep.quantity << ',' << cli::format_value(rep.main_value) << ','
                << cli::format_value(rep.oracle_value) << ',' << cli::format_value(rep.rel_diff)
                << ',' << rep.method << '\n';
        }
    }
}

}  // namespace dce::acceptance
