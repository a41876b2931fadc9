#include "dce/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "dce/free_space.hpp"
#include "dce/friction.hpp"
#include "dce/plate_response.hpp"

namespace dce::cli {

namespace {

std::vector<double> make_grid(const GridSpec& g) {
    if (g.points < 2) throw std::domain_error("grid: need points >= 2");
    if (!(g.min < g.max)) throw std::domain_error("grid: need min < max");
    if (g.log_spaced && !(g.min > 0.0))
        throw std::domain_error("grid: log spacing needs min > 0");
    std::vector<double> x(g.points);
    for (int i = 0; i < g.points; ++i) {
        const double t = static_cast<double>(i) / (g.points - 1);
        x[i] = g.log_spaced ? g.min * std::pow(g.max / g.min, t)
                            : g.min + (g.max - g.min) * t;
    }
    return x;
}

void parallel_rows(int n, int threads, const std::function<void(int)>& work) {
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) work(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                work(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int count = std::min(threads, n);
    pool.reserve(count);
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

SpectralCurve evaluate(const SweepConfig& cfg) {
    const AtomParams atom(cfg.g, cfg.omega_p);
    const MirrorParams mirror(cfg.gamma, cfg.omega_m_tilde * cfg.omega_p,
                              cfg.xi_tilde * cfg.omega_p * cfg.omega_p);
    const std::vector<double> grid = make_grid(cfg.grid);
    const int n = static_cast<int>(grid.size());

    SpectralCurve curve;
    curve.rows.assign(n, {});
    std::function<void(int)> row_fn;

    switch (cfg.subcommand) {
        case Subcommand::MpScan:
            curve.columns = {"nu_over_omega", "m_p"};
            row_fn = [&, atom](int i) {
                const double nu = grid[i] * atom.omega_p;
                curve.rows[i] = {grid[i], m_p_first_order(atom, nu)};
            };
            break;

        case Subcommand::SigmaScan:
            curve.columns = {"nu_over_omega", "sigma1", "sigma2", "sigma3", "total", "err"};
            row_fn = [&](int i) {
                const SigmaBreakdown b = sigma_ren(grid[i], cfg.tol);
                const QuadResult t = sigma_ren_total(grid[i], cfg.tol);
                curve.rows[i] = {grid[i], b.sigma1, b.sigma2,
                                 b.sigma3, b.total,  t.abs_error_estimate};
            };
            break;

        case Subcommand::FrictionScan:
            curve.columns = {"a_tilde", "rate", "err"};
            row_fn = [&, atom, mirror](int i) {
                const FrictionQuery q(atom, mirror, grid[i] / atom.omega_p, cfg.u);
                const QuadResult r = friction_rate(q, cfg.tol);
                curve.rows[i] = {grid[i], r.value, r.abs_error_estimate};
            };
            break;

        case Subcommand::PlateScan: {
            curve.columns = {"nu_over_omega", "m_par",    "m_perp",   "res_par",
                             "thr_par",       "res_perp", "thr_perp", "err"};
            const double a = cfg.a_tilde / atom.omega_p;
            QuadResult ap{}, aq{};
            if (mirror.xi > 0.0) {
                ap = coeff_A_parallel(mirror.xi, mirror.omega_m, a, cfg.tol);
                aq = coeff_A_perp(mirror.xi, mirror.omega_m, a, cfg.tol);
            }
            row_fn = [&, atom, mirror, a, ap, aq](int i) {
                const double nu = grid[i] * atom.omega_p;
                const PlateKernelPoint k =
                    plate_kernel_point(atom, mirror, a, nu, ap.value, aq.value);
                double err = 0.0;
                if (ap.value != 0.0)
                    err += std::abs(k.resonance_term_parallel) *
                           (ap.abs_error_estimate / std::abs(ap.value));
                if (aq.value != 0.0)
                    err += std::abs(k.resonance_term_perp) *
                           (aq.abs_error_estimate / std::abs(aq.value));
                curve.rows[i] = {grid[i],
                                 k.m_parallel,
                                 k.m_perp,
                                 k.resonance_term_parallel,
                                 k.threshold_term_parallel,
                                 k.resonance_term_perp,
                                 k.threshold_term_perp,
                                 err};
            };
            break;
        }

        case Subcommand::FarLimit: {
            // nu_tilde scan at fixed (large) a_tilde, against the infinite-a
            // limit of the parallel kernel
            curve.columns = {"nu_over_omega", "m_par", "m_perp", "m_par_far_limit", "ratio"};
            const double a = cfg.a_tilde / atom.omega_p;
            QuadResult ap{}, aq{};
            if (mirror.xi > 0.0) {
                ap = coeff_A_parallel(mirror.xi, mirror.omega_m, a, cfg.tol);
                aq = coeff_A_perp(mirror.xi, mirror.omega_m, a, cfg.tol);
            }
            row_fn = [&, atom, mirror, a, ap, aq](int i) {
                const double nu = grid[i] * atom.omega_p;
                const PlateKernelPoint k =
                    plate_kernel_point(atom, mirror, a, nu, ap.value, aq.value);
                const double far = m_parallel_far_limit(atom, mirror, nu);
                curve.rows[i] = {grid[i], k.m_parallel, k.m_perp, far,
                                 far != 0.0 ? k.m_parallel / far : 0.0};
            };
            break;
        }

        case Subcommand::Acceptance:
            throw std::domain_error("evaluate: acceptance is not a sweep subcommand");
    }

    parallel_rows(n, cfg.threads, row_fn);
    return curve;
}

std::string format_value(double v) {
    char buf[48];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

std::string to_csv(const SpectralCurve& curve) {
    std::string out;
    for (size_t c = 0; c < curve.columns.size(); ++c) {
        if (c) out += ',';
        out += curve.columns[c];
    }
    out += '\n';
    for (const auto& row : curve.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_value(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const SweepConfig& config, const SpectralCurve& curve) {
    static const char* names[] = {"mp-scan",   "sigma-scan", "friction-scan",
                                  "plate-scan", "far-limit",  "acceptance"};
    std::string out = "{\n  \"subcommand\": \"";
    out += names[static_cast<int>(config.subcommand)];
    out += "\",\n  \"columns\": [";
    for (size_t c = 0; c < curve.columns.size(); ++c) {
        if (c) out += ", ";
        out += '"';
        out += curve.columns[c];
        out += '"';
    }
    out += "],\n  \"rows\": [\n";
    for (size_t r = 0; r < curve.rows.size(); ++r) {
        out += "    [";
        for (size_t c = 0; c < curve.rows[r].size(); ++c) {
            if (c) out += ", ";
            out += format_value(curve.rows[r][c]);
        }
        out += (r + 1 < curve.rows.size()) ? "],\n" : "]\n";
    }
    out += "  ]\n}\n";
    return out;
}

int run(const SweepConfig& config, std::string* error) {
    auto fail = [&](int code, const std::string& msg) {
        if (error) *error = msg;
        return code;
    };
    SpectralCurve curve;
    try {
        curve = evaluate(config);
    } catch (const QuadratureError& e) {
        return fail(kExitQuadratureFailure, e.what());
    } catch (const SigmaCancellationError& e) {
        return fail(kExitQuadratureFailure, e.what());
    } catch (const RegularizationRequiredError& e) {
        return fail(kExitDomainError, e.what());
    } catch (const std::domain_error& e) {
        return fail(kExitDomainError, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(kExitDomainError, e.what());
    }

    const std::string body =
        config.format == Format::Csv ? to_csv(curve) : to_json(config, curve);
    if (config.output.empty() || config.output == "-") {
        std::cout << body;
        return kExitOk;
    }
    std::ofstream out(config.output, std::ios::binary);
    if (!out) return fail(kExitIoError, "cannot open output path: " + config.output);
    out << body;
    out.flush();
    if (!out) return fail(kExitIoError, "write failed: " + config.output);
    return kExitOk;
}

}  // namespace dce::cli
