#pragma once

#include <string>
#include <vector>

namespace dce::cli {

enum class Subcommand { MpScan, SigmaScan, FrictionScan, PlateScan, FarLimit, Acceptance };
enum class Format { Csv, Json };

// Grid of the swept variable: nu_tilde for mp/sigma/plate scans, a_tilde for
// friction-scan and far-limit.
struct GridSpec {
    double min = 0.1;
    double max = 5.0;
    int points = 100;
    bool log_spaced = false;
};

struct SweepConfig {
    Subcommand subcommand = Subcommand::SigmaScan;
    // dimensionless parameters (ratios against omega_p)
    double omega_m_tilde = 2.0;
    double xi_tilde = 0.01;
    double a_tilde = 1.0;
    double u = 0.5;
    // dimensional anchors for the output values
    double g = 1.0;
    double gamma = 1.0;
    double omega_p = 1.0;
    GridSpec grid;
    double tol = 1e-10;
    std::string output;  // "-" or empty = stdout
    Format format = Format::Csv;
    int threads = 1;
};

// Evaluated sweep: column names plus one row of values per grid point.
struct SpectralCurve {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Exit codes shared by the library entry point and the executable.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 2;
inline constexpr int kExitQuadratureFailure = 3;
inline constexpr int kExitIoError = 4;

// Computes the table for a scan config (throws on invalid config /
// quadrature failure). Rows are evaluated concurrently when
// config.threads > 1 and assembled in grid order, so output is
// deterministic for any thread count.
SpectralCurve evaluate(const SweepConfig& config);

// 12-significant-digit locale-independent number formatting used by every
// writer (CSV and JSON byte-determinism depends on it).
std::string format_value(double v);

std::string to_csv(const SpectralCurve& curve);
std::string to_json(const SweepConfig& config, const SpectralCurve& curve);

// Full run: evaluate + write. Returns an exit code instead of throwing;
// the failure reason lands in *error when given.
int run(const SweepConfig& config, std::string* error = nullptr);

}  // namespace dce::cli
