#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "dce/acceptance.hpp"
#include "dce/sweep.hpp"

namespace {

void add_common_flags(CLI::App* sub, dce::cli::SweepConfig& cfg, std::string& format) {
    sub->add_option("--nu-min", cfg.grid.min, "sweep grid lower bound");
    sub->add_option("--nu-max", cfg.grid.max, "sweep grid upper bound");
    sub->add_option("--points", cfg.grid.points, "number of grid points (>= 2)");
    sub->add_flag("--log", cfg.grid.log_spaced, "logarithmic grid spacing");
    sub->add_option("--omega-m", cfg.omega_m_tilde, "plate frequency / omega_p");
    sub->add_option("--xi", cfg.xi_tilde, "plate dissipation / omega_p^2");
    sub->add_option("--a", cfg.a_tilde, "distance to the plate * omega_p");
    sub->add_option("--u", cfg.u, "parallel speed (0 < u < 1)");
    sub->add_option("--g", cfg.g, "atom-field coupling");
    sub->add_option("--gamma", cfg.gamma, "plate-field coupling");
    sub->add_option("--omega-p", cfg.omega_p, "atom frequency (dimensional anchor)");
    sub->add_option("--tol", cfg.tol, "quadrature tolerance");
    sub->add_option("--output", cfg.output, "output path ('-' = stdout)");
    sub->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", cfg.threads, "worker threads for the grid");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vacuum-dissipation kernels for a moving atom: free-space emission, "
                 "quantum friction and lossy-plate response"};
    app.require_subcommand(1);

    dce::cli::SweepConfig cfg;
    std::string format = "csv";

    struct SubDef {
        const char* name;
        const char* help;
        dce::cli::Subcommand id;
    };
    const SubDef defs[] = {
        {"mp-scan", "first-order emission kernel m_p over nu/omega_p", dce::cli::Subcommand::MpScan},
        {"sigma-scan", "renormalized second-order kernel over nu/omega_p",
         dce::cli::Subcommand::SigmaScan},
        {"friction-scan", "friction rate over a*omega_p (grid bounds from --nu-min/--nu-max)",
         dce::cli::Subcommand::FrictionScan},
        {"plate-scan", "plate kernels m_par/m_perp over nu/omega_p", dce::cli::Subcommand::PlateScan},
        {"far-limit", "m_par against its a->inf limit over nu/omega_p at fixed --a",
         dce::cli::Subcommand::FarLimit},
    };
    for (const auto& d : defs) {
        CLI::App* sub = app.add_subcommand(d.name, d.help);
        add_common_flags(sub, cfg, format);
        sub->callback([&cfg, id = d.id] { cfg.subcommand = id; });
    }

    std::string report_path = "acceptance_report.txt";
    std::string scratch_dir = ".";
    CLI::App* acc = app.add_subcommand("acceptance", "run the full acceptance suite");
    acc->add_option("--output", report_path, "report file path");
    acc->add_option("--scratch", scratch_dir, "directory for determinism-check files");

    CLI11_PARSE(app, argc, argv);

    if (acc->parsed()) {
        std::ofstream report(report_path, std::ios::binary);
        if (!report) {
            std::cerr << "cannot open report path: " << report_path << "\n";
            return dce::cli::kExitIoError;
        }
        std::error_code ec;
        std::filesystem::create_directories(scratch_dir, ec);
        const auto result = dce::acceptance::run_all(std::cout, scratch_dir);
        dce::acceptance::write_report(result, report);
        return result.all_passed() ? 0 : 1;
    }

    cfg.format = (format == "json") ? dce::cli::Format::Json : dce::cli::Format::Csv;
    std::string error;
    const int code = dce::cli::run(cfg, &error);
    if (code != dce::cli::kExitOk) std::cerr << "error: " << error << "\n";
    return code;
}
