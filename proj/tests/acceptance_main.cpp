#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "dce/acceptance.hpp"

int main(int argc, char** argv) {
    std::string scratch = "acceptance_scratch";
    std::string report_path;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--scratch") == 0 && i + 1 < argc) scratch = argv[++i];
        if (std::strcmp(argv[i], "--report") == 0 && i + 1 < argc) report_path = argv[++i];
    }
    std::error_code ec;
    std::filesystem::create_directories(scratch, ec);

    const auto result = dce::acceptance::run_all(std::cout, scratch);
    if (!report_path.empty()) {
        std::ofstream report(report_path, std::ios::binary);
        dce::acceptance::write_report(result, report);
    }
    int passed = 0;
    for (const auto& c : result.criteria) passed += c.passed ? 1 : 0;
    std::cout << passed << "/" << result.criteria.size() << " criteria passed\n";
    return result.all_passed() ? 0 : 1;
}
