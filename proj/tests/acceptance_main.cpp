#include <cstring>
#include <iostream>
#include <string>

#include "pif/acceptance.hpp"
#include "pif/qseries.hpp"

// acceptance [--only ids|modules] [--inject-lambda-fault] [--json]
int main(int argc, char** argv) {
    std::string only;
    bool fault = false, json = false;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only = argv[++i];
        else if (!std::strcmp(argv[i], "--inject-lambda-fault")) fault = true;
        else if (!std::strcmp(argv[i], "--json")) json = true;
        else {
            std::cerr << "usage: acceptance [--only list] [--inject-lambda-fault] [--json]\n";
            return 2;
        }
    }
    std::vector<int> ids;
    try {
        ids = pif::select_criteria(only);
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    pif::testing::set_lambda_fault(fault);
    std::vector<pif::CriterionResult> rs;
    int failed = 0;
    for (int id : ids) {
        pif::CriterionResult r = pif::run_criterion(id);
        std::cout << pif::format_line(r) << "  (" << r.seconds << " s)" << std::endl;
        if (!r.pass) ++failed;
        rs.push_back(std::move(r));
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << (rs.size() - failed) << '/' << rs.size() << '\n';
    if (json) std::cout << pif::summary_json(rs, true).dump(2) << '\n';
    return failed ? 1 : 0;
}
