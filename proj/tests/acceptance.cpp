// Acceptance run: one line per criterion. Criteria listed in kKnownUnattainable
// are reported but do not change the exit status; see README.

#include "cavstat/validation.hpp"

#include <algorithm>
#include <array>
#include <iostream>

namespace {

constexpr std::array kKnownUnattainable{4, 7};

bool known(int id) { return std::ranges::find(kKnownUnattainable, id) != kKnownUnattainable.end(); }

}  // namespace

int main() {
    cavstat::ValidationOptions opts;
    opts.level = cavstat::ValidationLevel::Full;
    int unexpected = 0;
    for (int id : cavstat::criteria_for(opts.level)) {
        const cavstat::CriterionResult r = cavstat::run_criterion(id, opts);
        std::string line = cavstat::format_result(r);
        if (known(id)) line += r.passed ? "  [XPASS]" : "  [known]";
        else if (!r.passed) ++unexpected;
        std::cout << line << std::endl;
    }
    std::cout << (unexpected == 0 ? "acceptance: ok" : "acceptance: unexpected failures") << '\n';
    return unexpected == 0 ? 0 : 1;
}
