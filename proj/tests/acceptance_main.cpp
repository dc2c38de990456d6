// One line per acceptance criterion; nonzero exit when any fails.
#include "torelli/acceptance.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char **argv)
{
    std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 20240601;
    bool ok = true;
    for (const auto &r : torelli::acceptance::run_all(seed)) {
        std::cout << r.summary() << "\n";
        for (const auto &c : r.checks)
            if (!c.ok)
                std::cout << "    failed: " << c.what << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
        ok = ok && r.passed();
    }
    return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
