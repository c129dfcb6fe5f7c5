#pragma once

#include <string>
#include <vector>

namespace pairgf::cli {

struct Check {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// fault flips the sign of the free-particle reference, which must make the run fail.
std::vector<Check> run_selfcheck(bool strict, bool fault);

}  // namespace pairgf::cli
