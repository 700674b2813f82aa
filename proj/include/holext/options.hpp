#pragma once

#include <cstddef>

namespace holext {

struct SolverOptions {
    int max_rounds = 40;
    /// Sampled |F| must stay below safety * M.
    double safety = 0.95;
    std::size_t boundary_samples = 4096;
    /// Off-diagonal budget of the peak interpolation matrix, split over |E|.
    double cross_budget = 0.1;
    /// Augmentation retries on the puncture path.
    int max_retries = 8;
};

void validate(const SolverOptions& opts);

}  // namespace holext
