#include "circumlab/errors.hpp"

namespace circumlab {

NoConvergence::NoConvergence(int max_iter, std::vector<double> history)
    : Error(ErrorClass::numerical,
            "CG did not converge within " + std::to_string(max_iter) + " iterations (last relative residual " +
                (history.empty() ? std::string("n/a") : std::to_string(history.back())) + ")"),
      history_(std::move(history)) {}

}  // namespace circumlab
