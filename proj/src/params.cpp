#include "nigarch/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nigarch {

GarchParams::GarchParams(double omega, double alpha, double beta)
    : omega_(omega), alpha_(alpha), beta_(beta) {
    if (!std::isfinite(omega) || !(omega > 0.0)) {
        throw std::invalid_argument("GARCH constraint violated: ω > 0 (omega=" +
                                    std::to_string(omega) + ")");
    }
    if (!std::isfinite(alpha) || !(alpha >= 0.0)) {
        throw std::invalid_argument("GARCH constraint violated: α ≥ 0 (alpha=" +
                                    std::to_string(alpha) + ")");
    }
    if (!std::isfinite(beta) || !(beta >= 0.0)) {
        throw std::invalid_argument("GARCH constraint violated: β ≥ 0 (beta=" +
                                    std::to_string(beta) + ")");
    }
}

std::string GarchParams::to_string() const {
    std::ostringstream os;
    os.precision(10);
    os << "GarchParams(omega=" << omega_ << ", alpha=" << alpha_ << ", beta=" << beta_
       << ", gamma=" << gamma() << ")";
    return os.str();
}

}  // namespace nigarch
