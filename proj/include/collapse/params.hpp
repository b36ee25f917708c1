#pragma once

#include <stdexcept>

#include "collapse/constants.hpp"

namespace collapse {

enum class ModelKind { qmupl, grw, csl };

/// Defining parameters of a collapse-model instance. The meaning and unit of
/// lambda0 depends on the model: m^-2 s^-1 for position-localization (qmupl),
/// s^-1 per particle for grw/csl. r_c is unused by qmupl.
struct CollapseModelParams {
    ModelKind model_kind = ModelKind::qmupl;
    double lambda0 = 0.0;
    double r_c = 1e-7;                  // m
    double m0 = phys::m_nucleon;        // kg, reference mass

    void validate() const {
        if (lambda0 < 0.0) throw std::invalid_argument("lambda0 must be >= 0");
        if (!(r_c > 0.0)) throw std::invalid_argument("r_c must be > 0");
        if (!(m0 > 0.0)) throw std::invalid_argument("m0 must be > 0");
    }

    /// Mass-amplified collapse strength lambda = (m / m0) * lambda0.
    double lambda_for_mass(double mass) const { return mass / m0 * lambda0; }
};

}  // namespace collapse
