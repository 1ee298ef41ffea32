#pragma once

#include <vector>

#include "cohmax/linalg.hpp"

namespace cohmax {

// All three measures of one representation, computed together.
struct CoherenceReport {
    double c_r = 0.0;
    double c_l1 = 0.0;
    double c_l2 = 0.0;
    // Diagonal of the representation (the dephased state).
    std::vector<double> diagonal;
};

// S(diag(rho)) - S(rho) in the computational basis.
double relative_entropy_coherence(const DensityMatrix& rho, LogBase base = LogBase::two);
// Same, with the state entropy already known (it is basis independent).
double relative_entropy_coherence(const ComplexMatrix& representation, double state_entropy,
                                  LogBase base = LogBase::two);

// Σ_{μ≠ν} |rho_μν|
double l1_coherence(const DensityMatrix& rho);
double l1_coherence(const ComplexMatrix& representation);

// Σ_{μ≠ν} |rho_μν|^2
double l2_coherence(const DensityMatrix& rho);
double l2_coherence(const ComplexMatrix& representation);

// Measures of U^† rho U, i.e. rho seen in the basis given by the columns of U.
CoherenceReport coherence_in_basis(const DensityMatrix& rho, const UnitaryMatrix& u,
                                   LogBase base = LogBase::two);

// Measures of rho as given (computational basis).
CoherenceReport coherence_report(const DensityMatrix& rho, LogBase base = LogBase::two);

}  // namespace cohmax
