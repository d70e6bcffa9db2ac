#ifndef MELCERT_LINALG_HPP
#define MELCERT_LINALG_HPP

#include "melcert/imatrix.hpp"

namespace melcert {

// ||A||_2 <= result for every A in m (Gershgorin bound on the Gram matrix).
double spectral_norm_ub(const IntervalMatrix& m);

// sigma_min(A) >= result for every A in m; 0 when invertibility is not verified.
double sigma_min_lb(const IntervalMatrix& m);

// Upper bound of the Euclidean norm over all points of v.
double ivec_norm_ub(const IntervalBox& v);

// Encloses {A^-1 b : A in m, b in rhs}. Throws DomainError when the
// enclosure cannot be verified.
IntervalBox ilinsolve(const IntervalMatrix& m, const IntervalBox& rhs);

// Column-wise ilinsolve sharing one preconditioner.
IntervalMatrix ilinsolve(const IntervalMatrix& m, const IntervalMatrix& rhs);

// Encloses {A^-1 : A in m}.
IntervalMatrix inverse_enclosure(const IntervalMatrix& m);

} // namespace melcert

#endif
