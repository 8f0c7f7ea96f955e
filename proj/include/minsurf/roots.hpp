#pragma once

#include <vector>

#include "minsurf/polynomial.hpp"

namespace minsurf {

struct Root {
  cplx value;
  int multiplicity = 1;
};

inline constexpr double kDefaultClusterTol = 1e-8;

/// Roots of a floating-point polynomial by Aberth-Ehrlich iteration. Roots
/// closer than tol * max(1, |r|) are merged and their multiplicities summed.
/// Throws domain_error for the zero polynomial.
std::vector<Root> roots(const CPoly& p, double tol = kDefaultClusterTol);

/// Exact input: square-free decomposition first, so multiplicities are exact
/// and every numeric solve only sees simple roots.
std::vector<Root> roots(const QPoly& p, double tol = kDefaultClusterTol);

/// Yun's decomposition p = c * prod_i f_i^i with f_i square-free, pairwise
/// coprime and monic. Entry i-1 holds f_i (possibly constant 1).
std::vector<QPoly> squarefree_decomposition(const QPoly& p);

}  // namespace minsurf
