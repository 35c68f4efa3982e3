#pragma once

// Umbrella header: finite posets from triangulations, commutative algebras of
// vertex samples, finite even spectral triples, and the convergence harness
// that recovers finite-difference calculus from Dirac commutators.

#include "specfd/algebra.hpp"
#include "specfd/convergence.hpp"
#include "specfd/errors.hpp"
#include "specfd/expression.hpp"
#include "specfd/io.hpp"
#include "specfd/models.hpp"
#include "specfd/poset.hpp"
#include "specfd/simplicial.hpp"
#include "specfd/spectral.hpp"
