#ifndef HANKEL_SPECTRA_HPP
#define HANKEL_SPECTRA_HPP

#include "boundary.hpp"
#include "commands.hpp"
#include "core.hpp"
#include "exact.hpp"
#include "galerkin.hpp"
#include "hermitian_eigen.hpp"
#include "io.hpp"
#include "multi_index.hpp"
#include "parallel.hpp"
#include "poly_symbol.hpp"
#include "quadrature.hpp"
#include "quasihomogeneous.hpp"
#include "symbol_parser.hpp"

#endif  // HANKEL_SPECTRA_HPP
