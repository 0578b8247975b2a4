#pragma once

#include "finsum/arith/divisor.hpp"
#include "finsum/arith/periodic.hpp"
#include "finsum/arith/residues.hpp"
#include "finsum/error.hpp"
#include "finsum/formulae/corollaries.hpp"
#include "finsum/formulae/direct.hpp"
#include "finsum/formulae/em.hpp"
#include "finsum/formulae/hooks.hpp"
#include "finsum/formulae/poisson.hpp"
#include "finsum/formulae/types.hpp"
#include "finsum/kernels/bernoulli.hpp"
#include "finsum/kernels/fft.hpp"
#include "finsum/kernels/fourier.hpp"
#include "finsum/kernels/psi.hpp"
#include "finsum/kernels/quadrature.hpp"
#include "finsum/parallel.hpp"
#include "finsum/smoothfn/parse.hpp"
#include "finsum/smoothfn/print.hpp"
#include "finsum/smoothfn/smooth_function.hpp"
