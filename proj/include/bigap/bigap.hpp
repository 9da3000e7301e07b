#pragma once

#include "bigap/bounds.hpp"
#include "bigap/dense_eig.hpp"
#include "bigap/errors.hpp"
#include "bigap/graph.hpp"
#include "bigap/harness.hpp"
#include "bigap/io.hpp"
#include "bigap/lanczos.hpp"
#include "bigap/random.hpp"
#include "bigap/sparse_matrix.hpp"
#include "bigap/spectra.hpp"
#include "bigap/spectral_summary.hpp"
#include "bigap/tridiagonal.hpp"
