#ifndef CDIFF_CDIFF_HPP
#define CDIFF_CDIFF_HPP

#include "cdiff/numeric.hpp"
#include "cdiff/field.hpp"
#include "cdiff/function.hpp"
#include "cdiff/parallel.hpp"
#include "cdiff/spectra.hpp"
#include "cdiff/theory.hpp"
#include "cdiff/io.hpp"
#include "cdiff/cache.hpp"
#include "cdiff/harness.hpp"

#endif  // CDIFF_CDIFF_HPP
