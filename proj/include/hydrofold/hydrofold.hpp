#ifndef HYDROFOLD_HYDROFOLD_HPP
#define HYDROFOLD_HYDROFOLD_HPP

// Umbrella header: hydrophobicity encoding, fold-family generation, lattice
// embedding, free-energy scoring, convention disambiguation, and
// conformational search.

#include "compat.hpp"
#include "energy.hpp"
#include "errors.hpp"
#include "fold.hpp"
#include "report_io.hpp"
#include "search.hpp"
#include "seq.hpp"

#endif
