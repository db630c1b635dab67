#pragma once

// Umbrella header: microstructure generation by thresholding Gaussian random
// fields built from superposed standing waves, plus the structural analyses
// (two-point correlation, specific surface area, burning-method topology).

#include "grfgen/analysis.hpp"
#include "grfgen/config.hpp"
#include "grfgen/errors.hpp"
#include "grfgen/fft.hpp"
#include "grfgen/grid.hpp"
#include "grfgen/io.hpp"
#include "grfgen/math.hpp"
#include "grfgen/parallel.hpp"
#include "grfgen/pipeline.hpp"
#include "grfgen/random.hpp"
#include "grfgen/spectral.hpp"
#include "grfgen/structure.hpp"
#include "grfgen/topology.hpp"
