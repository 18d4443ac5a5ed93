#pragma once

// Umbrella header: everything except the CLI front end.

#include "momentlab/errors.hpp"
#include "momentlab/facewise.hpp"
#include "momentlab/fjs.hpp"
#include "momentlab/jacobi.hpp"
#include "momentlab/json_io.hpp"
#include "momentlab/linalg.hpp"
#include "momentlab/matrix.hpp"
#include "momentlab/measure.hpp"
#include "momentlab/moments.hpp"
#include "momentlab/multimoments.hpp"
#include "momentlab/psd.hpp"
#include "momentlab/rational.hpp"
#include "momentlab/rng.hpp"
#include "momentlab/tn.hpp"
#include "momentlab/transforms.hpp"
#include "momentlab/unipoly.hpp"
#include "momentlab/verify.hpp"
