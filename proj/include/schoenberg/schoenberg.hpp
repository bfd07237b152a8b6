#pragma once

#include "schoenberg/exactnum.hpp"
#include "schoenberg/walk_coeffs.hpp"
#include "schoenberg/dimension_walk.hpp"
#include "schoenberg/series.hpp"
#include "schoenberg/models.hpp"
#include "schoenberg/sequence_file.hpp"
