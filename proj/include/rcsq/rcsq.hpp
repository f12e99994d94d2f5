#pragma once

#include "rcsq/config.hpp"
#include "rcsq/constants.hpp"
#include "rcsq/linear_response.hpp"
#include "rcsq/noise_spectra.hpp"
#include "rcsq/output_field.hpp"
#include "rcsq/params.hpp"
#include "rcsq/quadrature.hpp"
#include "rcsq/steady_state.hpp"
#include "rcsq/sweep.hpp"
#include "rcsq/variance.hpp"
