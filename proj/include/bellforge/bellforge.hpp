#pragma once

#include "numeric.hpp"
#include "tensor.hpp"
#include "operators.hpp"
#include "states.hpp"
#include "polynomial.hpp"
#include "classical.hpp"
#include "quantum.hpp"
#include "catalog.hpp"
#include "probability.hpp"
#include "mapping.hpp"
#include "report.hpp"
