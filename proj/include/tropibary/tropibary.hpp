#pragma once

// Umbrella header: the whole library.

#include "tropibary/barycenter.hpp"
#include "tropibary/bundlecheck.hpp"
#include "tropibary/document.hpp"
#include "tropibary/errors.hpp"
#include "tropibary/measure.hpp"
#include "tropibary/metric.hpp"
#include "tropibary/oracle.hpp"
#include "tropibary/report.hpp"
#include "tropibary/sampling.hpp"
#include "tropibary/scalar.hpp"
#include "tropibary/space.hpp"
#include "tropibary/verify.hpp"
