#pragma once

#include "qwmix/catalog.hpp"
#include "qwmix/complex_matrix.hpp"
#include "qwmix/eigen.hpp"
#include "qwmix/error.hpp"
#include "qwmix/graphs.hpp"
#include "qwmix/json_io.hpp"
#include "qwmix/measured.hpp"
#include "qwmix/mixing.hpp"
#include "qwmix/quotient.hpp"
#include "qwmix/verify.hpp"
#include "qwmix/version.hpp"
