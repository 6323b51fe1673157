#pragma once

#include "oporder/errors.hpp"
#include "oporder/factors.hpp"
#include "oporder/generators.hpp"
#include "oporder/hasse.hpp"
#include "oporder/linalg.hpp"
#include "oporder/matrix_io.hpp"
#include "oporder/means.hpp"
#include "oporder/orders.hpp"
#include "oporder/random.hpp"
#include "oporder/shorted.hpp"
#include "oporder/verify.hpp"
