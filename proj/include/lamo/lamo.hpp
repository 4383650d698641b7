#pragma once

#include "lamo/continuous.hpp"
#include "lamo/error.hpp"
#include "lamo/exact.hpp"
#include "lamo/io.hpp"
#include "lamo/runner.hpp"
#include "lamo/sequences.hpp"
