#pragma once

#include "numrad/classify.hpp"
#include "numrad/eigen.hpp"
#include "numrad/error.hpp"
#include "numrad/matrix.hpp"
#include "numrad/numrange.hpp"
#include "numrad/preservers.hpp"
#include "numrad/unitary.hpp"
