#pragma once

#include "sincde/bandwidth.hpp"
#include "sincde/bounds.hpp"
#include "sincde/charfn.hpp"
#include "sincde/ecf.hpp"
#include "sincde/error.hpp"
#include "sincde/estimator.hpp"
#include "sincde/mise.hpp"
#include "sincde/sample.hpp"
