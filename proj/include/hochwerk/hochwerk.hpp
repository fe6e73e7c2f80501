#pragma once

#include "hochwerk/algebra.hpp"
#include "hochwerk/bimodule.hpp"
#include "hochwerk/derived.hpp"
#include "hochwerk/error.hpp"
#include "hochwerk/hochschild.hpp"
#include "hochwerk/linalg.hpp"
#include "hochwerk/matrix.hpp"
#include "hochwerk/rational.hpp"
#include "hochwerk/theorems.hpp"
#include "hochwerk/triangular.hpp"
