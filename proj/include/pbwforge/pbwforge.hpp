#pragma once

#include "scalar.hpp"
#include "linalg.hpp"
#include "sparse_echelon.hpp"
#include "tensor.hpp"
#include "algebra.hpp"
#include "pbw.hpp"
#include "metric.hpp"
#include "yang_mills.hpp"
#include "super_ym.hpp"
#include "classifier.hpp"
#include "lie.hpp"
