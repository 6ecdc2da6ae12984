#pragma once

#include "movemine/classify/common.hpp"
#include "movemine/classify/cv.hpp"
#include "movemine/classify/forest.hpp"
#include "movemine/classify/logreg.hpp"
#include "movemine/classify/metrics.hpp"
#include "movemine/classify/mlp.hpp"
#include "movemine/classify/naive_bayes.hpp"
#include "movemine/classify/tree.hpp"
