#pragma once

#include "prob/bundle.hpp"
#include "prob/condexp.hpp"
#include "prob/errors.hpp"
#include "prob/fiberprod.hpp"
#include "prob/io.hpp"
#include "prob/label.hpp"
#include "prob/partition.hpp"
#include "prob/random.hpp"
#include "prob/rational.hpp"
#include "prob/scheme.hpp"
#include "prob/stats.hpp"
