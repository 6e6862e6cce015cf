#pragma once

#include "frankl/abundance.hpp"
#include "frankl/core.hpp"
#include "frankl/errors.hpp"
#include "frankl/poset.hpp"
#include "frankl/quotient.hpp"
#include "frankl/search.hpp"
#include "frankl/tent.hpp"
#include "frankl/topology.hpp"
