#pragma once

#include "falin/errors.hpp"
#include "falin/rational.hpp"
#include "falin/laurent.hpp"
#include "falin/word.hpp"
#include "falin/free_poly.hpp"
#include "falin/matrix.hpp"
#include "falin/poly_map.hpp"
#include "falin/torus.hpp"
#include "falin/linearize.hpp"
#include "falin/textio.hpp"
#include "falin/corpus.hpp"
