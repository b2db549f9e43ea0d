// Umbrella header.
#pragma once

#include "ellseq/arith.hpp"
#include "ellseq/congruence.hpp"
#include "ellseq/curve.hpp"
#include "ellseq/heights.hpp"
#include "ellseq/lucas.hpp"
#include "ellseq/numeric.hpp"
#include "ellseq/primitive.hpp"
#include "ellseq/sequence.hpp"
#include "ellseq/somos.hpp"
