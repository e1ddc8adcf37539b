// Umbrella header.

#pragma once

#include "pcm/scalar.hpp"
#include "pcm/matrix.hpp"
#include "pcm/efficiency.hpp"
#include "pcm/blockpert.hpp"
#include "pcm/perron.hpp"
#include "pcm/oracle.hpp"
#include "pcm/io.hpp"
#include "pcm/reproduce.hpp"
