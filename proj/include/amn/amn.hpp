#pragma once

#include "amn/amnpat.hpp"
#include "amn/bench.hpp"
#include "amn/bmp.hpp"
#include "amn/core.hpp"
#include "amn/error.hpp"
#include "amn/manifest.hpp"
#include "amn/parallel.hpp"
#include "amn/pattern.hpp"
#include "amn/recognizer.hpp"
