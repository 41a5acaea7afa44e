#pragma once

#include "gapforge/codes.hpp"
#include "gapforge/enumerate.hpp"
#include "gapforge/error.hpp"
#include "gapforge/field.hpp"
#include "gapforge/frontend.hpp"
#include "gapforge/io.hpp"
#include "gapforge/linalg.hpp"
#include "gapforge/oracle.hpp"
#include "gapforge/pipeline.hpp"
#include "gapforge/rational.hpp"
#include "gapforge/reduction.hpp"
