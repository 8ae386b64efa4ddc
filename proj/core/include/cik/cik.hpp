#pragma once

#include "cik/attest.hpp"
#include "cik/error.hpp"
#include "cik/formula.hpp"
#include "cik/frame.hpp"
#include "cik/frame_io.hpp"
#include "cik/hierarchy.hpp"
#include "cik/laws.hpp"
#include "cik/model.hpp"
#include "cik/operators.hpp"
#include "cik/world_set.hpp"
